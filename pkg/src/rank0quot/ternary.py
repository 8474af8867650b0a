"""Homogeneous forms in X, Y, Z with rational coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import BinaryForm, UniPoly, lcm_denominators, rat, sylvester_resultant

Monomial = tuple[int, int, int]


def monomials(d: int) -> list[Monomial]:
    """Exponent triples of degree ``d`` in descending lexicographic order."""
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


QUARTIC_MONOMIALS = monomials(4)


@dataclass(frozen=True, init=False)
class TernaryForm:
    degree: int
    terms: tuple[tuple[Monomial, Fraction], ...]  # sorted, nonzero coefficients only

    def __init__(self, degree: int, terms: Mapping[Monomial, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for mono, c in items:
            mono = tuple(mono)
            if sum(mono) != degree:
                raise ValueError(f"monomial {mono} is not of degree {degree}")
            acc[mono] = acc.get(mono, Fraction(0)) + rat(c)
        cleaned = tuple(sorted(((m, c) for m, c in acc.items() if c), reverse=True))
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, degree: int = 4) -> "TernaryForm":
        monos = monomials(degree)
        if len(coeffs) != len(monos):
            raise ValueError(f"expected {len(monos)} coefficients, got {len(coeffs)}")
        return cls(degree, zip(monos, coeffs))

    def coeff_vector(self) -> list[Fraction]:
        d = self.as_dict()
        return [d.get(m, Fraction(0)) for m in monomials(self.degree)]

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def coeff(self, mono: Monomial) -> Fraction:
        return self.as_dict().get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, x, y, z):
        total = 0 * x
        for (i, j, k), c in self.terms:
            total = total + c * x ** i * y ** j * z ** k
        return total

    def eval_mod(self, p: int, x: int, y: int, z: int) -> int:
        total = 0
        for (i, j, k), c in self.terms:
            total += c.numerator * pow(c.denominator, -1, p) * pow(x, i, p) * pow(y, j, p) * pow(z, k, p)
        return total % p

    def __mul__(self, other):
        if isinstance(other, TernaryForm):
            out: dict[Monomial, Fraction] = {}
            for m1, c1 in self.terms:
                for m2, c2 in other.terms:
                    m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    out[m] = out.get(m, Fraction(0)) + c1 * c2
            return TernaryForm(self.degree + other.degree, out)
        c = rat(other)
        return TernaryForm(self.degree, ((m, c * v) for m, v in self.terms))

    __rmul__ = __mul__

    def __add__(self, other: "TernaryForm"):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return TernaryForm(self.degree, list(self.terms) + list(other.terms))

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def partial(self, var: int) -> "TernaryForm":
        out = []
        for m, c in self.terms:
            if m[var]:
                m2 = list(m)
                m2[var] -= 1
                out.append((tuple(m2), c * m[var]))
        return TernaryForm(self.degree - 1, out)

    def substitute(self, matrix) -> "TernaryForm":
        """The form v -> Q(M v), M a 3x3 matrix given row by row."""
        M = [[rat(v) for v in row] for row in matrix]
        linear = [TernaryForm(1, {(1, 0, 0): M[r][0], (0, 1, 0): M[r][1], (0, 0, 1): M[r][2]})
                  for r in range(3)]
        powers = [[TernaryForm(0, {(0, 0, 0): 1})] for _ in range(3)]
        for r in range(3):
            for _ in range(self.degree):
                powers[r].append(powers[r][-1] * linear[r])
        acc = TernaryForm(self.degree, ())
        for (i, j, k), c in self.terms:
            acc = acc + powers[0][i] * powers[1][j] * powers[2][k] * c
        return acc

    def flip(self, var: int) -> "TernaryForm":
        return TernaryForm(self.degree, ((m, -c if m[var] % 2 else c) for m, c in self.terms))

    def is_even_in(self, var: int) -> bool:
        return all(m[var] % 2 == 0 for m, _ in self.terms)

    def slice_in(self, var: int, power: int) -> BinaryForm:
        """Coefficient of ``var**power`` as a binary form in the remaining two variables (in order)."""
        rest = [v for v in range(3) if v != var]
        d = self.degree - power
        cs = [Fraction(0)] * (d + 1)
        for m, c in self.terms:
            if m[var] == power:
                cs[m[rest[0]]] += c
        return BinaryForm(d, cs)

    def primitive_integral(self) -> "TernaryForm":
        """Positive rational multiple with coprime integer coefficients."""
        from math import gcd
        from functools import reduce

        L = lcm_denominators(c for _, c in self.terms)
        ints = [int(c * L) for _, c in self.terms]
        g = reduce(gcd, ints, 0) or 1
        return self * Fraction(L, g)

    def __repr__(self):
        return f"TernaryForm({self.degree}, {[(m, str(c)) for m, c in self.terms]})"


def eliminate(A: TernaryForm, B: TernaryForm, var: int) -> BinaryForm:
    """Res_var(A, B) with formal degrees deg A, deg B, as a form in the other two variables.

    Computed by evaluation at ``deg A * deg B + 1`` points and interpolation.
    """
    rest = [v for v in range(3) if v != var]
    D = A.degree * B.degree
    xs = list(range(D + 1))
    values = []
    for s in xs:
        point = [Fraction(0)] * 3
        point[rest[0]], point[rest[1]] = Fraction(s), Fraction(1)
        values.append(sylvester_resultant(_univariate(A, var, point), _univariate(B, var, point),
                                          A.degree, B.degree))
    poly = _interpolate(xs, values)
    return BinaryForm(D, poly.coeffs)


def _univariate(F: TernaryForm, var: int, point) -> list[Fraction]:
    cs = [Fraction(0)] * (F.degree + 1)
    for m, c in F.terms:
        val = c
        for v in range(3):
            if v != var:
                val *= point[v] ** m[v]
        cs[m[var]] += val
    return cs


def _interpolate(xs, ys) -> UniPoly:
    """Newton interpolation through (xs[i], ys[i])."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly((coef[-1],))
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly((-xs[i], 1)) + coef[i]
    return poly
