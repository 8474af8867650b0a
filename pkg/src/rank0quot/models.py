"""Curve models: genus-3 hyperelliptic and plane quartic curves, genus-1 quartics, Weierstrass curves.

Hyperelliptic and genus-1 curves ``y^2 = F(x, z)`` live in weighted projective
space P(1, w, 1) with ``w = deg F / 2``; plane quartics live in P^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterator, Sequence

import numpy as np

from .arith import (
    BinaryForm, UniPoly, binary_discriminant, binary_resultant, is_squarefree, legendre,
    lcm_denominators, mod_p, rat, square_part,
)
from .errors import BadPrime, NotSmooth, PointNotOnCurve, WrongDegree, ZeroForm
from .ternary import TernaryForm, eliminate


# -- points -------------------------------------------------------------------

@dataclass(frozen=True, init=False, order=True)
class CurvePoint:
    """A point of P(1, w, 1), stored in canonical form: z = 1 if z != 0, else x = 1."""

    x: Fraction
    y: Fraction
    z: Fraction
    weight: int

    def __init__(self, x, y, z, weight: int = 1):
        x, y, z = rat(x), rat(y), rat(z)
        if z != 0:
            x, y, z = x / z, y / z ** weight, Fraction(1)
        elif x != 0:
            x, y, z = Fraction(1), y / x ** weight, Fraction(0)
        elif y != 0 and weight % 2 == 1:
            y = Fraction(1)
        else:
            raise ValueError("not a point of weighted projective space: "
                             f"({x}, {y}, {z}) with weight {weight}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "weight", weight)

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    def scaled(self, lam) -> tuple[Fraction, Fraction, Fraction]:
        lam = rat(lam)
        return (lam * self.x, lam ** self.weight * self.y, lam * self.z)

    def height(self) -> int:
        """Naive height: max |coordinate| of the primitive integral representative of (x : z)
        (plane points: of (x : y : z))."""
        cs = (self.x, self.y, self.z) if self.weight == 1 else (self.x, self.z)
        L = lcm_denominators(cs)
        ints = [int(c * L) for c in cs]
        g = reduce(math.gcd, ints, 0) or 1
        return max(abs(v) // g for v in ints)

    def to_json(self) -> list[str]:
        return [str(self.x), str(self.y), str(self.z)]

    def __str__(self):
        return f"({self.x} : {self.y} : {self.z})"

    __repr__ = __str__


# -- genus 3 hyperelliptic -----------------------------------------------------

def _minimal_square_model(F: BinaryForm) -> tuple[Fraction, BinaryForm]:
    """``(s, G)`` with G integral, square-content free, and G = s^2 F."""
    L = lcm_denominators(F.coeffs)
    G = F * (L * L)
    content = reduce(math.gcd, (int(c) for c in G.coeffs), 0)
    sq = square_part(content) if content else 1
    s = Fraction(L, sq)
    return s, F * (s * s)


class _YSquaredModel:
    """Shared behaviour of ``y^2 = F(x, z)`` models."""

    F: BinaryForm
    weight: int

    def contains(self, x, y, z) -> bool:
        return rat(y) ** 2 == self.F(rat(x), rat(z))

    def point(self, x, y, z) -> CurvePoint:
        if not self.contains(x, y, z):
            raise PointNotOnCurve(f"({x} : {y} : {z}) is not on {self}")
        return CurvePoint(x, y, z, self.weight)

    @cached_property
    def integral(self) -> tuple[Fraction, BinaryForm]:
        return _minimal_square_model(self.F)

    def points_at_infinity(self) -> list[CurvePoint]:
        lc = self.F.lc
        if lc == 0:
            return [CurvePoint(1, 0, 0, self.weight)]
        from .arith import rat_sqrt
        s = rat_sqrt(lc)
        if s is None:
            return []
        return sorted({CurvePoint(1, s, 0, self.weight), CurvePoint(1, -s, 0, self.weight)})


@dataclass(frozen=True)
class HyperellipticG3(_YSquaredModel):
    """y^2 = F(x, z) with F a binary octic, in P(1, 4, 1)."""

    F: BinaryForm
    weight = 4
    genus = 3

    @property
    def f(self) -> UniPoly:
        return self.F.dehomogenize()

    def to_json(self) -> dict:
        return {"type": "hyperelliptic", "f": self.F.to_json()}

    def __str__(self):
        return f"y^2 = {self.F}"


@dataclass(frozen=True)
class Genus1Quartic(_YSquaredModel):
    """y^2 = G(x, z) with G a binary quartic, in P(1, 2, 1)."""

    G: BinaryForm
    weight = 2
    genus = 1

    @property
    def F(self) -> BinaryForm:  # type: ignore[override]
        return self.G

    def to_json(self) -> dict:
        return {"type": "genus1-quartic", "G": self.G.to_json()}

    def __str__(self):
        return f"y^2 = {self.G}"


def validate_hyperelliptic(F: BinaryForm) -> HyperellipticG3:
    if F.degree != 8:
        raise WrongDegree(f"expected a binary octic, got degree {F.degree}")
    f = F.dehomogenize()
    if f.degree not in (7, 8):
        raise WrongDegree(f"F(x, 1) has degree {f.degree}; genus 3 needs 7 or 8")
    if not is_squarefree(f):
        raise NotSmooth("F(x, 1) has a repeated root")
    return HyperellipticG3(F)


def validate_genus1(G: BinaryForm) -> Genus1Quartic:
    if G.degree != 4:
        raise WrongDegree(f"expected a binary quartic, got degree {G.degree}")
    g = G.dehomogenize()
    if g.degree not in (3, 4):
        raise WrongDegree(f"G(x, 1) has degree {g.degree}; genus 1 needs 3 or 4")
    if not is_squarefree(g):
        raise NotSmooth("G(x, 1) has a repeated root")
    return Genus1Quartic(G)


# -- plane quartics -----------------------------------------------------------

# Linear changes tried after the nine direct elimination orders (unimodular, so
# they are invertible modulo every prime).
_EXTRA_FRAMES = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (0, 1, 1), (0, 0, 1)),
    ((1, 0, 1), (0, 1, 1), (0, 0, 1)),
)


@dataclass(frozen=True)
class PlaneQuartic:
    """Smooth plane quartic Q(X, Y, Z) = 0 (the nonhyperelliptic genus-3 model)."""

    form: TernaryForm
    genus = 3
    weight = 1

    @property
    def coeffs(self) -> list[Fraction]:
        return self.form.coeff_vector()

    @cached_property
    def integral(self) -> TernaryForm:
        return self.form.primitive_integral()

    def contains(self, x, y, z) -> bool:
        return self.form(rat(x), rat(y), rat(z)) == 0

    def point(self, x, y, z) -> CurvePoint:
        if not self.contains(x, y, z):
            raise PointNotOnCurve(f"({x} : {y} : {z}) is not on the quartic")
        return CurvePoint(x, y, z, 1)

    def certificates(self) -> Iterator[int]:
        """Nonzero smoothness certificates, computed lazily and cached.

        Each is Res(Res_v(Q_a, Q_b), Res_v(Q_a, Q_c)) for an eliminated variable v
        and partials a, b, c; nonzero (mod p) proves there is no common zero of the
        partials (over the algebraic closure of F_p).
        """
        cache = self.__dict__.setdefault("_cert_cache", {"done": False, "values": [], "next": 0})
        for value in cache["values"]:
            yield value
        if cache["done"]:
            return
        jobs = list(_certificate_jobs())
        while cache["next"] < len(jobs):
            frame, v, a = jobs[cache["next"]]
            cache["next"] += 1
            value = _certificate(self.integral.substitute(frame), v, a)
            if value:
                cache["values"].append(value)
                yield value
        cache["done"] = True

    def to_json(self) -> dict:
        return {"type": "quartic", "coeffs": [str(c) for c in self.coeffs]}

    def __str__(self):
        return "Q = " + " + ".join(f"{c}*X^{i}Y^{j}Z^{k}" for (i, j, k), c in self.form.terms)


def _certificate_jobs():
    for frame in _EXTRA_FRAMES:
        for v in (1, 0, 2):
            for a in (0, 1, 2):
                yield frame, v, a


def _certificate(Q: TernaryForm, v: int, a: int) -> int:
    partials = [Q.partial(i) for i in range(3)]
    b, c = [i for i in range(3) if i != a]
    R1 = eliminate(partials[a], partials[b], v)
    R2 = eliminate(partials[a], partials[c], v)
    value = binary_resultant(R1, R2)
    assert value.denominator == 1
    return int(value)


def validate_quartic(coeffs: Sequence) -> PlaneQuartic:
    if isinstance(coeffs, TernaryForm):
        form = coeffs
    else:
        if len(coeffs) != 15:
            raise WrongDegree(f"a ternary quartic has 15 coefficients, got {len(coeffs)}")
        form = TernaryForm.from_coeffs(coeffs, 4)
    if form.degree != 4:
        raise WrongDegree("not a quartic form")
    if form.is_zero():
        raise ZeroForm("the zero form defines no curve")
    C = PlaneQuartic(form)
    if next(C.certificates(), None) is None:
        raise NotSmooth("every elimination certificate vanishes")
    return C


# -- Weierstrass curves -------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.disc == 0:
            raise NotSmooth(f"singular Weierstrass equation {self}")

    @property
    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self):
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2

    @property
    def c4(self):
        return self.b2 ** 2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def disc(self) -> Fraction:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6

    @property
    def j(self) -> Fraction:
        return self.c4 ** 3 / self.disc

    def contains(self, x, y) -> bool:
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6

    @cached_property
    def integral_model(self):
        from .elliptic import integralize
        return integralize(self)

    def to_json(self) -> dict:
        return {"type": "weierstrass", "ainvs": [str(a) for a in self.ainvs]}

    def __str__(self):
        return "[" + ", ".join(str(a) for a in self.ainvs) + "]"


Curve = PlaneQuartic | HyperellipticG3 | Genus1Quartic | WeierstrassCurve


# -- reduction and point counting ---------------------------------------------

def good_reduction(curve, p: int) -> bool:
    """Conservative good-reduction test (False may mean merely "bad for this model")."""
    if isinstance(curve, PlaneQuartic):
        return any(cert % p for cert in curve.certificates())
    if p == 2:
        return False
    if isinstance(curve, WeierstrassCurve):
        E, _ = curve.integral_model
        return E.disc % p != 0
    if isinstance(curve, _YSquaredModel):
        _, G = curve.integral
        return binary_discriminant(G) % p != 0
    raise TypeError(f"unsupported curve type {type(curve).__name__}")


def count_points_fp(curve, p: int, require_good: bool = True) -> int:
    """#C(F_p) for the reduction of the (minimal integral) model."""
    if require_good and not good_reduction(curve, p):
        raise BadPrime(f"{p} is not a prime of good reduction for this model")
    if isinstance(curve, PlaneQuartic):
        return _count_quartic(curve.integral, p)
    if isinstance(curve, WeierstrassCurve):
        return _count_weierstrass(curve.integral_model[0], p)
    if isinstance(curve, _YSquaredModel):
        if p == 2:
            raise BadPrime("p = 2 is excluded for y^2 models")
        return _count_y2(curve.integral[1], p)
    raise TypeError(f"unsupported curve type {type(curve).__name__}")


def _count_y2(F: BinaryForm, p: int) -> int:
    cs = [mod_p(c, p) for c in F.coeffs]
    total = 0
    for x in range(p):
        v = 0
        for c in reversed(cs):
            v = (v * x + c) % p
        total += 1 + legendre(v, p)
    lc = cs[-1]
    if lc == 0:
        total += 1
    else:
        total += 1 + legendre(lc, p)
    return total


def _count_weierstrass(E: WeierstrassCurve, p: int) -> int:
    a1, a2, a3, a4, a6 = (mod_p(a, p) for a in E.ainvs)
    total = 1
    if p == 2:
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % 2 == 0:
                    total += 1
        return total
    for x in range(p):
        rhs = x ** 3 + a2 * x * x + a4 * x + a6
        total += 1 + legendre(4 * rhs + (a1 * x + a3) ** 2, p)
    return total


def _eval_form_mod(Q: TernaryForm, p: int, X, Y, Z) -> np.ndarray:
    """Q(X, Y, Z) mod p on integer arrays (entries in [0, p))."""
    d = Q.degree
    pw = []
    for arr in (X, Y, Z):
        powers = [np.ones_like(arr)]
        for _ in range(d):
            powers.append(powers[-1] * arr % p)
        pw.append(powers)
    total = np.zeros_like(X)
    for (i, j, k), c in Q.terms:
        cm = mod_p(c, p)
        total = (total + cm * (pw[0][i] * pw[1][j] % p) % p * pw[2][k]) % p
    return total


def _count_quartic(Q: TernaryForm, p: int) -> int:
    count = 0
    ys = np.arange(p, dtype=np.int64)
    chunk = max(1, 2_000_000 // p)
    for start in range(0, p, chunk):
        xs = np.arange(start, min(p, start + chunk), dtype=np.int64)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        X, Y = X.ravel(), Y.ravel()
        count += int(np.count_nonzero(_eval_form_mod(Q, p, X, Y, np.ones_like(X)) == 0))
    xs = np.arange(p, dtype=np.int64)
    count += int(np.count_nonzero(_eval_form_mod(Q, p, xs, np.ones_like(xs), np.zeros_like(xs)) == 0))
    one = np.ones(1, dtype=np.int64)
    count += int(np.count_nonzero(_eval_form_mod(Q, p, one, 0 * one, 0 * one) == 0))
    return count


def hasse_check(E: WeierstrassCurve, p: int) -> bool:
    """|#E(F_p) - (p + 1)| <= 2 sqrt(p), tested exactly as a^2 <= 4p."""
    a = count_points_fp(E, p) - (p + 1)
    return a * a <= 4 * p
