"""Exact arithmetic over Q.

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator). Polynomials are immutable coefficient tuples, constant
term first. Nothing in here touches floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import BadPrime, ZeroPolynomial

Rat = Fraction

__all__ = [
    "Rat", "rat", "rat_str", "rat_sqrt", "lcm_denominators",
    "UniPoly", "BinaryForm", "FpPoly",
    "poly_gcd", "is_squarefree", "resultant", "discriminant", "sylvester_resultant",
    "determinant", "reduce_mod_p", "legendre", "sqrt_mod_p",
    "is_prime", "primes_up_to", "factorint", "divisors", "square_part", "integer_roots",
]


def rat(value) -> Fraction:
    """Coerce an int, Fraction or ``"n/d"`` string to a Fraction. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(q: Fraction) -> str:
    return str(q)


def rat_sqrt(q) -> Fraction | None:
    """The nonnegative rational square root of ``q``, or None if ``q`` is not a square."""
    q = rat(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def lcm_denominators(values: Iterable[Fraction]) -> int:
    return reduce(math.lcm, (rat(v).denominator for v in values), 1)


def _strip(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


# -- univariate polynomials ---------------------------------------------------

@dataclass(frozen=True, init=False)
class UniPoly:
    """Dense univariate polynomial over Q; ``coeffs[i]`` is the coefficient of x^i."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", tuple(_strip([rat(c) for c in coeffs])))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x):
        acc = 0 * x  # keeps the type of x (Fraction, int, ...)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> "UniPoly":
        return other if isinstance(other, UniPoly) else UniPoly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = UniPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv = 1 / other.lc
        dg = other.degree
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k] * inv
            if c:
                q[k - dg] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dg + j] -= c * b
        return UniPoly(q), UniPoly(rem[:dg] if dg > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lc
        return UniPoly(c * inv for c in self.coeffs)

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def integer_coeffs(self) -> tuple[int, list[int]]:
        """Return ``(L, A)`` with ``L * self`` equal to the integer polynomial ``A``."""
        L = lcm_denominators(self.coeffs)
        return L, [int(c * L) for c in self.coeffs]

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = [f"{c}*x^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return "UniPoly(" + " + ".join(terms) + ")"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; ``poly_gcd(a, 0) == a.monic()``."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_squarefree(f: UniPoly) -> bool:
    if f.is_zero():
        raise ZeroPolynomial("squarefreeness of the zero polynomial")
    return poly_gcd(f, f.derivative()).degree == 0


def _int_content(cs: Sequence[int]) -> int:
    return reduce(math.gcd, cs, 0)


def _prem(A: list[int], B: list[int]) -> list[int]:
    """Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B over Z (low-to-high lists)."""
    R = list(A)
    dB = len(B) - 1
    lb = B[-1]
    e = len(A) - len(B) + 1
    while len(R) - 1 >= dB and R:
        k = len(R) - 1
        c = R[-1]
        R = [lb * r for r in R]
        for j, b in enumerate(B):
            R[k - dB + j] -= c * b
        _strip(R)
        e -= 1
        if not R:
            break
    # finish the pending lc(B) powers so the result is the true prem
    if e > 0:
        R = [r * lb ** e for r in R]
    return R


def _subresultant_int(A: list[int], B: list[int]) -> int:
    """Resultant of nonzero integer polynomials by the subresultant PRS."""
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0:
        return A[0] ** dB
    if dB == 0:
        return B[0] ** dA
    a, b = _int_content(A), _int_content(B)
    A = [x // a for x in A]
    B = [x // b for x in B]
    g = h = Fraction(1)
    s = 1
    t = a ** dB * b ** dA
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA % 2 and dB % 2:
            s = -1
    while True:
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return 0
        A = B
        divisor = g * h ** delta
        Bq = [Fraction(r) / divisor for r in R]
        assert all(x.denominator == 1 for x in Bq), "subresultant division not exact"
        B = [int(x) for x in Bq]
        g = Fraction(A[-1])
        h = h ** (1 - delta) * g ** delta
        dA, dB = len(A) - 1, len(B) - 1
        if dB == 0:
            break
    h = h ** (1 - dA) * Fraction(B[-1]) ** dA
    out = s * t * h
    assert out.denominator == 1
    return int(out)


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Res(a, b) with respect to the actual degrees of ``a`` and ``b``."""
    if a.is_zero() or b.is_zero():
        raise ZeroPolynomial("resultant with the zero polynomial")
    La, A = a.integer_coeffs()
    Lb, B = b.integer_coeffs()
    return Fraction(_subresultant_int(A, B), La ** b.degree * Lb ** a.degree)


def discriminant(f: UniPoly) -> Fraction:
    n = f.degree
    if n < 1:
        raise ZeroPolynomial("discriminant needs degree >= 1")
    if n == 1:
        return Fraction(1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination with row pivoting."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = 1
    M = []
    for row in rows:
        row = [rat(x) for x in row]
        L = lcm_denominators(row)
        scale *= L
        M.append([int(x * L) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = M[k][k]
        for i in range(k + 1, n):
            Mi, mik = M[i], M[i][k]
            Mk = M[k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * pivot - mik * Mk[j]) // prev
        prev = pivot
    return Fraction(sign * M[n - 1][n - 1], scale)


def sylvester_resultant(f: Sequence, g: Sequence, m: int, n: int) -> Fraction:
    """Resultant of ``f``, ``g`` (low-to-high coefficient lists) for formal degrees m, n.

    Leading zero coefficients are allowed; if both formal leading coefficients
    vanish the result is 0, which is what homogeneous elimination needs.
    """
    f = [rat(c) for c in f] + [Fraction(0)] * (m + 1 - len(f))
    g = [rat(c) for c in g] + [Fraction(0)] * (n + 1 - len(g))
    if len(f) != m + 1 or len(g) != n + 1:
        raise ValueError("coefficient list longer than the formal degree")
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    fh, gh = f[::-1], g[::-1]
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + fh + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gh + [Fraction(0)] * (size - n - 1 - i))
    return determinant(rows)


# -- binary forms --------------------------------------------------------------

@dataclass(frozen=True, init=False)
class BinaryForm:
    """Homogeneous form of degree d in X, Z; ``coeffs[i]`` multiplies X^i Z^(d-i)."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, degree: int, coeffs: Iterable = ()):
        cs = [rat(c) for c in coeffs]
        if len(cs) > degree + 1:
            if any(cs[degree + 1:]):
                raise ValueError(f"coefficients exceed degree {degree}")
            cs = cs[:degree + 1]
        cs += [Fraction(0)] * (degree + 1 - len(cs))
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_poly(cls, f: UniPoly, degree: int) -> "BinaryForm":
        if f.degree > degree:
            raise ValueError("polynomial degree exceeds form degree")
        return cls(degree, f.coeffs)

    def dehomogenize(self) -> UniPoly:
        """F(x, 1)."""
        return UniPoly(self.coeffs)

    def reversed(self) -> UniPoly:
        """F(1, z) as a polynomial in z."""
        return UniPoly(self.coeffs[::-1])

    @property
    def lc(self) -> Fraction:
        """Coefficient of X^d, i.e. F(1, 0)."""
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, x, z):
        zp = 1
        d = self.degree
        acc = self.coeffs[d] * (x ** 0)
        for i in range(d - 1, -1, -1):
            zp = zp * z
            acc = acc * x + self.coeffs[i] * zp
        return acc

    def __add__(self, other: "BinaryForm"):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return BinaryForm(self.degree, (-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            p = self.dehomogenize() * other.dehomogenize()
            return BinaryForm(self.degree + other.degree, p.coeffs)
        c = rat(other)
        return BinaryForm(self.degree, (c * a for a in self.coeffs))

    __rmul__ = __mul__

    def substitute(self, matrix) -> "BinaryForm":
        """F(aX + bZ, cX + dZ) for ``matrix = ((a, b), (c, d))``."""
        (a, b), (c, d) = [[rat(v) for v in row] for row in matrix]
        lx = UniPoly((b, a))
        lz = UniPoly((d, c))
        acc = UniPoly()
        for i, coef in enumerate(self.coeffs):
            if coef:
                acc = acc + coef * lx ** i * lz ** (self.degree - i)
        return BinaryForm(self.degree, acc.coeffs)

    def integer_model(self) -> tuple[int, "BinaryForm"]:
        """``(L, L*F)`` with the second form integral."""
        L = lcm_denominators(self.coeffs)
        return L, self * L

    def int_coeffs(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("form is not integral")
        return [int(c) for c in self.coeffs]

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return f"BinaryForm({self.degree}, {[str(c) for c in self.coeffs]})"


def binary_resultant(F: BinaryForm, G: BinaryForm) -> Fraction:
    return sylvester_resultant(F.coeffs, G.coeffs, F.degree, G.degree)


def binary_discriminant(F: BinaryForm) -> Fraction:
    """Discriminant w.r.t. the formal degree, up to sign; zero on a double root at infinity."""
    d = F.degree
    f = F.dehomogenize()
    if f.degree == d:
        return discriminant(f)
    if f.degree == d - 1:
        return f.lc ** 2 * (discriminant(f) if f.degree >= 1 else Fraction(1))
    return Fraction(0)


# -- polynomials over F_p -------------------------------------------------------

@dataclass(frozen=True, init=False)
class FpPoly:
    p: int
    coeffs: tuple[int, ...]

    def __init__(self, p: int, coeffs: Iterable[int]):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(_strip([int(c) % p for c in coeffs])))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __add__(self, other: "FpPoly") -> "FpPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FpPoly(self.p, (x + y for x, y in zip(a, b)))

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        if other.p != self.p:
            raise ValueError("different characteristics")
        if not self.coeffs or not other.coeffs:
            return FpPoly(self.p, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return FpPoly(self.p, out)


@dataclass(frozen=True)
class GF:
    """An element of F_p.  Mixed arithmetic with ``int`` and ``Fraction`` reduces the other operand."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _lift(self, other) -> "GF":
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError("different characteristics")
            return other
        return GF(mod_p(other, self.p), self.p)

    def __add__(self, other):
        return GF(self.value + self._lift(other).value, self.p)

    __radd__ = __add__

    def __neg__(self):
        return GF(-self.value, self.p)

    def __sub__(self, other):
        return GF(self.value - self._lift(other).value, self.p)

    def __rsub__(self, other):
        return GF(self._lift(other).value - self.value, self.p)

    def __mul__(self, other):
        return GF(self.value * self._lift(other).value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._lift(other).value
        if d == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return GF(self.value * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n: int):
        return GF(pow(self.value, n, self.p) if n >= 0 else pow(pow(self.value, -1, self.p), -n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, GF):
            return self.p == other.p and self.value == other.value
        try:
            return self.value == mod_p(other, self.p)
        except (BadPrime, TypeError):
            return False

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def mod_p(q: Fraction, p: int) -> int:
    q = rat(q)
    if q.denominator % p == 0:
        raise BadPrime(f"{p} divides the denominator of {q}")
    return q.numerator * pow(q.denominator, -1, p) % p


def reduce_mod_p(f: UniPoly | BinaryForm, p: int) -> FpPoly:
    return FpPoly(p, (mod_p(c, p) for c in f.coeffs))


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_p(a: int, p: int) -> int | None:
    """Some square root of ``a`` mod an odd prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


# -- primes and factoring ---------------------------------------------------

_TRIAL_LIMIT = 10 ** 12
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Trial division below 10^12; Miller-Rabin with fixed bases beyond."""
    if n < 2:
        return False
    if n < _TRIAL_LIMIT:
        if n % 2 == 0:
            return n == 2
        f = 3
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i, v in enumerate(sieve) if v]


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        x = ys = 2
        f = lambda v: (v * v + c) % n  # noqa: E731
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def factorint(n: int) -> dict[int, int]:
    """Prime factorisation of |n| (trial division to 10^4, then Pollard-Brent)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f, step = 7, 4
    while f < 10 ** 4 and f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += step
        step = 6 - step
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_brent(m)
        stack += [d, m // d]
    return dict(sorted(out.items()))


def divisors(n: int) -> list[int]:
    """Positive divisors of |n| in increasing order."""
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def square_part(n: int) -> int:
    """Largest s with s^2 dividing n."""
    s = 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
    return s


def integer_roots(coeffs: Sequence[int]) -> list[int]:
    """Distinct integer roots of a nonzero integer polynomial (low-to-high)."""
    cs = _strip([int(c) for c in coeffs])
    if not cs:
        raise ZeroPolynomial("roots of the zero polynomial")
    roots = set()
    while cs and cs[0] == 0:
        roots.add(0)
        cs = cs[1:]
    if len(cs) > 1:
        for d in divisors(cs[0]):
            for r in (d, -d):
                acc = 0
                for c in reversed(cs):
                    acc = acc * r + c
                if acc == 0:
                    roots.add(r)
    return sorted(roots)
