"""Elliptic curves over Q: group law, integral models, torsion, rank-0 falsification."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .arith import factorint, integer_roots, is_prime, rat
from .errors import MixedCurves, PointNotOnCurve, RankPositive, UnclassifiableTorsion
from .models import WeierstrassCurve, count_points_fp, good_reduction
from .search import square_points

MAZUR_LABELS = tuple([f"Z/{n}" for n in (*range(1, 11), 12)] + [f"Z/2xZ/{2 * n}" for n in range(1, 5)])


@dataclass(frozen=True)
class ECPoint:
    """A point of E(Q); ``x = y = None`` is the origin."""

    curve: WeierstrassCurve
    x: Fraction | None
    y: Fraction | None

    def __post_init__(self):
        if self.x is None:
            return
        object.__setattr__(self, "x", rat(self.x))
        object.__setattr__(self, "y", rat(self.y))
        if not self.curve.contains(self.x, self.y):
            raise PointNotOnCurve(f"({self.x}, {self.y}) is not on {self.curve}")

    @classmethod
    def infinity(cls, E: WeierstrassCurve) -> "ECPoint":
        return cls(E, None, None)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "ECPoint":
        if self.is_infinity:
            return self
        E = self.curve
        return ECPoint(E, self.x, -self.y - E.a1 * self.x - E.a3)

    def __add__(self, other: "ECPoint") -> "ECPoint":
        if other.curve != self.curve:
            raise MixedCurves("points lie on different curves")
        if self.is_infinity:
            return other
        if other.is_infinity:
            return self
        E = self.curve
        a1, a2, a3, a4, _ = E.ainvs
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return ECPoint.infinity(E)
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return ECPoint(E, x3, y3)

    def __sub__(self, other: "ECPoint") -> "ECPoint":
        return self + (-other)

    def __mul__(self, n: int) -> "ECPoint":
        if n < 0:
            return (-self) * (-n)
        result, base = ECPoint.infinity(self.curve), self
        while n:
            if n & 1:
                result = result + base
            base = base + base
            n >>= 1
        return result

    __rmul__ = __mul__

    def order(self, cap: int = 12) -> int | None:
        """Exact order if at most ``cap``, else None."""
        Q = self
        for n in range(1, cap + 1):
            if Q.is_infinity:
                return n
            Q = Q + self
        return None

    def sort_key(self):
        return (0,) if self.is_infinity else (1, self.x, self.y)

    def to_json(self):
        return "O" if self.is_infinity else [str(self.x), str(self.y)]

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"

    __repr__ = __str__


# -- integral models ---------------------------------------------------------

def integralize(E: WeierstrassCurve) -> tuple[WeierstrassCurve, int]:
    """Integral model via a_i -> u^i a_i with the least positive integer u; points scale by (u^2, u^3)."""
    weights = (1, 2, 3, 4, 6)
    u = 1
    for p in sorted({q for a in E.ainvs if a for q in factorint(a.denominator)}):
        k = 0
        while any((a * p ** (k * w)).denominator % p == 0 for a, w in zip(E.ainvs, weights) if a):
            k += 1
        u *= p ** k
    return WeierstrassCurve(*(a * u ** w for a, w in zip(E.ainvs, weights))), u


def scale_point(P: ECPoint, target: WeierstrassCurve, u) -> ECPoint:
    """(x, y) -> (u^2 x, u^3 y) on ``target``."""
    if P.is_infinity:
        return ECPoint.infinity(target)
    u = rat(u)
    return ECPoint(target, P.x * u * u, P.y * u ** 3)


def short_integral_model(E: WeierstrassCurve):
    """An integral model y^2 = x^3 + A x^2 + B x + C, with isomorphisms to and from E.

    Completing the square gives y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4; the result is then integralized.
    """
    a1, _, a3, _, _ = E.ainvs
    W = WeierstrassCurve(0, E.b2 / 4, 0, E.b4 / 2, E.b6 / 4)
    Wint, u = integralize(W)

    def forward(P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return ECPoint.infinity(Wint)
        return ECPoint(Wint, P.x * u * u, (P.y + (a1 * P.x + a3) / 2) * u ** 3)

    def back(P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return ECPoint.infinity(E)
        x = P.x / (u * u)
        return ECPoint(E, x, P.y / u ** 3 - (a1 * x + a3) / 2)

    return Wint, forward, back


# -- torsion -----------------------------------------------------------------

def good_odd_primes(E: WeierstrassCurve, count: int):
    found, p = [], 3
    while len(found) < count:
        if is_prime(p) and good_reduction(E, p):
            found.append(p)
        p += 2
    return found


def torsion_bound(E: WeierstrassCurve, nprimes: int = 8) -> tuple[int, list[int]]:
    primes = good_odd_primes(E, nprimes)
    return reduce(math.gcd, (count_points_fp(E, p) for p in primes)), primes


@dataclass(frozen=True)
class TorsionGroup:
    curve: WeierstrassCurve
    points: tuple[ECPoint, ...]
    structure: str
    generators: tuple[ECPoint, ...]
    bound: int = 0
    primes: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.points)

    def __contains__(self, P: ECPoint) -> bool:
        return P in self.points

    def to_json(self) -> dict:
        return {
            "structure": self.structure,
            "order": self.order,
            "points": [P.to_json() for P in self.points],
            "generators": [P.to_json() for P in self.generators],
        }


def _cubic_disc(A: int, B: int, C: int) -> int:
    return -4 * A ** 3 * C + A * A * B * B + 18 * A * B * C - 4 * B ** 3 - 27 * C * C


def _nagell_lutz_candidates(A: int, B: int, C: int):
    """Integral (x, y) on y^2 = x^3 + A x^2 + B x + C with y = 0 or y^2 | disc."""
    cubic = [C, B, A, 1]
    out = [(x, 0) for x in integer_roots(cubic)]
    disc = abs(_cubic_disc(A, B, C))
    fac = factorint(disc)
    ys = [1]
    for p, e in fac.items():
        ys = [y * p ** k for y in ys for k in range(e // 2 + 1)]
    for y in sorted(ys):
        for x in integer_roots([C - y * y, B, A, 1]):
            out += [(x, y), (x, -y)]
    return out


def classify(points) -> tuple[str, tuple]:
    """Mazur label of a finite subgroup given as a list of its points."""
    n = len(points)
    two_torsion = [P for P in points if not P.is_infinity and (P + P).is_infinity]
    orders = {P: P.order(12) for P in points}
    if len(two_torsion) == 3:
        label = f"Z/2xZ/{n // 2}"
        m = n // 2
        g1 = min((P for P in points if orders[P] == m), key=ECPoint.sort_key)
        multiples = {g1 * k for k in range(m)}
        g2 = min((P for P in two_torsion if P not in multiples), key=ECPoint.sort_key)
        gens = (g1, g2)
    else:
        label = f"Z/{n}"
        cyc = [P for P in points if orders[P] == n]
        if not cyc:
            raise UnclassifiableTorsion(f"group of order {n} with no generator")
        gens = () if n == 1 else (min(cyc, key=ECPoint.sort_key),)
    if label not in MAZUR_LABELS:
        raise UnclassifiableTorsion(f"{label} is not on Mazur's list")
    return label, gens


def torsion_subgroup(E: WeierstrassCurve, nprimes: int = 8) -> TorsionGroup:
    """E(Q)_tors by reduction bound + Nagell-Lutz on a short integral model."""
    bound, primes = torsion_bound(E, nprimes)
    W, _, back = short_integral_model(E)
    A, B, C = (int(W.a2), int(W.a4), int(W.a6))
    allowed = [n for n in range(2, 13) if bound % n == 0]
    found = {ECPoint.infinity(E)}
    if allowed:
        for x, y in _nagell_lutz_candidates(A, B, C):
            P = ECPoint(W, x, y)
            n = P.order(12)
            if n is not None and n in allowed:
                found.add(back(P))
    # close under the group law
    frontier = list(found)
    while frontier:
        new = []
        for P in frontier:
            for Q in list(found):
                S = P + Q
                if S not in found:
                    found.add(S)
                    new.append(S)
        frontier = new
    points = tuple(sorted(found, key=ECPoint.sort_key))
    if bound % len(points):
        raise UnclassifiableTorsion(f"{len(points)} torsion points do not divide the bound {bound}")
    label, gens = classify(points)
    return TorsionGroup(E, points, label, gens, bound, tuple(primes))


# -- rank 0 ------------------------------------------------------------------

@dataclass(frozen=True)
class RankEvidence:
    verdict: str  # "ConsistentWithRank0" | "RankPositive" | "AssumedRank0"
    search_bound: int
    primes_used: tuple[int, ...] = ()
    witness: ECPoint | None = None

    @property
    def passes(self) -> bool:
        return self.verdict != "RankPositive"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "search_bound": self.search_bound,
            "primes_used": list(self.primes_used),
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def rank0_falsify(E: WeierstrassCurve, T: TorsionGroup, height_bound: int = 10_000,
                  assume_rank0: bool = False) -> RankEvidence:
    """Search x = a/e^2 (e^2 <= H, |a| <= H) for a non-torsion point of E(Q)."""
    if assume_rank0:
        return RankEvidence("AssumedRank0", 0, T.primes)
    W, _, back = short_integral_model(E)
    A, B, C = (int(W.a2), int(W.a4), int(W.a6))
    # a^3 + A a^2 b + B a b^2 + C b^3 at b = e^2
    es = range(1, math.isqrt(height_bound) + 1) if height_bound > 0 else range(0)
    for a, b, r in square_points([C, B, A, 1], height_bound, (e * e for e in es)):
        e = math.isqrt(b)
        for y in (r, -r):
            P = back(ECPoint(W, Fraction(a, e * e), Fraction(y, e ** 3)))
            if P not in T:
                return RankEvidence("RankPositive", height_bound, T.primes, P)
    return RankEvidence("ConsistentWithRank0", height_bound, T.primes)


def mordell_weil_rank0(E: WeierstrassCurve, T: TorsionGroup | None = None,
                       evidence: RankEvidence | None = None) -> list[ECPoint]:
    """E(Q) under the rank-0 hypothesis: the torsion points."""
    T = T or torsion_subgroup(E)
    evidence = evidence or rank0_falsify(E, T)
    if not evidence.passes:
        raise RankPositive(evidence.witness)
    return list(T.points)
