"""Genus-1 quartics y^2 = G(x, z): rational points, local solvability, Weierstrass models."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import (
    BinaryForm, UniPoly, binary_discriminant, factorint, legendre, primes_up_to,
    rat_sqrt,
)
from .errors import PointNotOnCurve
from .models import CurvePoint, Genus1Quartic, WeierstrassCurve
from .search import smallest_square_point

REAL = "R"


# -- local solvability ------------------------------------------------------

def count_real_roots(f: UniPoly) -> int:
    """Number of distinct real roots (Sturm's theorem)."""
    if f.degree < 1:
        return 0
    seq = [f, f.derivative()]
    while seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r)

    def sign_changes(signs):
        signs = [s for s in signs if s]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    at_pos = [1 if g.lc > 0 else -1 for g in seq]
    at_neg = [(1 if g.lc > 0 else -1) * (-1) ** g.degree for g in seq]
    return sign_changes(at_neg) - sign_changes(at_pos)


def real_soluble(G: BinaryForm) -> bool:
    if G.lc >= 0:
        return True
    return count_real_roots(G.dehomogenize()) > 0


def _vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_qp_square(n: int, p: int) -> bool:
    """Is the nonzero integer n a square in Q_p?"""
    v = _vp(n, p)
    if v % 2:
        return False
    u = n // p ** v
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def _taylor(g: list[int], x: int) -> list[int]:
    """Coefficients of g(x + t) in t."""
    cs = list(g)
    n = len(cs)
    out = []
    for _ in range(n):
        acc = 0
        nxt = []
        for c in reversed(cs):
            acc = acc * x + c
            nxt.append(acc)
        out.append(nxt[-1])
        # synthetic division by (t - x): quotient coefficients
        q = nxt[:-1][::-1]
        cs = q
        if not cs:
            break
    return out


def _zp_soluble(g: list[int], p: int, x0: int, k: int, depth: int) -> bool | None:
    """Is y^2 = g(x) soluble with x in x0 + p^k Z_p?  None when the depth budget runs out."""
    unknown = False
    pk = p ** k
    stab = 1 if p != 2 else 3
    for t in range(p):
        x1 = x0 + t * pk
        tay = _taylor(g, x1)
        v0 = tay[0]
        if v0 == 0:
            return True
        if _is_qp_square(v0, p):
            return True
        val0 = _vp(v0, p)
        spread = min((_vp(c, p) + j * (k + 1) for j, c in enumerate(tay) if j and c), default=None)
        if spread is None or spread >= val0 + stab:
            continue  # square class is constant on the disc, and it is not a square
        if depth == 0:
            unknown = True
            continue
        sub = _zp_soluble(g, p, x1, k + 1, depth - 1)
        if sub:
            return True
        if sub is None:
            unknown = True
    return None if unknown else False


def qp_soluble(G: BinaryForm, p: int, depth: int = 40) -> bool | None:
    """Does y^2 = G(x, z) (G integral) have a Q_p-point?  None = undecided within ``depth``."""
    cs = G.int_coeffs()
    d = G.degree
    chart_x = cs
    # x = 1, z = p t with t in Z_p: G(1, p t) = sum c_i (p t)^(d - i)
    chart_z = [c * p ** (d - i) for i, c in enumerate(cs)][::-1]
    results = []
    for g in (chart_x, chart_z):
        r = _zp_soluble(g, p, 0, 0, depth)
        if r:
            return True
        results.append(r)
    return None if None in results else False


def local_places(G: BinaryForm) -> list[int]:
    """Primes tested for local solvability: odd ones ascending, then 2."""
    ps = set(primes_up_to(100))
    for n in (int(binary_discriminant(G)), int(G.coeffs[0]), int(G.coeffs[-1])):
        if n:
            ps.update(factorint(n))
    odd = sorted(p for p in ps if p != 2)
    return odd + [2]


def local_obstructions(D: Genus1Quartic, first_only: bool = True) -> list[str]:
    """Places (``"R"`` or a prime, as a string) where D has no local point."""
    _, G = D.integral
    found = []
    if not real_soluble(G):
        found.append(REAL)
        if first_only:
            return found
    for p in local_places(G):
        if qp_soluble(G, p) is False:
            found.append(str(p))
            if first_only:
                return found
    return found


# -- rational points ----------------------------------------------------------

@dataclass(frozen=True)
class Solvability:
    kind: str  # "PointFound" | "LocallyUnsolvable" | "Undetermined"
    witness: str | None = None
    search_bound: int | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": self.witness, "search_bound": self.search_bound}


def find_point_genus1(D: Genus1Quartic, height_bound: int = 10_000) -> tuple[CurvePoint | None, Solvability]:
    """Look for a rational point on D; certify emptiness by a local obstruction when possible."""
    inf = D.points_at_infinity()
    if inf:
        # prefer the branch with positive y for determinism
        return inf[-1], Solvability("PointFound")
    s, G = D.integral
    coeffs = G.int_coeffs()

    def lift(hit):
        a, b, r = hit
        return D.point(a, Fraction(r) / s, b)

    hit = smallest_square_point(coeffs, min(height_bound, 100), stages=())
    if hit is not None:
        return lift(hit), Solvability("PointFound")
    bad = local_obstructions(D)
    if bad:
        return None, Solvability("LocallyUnsolvable", witness=bad[0])
    if height_bound > 100:
        hit = smallest_square_point(coeffs, height_bound, stages=(1000,))
        if hit is not None:
            return lift(hit), Solvability("PointFound")
    return None, Solvability("Undetermined", search_bound=height_bound)


# -- invariants and Jacobian ----------------------------------------------------

def quartic_invariants(G: BinaryForm) -> tuple[Fraction, Fraction]:
    """The classical invariants I, J of a binary quartic."""
    e, d, c, b, a = G.coeffs  # a x^4 + b x^3 z + c x^2 z^2 + d x z^3 + e z^4
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c ** 3
    return I, J


def jacobian_curve(D: Genus1Quartic) -> WeierstrassCurve:
    """y^2 = x^3 - 27 I x - 27 J, the Jacobian of D."""
    I, J = quartic_invariants(D.G)
    return WeierstrassCurve(0, 0, 0, -27 * I, -27 * J)


# -- Weierstrass models -----------------------------------------------------------

Field = Callable[[Fraction], object]


def _identity(c):
    return c


@dataclass(frozen=True)
class WeierstrassData:
    """Weierstrass model E of (D, P0) with explicit mutually inverse maps.

    The maps are written case by case so that they are defined at every point;
    ``exceptional`` lists where the generic formulas needed special handling.
    """

    D: Genus1Quartic
    P0: CurvePoint
    E: WeierstrassCurve
    method: str  # "odd-degree" | "ramification-point" | "quartic-point"
    params: dict
    mobius: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    exceptional_D: tuple[CurvePoint, ...] = field(default=())
    exceptional_E: tuple[tuple[Fraction, Fraction] | None, ...] = field(default=())

    # -- generic coordinate maps, valid over any field given a constant embedding K --

    def to_E_coords(self, X, W, Z, K: Field = _identity):
        """D-point (X : W : Z) to ``None`` (the origin) or affine (x, y) on E."""
        (m11, m12), (m21, m22) = [[K(c) for c in row] for row in self.mobius]
        det = m11 * m22 - m12 * m21
        Xp = (m22 * X - m12 * Z) / det
        Zp = (-m21 * X + m11 * Z) / det
        P = {k: K(v) for k, v in self.params.items()}
        zero = 0 * Xp
        if self.method == "odd-degree":
            if Zp == zero:
                return None
            b = P["b"]
            return (b * Xp / Zp, b * W / (Zp * Zp))
        if self.method == "ramification-point":
            if Xp == zero:
                return None
            e1 = P["e1"]
            return (e1 * Zp / Xp, e1 * W / (Xp * Xp))
        q, c, d = P["q"], P["c"], P["d"]
        a1, a2, a3 = P["a1"], P["a2"], P["a3"]
        if Zp == zero:
            return (2 * q * W / (Xp * Xp), zero)
        u, v = Xp / Zp, W / (Zp * Zp)
        if u == zero:
            if v == q:
                return None
            return (-a2, a1 * a2 - a3)
        x = (2 * q * (v + q) + d * u) / (u * u)
        y = (4 * q * q * (v + q) + 2 * q * (d * u + c * u * u) - d * d * u * u / (2 * q)) / (u * u * u)
        return (x, y)

    def from_E_coords(self, pt, K: Field = _identity):
        """Affine (x, y) on E, or ``None`` for the origin, to D-coordinates (X, W, Z)."""
        P = {k: K(v) for k, v in self.params.items()}
        if self.method == "odd-degree":
            if pt is None:
                Xp, W, Zp = K(Fraction(1)), K(Fraction(0)), K(Fraction(0))
            else:
                b = P["b"]
                Xp, W, Zp = pt[0] / b, pt[1] / b, K(Fraction(1))
        elif self.method == "ramification-point":
            if pt is None:
                Xp, W, Zp = K(Fraction(0)), K(Fraction(0)), K(Fraction(1))
            else:
                e1 = P["e1"]
                Xp, W, Zp = K(Fraction(1)), pt[1] / e1, pt[0] / e1
        else:
            q, d = P["q"], P["d"]
            a1, a2, a3, a4 = P["a1"], P["a2"], P["a3"], P["a4"]
            if pt is None:
                Xp, W, Zp = K(Fraction(0)), q, K(Fraction(1))
            else:
                x, y = pt
                zero = 0 * x
                if y != zero:
                    u = 2 * q * (x + a2) / y
                elif x * x + a4 == zero:
                    u = None  # image of a point at infinity
                else:
                    # here x = -a2; use (x + a2)(x^2 + a4) = y (y + a1 x + a3)
                    u = 2 * q * (y + a1 * x + a3) / (x * x + a4)
                if u is None:
                    Xp, W, Zp = K(Fraction(1)), x / (2 * q), zero
                else:
                    Xp, W, Zp = u, -q + u * (u * x - d) / (2 * q), K(Fraction(1))
        (m11, m12), (m21, m22) = [[K(c) for c in row] for row in self.mobius]
        return (m11 * Xp + m12 * Zp, W, m21 * Xp + m22 * Zp)

    # -- rational points --

    def to_E(self, P: CurvePoint):
        from .elliptic import ECPoint
        xy = self.to_E_coords(P.x, P.y, P.z)
        return ECPoint(self.E, None, None) if xy is None else ECPoint(self.E, *xy)

    def from_E(self, Q) -> CurvePoint:
        X, W, Z = self.from_E_coords(None if Q.is_infinity else (Q.x, Q.y))
        return self.D.point(X, W, Z)

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "P0": self.P0.to_json(),
            "E": self.E.to_json(),
            "mobius": [[str(c) for c in row] for row in self.mobius],
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "to_E": _FORMULAS[self.method][0],
            "from_E": _FORMULAS[self.method][1],
            "exceptional_D": [P.to_json() for P in self.exceptional_D],
            "exceptional_E": [None if Q is None else [str(Q[0]), str(Q[1])] for Q in self.exceptional_E],
        }


_FORMULAS = {
    "odd-degree": ("(X':W:Z') -> (b*X'/Z', b*W/Z'^2); Z'=0 -> O",
                   "(x, y) -> (x/b : y/b : 1); O -> (1 : 0 : 0)"),
    "ramification-point": ("(X':W:Z') -> (e1*Z'/X', e1*W/X'^2); X'=0 -> O",
                           "(x, y) -> (1 : y/e1 : x/e1); O -> (0 : 0 : 1)"),
    "quartic-point": ("u=X'/Z', v=W/Z'^2: x=(2q(v+q)+d u)/u^2, "
                      "y=(4q^2(v+q)+2q(d u+c u^2)-d^2 u^2/(2q))/u^3; (0,q) -> O, (0,-q) -> (-a2, a1 a2 - a3), "
                      "(1:s:0) -> (2 q s, 0)",
                      "u=2q(x+a2)/y, v=-q+u(u x-d)/(2q) -> (u : v : 1); y=0, x^2=-a4 -> (1 : x/(2q) : 0); "
                      "(-a2, 0) -> u=2q(a3-a1 a2)/(a2^2+a4); O -> (0 : q : 1)"),
}


def quartic_to_weierstrass(D: Genus1Quartic, P0: CurvePoint) -> WeierstrassData:
    """Weierstrass model of the elliptic curve (D, P0), P0 mapping to the origin."""
    if not D.contains(*P0.coords):
        raise PointNotOnCurve(f"{P0} is not on {D}")
    G = D.G
    one, zero = Fraction(1), Fraction(0)
    if G.lc == 0 and P0.z == 0:
        _, d, c, b, _ = G.coeffs  # G = b x^3 z + c x^2 z^2 + d x z^3 + e z^4
        e = G.coeffs[0]
        E = WeierstrassCurve(0, c, 0, b * d, b * b * e)
        mob = ((one, zero), (zero, one))
        params = {"b": b}
        wd = WeierstrassData(D, P0, E, "odd-degree", params, mob)
        return _with_exceptional(wd)
    # move P0 to (0 : q : 1)
    if P0.z != 0:
        mob = ((one, P0.x), (zero, one))
    else:
        mob = ((zero, one), (one, zero))
    Gp = G.substitute(mob)
    e0, d, c, b, a = Gp.coeffs
    q = P0.y
    assert q * q == e0
    if q == 0:
        e1, e2, e3, e4 = d, c, b, a
        E = WeierstrassCurve(0, e2, 0, e1 * e3, e1 * e1 * e4)
        wd = WeierstrassData(D, P0, E, "ramification-point", {"e1": e1}, mob)
        return _with_exceptional(wd)
    a1 = d / q
    a2 = c - d * d / (4 * q * q)
    a3 = 2 * q * b
    a4 = -4 * q * q * a
    a6 = a2 * a4
    E = WeierstrassCurve(a1, a2, a3, a4, a6)
    params = {"q": q, "a": a, "b": b, "c": c, "d": d, "a1": a1, "a2": a2, "a3": a3, "a4": a4}
    return _with_exceptional(WeierstrassData(D, P0, E, "quartic-point", params, mob))


def _with_exceptional(wd: WeierstrassData) -> WeierstrassData:
    """Record the rational points where the generic formulas are replaced by special cases."""
    (m11, m12), (m21, m22) = wd.mobius

    def D_point(Xp, W, Zp):
        return wd.D.point(m11 * Xp + m12 * Zp, W, m21 * Xp + m22 * Zp)

    exD: list[CurvePoint] = [wd.P0]
    exE: list = [None]
    if wd.method == "quartic-point":
        q, a2, a1, a3, a4 = (wd.params[k] for k in ("q", "a2", "a1", "a3", "a4"))
        exD.append(D_point(Fraction(0), -q, Fraction(1)))
        s = rat_sqrt(wd.params["a"])
        if s is not None:
            for t in sorted({s, -s}):
                exD.append(D_point(Fraction(1), t, Fraction(0)))
        exE.append((-a2, Fraction(0)))
        if s is not None:
            exE += [(2 * q * t, Fraction(0)) for t in sorted({s, -s})]
    elif wd.method == "ramification-point":
        s = rat_sqrt(wd.D.G.substitute(wd.mobius).lc)
        if s is not None:
            for t in sorted({s, -s}):
                exD.append(D_point(Fraction(1), t, Fraction(0)))
    exD = list(dict.fromkeys(exD))
    return WeierstrassData(wd.D, wd.P0, wd.E, wd.method, wd.params, wd.mobius, tuple(exD), tuple(exE))
