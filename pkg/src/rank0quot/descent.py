"""C(Q) from a rank-0 genus-1 quotient, with search cross-checks and Coleman/Stoll audits."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import is_prime, primes_up_to
from .elliptic import ECPoint, RankEvidence, TorsionGroup, rank0_falsify, torsion_subgroup
from .errors import BoundViolated, ConsistencyError, QuotientNotGenus1
from .genus1 import Solvability, WeierstrassData, find_point_genus1, jacobian_curve, quartic_to_weierstrass
from .models import (
    CurvePoint, PlaneQuartic, _YSquaredModel,
    count_points_fp, good_reduction,
)
from .search import square_points
from .symmetry import Involution, QuotientData, build_quotient, detect_involutions, is_ciani


@dataclass(frozen=True)
class SolveOptions:
    height_bound: int = 10_000
    search_oracle_bound: int = 100
    assume_rank0: bool = False
    assumed_rank: int | None = None
    audit_primes: tuple[int, ...] | None = None
    extra_transforms: tuple = ()


@dataclass(frozen=True)
class SolveStatus:
    kind: str  # Solved | EmptyCertified | RankPositiveQuotient | Undetermined | NotEligible
    points: tuple[CurvePoint, ...] = ()
    witness: str | None = None
    search_bound: int | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind in ("Solved", "EmptyCertified"):
            out["points"] = [P.to_json() for P in self.points]
            out["count"] = len(self.points)
        if self.witness is not None:
            out["witness"] = self.witness
        if self.search_bound is not None:
            out["search_bound"] = self.search_bound
        if self.reason is not None:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class BoundAudit:
    p: int
    count_fp: int
    g: int
    r: int | None
    coleman: int
    coleman_valid: bool
    stoll: int | None
    stoll_valid: bool
    n_points: int

    @property
    def coleman_sharp(self) -> bool:
        return self.n_points == self.coleman

    @property
    def stoll_sharp(self) -> bool:
        return self.stoll is not None and self.n_points == self.stoll

    @property
    def sharp(self) -> bool:
        return (self.coleman_valid and self.coleman_sharp) or (self.stoll_valid and self.stoll_sharp)

    def to_json(self) -> dict:
        return {
            "p": self.p, "count_fp": self.count_fp, "g": self.g, "r": self.r,
            "coleman": {"bound": self.coleman, "valid": self.coleman_valid, "sharp": self.coleman_sharp},
            "stoll": None if self.stoll is None else
            {"bound": self.stoll, "valid": self.stoll_valid, "sharp": self.stoll_sharp},
        }


@dataclass
class QuotientAttempt:
    involution: Involution
    quotient: QuotientData | None = None
    solvability: Solvability | None = None
    weierstrass: WeierstrassData | None = None
    torsion: TorsionGroup | None = None
    evidence: RankEvidence | None = None
    error: str | None = None

    @property
    def passes_rank_gate(self) -> bool:
        return self.evidence is not None and self.evidence.passes

    def to_json(self) -> dict:
        out = {"involution": self.involution.to_json()}
        if self.error:
            out["error"] = self.error
        if self.quotient is not None:
            out["quotient"] = self.quotient.to_json()
        if self.solvability is not None:
            out["solvability"] = self.solvability.to_json()
        if self.weierstrass is not None:
            out["weierstrass"] = self.weierstrass.to_json()
        if self.torsion is not None:
            out["torsion"] = self.torsion.to_json()
        if self.evidence is not None:
            out["rank_evidence"] = self.evidence.to_json()
        return out


@dataclass
class SolveResult:
    curve: object
    status: SolveStatus
    attempts: list[QuotientAttempt] = field(default_factory=list)
    audits: list[BoundAudit] = field(default_factory=list)
    rank: int | None = None
    rank_conditional: bool = False
    D_points: tuple[CurvePoint, ...] = ()
    chosen: int | None = None

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_json(),
            "status": self.status.to_json(),
            "quotients": [a.to_json() for a in self.attempts],
            "chosen_quotient": self.chosen,
            "D_points": [P.to_json() for P in self.D_points],
            "rank": {"r": self.rank, "conditional": self.rank_conditional},
            "audits": [a.to_json() for a in self.audits],
        }


# -- naive searches (the independent oracle) --------------------------------------

def search_points(curve, bound: int) -> list[CurvePoint]:
    """Every rational point of naive height <= bound, by exhaustive search."""
    if isinstance(curve, PlaneQuartic):
        return _search_quartic(curve, bound)
    if isinstance(curve, _YSquaredModel):
        return _search_y2(curve, bound)
    raise TypeError(f"unsupported curve type {type(curve).__name__}")


def _search_y2(C, bound: int) -> list[CurvePoint]:
    s, F = C.integral
    out = set(P for P in C.points_at_infinity())
    for a, b, r in square_points(F.int_coeffs(), bound, range(1, bound + 1)):
        for y in {r, -r}:
            out.add(C.point(a, Fraction(y) / s, b))
    return sorted(out)


def _search_quartic(C: PlaneQuartic, bound: int) -> list[CurvePoint]:
    Q = C.integral
    coeffs = [int(c) for _, c in Q.terms]
    if max(abs(c) for c in coeffs) * len(coeffs) * bound ** 4 >= 2 ** 62:
        return _search_quartic_slow(C, bound)
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    X, Y = np.meshgrid(rng, rng, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    pw_x = [np.ones_like(X)]
    pw_y = [np.ones_like(Y)]
    for _ in range(4):
        pw_x.append(pw_x[-1] * X)
        pw_y.append(pw_y[-1] * Y)
    out = set()
    for z in range(0, bound + 1):
        total = np.zeros_like(X)
        for (i, j, k), c in Q.terms:
            total += int(c) * z ** k * pw_x[i] * pw_y[j]
        for idx in np.nonzero(total == 0)[0]:
            x, y = int(X[idx]), int(Y[idx])
            if (x, y, z) == (0, 0, 0) or math.gcd(math.gcd(x, y), z) != 1:
                continue
            out.add(C.point(x, y, z))
    return sorted(out)


def _search_quartic_slow(C: PlaneQuartic, bound: int) -> list[CurvePoint]:
    out = set()
    for z in range(bound + 1):
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                if math.gcd(math.gcd(x, y), z) == 1 and C.contains(x, y, z):
                    out.add(C.point(x, y, z))
    return sorted(out)


# -- the algorithm ------------------------------------------------------------------

def rational_points_on_D(qd: QuotientData, wd: WeierstrassData, EQ: Sequence[ECPoint]) -> list[CurvePoint]:
    D = qd.D
    out = {wd.from_E(P) for P in EQ}
    for P in wd.exceptional_D:
        if D.contains(*P.coords):
            out.add(P)
    for P in out:
        if not D.contains(*P.coords):
            raise ConsistencyError(f"{P} is not on D")
    return sorted(out)


def fiber(qd: QuotientData, P: CurvePoint) -> list[CurvePoint]:
    return qd.fiber(P)


def _attempt(C, inv: Involution, options: SolveOptions) -> QuotientAttempt:
    att = QuotientAttempt(inv)
    try:
        att.quotient = build_quotient(C, inv)
    except QuotientNotGenus1 as exc:
        att.error = str(exc)
        return att
    D = att.quotient.D
    P0, att.solvability = find_point_genus1(D, options.height_bound)
    if P0 is not None:
        att.weierstrass = quartic_to_weierstrass(D, P0)
        E = att.weierstrass.E
        jac = jacobian_curve(D)
        if jac.j != E.j:
            raise ConsistencyError(f"j-invariant mismatch {E.j} != {jac.j} for the quotient by {inv.kind}")
    else:
        E = jacobian_curve(D)
    att.torsion = torsion_subgroup(E)
    att.evidence = rank0_falsify(E, att.torsion, options.height_bound, options.assume_rank0)
    return att


def solve_curve(C, options: SolveOptions = SolveOptions()) -> SolveResult:
    invs = detect_involutions(C, options.extra_transforms)
    if not invs:
        return _finish(C, SolveResult(C, SolveStatus("NotEligible", reason="no involution found")), options)
    ciani = isinstance(C, PlaneQuartic) and is_ciani(C)[0]
    result = SolveResult(C, SolveStatus("NotEligible", reason="no genus-1 quotient"))
    undetermined = None
    for k, inv in enumerate(invs):
        att = _attempt(C, inv, options)
        result.attempts.append(att)
        if att.quotient is None:
            continue
        if att.solvability.kind == "LocallyUnsolvable":
            result.status = SolveStatus("EmptyCertified", (), witness=att.solvability.witness)
            result.chosen = k
            break
        if not att.passes_rank_gate:
            continue
        if att.weierstrass is None:
            undetermined = undetermined or (k, att)
            continue
        EQ = list(att.torsion.points)
        DQ = rational_points_on_D(att.quotient, att.weierstrass, EQ)
        if len(DQ) != len(EQ):
            raise ConsistencyError(f"|D(Q)| = {len(DQ)} but |E(Q)| = {len(EQ)}")
        S = sorted({P for d in DQ for P in att.quotient.fiber(d)})
        result.status = SolveStatus("Solved", tuple(S))
        result.D_points = tuple(DQ)
        result.chosen = k
        break
    else:
        if undetermined is not None:
            k, att = undetermined
            result.chosen = k
            result.status = SolveStatus("Undetermined", search_bound=att.solvability.search_bound)
        elif any(a.quotient is not None for a in result.attempts):
            w = next(a.evidence.witness for a in result.attempts if a.evidence is not None and not a.evidence.passes)
            result.status = SolveStatus("RankPositiveQuotient", witness=str(w))
    if ciani and result.status.kind in ("Solved", "EmptyCertified"):
        # rank of Jac(C) is inferred only when all three quotients pass the rank-0 gate
        for inv in invs[len(result.attempts):]:
            result.attempts.append(_attempt(C, inv, options))
    if options.assumed_rank is not None:
        result.rank = options.assumed_rank
    elif ciani and len(result.attempts) == 3 and all(a.passes_rank_gate for a in result.attempts):
        result.rank, result.rank_conditional = 0, True
    return _finish(C, result, options)


def _finish(C, result: SolveResult, options: SolveOptions) -> SolveResult:
    if result.status.kind in ("Solved", "EmptyCertified"):
        _verify(C, result, options)
        result.audits = audit_bounds(C, list(result.status.points), result.rank, options.audit_primes)
    return result


def _verify(C, result: SolveResult, options: SolveOptions) -> None:
    S = set(result.status.points)
    for P in S:
        if not C.contains(*P.coords):
            raise ConsistencyError(f"claimed point {P} is not on C")
    for inv in detect_involutions(C, options.extra_transforms):
        for P in S:
            if inv.apply(P) not in S:
                raise ConsistencyError(f"point set not closed under {inv.kind}")
    if result.chosen is not None and result.attempts[result.chosen].quotient is not None and result.D_points:
        qd = result.attempts[result.chosen].quotient
        DQ = set(result.D_points)
        for P in S:
            if qd.psi(P) not in DQ:
                raise ConsistencyError(f"psi({P}) is not in D(Q)")
        if len(S) > 2 * len(DQ):
            raise ConsistencyError("more than two points in some fiber")
    B = options.search_oracle_bound
    searched = set(search_points(C, B))
    missing = searched - S
    if missing:
        raise ConsistencyError(f"searched points missing from the solution: {sorted(missing)}")
    low = {P for P in S if P.height() <= B}
    if low != searched:
        raise ConsistencyError(f"solution points of height <= {B} not found by search: {sorted(low - searched)}")


def default_audit_primes(C, g: int = 3) -> list[int]:
    return [p for p in primes_up_to(100) if p > 2 * g and good_reduction(C, p)]


def audit_bounds(C, S: Sequence[CurvePoint], r: int | None, primes: Sequence[int] | None = None,
                 g: int = 3) -> list[BoundAudit]:
    """Coleman (count + 2g - 2) and Stoll (count + 2r) bounds at good primes.

    Both values are reported; ``*_valid`` records whether the hypotheses hold.  A valid
    bound below #S raises BoundViolated.
    """
    primes = default_audit_primes(C, g) if primes is None else [p for p in primes if good_reduction(C, p)]
    n = len(S)
    out = []
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        count = count_points_fp(C, p)
        coleman = count + 2 * g - 2
        coleman_valid = r is not None and r < g and p > 2 * g
        stoll = None if r is None else count + 2 * r
        stoll_valid = r is not None and r < g - 1 and p > 2 * r + 2
        audit = BoundAudit(p, count, g, r, coleman, coleman_valid, stoll, stoll_valid, n)
        if coleman_valid and n > coleman:
            raise BoundViolated(f"#C(Q) = {n} exceeds the Coleman bound {coleman} at p = {p}")
        if stoll_valid and n > stoll:
            raise BoundViolated(f"#C(Q) = {n} exceeds the Stoll bound {stoll} at p = {p}")
        out.append(audit)
    return out
