from fractions import Fraction

import pytest

from rank0quot.arith import BinaryForm
from rank0quot.descent import (
    SolveOptions, audit_bounds, default_audit_primes, search_points, solve_curve,
)
from rank0quot.errors import BoundViolated, PointNotOnD
from rank0quot.models import CurvePoint, count_points_fp, validate_hyperelliptic, validate_quartic
from rank0quot.symmetry import build_quotient, detect_involutions

F = Fraction


def pts(*triples, w=1):
    return sorted(CurvePoint(*t, w) for t in triples)


EXPECTED = {
    "ex2": pts((2, 1, 0), (-2, 1, 0), (2, 0, 1), (-2, 0, 1)),
    "ex3": pts((-1, 0, 1), (-1, 1, 0), (1, 1, 0), (F(-1, 2), F(-1, 2), 1), (F(-1, 2), F(1, 2), 1)),
    "fermat": pts((0, 1, 1), (0, 1, -1), (1, 0, 1), (1, 0, -1)),
    "ex4": pts((-1, 0, 1), (1, 0, 1), (0, 1, 1), (0, -1, 1), (1, 1, 0), (1, -1, 0), w=4),
}


@pytest.fixture(scope="module")
def solved(fermat, ex2, ex3, ex4):
    return {name: (C, solve_curve(C)) for name, C in
            [("fermat", fermat), ("ex2", ex2), ("ex3", ex3), ("ex4", ex4)]}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_solved_point_sets(solved, name):
    C, R = solved[name]
    assert R.status.kind == "Solved"
    assert sorted(R.status.points) == EXPECTED[name]


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_solution_invariants(solved, name):
    C, R = solved[name]
    S = set(R.status.points)
    assert all(C.contains(*P.coords) for P in S)
    for inv in detect_involutions(C):
        assert {inv.apply(P) for P in S} == S
    qd = R.attempts[R.chosen].quotient
    DQ = set(R.D_points)
    assert {qd.psi(P) for P in S} <= DQ
    for d in DQ:
        assert len(qd.fiber(d)) <= 2
    assert len(S) <= 2 * len(DQ)
    assert set(search_points(C, 100)) == {P for P in S if P.height() <= 100}
    for a in R.audits:
        assert not a.coleman_valid or len(S) <= a.coleman
        assert not a.stoll_valid or len(S) <= a.stoll


def test_ex4_quotient_points(solved):
    _, R = solved["ex4"]
    assert len(R.D_points) == 5


def test_ex4_fibers(ex4):
    qd = build_quotient(ex4, detect_involutions(ex4)[0])
    assert qd.fiber(CurvePoint(1, 0, 1, 2)) == pts((-1, 0, 1), (1, 0, 1), w=4)
    assert qd.fiber(CurvePoint(0, 1, 1, 2)) == pts((0, 1, 1), w=4)
    assert qd.fiber(CurvePoint(0, -1, 1, 2)) == pts((0, -1, 1), w=4)
    with pytest.raises(PointNotOnD):
        qd.fiber(CurvePoint(3, 1, 1, 2))


def test_empty_fiber_over_non_square():
    # y^2 = x^8 + x^2 - 2; D: y^2 = u^4 + u - 2 contains (2 : 4 : 1), and 2 is not a square
    C = validate_hyperelliptic(BinaryForm(8, [-2, 0, 1, 0, 0, 0, 0, 0, 1]))
    qd = build_quotient(C, detect_involutions(C)[0])
    assert qd.fiber(CurvePoint(2, 4, 1, 2)) == []


def test_ex3_quartic_fiber(ex3):
    qd = build_quotient(ex3, detect_involutions(ex3)[0])
    for P in EXPECTED["ex3"]:
        assert P in qd.fiber(qd.psi(P))


def test_audit_ex2_at_17(ex2):
    assert count_points_fp(ex2, 17) == 4
    (a,) = audit_bounds(ex2, EXPECTED["ex2"], 0, [17])
    assert (a.stoll, a.stoll_valid, a.stoll_sharp) == (4, True, True)
    assert (a.coleman, a.coleman_sharp) == (8, False)


def test_audit_fermat_at_5(fermat):
    (a,) = audit_bounds(fermat, EXPECTED["fermat"], 0, [5])
    assert (a.count_fp, a.coleman, a.coleman_sharp) == (8, 12, False)
    # p = 5 is below the p > 2g hypothesis, so the Coleman value is informational here
    assert not a.coleman_valid


def test_audit_rank_two_invalidates_stoll(ex2):
    (a,) = audit_bounds(ex2, EXPECTED["ex2"], 2, [17])
    assert not a.stoll_valid
    assert a.to_json()["stoll"]["valid"] is False
    assert a.coleman_valid


def test_audit_skips_bad_primes(ex3):
    assert 17 not in default_audit_primes(ex3)
    assert audit_bounds(ex3, EXPECTED["ex3"], 0, [17]) == []
    with pytest.raises(ValueError):
        audit_bounds(ex3, EXPECTED["ex3"], 0, [15])


def test_bound_violated(ex2):
    fake = [CurvePoint(k, 0, 1, 1) for k in range(50)]
    with pytest.raises(BoundViolated):
        audit_bounds(ex2, fake, 0, [17])


def test_ciani_rank_inference(solved):
    _, R = solved["ex2"]
    assert (R.rank, R.rank_conditional) == (0, True)
    assert len(R.attempts) == 3 and all(a.passes_rank_gate for a in R.attempts)
    _, R3 = solved["ex3"]
    assert R3.rank is None


def test_supplied_rank_wins(ex3):
    R = solve_curve(ex3, SolveOptions(assumed_rank=0))
    assert (R.rank, R.rank_conditional) == (0, False)
    assert all(a.stoll_valid for a in R.audits)


def test_negative_statuses():
    obstructed = validate_hyperelliptic(BinaryForm(8, [3, 0, 0, 0, 0, 0, 0, 0, 3]))
    R = solve_curve(obstructed)
    assert R.status.kind == "EmptyCertified" and R.status.points == ()
    assert R.status.witness == "3"
    positive = validate_hyperelliptic(BinaryForm(8, [1, 0, 2, 0, 3, 0, 3, 0, 1]))
    R = solve_curve(positive)
    assert R.status.kind == "RankPositiveQuotient"
    att = R.attempts[0]
    assert not att.evidence.passes and att.evidence.witness not in att.torsion
    odd = validate_hyperelliptic(BinaryForm(8, [1, 1, 0, 0, 0, 0, 0, 0, 1]))
    assert solve_curve(odd).status.kind == "NotEligible"


def test_assume_rank0_records_assumption(ex4):
    R = solve_curve(ex4, SolveOptions(assume_rank0=True))
    assert R.status.kind == "Solved"
    assert R.attempts[0].evidence.verdict == "AssumedRank0"


def test_search_points_quartic_matches_slow(ex3):
    from rank0quot.descent import _search_quartic_slow
    assert sorted(search_points(ex3, 6)) == sorted(_search_quartic_slow(ex3, 6))


def test_search_points_unbounded_quartic():
    C = validate_quartic([1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1])  # X^4 + Y^4 + Z^4 has no real points
    assert search_points(C, 20) == []
