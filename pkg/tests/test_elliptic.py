from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rank0quot.elliptic import (
    MAZUR_LABELS, ECPoint, integralize, mordell_weil_rank0, rank0_falsify, scale_point,
    torsion_bound, torsion_subgroup,
)
from rank0quot.errors import MixedCurves, PointNotOnCurve, RankPositive
from rank0quot.models import WeierstrassCurve, good_reduction, hasse_check

F = Fraction
E2 = WeierstrassCurve(0, F(7, 2), 0, F(-15, 16), 0)
E_Z6 = WeierstrassCurve(0, 0, 0, 0, 1)
E_RANK1 = WeierstrassCurve(0, 0, 0, -1, 1)
E_Z5 = WeierstrassCurve(0, 8, 0, 16, 16)
E_GENERAL = WeierstrassCurve(1, 0, 1, -1, 0)  # a1, a3 nonzero exercise the general group law

FIXTURE_CURVES = [E2, E_Z6, E_RANK1, E_Z5, E_GENERAL, WeierstrassCurve(0, 0, 0, 0, -2)]


def _pool(E, extra):
    pts = list(torsion_subgroup(E).points)
    for P in extra:
        pts += [P * k for k in range(1, 4)]
    return pts


POOLS = [
    _pool(E2, []),
    _pool(E_Z6, []),
    _pool(E_RANK1, [ECPoint(E_RANK1, 1, 1), ECPoint(E_RANK1, 0, 1)]),
    _pool(E_GENERAL, [ECPoint(E_GENERAL, 0, 0)]),
]


@settings(max_examples=1000)
@given(st.sampled_from(POOLS).flatmap(lambda pool: st.tuples(*[st.sampled_from(pool)] * 3)))
def test_group_law_is_abelian(triple):
    P, Q, R = triple
    assert P + Q == Q + P
    assert (P + Q) + R == P + (Q + R)
    assert P - P == ECPoint.infinity(P.curve)


def test_identity_and_two_torsion():
    P = ECPoint(E2, 0, 0)
    O = ECPoint.infinity(E2)
    assert P + O == P and O + P == P
    assert (P + P).is_infinity


def test_inverse_pair_sums_to_infinity():
    # the rational point over x = -3/4 (over x = 3/4 the cubic is 27/16, not a square)
    assert (ECPoint(E2, F(-3, 4), F(-3, 2)) + ECPoint(E2, F(-3, 4), F(3, 2))).is_infinity
    with pytest.raises(PointNotOnCurve):
        ECPoint(E2, F(3, 4), F(-3, 2))


def test_mixed_curves():
    with pytest.raises(MixedCurves):
        ECPoint(E2, 0, 0) + ECPoint(E_Z6, -1, 0)


def test_integralize_examples():
    W, u = integralize(E2)
    assert (W.ainvs, u) == ((0, 14, 0, -15, 0), 2)
    assert integralize(E_Z6) == (E_Z6, 1)
    P = ECPoint(E2, F(-3, 4), F(-3, 2))
    Q = scale_point(P, W, u)
    assert (Q.x, Q.y) == (-3, -12)
    assert scale_point(Q, E2, F(1, u)) == P


def test_torsion_examples():
    T = torsion_subgroup(E2)
    expected = {(0, 0), (F(1, 4), 0), (F(-15, 4), 0), (F(-3, 4), F(3, 2)), (F(-3, 4), F(-3, 2)),
                (F(5, 4), F(5, 2)), (F(5, 4), F(-5, 2))}
    assert {(P.x, P.y) for P in T.points if not P.is_infinity} == expected
    assert T.structure == "Z/2xZ/4"
    T6 = torsion_subgroup(E_Z6)
    assert T6.structure == "Z/6"
    assert {(P.x, P.y) for P in T6.points if not P.is_infinity} == {(-1, 0), (0, 1), (0, -1), (2, 3), (2, -3)}
    assert torsion_subgroup(WeierstrassCurve(0, 0, 0, 0, -2)).structure == "Z/1"


def test_torsion_bound_for_x3_minus_2():
    # y^2 = x^3 - 2 has (3, 5) of infinite order, yet the reduction bound alone already kills torsion
    E = WeierstrassCurve(0, 0, 0, 0, -2)
    assert torsion_bound(E)[0] == 1
    assert not rank0_falsify(E, torsion_subgroup(E), 100).passes


@pytest.mark.parametrize("E", FIXTURE_CURVES)
def test_torsion_invariants(E):
    T = torsion_subgroup(E)
    assert T.structure in MAZUR_LABELS
    pts = set(T.points)
    for P in pts:
        assert -P in pts
        for Q in pts:
            assert P + Q in pts
        n = P.order()
        assert n is not None and (P * n).is_infinity
        assert all(not (P * m).is_infinity for m in range(1, n))
    bound, _ = torsion_bound(E)
    assert bound % len(pts) == 0


@pytest.mark.parametrize("E", FIXTURE_CURVES)
def test_hasse(E):
    for p in range(3, 100):
        if all(p % q for q in range(2, p)) and good_reduction(E, p):
            assert hasse_check(E, p)


def test_rank0_falsification():
    T = torsion_subgroup(E2)
    assert rank0_falsify(E2, T, 10_000).verdict == "ConsistentWithRank0"
    T1 = torsion_subgroup(E_RANK1)
    ev = rank0_falsify(E_RANK1, T1, 100)
    assert ev.verdict == "RankPositive"
    assert ev.witness not in T1 and ev.witness.order() is None
    skipped = rank0_falsify(E2, T, 0, assume_rank0=True)
    assert (skipped.verdict, skipped.search_bound) == ("AssumedRank0", 0)


def test_mordell_weil_rank0():
    assert len(mordell_weil_rank0(E2)) == 8
    assert len(mordell_weil_rank0(E_Z5)) == 5
    with pytest.raises(RankPositive):
        mordell_weil_rank0(E_RANK1)

