import warnings
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cftower.covers import MultiQuadCover
from cftower.ffield import BudgetExceeded, field_from_q, field_make, parse_poly
from cftower.places import places_from_counts, point_counts
from cftower.towers import (
    ClampedRankWarning,
    RankBoundInput,
    TowerWitness,
    count_split_degree_r,
    gs_check,
    gs_inequality,
    kem_plan,
    qodd_plan,
    rank_lower_bound,
    tower_aq_bound,
    unit_rank,
)
from oracles import split_count_oracle


def test_unit_rank():
    assert unit_rank(2, 7, 18) == 18
    assert unit_rank(3, 7, 5) == 5  # 3 | 6
    assert unit_rank(3, 5, 5) == 4
    assert unit_rank(2, 4, 10) == 9
    with pytest.raises(ValueError):
        unit_rank(2, 7, 0)


def test_gs_examples():
    assert gs_check(TowerWitness(18, 21, 11, 18))
    assert gs_check(TowerWitness(4, 4, 7, unit_rank(2, 13, 4)))
    assert not gs_inequality(4, 1)
    assert gs_inequality(12, 24)  # 12 = 2 + 2 sqrt 25, boundary


@given(st.integers(0, 200), st.integers(0, 200), st.integers(0, 20))
def test_gs_monotone(rank, units, step):
    if gs_inequality(rank, units):
        assert gs_inequality(rank + step, units)
    else:
        assert not gs_inequality(rank, units + step)


def test_rank_lower_bound_examples():
    a7 = RankBoundInput([2] * 11, 10, 1, 1)
    assert rank_lower_bound(a7) == 11
    a13 = RankBoundInput([1] * 10, 2, 1, 1)
    assert rank_lower_bound(a13) == 7
    assert rank_lower_bound(a13, infinity_splits=False) == 6
    with pytest.warns(ClampedRankWarning):
        assert rank_lower_bound(RankBoundInput([0, 0], 3, 1, 1)) == 0
    with pytest.raises(ValueError):
        RankBoundInput([1], 0, 1, 0)


@given(st.lists(st.integers(0, 5), max_size=12), st.integers(1, 10), st.integers(0, 1), st.integers(0, 5))
def test_rank_bound_matches_formula(ranks, t, d_const, d_g):
    value = sum(ranks) - (t - 1 + d_const) - d_g
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ClampedRankWarning)
        assert rank_lower_bound(RankBoundInput(ranks, t, d_const, d_g)) == max(value, 0)


def test_tower_aq_bound():
    assert tower_aq_bound(18, 21) == Fraction(9, 10)
    assert tower_aq_bound(24, 23) == Fraction(12, 11)
    assert tower_aq_bound(8, 6) == Fraction(8, 5)
    with pytest.raises(ValueError):
        tower_aq_bound(3, 1)


def test_qodd_plan_examples():
    plan = qodd_plan(8, 3)
    assert (plan.A, plan.n, plan.t1, plan.t, plan.root_ceil) == (12, 12, 0, 0, 9)
    plan = qodd_plan(4, 5)
    assert (plan.A, plan.n, plan.t1, plan.t, plan.z_size) == (9, 3, 0, 0, 9)
    assert plan.gal_rank_claimed == 8 and plan.chain_ok
    with pytest.raises(ValueError):
        qodd_plan(4, 4)


@pytest.mark.parametrize("N", range(1, 40))
@pytest.mark.parametrize("r", [3, 5, 7, 9])
def test_qodd_plan_parity_rule(N, r):
    plan = qodd_plan(N, r)
    assert plan.t1 == plan.A - plan.n * (plan.r - 2)
    assert plan.t % 2 == 0 and plan.t >= plan.t1
    assert plan.genus_offset <= plan.genus_bound_offset


def test_kem_plan_record():
    kp = kem_plan(9, 5, Fraction(2, 5), count_split=True)
    assert (kp.floor_log, kp.n, kp.m, kp.M, kp.epsilon) == (6, 7, 1, 3, 1)
    assert (kp.g_base_minus_1, kp.g_H, kp.s_prime_size, kp.bound) == (2, 129, 3, Fraction(15, 2))
    assert kp.m_check == "verified" and kp.feasible and kp.split_places == 204
    assert len(kp.factors) == 7 and len(set(kp.factors)) == 7


def test_kem_plan_infeasible_small_n():
    kp = kem_plan(9, 5, Fraction(1, 3))
    assert kp.n == 5 and kp.s_prime_size == 0 and not kp.feasible and kp.bound is None
    with pytest.raises(ValueError):
        kem_plan(9, 4, Fraction(2, 5))
    with pytest.raises(ValueError):
        kem_plan(9, 5, Fraction(1, 2))


def test_kem_plan_even_q():
    kp = kem_plan(8, 5, Fraction(2, 5))
    assert (kp.n, kp.m, kp.s_prime_size, kp.bound) == (7, 1, 4, Fraction(4))


@pytest.mark.parametrize("r,texts", [
    (5, ["x", "x+1", "x^2+1"]),
    (5, ["x", "x+2", "x^5+2*x+1"]),
    (7, ["x", "x+1", "x+2"]),
    (7, ["x^2+1", "x^2+x+2"]),
])
def test_split_count_against_oracle(r, texts):
    F = field_make(3)
    factors = [parse_poly(t, F) for t in texts]
    assert count_split_degree_r(F, factors, r, 10**6) == split_count_oracle(3, [list(f.coeffs) for f in factors], r)


@pytest.mark.parametrize("q,r,theta", [(3, 9, Fraction(9, 20)), (5, 7, Fraction(2, 5)), (9, 5, Fraction(2, 5))])
def test_split_count_against_compositum_places(q, r, theta):
    kp = kem_plan(q, r, theta, count_split=True)
    H = MultiQuadCover(field_from_q(q), kp.factors)
    b_r_top = places_from_counts(point_counts(H, r), r)
    assert b_r_top == kp.split_places * 2 ** (kp.n - 1)


def test_split_count_budget():
    F = field_make(5)
    with pytest.raises(BudgetExceeded):
        count_split_degree_r(F, [parse_poly("x", F)], 9, 10**5)
    with pytest.raises(ValueError):
        count_split_degree_r(F, [parse_poly("x", F)], 4, 10**5)
