"""Tower criterion, l-rank lower bounds and construction planners."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import ceil_ksqrt, ceil_log_ratio, floor_theta_log2
from .ffield import (
    BudgetExceeded,
    FieldSpec,
    Poly,
    count_monic_irreducibles,
    divisors,
    first_monic_irreducibles,
    field_from_q,
    prime_power,
)


def unit_rank(l: int, q: int, s_size: int) -> int:
    """l-rank of the S-units: |S| - 1 from the free part, plus one if l | q - 1."""
    if s_size < 1:
        raise ValueError("S must be nonempty")
    return s_size if (q - 1) % l == 0 else s_size - 1


@dataclass(frozen=True)
class TowerWitness:
    s_size: int
    genus: int
    d_l_cls_lower: int
    d_l_units: int
    l: int = 2


def gs_inequality(rank: int, units: int) -> bool:
    """rank >= 2 + 2 sqrt(units + 1), decided with integers."""
    return rank - 2 >= 0 and (rank - 2) ** 2 >= 4 * (units + 1)


def gs_check(w: TowerWitness) -> bool:
    return gs_inequality(w.d_l_cls_lower, w.d_l_units)


@dataclass(frozen=True)
class RankBoundInput:
    inertia_ranks: Sequence[int]
    t_size: int
    d_l_units_of_constants: int
    d_l_G: int
    l: int = 2

    def __post_init__(self) -> None:
        if any(x < 0 for x in self.inertia_ranks) or self.t_size < 1 or self.d_l_G < 0:
            raise ValueError("rank-bound inputs must be nonnegative and T nonempty")
        if self.d_l_units_of_constants not in (0, 1):
            raise ValueError("d_l F_q^* is 0 or 1")


class ClampedRankWarning(UserWarning):
    pass


def rank_lower_bound(inp: RankBoundInput, infinity_splits: bool = True) -> int:
    """Lower bound for d_l Cl_S from ramification in an abelian extension.

    ``infinity_splits`` says whether some place of T splits completely; when
    none does the bound is one less. Negative values are clamped to 0.
    """
    value = sum(inp.inertia_ranks) - (inp.t_size - 1 + inp.d_l_units_of_constants) - inp.d_l_G
    if not infinity_splits:
        value -= 1
    if value < 0:
        warnings.warn(f"rank lower bound {value} clamped to 0", ClampedRankWarning, stacklevel=2)
        return 0
    return value


def d_l_constants(l: int, q: int) -> int:
    return 1 if (q - 1) % l == 0 else 0


def tower_aq_bound(s_size: int, genus: int) -> Fraction:
    if genus < 2:
        raise ValueError("genus must be at least 2")
    return Fraction(s_size, genus - 1)


# -- odd q planner: the (n, A, t1, t, Z) bookkeeping --------------------------

@dataclass(frozen=True)
class QOddPlan:
    N: int
    r: int
    root_ceil: int  # ceil(2 sqrt(2N+1))
    A: int
    n: int
    t1: int
    t: int
    z_size: int  # n(r-2) + t, the count used in the rank chain
    z_pairs: int  # actual number of index pairs in Z
    ramified: int  # places ramified in L over F_r: n(r-1) + t
    gal_rank_claimed: int  # n(r-2) + t - 1
    gal_rank_actual: int  # z_pairs - 1
    chain_ok: bool
    chain_ok_actual: bool
    genus_offset: int  # 2g(L) - 2 = 4 g(F) + genus_offset
    genus_bound_offset: int  # 2g(L) - 2 <= 4 g(F) + genus_bound_offset


class PlanError(ArithmeticError):
    pass


def qodd_plan(N: int, r: int) -> QOddPlan:
    if N < 1:
        raise ValueError("N must be >= 1")
    if r < 3 or r % 2 == 0:
        raise ValueError("r must be odd and >= 3")
    c = ceil_ksqrt(2, 2 * N + 1)
    A = 3 + c
    n = A // (r - 2)
    t1 = A - n * (r - 2)
    if t1 == 0:
        t = 0
    elif t1 % 2 == 0:
        t = t1
    else:
        t = t1 + 1
    z_size = n * (r - 2) + t
    z_pairs = n * (r - 2) + max(t - 1, 0)
    s_prime = 2 * N
    claimed = z_size - 1
    actual = z_pairs - 1
    units = s_prime  # the chain compares against 2 + 2 sqrt(|S'| + 1)
    chain_ok = (claimed - 2) ** 2 >= 4 * (units + 1) and claimed >= 2
    if not chain_ok:
        raise PlanError(f"rank chain fails at N={N}, r={r}")
    offset = n - 4 + z_size
    bound_offset = n + c
    if offset > bound_offset:
        raise PlanError("genus chain exceeds its stated bound")
    return QOddPlan(
        N=N, r=r, root_ceil=c, A=A, n=n, t1=t1, t=t, z_size=z_size, z_pairs=z_pairs,
        ramified=n * (r - 1) + t, gal_rank_claimed=claimed, gal_rank_actual=actual,
        chain_ok=chain_ok, chain_ok_actual=actual >= 2 and (actual - 2) ** 2 >= 4 * (units + 1),
        genus_offset=offset, genus_bound_offset=bound_offset,
    )


# -- the compositum construction ---------------------------------------------

@dataclass
class KemPlan:
    q: int
    r: int
    theta: Fraction
    floor_log: int  # floor(theta r log2 q)
    n: int
    m: int
    M: int  # ceil(2 log r / log q) + 1
    epsilon: int
    g_base_minus_1: int
    g_H: int
    s_prime_size: int
    bound: Fraction | None
    m_check: str  # "verified" | "inconclusive"
    feasible: bool
    notes: list[str] = field(default_factory=list)
    factors: tuple[Poly, ...] = ()
    split_places: int | None = None  # degree-r places of k(y) splitting completely in H

    @property
    def even(self) -> bool:
        return self.q % 2 == 0


def kem_plan(q: int, r: int, theta: Fraction, count_split: bool = False,
             budget: int = 10**6) -> KemPlan:
    """Parameters of the compositum construction at (q, r, theta).

    With ``count_split`` (odd q only) the degree-r places of k(y) that split
    completely in H are counted from the explicit factors.
    """
    theta = Fraction(theta)
    if not 0 < theta < Fraction(1, 2):
        raise ValueError("theta must lie in (0, 1/2)")
    p, _ = prime_power(q)
    if r < 1:
        raise ValueError("r must be positive")
    even = p == 2
    if not even and r % 2 == 0:
        raise ValueError("odd q needs odd r")
    a = floor_theta_log2(q, r, theta)
    if even:
        n = a + 1
    else:
        n = a + 1 if a % 2 == 0 else a
    M = ceil_log_ratio(r, q) + 1
    notes: list[str] = []
    if n < 1:
        raise ValueError("construction needs n >= 1")
    m = 1
    while count_monic_irreducibles(field_from_q(q), m) < n:
        m += 1
    m_check = "verified" if m <= M else "inconclusive"
    if m > M:
        notes.append(f"m = {m} exceeds ceil(2 log r/log q) + 1 = {M}: outside the large-q^r regime")
    if even:
        epsilon = 0
        g_base_minus_1 = m * n - 2
        g_H = (1 << (n - 1)) * (m * n - 2) + 1 if n >= 1 else 1
        s_prime = (n - 3) ** 2 // 4 if n >= 3 else 0
        denom = g_base_minus_1
    else:
        epsilon = m % 2
        core = m * n + epsilon - 4
        if core % 2:
            raise PlanError("parity violation: base genus is not an integer")
        g_base_minus_1 = core // 2
        g_H = (1 << (n - 2)) * core + 1 if n >= 2 else 1
        s_prime = ((n - 3) // 2) ** 2 - 1 if n >= 3 else -1
        s_prime = max(s_prime, 0)
        denom = core
    feasible = s_prime > 0 and denom > 0
    if s_prime <= 0:
        notes.append(f"n = {n} leaves no room for S'")
    if not feasible:
        bound = None
    elif even:
        bound = Fraction(s_prime * r, denom)
    else:
        bound = Fraction(2 * s_prime * r, denom)
    plan = KemPlan(q, r, theta, a, n, m, M, epsilon, g_base_minus_1, g_H, s_prime, bound,
                   m_check, feasible, notes)
    F = field_from_q(q)
    plan.factors = first_monic_irreducibles(F, m, n)
    if count_split and not even and feasible:
        plan.split_places = count_split_degree_r(F, plan.factors, r, budget)
        if plan.split_places < s_prime:
            plan.feasible = False
            plan.notes.append(
                f"only {plan.split_places} split places of degree {r}, need {s_prime}: infeasible")
    return plan


def count_split_degree_r(F: FieldSpec, factors: Sequence[Poly], r: int, budget: int) -> int:
    """Degree-r places of k(y), y^2 = prod P_i, that split completely in
    H = k(sqrt P_1, ..., sqrt P_n), for odd r >= 3.

    A place of k of degree r is read off from its r roots in F_{q^r}. An
    unramified one contributes 2 places of k(y) when every P_i is a square
    there; a factor P_j of degree r contributes 1 when every other P_i is.
    """
    import numpy as np

    from .places import extension

    if r < 3 or r % 2 == 0:
        raise ValueError("r must be odd and >= 3")
    if F.q**r > budget:
        raise BudgetExceeded(f"F_(q^{r}) has {F.q**r} elements, over budget {budget}")
    ext = extension(F, r)
    xs = ext.elements()
    exact = xs != 0
    for d in divisors(r)[:-1]:
        step = (ext.Q - 1) // (F.q**d - 1)
        exact &= ext.log[xs] % step != 0 if ext.log is not None else False
    chis = np.stack([ext.chi(ext.eval_poly(u, xs)) for u in factors])
    zeros = (chis == 0).sum(axis=0)
    others_square = np.all((chis == 1) | (chis == 0), axis=0)
    roots = 2 * int(np.sum(exact & (zeros == 0) & others_square))
    roots += int(np.sum(exact & (zeros == 1) & others_square))
    if roots % r:
        raise ArithmeticError("roots do not group into places of degree r")
    return roots // r
