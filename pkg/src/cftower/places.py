"""Places of F_q(x), point counts of covers, L-polynomials and class numbers."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Protocol, Sequence

import numpy as np

from .exact import sqrt_interval
from .ffield import (
    BudgetExceeded,
    FieldSpec,
    Poly,
    count_monic_irreducibles,
    divisors,
    field_make,
    format_poly,
    mobius,
    poly_is_irreducible,
)

DEFAULT_BUDGET = int(os.environ.get("CFTOWER_BUDGET", 10**7))
GENUS_CAP = 6


@dataclass(frozen=True)
class Place:
    """A place of F_q(x): a monic irreducible polynomial, or infinity (``poly is None``)."""

    field: FieldSpec
    poly: Poly | None = None

    def __post_init__(self) -> None:
        if self.poly is not None:
            if self.poly.field != self.field:
                raise ValueError("place polynomial over a different field")
            if not self.poly.is_monic() or not poly_is_irreducible(self.poly):
                raise ValueError(f"{self.poly} is not monic irreducible")

    @classmethod
    def infinity(cls, F: FieldSpec) -> Place:
        return cls(F, None)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.deg

    def __str__(self) -> str:
        return "inf" if self.poly is None else format_poly(self.poly)

    def sort_key(self) -> tuple:
        return (1, ()) if self.poly is None else (0, self.poly.sort_key())


def rational_places(F: FieldSpec) -> list[Place]:
    """The q + 1 degree-one places: x - a for every a, then infinity."""
    out = [Place(F, Poly(F, (F.neg(a), 1))) for a in range(F.q)]
    return out + [Place.infinity(F)]


def b_r_exact_rational_ff(F: FieldSpec, r: int) -> int:
    """Number of degree-``r`` places of F_q(x)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1:
        return F.q + 1
    return count_monic_irreducibles(F, r)


def b_r_interval(q: int, r: int, g: int, digits: int = 9) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of ``q^r/r -+ E`` where
    ``E = (q/(q-1) + 2g sqrt(q)/(sqrt(q)-1)) (q^(r/2)-1)/r``.

    The returned interval contains the exact real interval; sqrt(q) is
    bracketed by rationals and the bracket endpoints are chosen so each
    factor of ``E`` is overestimated.
    """
    if q < 2 or r < 1 or g < 0:
        raise ValueError("need q >= 2, r >= 1, g >= 0")
    s_lo, s_hi = sqrt_interval(q, digits)
    # s/(s-1) decreases in s; s^r increases in s.
    ratio_hi = s_lo / (s_lo - 1)
    if r % 2 == 0:
        growth_hi = Fraction(q ** (r // 2) - 1)
    else:
        growth_hi = s_hi**r - 1
    e_hi = (Fraction(q, q - 1) + 2 * g * ratio_hi) * growth_hi / r
    centre = Fraction(q**r, r)
    return centre - e_hi, centre + e_hi


def places_from_counts(counts: Sequence[int], r: int) -> int:
    """B_r from N_1..N_r via r*B_r = sum_{d|r} mu(r/d) N_d."""
    total = sum(mobius(r // d) * counts[d - 1] for d in divisors(r))
    if total % r:
        raise ArithmeticError("point counts are inconsistent: r*B_r not divisible by r")
    return total // r


# -- vectorised arithmetic in F_{q^i} ------------------------------------------

class Extension:
    """F_{q^i} as numpy tables, with the embedding of F_q fixed by the smallest
    root of F_q's modulus."""

    def __init__(self, base: FieldSpec, i: int):
        self.base = base
        self.degree = i
        self.big = field_make(base.p, base.k * i)
        self.p = base.p
        self.K = self.big.k
        self.Q = self.big.q
        if self.K == 1:
            self.exp = self.log = None
        else:
            exp, log = self.big._tables
            self.exp = np.asarray(exp, dtype=np.int64)
            self.log = np.asarray(log, dtype=np.int64)
        self.powers = np.asarray([self.p**j for j in range(self.K)], dtype=np.int64)
        self.embed = self._embedding()

    def _embedding(self) -> np.ndarray:
        base = self.base
        if base.k == 1:
            return np.arange(base.q, dtype=np.int64)
        xs = self.elements()
        mod = base.modulus
        acc = np.zeros_like(xs)
        for c in reversed(mod):
            acc = self.add(self.mul(acc, xs), np.full_like(xs, c))
        roots = np.nonzero(acc == 0)[0]
        z = int(roots[0])
        table = np.zeros(base.q, dtype=np.int64)
        for a in range(base.q):
            val, zp = 0, 1
            for c in base.coeffs(a):
                if c:
                    val = self.big.add(val, self.big.mul(c, zp))
                zp = self.big.mul(zp, z)
            table[a] = val
        return table

    def elements(self) -> np.ndarray:
        return np.arange(self.Q, dtype=np.int64)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.p
        if self.K == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out = np.zeros_like(a)
        for pj in self.powers:
            out += ((a // pj % p + b // pj % p) % p) * pj
        return out

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.K == 1:
            return a * b % self.p
        nz = (a != 0) & (b != 0)
        out = np.zeros_like(a)
        out[nz] = self.exp[(self.log[a[nz]] + self.log[b[nz]]) % (self.Q - 1)]
        return out

    def chi(self, a: np.ndarray) -> np.ndarray:
        """Quadratic character: 0 at zero, +1 on squares, -1 otherwise (odd q)."""
        if self.p == 2:
            raise ValueError("quadratic character needs odd characteristic")
        if self.K == 1:
            leg = np.asarray([0] + [1 if pow(v, (self.p - 1) // 2, self.p) == 1 else -1
                                    for v in range(1, self.p)], dtype=np.int64)
            return leg[a]
        out = np.where(self.log[a] % 2 == 0, 1, -1)
        return np.where(a == 0, 0, out)

    def trace(self, a: np.ndarray) -> np.ndarray:
        """Absolute trace to F_2 (characteristic 2 only), values in {0, 1}."""
        if self.p != 2:
            raise ValueError("trace helper is for characteristic 2")
        if self.K == 1:
            return a % 2
        acc = np.zeros_like(a)
        nz = a != 0
        la = self.log[a[nz]]
        for j in range(self.K):
            term = np.zeros_like(a)
            term[nz] = self.exp[(la * (1 << j)) % (self.Q - 1)]
            acc ^= term
        return acc

    def inv(self, a: np.ndarray) -> np.ndarray:
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.K == 1:
            return np.asarray([pow(int(v), -1, self.p) for v in a], dtype=np.int64)
        return self.exp[(-self.log[a]) % (self.Q - 1)]

    def eval_poly(self, f: Poly, xs: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(xs)
        for c in reversed(f.coeffs):
            acc = self.add(self.mul(acc, xs), np.full_like(xs, self.embed[c]))
        return acc

    def embed_scalar(self, c: int) -> int:
        return int(self.embed[c])


@lru_cache(maxsize=64)
def extension(base: FieldSpec, i: int) -> Extension:
    return Extension(base, i)


class CoverModel(Protocol):
    field: FieldSpec

    def count_rational(self, ext: Extension) -> int:
        """Number of degree-one places of the cover over F_{q^i}."""


def point_counts(cover: CoverModel, m: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """[N_1, ..., N_m] by direct evaluation over every x in F_{q^i}."""
    q = cover.field.q
    cost = sum(q**i for i in range(1, m + 1))
    if cost > budget:
        raise BudgetExceeded(f"point counting up to degree {m} needs {cost} evaluations > {budget}")
    return [cover.count_rational(extension(cover.field, i)) for i in range(1, m + 1)]


# -- L-polynomials -----------------------------------------------------------

@dataclass(frozen=True)
class LPolynomial:
    """Numerator of the zeta function, ``L(u) = sum a_i u^i``."""

    q: int
    genus: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        g, q, a = self.genus, self.q, self.coeffs
        if len(a) != 2 * g + 1 or a[0] != 1:
            raise ValueError("L-polynomial must have 2g+1 coefficients with a_0 = 1")
        for i in range(g + 1):
            if a[2 * g - i] != q ** (g - i) * a[i]:
                raise ValueError(f"functional equation fails at a_{2 * g - i}")

    def __call__(self, u):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    @property
    def class_number(self) -> int:
        return self(1)

    def power_sums(self, m: int) -> list[int]:
        """S_i = N_i - (q^i + 1) for i = 1..m (Newton's identities run forwards)."""
        a = list(self.coeffs) + [0] * max(0, m + 1 - len(self.coeffs))
        S: list[int] = []
        for k in range(1, m + 1):
            val = k * a[k] - sum(S[i - 1] * a[k - i] for i in range(1, k))
            S.append(val)
        return S

    def predicted_counts(self, m: int) -> list[int]:
        return [self.q**i + 1 + s for i, s in enumerate(self.power_sums(m), start=1)]

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(str(c) if i == 0 else f"{c}*u" if i == 1 else f"{c}*u^{i}")
        return " + ".join(parts).replace("+ -", "- ")


class GenusMismatch(ArithmeticError):
    pass


def l_polynomial_from_counts(q: int, g: int, counts: Sequence[int]) -> LPolynomial:
    """Build L from N_1..N_g; raises :class:`GenusMismatch` on non-integral data."""
    if len(counts) < g:
        raise ValueError("need N_1..N_g")
    S = [counts[i] - (q ** (i + 1) + 1) for i in range(g)]
    a = [1]
    for k in range(1, g + 1):
        total = sum(S[i - 1] * a[k - i] for i in range(1, k + 1))
        if total % k:
            raise GenusMismatch(f"k*a_k not divisible by k at k={k}; wrong genus?")
        a.append(total // k)
    full = a + [q ** (g - i) * a[i] for i in range(g - 1, -1, -1)]
    L = LPolynomial(q, g, tuple(full))
    if L.class_number <= 0:
        raise GenusMismatch("L(1) <= 0; wrong genus?")
    for i, c in enumerate(full):
        # Weil: |a_i| <= binom(2g, i) q^(i/2)
        from math import comb

        if c * c > comb(2 * g, i) ** 2 * q**i:
            raise GenusMismatch(f"coefficient a_{i} = {c} violates the Weil bound")
    return L


def l_polynomial(cover: CoverModel, g: int, budget: int = DEFAULT_BUDGET,
                 check: bool = True) -> LPolynomial:
    """L-polynomial of a cover of genus ``g`` from direct point counts.

    With ``check`` the count N_{g+1} is predicted and compared against a
    direct count whenever that fits the budget.
    """
    if g > GENUS_CAP:
        raise BudgetExceeded(f"genus {g} above the L-polynomial cap {GENUS_CAP}")
    q = cover.field.q
    if g == 0:
        L = LPolynomial(q, 0, (1,))
    else:
        L = l_polynomial_from_counts(q, g, point_counts(cover, g, budget))
    if check:
        m = g + 1
        if sum(q**i for i in range(1, m + 1)) <= budget:
            direct = point_counts(cover, m, budget)[-1]
            if L.predicted_counts(m)[-1] != direct:
                raise GenusMismatch(
                    f"predicted N_{m} = {L.predicted_counts(m)[-1]} but counted {direct}")
    return L


def _resultant(a: list[Fraction], b: list[Fraction]) -> Fraction:
    """Res(a, b) for coefficient lists (low-first) over Q, by the Euclidean recursion."""
    def trim(c):
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        return c

    a, b = trim(a), trim(b)
    if not a or not b:
        return Fraction(0)
    da, db = len(a) - 1, len(b) - 1
    if db == 0:
        return b[0] ** da
    if da < db:
        sign = -1 if (da * db) % 2 else 1
        return sign * _resultant(b, a)
    # a = Q b + R  =>  Res(a, b) = (-1)^(da db) lc(b)^(da - dR) Res(b, R)
    rem = list(a)
    for i in range(da, db - 1, -1):
        c = rem[i] / b[-1]
        if c:
            for j in range(db + 1):
                rem[i - db + j] -= c * b[j]
    rem = trim(rem[:db])
    if not rem:
        return Fraction(0)
    dr = len(rem) - 1
    sign = -1 if (da * db) % 2 else 1
    return sign * b[-1] ** (da - dr) * _resultant(b, rem)


def h_ratio(L: LPolynomial, r: int) -> int:
    """h(F_r)/h(F) = prod_{j=1}^{r-1} L(zeta_r^j) = Res(1 + u + ... + u^(r-1), L)."""
    if r < 2:
        raise ValueError("r must be >= 2")
    cyclo = [Fraction(1)] * r
    res = _resultant(cyclo, [Fraction(c) for c in L.coeffs])
    if res.denominator != 1:
        raise ArithmeticError("class number ratio is not an integer")
    val = abs(int(res))
    if val <= 0:
        raise ArithmeticError("class number ratio must be positive")
    return val


def l_polynomial_over_extension(L: LPolynomial, r: int) -> LPolynomial:
    """L-polynomial of the constant field extension of degree ``r``
    (reciprocal roots raised to the r-th power), via power sums."""
    g = L.genus
    S_big = L.power_sums(2 * g * r)
    S_r = [S_big[r * i - 1] for i in range(1, g + 1)]
    qr = L.q**r
    counts = [qr**i + 1 + s for i, s in enumerate(S_r, start=1)]
    return l_polynomial_from_counts(qr, g, counts) if g else LPolynomial(qr, 0, (1,))
