"""Quadratic covers of the projective line: splitting, ramification, genus.

Multi-quadratic composita k(sqrt u_1, ..., sqrt u_n) are handled through
their Galois group (Z/2)^n, written as bit vectors (bit i acts on sqrt u_i).
At a place P the inertia group is spanned by the ramification mask (bits
where v_P(u_i) is odd) and the decomposition group by the mask together with
the character vector of the unit parts. The character bits of ramified
coordinates are set to zero, since they are only defined modulo inertia.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .ffield import (
    FieldError,
    FieldSpec,
    Poly,
    absolute_trace_residue,
    factor_trial,
    field_make,
    is_square_in_residue_field,
    poly_gcd,
    prime_power,
    squarefree_decomposition,
    squarefree_odd_part,
    valuation,
)
from .places import Extension, Place


class Split(enum.Enum):
    RAMIFIED = "ramified"
    SPLIT = "split"
    INERT = "inert"

    def __str__(self) -> str:
        return self.value


# -- GF(2) subspaces ---------------------------------------------------------

def _reduce(basis: list[int], v: int) -> int:
    for b in basis:
        v = min(v, v ^ b)
    return v


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^n kept as a reduced echelon basis of ints."""

    n: int
    basis: tuple[int, ...] = ()

    @classmethod
    def span(cls, n: int, vectors: Iterable[int]) -> Subspace:
        basis: list[int] = []
        for v in vectors:
            v = _reduce(basis, v)
            if v:
                basis.append(v)
                basis.sort(reverse=True)
        # reduced echelon form so equal subspaces get equal bases
        for b in list(basis):
            pivot = 1 << (b.bit_length() - 1)
            basis = [c ^ b if c != b and c & pivot else c for c in basis]
        return cls(n, tuple(sorted(basis, reverse=True)))

    @classmethod
    def whole(cls, n: int) -> Subspace:
        return cls.span(n, (1 << i for i in range(n)))

    @classmethod
    def even_weight(cls, n: int) -> Subspace:
        return cls.span(n, ((1 << i) | (1 << (i + 1)) for i in range(n - 1)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << self.dim

    def __contains__(self, v: int) -> bool:
        return _reduce(list(self.basis), v) == 0

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(self.n, self.basis + other.basis)

    def __and__(self, other: Subspace) -> Subspace:
        # Zassenhaus: echelonise rows (a|a), (b|0); rows with zero left half
        # give a basis of the intersection in their right half.
        n = self.n
        rows = [(a << n) | a for a in self.basis] + [b << n for b in other.basis]
        basis: list[int] = []
        for v in rows:
            v = _reduce(basis, v)
            if v:
                basis.append(v)
                basis.sort(reverse=True)
        mask = (1 << n) - 1
        return Subspace.span(n, (v & mask for v in basis if v >> n == 0))

    def with_vectors(self, vectors: Iterable[int]) -> Subspace:
        return Subspace.span(self.n, self.basis + tuple(vectors))


def gf2_rank(vectors: Iterable[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        v = _reduce(basis, v)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def bits_str(v: int, n: int) -> str:
    return "".join("1" if v >> i & 1 else "0" for i in range(n))


# -- rational function field as a trivial cover -------------------------------

@dataclass(frozen=True)
class RationalCurve:
    field: FieldSpec

    def count_rational(self, ext: Extension) -> int:
        return ext.Q + 1

    @property
    def genus(self) -> int:
        return 0


# -- y^2 = u(x), q odd -------------------------------------------------------

def _require_odd(F: FieldSpec) -> None:
    if F.p == 2:
        raise FieldError("Kummer covers need odd q")


@dataclass(frozen=True)
class KummerCover:
    field: FieldSpec
    u: Poly

    def __post_init__(self) -> None:
        _require_odd(self.field)
        if self.u.field != self.field:
            raise ValueError("u is over a different field")
        if self.u.is_zero() or self.u.deg < 1:
            raise ValueError("u must be nonconstant")
        if self.u_sf.deg < 1:
            raise ValueError("u is a constant times a square: not a geometric cover")

    @cached_property
    def u_sf(self) -> Poly:
        return squarefree_odd_part(self.u)

    @cached_property
    def ramified_finite(self) -> tuple[Place, ...]:
        F = self.field
        out = []
        for part, mult in squarefree_decomposition(self.u):
            if mult % 2:
                out.extend(Place(F, P) for P, _ in factor_trial(part))
        return tuple(sorted(out, key=Place.sort_key))

    def ramified_places(self) -> tuple[Place, ...]:
        extra = (Place.infinity(self.field),) if self.u.deg % 2 else ()
        return self.ramified_finite + extra

    @property
    def genus(self) -> int:
        return kummer_genus(self)

    def count_rational(self, ext: Extension) -> int:
        xs = ext.elements()
        vals = ext.eval_poly(self.u_sf, xs)
        total = int(np.sum(1 + ext.chi(vals)))
        if self.u_sf.deg % 2:
            total += 1
        else:
            lc = ext.embed_scalar(self.u_sf.lc)
            total += 1 + int(ext.chi(np.asarray([lc]))[0])
        return total


def kummer_splitting(c: KummerCover, P: Place) -> Split:
    """Decomposition of the place ``P`` of F_q(x) in F_q(x, sqrt u)."""
    F = c.field
    if P.is_infinite:
        if c.u.deg % 2:
            return Split.RAMIFIED
        return Split.SPLIT if F.is_square(c.u.lc) else Split.INERT
    v = valuation(c.u, P.poly)
    if v % 2:
        return Split.RAMIFIED
    unit = c.u // (P.poly**v)
    square, _ = is_square_in_residue_field(unit, P.poly, witness=False)
    return Split.SPLIT if square else Split.INERT


def kummer_witness(c: KummerCover, P: Place) -> Poly | None:
    """A square root of ``u`` modulo ``P`` when ``P`` splits and ``deg P <= 3``."""
    if P.is_infinite:
        return None
    v = valuation(c.u, P.poly)
    if v % 2:
        return None
    square, w = is_square_in_residue_field(c.u // (P.poly**v), P.poly)
    return w if square else None


def kummer_genus(c: KummerCover) -> int:
    twice = -4 + sum(P.degree for P in c.ramified_places())
    if twice % 2:
        raise ArithmeticError("Hurwitz sum is odd")
    return twice // 2 + 1


# -- multi-quadratic composita ----------------------------------------------

@dataclass(frozen=True)
class LocalType:
    """Ramification mask and character vector of a place in (Z/2)^n."""

    n: int
    mask: int
    chars: int

    @property
    def inertia(self) -> Subspace:
        return Subspace.span(self.n, [self.mask])

    @property
    def decomposition(self) -> Subspace:
        return Subspace.span(self.n, [self.mask, self.chars])

    @property
    def splits_completely(self) -> bool:
        return self.mask == 0 and self.chars == 0

    def __str__(self) -> str:
        return f"mask={bits_str(self.mask, self.n)} chars={bits_str(self.chars, self.n)}"


def local_type(F: FieldSpec, us: Sequence[Poly], P: Place) -> LocalType:
    """Local data of ``P`` in F_q(x)(sqrt u_1, ..., sqrt u_n) for arbitrary nonzero u_i."""
    _require_odd(F)
    mask = chars = 0
    for i, u in enumerate(us):
        if P.is_infinite:
            v = -u.deg
            unit_value = u.lc
            odd = v % 2
            sq = F.is_square(unit_value)
        else:
            v = valuation(u, P.poly)
            odd = v % 2
            sq = True if odd else is_square_in_residue_field(u // (P.poly**v), P.poly, witness=False)[0]
        if odd:
            mask |= 1 << i
        elif not sq:
            chars |= 1 << i
    return LocalType(len(us), mask, chars)


@dataclass(frozen=True)
class MultiQuadCover:
    field: FieldSpec
    factors: tuple[Poly, ...]

    def __post_init__(self) -> None:
        _require_odd(self.field)
        fs = self.factors
        if not fs:
            raise ValueError("need at least one factor")
        for i, u in enumerate(fs):
            if u.is_zero() or u.deg < 1:
                raise ValueError(f"factor {i + 1} is constant")
            if poly_gcd(u, u.derivative()).deg > 0:
                raise ValueError(f"factor {i + 1} is not squarefree")
            for j in range(i):
                if poly_gcd(u, fs[j]).deg > 0:
                    raise ValueError(f"factors {j + 1} and {i + 1} are not coprime")

    @property
    def n(self) -> int:
        return len(self.factors)

    @cached_property
    def ramified_finite(self) -> tuple[Place, ...]:
        out = [Place(self.field, P) for u in self.factors for P, _ in factor_trial(u)]
        return tuple(sorted(out, key=Place.sort_key))

    def ramified_places(self) -> tuple[Place, ...]:
        odd = any(u.deg % 2 for u in self.factors)
        return self.ramified_finite + ((Place.infinity(self.field),) if odd else ())

    @property
    def genus(self) -> int:
        return multiquad_genus_direct(self)

    def count_rational(self, ext: Extension) -> int:
        n = self.n
        xs = ext.elements()
        chis = np.stack([ext.chi(ext.eval_poly(u, xs)) for u in self.factors])
        zero = chis == 0
        nzero = zero.sum(axis=0)
        # unramified x: all characters +1
        total = (1 << n) * int(np.sum((nzero == 0) & np.all(chis == 1, axis=0)))
        # a root of exactly one factor: the rest must be squares
        others_ok = np.all((chis == 1) | zero, axis=0)
        total += (1 << (n - 1)) * int(np.sum((nzero == 1) & others_ok))
        # infinity
        mask = chars = 0
        for i, u in enumerate(self.factors):
            if u.deg % 2:
                mask |= 1 << i
            elif int(ext.chi(np.asarray([ext.embed_scalar(u.lc)]))[0]) == -1:
                chars |= 1 << i
        # chars vanishes on the mask, so D = I exactly when chars == 0
        if chars == 0:
            total += (1 << n) // (2 if mask else 1)
        return total


def multiquad_analysis(c: MultiQuadCover, P: Place) -> LocalType:
    return local_type(c.field, c.factors, P)


def multiquad_genus_direct(c: MultiQuadCover) -> int:
    """Tame Hurwitz for (Z/2)^n: every ramified place has inertia of order 2."""
    n = c.n
    ram = sum(P.degree for P in c.ramified_places())
    twice = -(1 << (n + 1)) + ram * (1 << (n - 1))
    return twice // 2 + 1


def multiquad_genus_construction(m: int, n: int) -> tuple[int, int]:
    """Genus of k(y), y^2 = P_1...P_n, and of the compositum H, when every
    P_i has degree ``m``."""
    if n < 2 or m * n < 4:
        raise ValueError("need n >= 2 and m*n >= 4")
    eps = m % 2
    core = m * n + eps - 4
    if core % 2:
        raise ArithmeticError("parity violation: base genus is not an integer")
    g_base = core // 2 + 1
    g_top = (1 << (n - 2)) * core + 1
    return g_base, g_top


@dataclass(frozen=True)
class RelativePlace:
    """A place P of F_q(x) seen from an intermediate field E = Fix(W)."""

    place: Place
    local: LocalType
    e_places: int  # places of E over P
    e_residue_degree: int  # residue degree of each of them over F_q
    rel_inertia_dim: int  # dim(I & W)
    top_per_e_place: int  # places of the top field over each place of E
    rel_decomposition: Subspace  # D & W

    @property
    def ramified_in_top(self) -> bool:
        return self.rel_inertia_dim > 0

    @property
    def splits_in_top(self) -> bool:
        return self.rel_decomposition.dim == 0


def relative_place(P: Place, local: LocalType, W: Subspace) -> RelativePlace:
    n = local.n
    I, D = local.inertia, local.decomposition
    DW = D + W
    I_W = I & W
    D_W = D & W
    e_places = 1 << (n - DW.dim)
    e_over_k = I.dim - I_W.dim
    ef_over_k = D.dim - D_W.dim
    f = 1 << (ef_over_k - e_over_k)
    return RelativePlace(
        place=P,
        local=local,
        e_places=e_places,
        e_residue_degree=f * P.degree,
        rel_inertia_dim=I_W.dim,
        top_per_e_place=W.size // D_W.size,
        rel_decomposition=D_W,
    )


# -- y^2 + y = f(x), p = 2 ---------------------------------------------------

@dataclass(frozen=True)
class AS2Cover:
    field: FieldSpec
    num: Poly
    den: Poly

    def __post_init__(self) -> None:
        if self.field.p != 2:
            raise FieldError("Artin-Schreier covers here need characteristic 2")
        if self.den.is_zero() or not self.den.is_monic():
            raise ValueError("denominator must be monic and nonzero")
        if not self.num.is_zero() and poly_gcd(self.num, self.den).deg > 0:
            raise ValueError("f must be in lowest terms")
        for P, m in self.poles():
            if m % 2 == 0:
                raise ValueError(
                    f"pole of even order {m} at {P}: Artin-Schreier reduction is not implemented")
        if not self.poles():
            raise ValueError("f has no poles: the cover is a constant field extension or split")

    def poles(self) -> list[tuple[Place, int]]:
        F = self.field
        out = [(Place(F, P), e) for P, e in factor_trial(self.den)] if self.den.deg > 0 else []
        if not self.num.is_zero() and self.num.deg > self.den.deg:
            out.append((Place.infinity(F), self.num.deg - self.den.deg))
        return out

    @property
    def genus(self) -> int:
        return as2_genus(self)

    def count_rational(self, ext: Extension) -> int:
        xs = ext.elements()
        dv = ext.eval_poly(self.den, xs)
        nv = ext.eval_poly(self.num, xs)
        pole = dv == 0
        safe = np.where(pole, 1, dv)
        vals = ext.mul(nv, ext.inv(safe))
        tr = ext.trace(vals)
        total = int(np.sum(pole)) + 2 * int(np.sum(~pole & (tr == 0)))
        if not self.num.is_zero() and self.num.deg > self.den.deg:
            total += 1
        else:
            if self.num.is_zero() or self.num.deg < self.den.deg:
                at_inf = 0
            else:
                at_inf = ext.embed_scalar(self.field.div(self.num.lc, self.den.lc))
            total += 2 if int(ext.trace(np.asarray([at_inf]))[0]) == 0 else 0
        return total


def as2_splitting(c: AS2Cover, P: Place) -> Split:
    F = c.field
    if any(P == pole for pole, _ in c.poles()):
        return Split.RAMIFIED
    if P.is_infinite:
        if c.num.is_zero() or c.num.deg < c.den.deg:
            return Split.SPLIT
        value = F.div(c.num.lc, c.den.lc)
        return Split.SPLIT if _abs_trace(F, value) == 0 else Split.INERT
    inv_den = _residue_inverse(c.den, P.poly)
    tr = absolute_trace_residue(c.num * inv_den, P.poly)
    return Split.SPLIT if tr == 0 else Split.INERT


def _residue_inverse(a: Poly, P: Poly) -> Poly:
    # extended Euclid in F_q[x]/(P)
    r0, r1 = P, a % P
    s0, s1 = Poly(a.field), Poly.const(a.field, 1)
    while not r1.is_zero():
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
    if r0.deg != 0:
        raise ZeroDivisionError("not invertible modulo P")
    return (s0 * a.field.inv(r0.lc)) % P


def _abs_trace(F: FieldSpec, a: int) -> int:
    acc, cur = 0, a
    for _ in range(F.k):
        acc = F.add(acc, cur)
        cur = F.mul(cur, cur)
    return acc


def as2_genus(c: AS2Cover) -> int:
    twice = -4 + sum((m + 1) * P.degree for P, m in c.poles())
    if twice % 2:
        raise ArithmeticError("Hurwitz sum is odd")
    return twice // 2 + 1


# -- the curve y^q + y = x^q0 (x^q + x) ---------------------------------------

@dataclass(frozen=True)
class DLFamilyStats:
    q: int
    q0: int
    N: int
    genus: int
    M_N: int | None
    M_genus: int | None
    brute_force_N: int | None = None


def dl_family_stats(q: int) -> DLFamilyStats:
    p, k = prime_power(q)
    if p != 2 or k % 2 == 0:
        raise ValueError("q must be an odd power of 2")
    q0 = 1 << (k // 2)
    N, genus = q * q + 1, q0 * (q - 1)
    M_N = q * q // 4 + 1 if q >= 4 else None
    M_genus = q0 * (q // 4 - 1) if q >= 4 else None
    brute = None
    if q in (2, 8):
        brute = _dl_brute_count(q, q0)
        if brute != N:
            raise ArithmeticError(f"brute-force count {brute} disagrees with q^2+1 = {N}")
    return DLFamilyStats(q, q0, N, genus, M_N, M_genus, brute)


def _dl_brute_count(q: int, q0: int) -> int:
    """Affine solutions of y^q + y = x^q0 (x^q + x) over F_q, plus the point at infinity."""
    F = field_make(2, prime_power(q)[1])
    rhs_of = {}
    for x in F.elements():
        rhs_of[x] = F.mul(F.pow(x, q0), F.add(F.pow(x, q), x))
    count = 0
    for y in F.elements():
        lhs = F.add(F.pow(y, q), y)
        count += sum(1 for x in F.elements() if rhs_of[x] == lhs)
    return count + 1
