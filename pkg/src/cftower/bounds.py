"""Exact evaluation of closed-form bounds on A(q^r).

Every value is a :class:`fractions.Fraction`. Where a bound involves an
irrational square root the report carries a certified rational interval and
``value`` is its conservative endpoint: the lower end for lower bounds and
the upper end for upper bounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable

from .exact import (
    ceil_ksqrt,
    ceil_log_ratio,
    ceil_sqrt,
    decimal_str,
    floor_ksqrt,
    floor_theta_log2,
    frac_str,
    is_square,
    parse_fraction,
    sqrt_interval,
)
from .ffield import BudgetExceeded, FieldError, count_monic_irreducibles, divisors, field_from_q, is_prime, prime_power
from .places import b_r_interval

VERIFIED, ASSUMED, VIOLATED = "verified", "assumed", "violated"
LOWER, UPPER = "lower", "upper"


@dataclass(frozen=True)
class Hypothesis:
    text: str
    status: str

    def __post_init__(self) -> None:
        if self.status not in (VERIFIED, ASSUMED, VIOLATED):
            raise ValueError(f"bad status {self.status!r}")


def _check(text: str, ok: bool) -> Hypothesis:
    return Hypothesis(text, VERIFIED if ok else VIOLATED)


@dataclass(frozen=True)
class BoundReport:
    name: str
    kind: str
    base: int  # the bound concerns A(base ** exponent)
    exponent: int
    value: Fraction
    source: str
    hypotheses: tuple[Hypothesis, ...] = ()
    interval: tuple[Fraction, Fraction] | None = None
    notes: tuple[str, ...] = ()
    exact_equality: bool = False

    def __post_init__(self) -> None:
        if self.kind not in (LOWER, UPPER):
            raise ValueError("kind must be lower or upper")

    @property
    def target(self) -> int:
        return self.base**self.exponent

    @property
    def violated(self) -> bool:
        return any(h.status == VIOLATED for h in self.hypotheses)

    @property
    def high(self) -> Fraction:
        return self.interval[1] if self.interval else self.value

    @property
    def low(self) -> Fraction:
        return self.interval[0] if self.interval else self.value

    def label(self) -> str:
        return f"A({self.base}^{self.exponent})" if self.exponent > 1 else f"A({self.base})"

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "kind": self.kind,
            "q": self.base,
            "r": self.exponent,
            "target": self.target,
            "value": frac_str(self.value),
            "decimal": decimal_str(self.value),
            "source": self.source,
            "hypotheses": [{"text": h.text, "status": h.status} for h in self.hypotheses],
            "notes": list(self.notes),
        }
        if self.interval:
            out["interval"] = [frac_str(self.interval[0]), frac_str(self.interval[1])]
        if self.exact_equality:
            out["exact"] = True
        return out

    @classmethod
    def from_json(cls, data: dict) -> BoundReport:
        interval = data.get("interval")
        return cls(
            name=data["name"], kind=data["kind"], base=int(data["q"]), exponent=int(data["r"]),
            value=parse_fraction(data["value"]), source=data["source"],
            hypotheses=tuple(Hypothesis(h["text"], h["status"]) for h in data.get("hypotheses", [])),
            interval=(parse_fraction(interval[0]), parse_fraction(interval[1])) if interval else None,
            notes=tuple(data.get("notes", [])), exact_equality=bool(data.get("exact", False)),
        )


def _radical_report(name: str, kind: str, base: int, exponent: int, lo: Fraction, hi: Fraction,
                    source: str, hyps: Iterable[Hypothesis] = (), notes: Iterable[str] = (),
                    ) -> BoundReport:
    interval = None if lo == hi else (lo, hi)
    value = lo if kind == LOWER else hi
    return BoundReport(name, kind, base, exponent, value, source, tuple(hyps), interval, tuple(notes))


# -- upper bounds ------------------------------------------------------------

def weil_serre_max(q: int, g: int) -> int:
    """Largest possible number of rational places of a genus-g curve over F_q."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    prime_power(q)
    return q + 1 + g * floor_ksqrt(2, q)


def weil_serre_upper(q: int, r: int = 1) -> BoundReport:
    Q = q**r
    return BoundReport("weil_serre_upper", UPPER, q, r, Fraction(floor_ksqrt(2, Q)),
                       "Weil-Serre: A(q) <= floor(2 sqrt q)")


def drinfeld_vladut_upper(q: int, r: int = 1, digits: int = 9) -> BoundReport:
    Q = q**r
    lo, hi = sqrt_interval(Q, digits)
    rep = _radical_report("drinfeld_vladut_upper", UPPER, q, r, lo - 1, hi - 1,
                          "Drinfeld-Vladut: A(q) <= sqrt(q) - 1")
    if lo == hi:
        rep = BoundReport(rep.name, UPPER, q, r, rep.value, rep.source, (), None,
                          ("exact, square q",), exact_equality=True)
    return rep


def ihara_square(q: int, r: int = 1) -> BoundReport | None:
    Q = q**r
    if not is_square(Q):
        return None
    return BoundReport("ihara_square", LOWER, q, r, Fraction(isqrt(Q) - 1),
                       "Ihara: A(q) >= sqrt(q) - 1 for square q", (Hypothesis("q is a square", VERIFIED),),
                       exact_equality=True)


# -- classical lower bounds --------------------------------------------------

def zink_bound(p: int) -> BoundReport:
    hyp = _check("p prime", is_prime(p))
    return BoundReport("zink_cube", LOWER, p, 3, Fraction(2 * (p * p - 1), p + 2),
                       "Zink: A(p^3) >= 2(p^2-1)/(p+2)", (hyp,))


def perret_bound(q: int, l: int, digits: int = 9) -> BoundReport:
    hyps = [
        _check("l prime", is_prime(l)),
        _check(f"q > 4l+1 = {4 * l + 1}", q > 4 * l + 1),
        _check("q = 1 mod l", (q - 1) % l == 0),
    ]
    s_lo, s_hi = sqrt_interval(l * (q - 1), digits)
    lo = (s_lo - 2 * l) / (l - 1)
    hi = (s_hi - 2 * l) / (l - 1)
    return _radical_report("perret", LOWER, q, l, lo, hi,
                           "Perret: A(q^l) >= (sqrt(l(q-1)) - 2l)/(l-1)", hyps)


def nx_odd_bound(q: int, m: int) -> BoundReport:
    hyps = [_check("q odd", q % 2 == 1), _check("m >= 3", m >= 3)]
    value = Fraction(2 * q, ceil_ksqrt(2, 2 * q + 1) + 1)
    return BoundReport("nx_odd", LOWER, q, m, value,
                       "Niederreiter-Xing: A(q^m) >= 2q/(ceil(2 sqrt(2q+1)) + 1), q odd", tuple(hyps))


def nx_even_bound(q: int, m: int) -> BoundReport:
    hyps = [_check("q >= 4 even", q % 2 == 0 and q >= 4), _check("m odd >= 3", m >= 3 and m % 2 == 1)]
    value = Fraction(q + 1, ceil_ksqrt(2, 2 * q + 2) + 2)
    return BoundReport("nx_even", LOWER, q, m, value,
                       "Niederreiter-Xing: A(q^m) >= (q+1)/(ceil(2 sqrt(2q+2)) + 2), q even", tuple(hyps))


def classic_lower_bounds(q: int, r: int, l: int | None = None) -> list[BoundReport]:
    """The classical lower bounds applicable (or flagged) at A(q^r)."""
    p, k = prime_power(q)
    out: list[BoundReport] = []
    if k == 1 and r == 3:
        out.append(zink_bound(p))
    if l is not None or (r >= 2 and is_prime(r)):
        out.append(perret_bound(q, l if l is not None else r))
    if q % 2:
        out.append(nx_odd_bound(q, r))
    else:
        out.append(nx_even_bound(q, r))
    return out


def _h_ratio_hyp(h_ratio: int | None, divisor: int, text: str) -> Hypothesis:
    if h_ratio is None:
        return Hypothesis(text, ASSUMED)
    return _check(text, h_ratio % divisor != 0)


def gennx_bounds(q: int, r: int, N: int, g: int, b_r: int | None = None,
                 h_ratio: int | None = None) -> BoundReport:
    """Generalised Niederreiter-Xing bound for a function field with N rational
    places and genus g, with the B_r and class-number hypotheses attached."""
    if N < 1 or r < 3:
        raise ValueError("need N >= 1 and r >= 3")
    hyps = [_check("r >= 3", r >= 3), _h_ratio_hyp(h_ratio, 2, "h(F_r)/h(F) odd")]
    if q % 2:
        value = Fraction(2 * (N - 1), 2 * g + ceil_ksqrt(2, 2 * N - 1) + 1)
        text = "B_r(F) >= 2 sqrt(2N-1) + 3"
        radicand = 2 * N - 1
        name = "gennx_odd"
    else:
        value = Fraction(N - 1, g + ceil_ksqrt(2, 2 * N - 2) + 2)
        text = "B_r(F) >= 2 sqrt(2N-2) + 3"
        radicand = 2 * N - 2
        name = "gennx_even"
    if b_r is None:
        hyps.append(Hypothesis(text, ASSUMED))
    else:
        hyps.append(_check(text, b_r - 3 >= 0 and (b_r - 3) ** 2 >= 4 * radicand))
    return BoundReport(name, LOWER, q, r, value,
                       f"Niederreiter-Xing class number ratio bound (N={N}, g={g})", tuple(hyps))


# -- cubes -------------------------------------------------------------------

def is_special(q: int) -> bool:
    p, _ = prime_power(q)
    if floor_ksqrt(2, q) % p == 0:
        return True
    n = isqrt(q - 1)
    if n * n + 1 == q:
        return True
    for c in (1, 2):
        disc = 4 * (q - c) + 1
        if disc >= 0 and is_square(disc):
            root = isqrt(disc)
            if root % 2 == 1 and (root - 1) // 2 >= 0:
                return True
    return False


def cube_bounds(q: int) -> list[BoundReport]:
    """The applicable A(q^3) displays, selected by the parity and divisibility case split."""
    p, _ = prime_power(q)
    if q < 3:
        raise ValueError("q must be >= 3")
    f2 = floor_ksqrt(2, q)  # floor(2 sqrt q)
    f1 = isqrt(q)  # floor(sqrt q)
    src = "Niederreiter-Xing cube bound"
    out: list[BoundReport] = []
    if q % 2:
        if f2 % p:
            num = 2 * q + 4 * f1
            out.append(BoundReport("cube_odd_coprime", LOWER, q, 3,
                                   Fraction(num, 3 + ceil_ksqrt(2, num + 1)), src,
                                   (Hypothesis("q odd, p does not divide floor(2 sqrt q)", VERIFIED),)))
        else:
            num = 2 * q + 4 * f1 - 4
            out.append(BoundReport("cube_odd_divisible", LOWER, q, 3,
                                   Fraction(num, 3 + ceil_ksqrt(2, 2 * q + 4 * f1 - 3)), src,
                                   (Hypothesis("q odd, p divides floor(2 sqrt q)", VERIFIED),)))
        if q >= 11 and f2 % 2 == 0 and not is_special(q):
            num = 2 * q + 4 * f1
            out.append(BoundReport("cube_nonspecial", LOWER, q, 3,
                                   Fraction(num, 5 + ceil_ksqrt(2, num + 1)), src,
                                   (Hypothesis("q >= 11 odd, floor(2 sqrt q) even, q not special",
                                               VERIFIED),)))
    elif q >= 4:
        if f2 % 2:
            out.append(BoundReport("cube_even_odd_floor", LOWER, q, 3,
                                   Fraction(q + f2, 3 + ceil_ksqrt(2, 2 * q + 2 * f2)), src,
                                   (Hypothesis("q >= 4 even, floor(2 sqrt q) odd", VERIFIED),)))
        else:
            out.append(BoundReport("cube_even_even_floor", LOWER, q, 3,
                                   Fraction(q + f2 - 1, 3 + ceil_ksqrt(2, 2 * q + 2 * f2 - 2)), src,
                                   (Hypothesis("q >= 4 even, floor(2 sqrt q) even", VERIFIED),)))
    return out


# -- ray class towers --------------------------------------------------------

def _qodd_threshold(N: int, r: int) -> int:
    return (3 + ceil_ksqrt(2, 2 * N + 1)) // (r - 2)


def thm_qodd_value(N: int, g: int, r: int, s: int) -> Fraction:
    c = ceil_ksqrt(2, 2 * N + 1)
    return Fraction(4 * N * s, 4 * g + (3 + c) // (r - 2) + c)


def thm_qodd_bound(N: int, g: int, r: int, s: int, q: int | None = None,
                   b_r: int | None = None, b_s: int | None = None,
                   h_ratio: int | None = None) -> BoundReport:
    """Odd-q ray class tower bound on A(q^(rs))."""
    if gcd(r, s) != 1:
        raise ValueError("r and s must be coprime")
    if N < 1:
        raise ValueError("N must be >= 1")
    hyps = [
        _check("q odd", q is None or q % 2 == 1),
        _check("r odd >= 3", r >= 3 and r % 2 == 1),
        Hypothesis("B_s >= N", ASSUMED) if b_s is None else _check("B_s >= N", b_s >= N),
        Hypothesis("B_r > floor((3 + ceil(2 sqrt(2N+1)))/(r-2))", ASSUMED) if b_r is None
        else _check(f"B_r > floor((3 + ceil(2 sqrt(2N+1)))/(r-2)) = {_qodd_threshold(N, r)}",
                    b_r > _qodd_threshold(N, r)),
        _h_ratio_hyp(h_ratio, 2, "h(F_r)/h(F) odd"),
    ]
    return BoundReport("tower_odd_q", LOWER, q or 0, r * s, thm_qodd_value(N, g, r, s),
                       f"ray class tower over F with N={N}, g={g}, r={r}, s={s}", tuple(hyps))


def rational_qodd_N(q: int, r: int, s: int) -> int:
    """Largest N <= B_s(F_q(x)) with B_r > floor((3 + ceil(2 sqrt(2N+1)))/(r-2)); 0 if none."""
    b_s = q + 1 if s == 1 else count_monic_irreducibles(q, s)
    b_r = count_monic_irreducibles(q, r)
    for N in range(b_s, 0, -1):
        if b_r > _qodd_threshold(N, r):
            return N
    return 0


def cor_qoddcor(q: int, r: int) -> BoundReport:
    """The rational-field specialisation, with its two radicands taken as displayed."""
    if q % 2 == 0 or r < 3 or r % 2 == 0:
        raise ValueError("need q odd and r odd >= 3")
    value = Fraction(4 * q + 4, (3 + ceil_ksqrt(2, 2 * q + 2)) // (r - 2) + ceil_ksqrt(2, 2 * q + 3))
    parent = thm_qodd_value(q + 1, 0, r, 1)
    b_r = count_monic_irreducibles(q, r)
    hyps = (
        Hypothesis("q odd, r odd >= 3", VERIFIED),
        _check(f"general bound B_r hypothesis at N = q+1 (B_r = {b_r})", b_r > _qodd_threshold(q + 1, r)),
        _check(f"value does not exceed the general bound at N = q+1 ({frac_str(parent)})", value <= parent),
    )
    return BoundReport("tower_odd_q_rational", LOWER, q, r, value,
                       "ray class tower over F_q(x), s = 1", hyps,
                       notes=("inner radicands 2q+2 and 2q+3 evaluated as printed",))


def thm_anyp_value(p: int, N: int, g: int, s: int = 1) -> Fraction:
    den = p * g - p + 2 * (p - 1) * (3 + ceil_ksqrt(2, p * N))
    if den == 0:
        raise ZeroDivisionError("denominator vanishes")
    return Fraction(p * N * s, den)


def _anyp_threshold(p: int, N: int, r: int) -> int:
    return (6 + 2 * ceil_ksqrt(2, 2 * p * N)) // (r - 1)


def thm_anyp_bound(p: int, N: int, g: int, s: int = 1, q: int | None = None, r: int | None = None,
                   b_r: int | None = None, b_s: int | None = None,
                   h_ratio: int | None = None) -> BoundReport:
    """Characteristic-p ray class tower bound, evaluated from the display."""
    if N < 1:
        raise ValueError("N must be >= 1")
    hyps = [Hypothesis("B_s >= N", ASSUMED) if b_s is None else _check("B_s >= N", b_s >= N)]
    if r is not None:
        hyps.append(_check("r odd >= 3, gcd(r, s) = 1", r >= 3 and r % 2 == 1 and gcd(r, s) == 1))
        thr = _anyp_threshold(p, N, r)
        text = f"B_r > floor((6 + 2 ceil(2 sqrt(2pN)))/(r-1)) = {thr}"
        hyps.append(Hypothesis(text, ASSUMED) if b_r is None else _check(text, b_r > thr))
    hyps.append(_h_ratio_hyp(h_ratio, p, "p does not divide h(F_r)/h(F)"))
    return BoundReport("tower_any_p", LOWER, q or p, r or 1, thm_anyp_value(p, N, g, s),
                       f"Artin-Schreier ray class tower, p={p}, N={N}, g={g}, s={s}", tuple(hyps))


def thm_qeven_value(N: int, g: int) -> Fraction:
    return Fraction(N, g + ceil_ksqrt(2, 2 * N) + 2)


def thm_qeven_bound(q: int, r: int, N: int, g: int, b_r: int | None = None,
                    h_ratio: int | None = None, h_text: str | None = None) -> BoundReport:
    thr = (6 + 2 * ceil_ksqrt(2, 2 * N)) // (r - 1)
    text = f"B_r > floor((6 + 2 ceil(2 sqrt(2N)))/(r-1)) = {thr}"
    hyps = [
        _check("q a power of 2", q % 2 == 0),
        _check("r odd >= 3", r >= 3 and r % 2 == 1),
        Hypothesis(text, ASSUMED) if b_r is None else _check(text, b_r > thr),
        Hypothesis(h_text, ASSUMED) if h_text else _h_ratio_hyp(h_ratio, 2, "h(F_r)/h(F) odd"),
    ]
    return BoundReport("tower_even_q", LOWER, q, r, thm_qeven_value(N, g),
                       f"even-q ray class tower, N={N}, g={g}", tuple(hyps))


def _two_power_odd_exponent(q: int) -> int:
    p, k = prime_power(q)
    if p != 2 or k % 2 == 0:
        raise ValueError("q must be an odd power of 2")
    return k


def thm_qevenagain(q: int, r: int) -> BoundReport:
    """Even-q bound from the curve y^q + y = x^q0 (x^q + x) (r >= 5) or its
    subcover of degree q/4 (r = 3); the text in the body is used."""
    k = _two_power_odd_exponent(q)
    q0 = 1 << (k // 2)
    sq = 2 * q0  # sqrt(2q)
    if r % 2 == 0 or r < 3:
        raise ValueError("r must be odd >= 3")
    if r == 3:
        if q < 4:
            raise ValueError("the r = 3 form needs q >= 4")
        N, g = q * q // 4 + 1, q0 * (q // 4 - 1)
        value = Fraction(2 * q * q + 8, sq * (q - 4) + 8 * ceil_sqrt(2 * q * q + 8) + 16)
        name, curve = "dl_tower_r3", "subcover M"
    else:
        N, g = q * q + 1, q0 * (q - 1)
        value = Fraction(2 * q * q + 2, sq * (q - 1) + 2 * ceil_ksqrt(2, 2 * q * q + 2) + 4)
        name, curve = "dl_tower", "curve L"
    thr = (6 + 2 * ceil_ksqrt(2, 2 * N)) // (r - 1)
    lo, _ = b_r_interval(q, r, g)
    hyps = (
        Hypothesis("q sufficiently large (asymptotic regime)", ASSUMED),
        Hypothesis(f"B_r({curve}) > {thr}", VERIFIED if lo > thr else ASSUMED),
        Hypothesis("h ratio odd (Rosen divisibility argument, not computed: genus too large)", ASSUMED),
    )
    notes = ("the introduction prints numerator 2q^2 and radicand 2q^2 / sqrt(2) q; the body form is used",)
    return BoundReport(name, LOWER, q, r, value, f"tower over the {curve}, N={N}, g={g}", hyps,
                       notes=notes)


def thm_357(q: int, p: int, digits: int = 9) -> BoundReport:
    if p not in (3, 5, 7):
        raise ValueError("p must be 3, 5 or 7")
    pp, k = prime_power(q)
    if pp != p:
        raise ValueError(f"q must be a power of {p}")
    num = 2 * (q * q + p * p)
    c = q - p * p
    rest = 4 * p * (p - 1) * ceil_sqrt(q * q // p + p) + 10 * p * p - 12 * p
    s_lo, s_hi = sqrt_interval(p * q, digits)
    ends = sorted([s_lo * c + rest, s_hi * c + rest])
    hyps = [Hypothesis("q sufficiently large (asymptotic regime)", ASSUMED),
            _check("denominator positive", ends[0] > 0)]
    if ends[0] <= 0:
        return BoundReport("char357_cube", LOWER, q, 3, Fraction(0), f"p = {p} cube bound", tuple(hyps))
    return _radical_report("char357_cube", LOWER, q, 3, Fraction(num) / ends[1], Fraction(num) / ends[0],
                           f"p = {p} cube bound", hyps)


# -- compositum construction -------------------------------------------------

def kem_display(q: int, r: int, theta: Fraction) -> tuple[Fraction | None, int, int]:
    """The closed-form value, floor(theta r log q) and ceil(2 log r/log q) + 1."""
    a = floor_theta_log2(q, r, theta)
    M = ceil_log_ratio(r, q) + 1
    if q % 2:
        num = ((a - 3) ** 2 - 4) * r
        den = 2 * M * (a + 1) - 6
    else:
        num = (a - 2) ** 2 * r
        den = 4 * M * (a + 1) - 8
    return (Fraction(num, den) if den else None), a, M


def kem_bounds(q: int, r: int, theta: Fraction, plan: bool = True,
               budget: int = 10**6) -> list[BoundReport]:
    """Closed-form compositum bound and (optionally) the value of the explicit construction."""
    from .towers import count_split_degree_r, kem_plan

    theta = Fraction(theta)
    if not 0 < theta < Fraction(1, 2):
        raise ValueError("theta must lie in (0, 1/2)")
    value, a, M = kem_display(q, r, theta)
    odd = q % 2 == 1
    need = 6 if odd else 4
    hyps = [
        Hypothesis("q^r sufficiently large (asymptotic regime)", ASSUMED),
        _check(f"construction nondegenerate: floor(theta r log q) = {a} >= {need}", a >= need),
    ]
    if value is None:
        hyps.append(Hypothesis("denominator nonzero", VIOLATED))
        value = Fraction(0)
    name = "compositum_odd" if odd else "compositum_even"
    out = [BoundReport(name, LOWER, q, r, value,
                       f"compositum construction, theta={theta}", tuple(hyps),
                       notes=(f"floor(theta r log2 q) = {a}", f"ceil(2 log r/log q) + 1 = {M}"))]
    if plan and (not odd or r % 2 == 1):
        try:
            kp = kem_plan(q, r, theta)
        except (ValueError, BudgetExceeded, FieldError):
            kp = None
        if kp is not None and kp.bound is not None:
            phyps = [Hypothesis(f"m <= ceil(2 log r/log q) + 1 ({kp.m} <= {kp.M})",
                                VERIFIED if kp.m_check == VERIFIED else VIOLATED)]
            need = f"at least {kp.s_prime_size} degree-{r} places of k(y) split completely in H"
            split = None
            if odd and r >= 3:
                try:
                    split = count_split_degree_r(field_from_q(q), kp.factors, r, budget)
                except (BudgetExceeded, FieldError):
                    split = None
            if split is None:
                # the counting argument is only available when m <= M
                phyps[0] = Hypothesis(phyps[0].text, ASSUMED if kp.m <= kp.M else VIOLATED)
                phyps.append(Hypothesis(need, ASSUMED))
            else:
                phyps[0] = Hypothesis(phyps[0].text, VERIFIED if kp.m <= kp.M else ASSUMED)
                phyps.append(_check(f"{need} (counted: {split})", split >= kp.s_prime_size))
            out.append(BoundReport(name + "_construction", LOWER, q, r, kp.bound,
                                   f"explicit compositum, n={kp.n}, m={kp.m}", tuple(phyps)))
    return out


# -- literature and certificates ---------------------------------------------

LITERATURE = (
    (2, Fraction(81, 317), "Niederreiter-Xing"),
    (3, Fraction(62, 163), "Niederreiter-Xing"),
    (3, Fraction(8, 17), "Temkine"),
    (5, Fraction(2, 3), "Niederreiter-Xing"),
    (5, Fraction(8, 11), "Temkine"),
)

CERTIFIED = {7: Fraction(9, 10), 11: Fraction(12, 11), 13: Fraction(4, 3), 17: Fraction(8, 5)}


def literature_bounds(q: int) -> list[BoundReport]:
    return [BoundReport(f"literature_{who.split('-')[0].lower()}", LOWER, q, 1, v,
                        f"{who} (cited value)", (Hypothesis("literature value", ASSUMED),))
            for p, v, who in LITERATURE if p == q]


def certificate_bound(q: int) -> BoundReport | None:
    if q not in CERTIFIED:
        return None
    return BoundReport("tower_certificate", LOWER, q, 1, CERTIFIED[q],
                       "explicit Kummer tower certificate",
                       (Hypothesis(f"recomputed by `cftower certify --p {q}`", ASSUMED),))


# -- comparison table --------------------------------------------------------

class SanityWallError(AssertionError):
    pass


def _representations(Q: int) -> list[tuple[int, int]]:
    p, K = prime_power(Q)
    return [(p**j, K // j) for j in divisors(K)]


def _at(q: int, e: int, theta: Fraction | None, budget: int) -> list[BoundReport]:
    """Every evaluator that applies to A(q^e) for this particular base q."""
    out: list[BoundReport] = []
    p, k = prime_power(q)
    if e == 1:
        out.extend(literature_bounds(q))
        cert = certificate_bound(q)
        if cert:
            out.append(cert)
    if e == 3 and k == 1:
        out.append(zink_bound(p))
    if e >= 2 and is_prime(e) and (q - 1) % e == 0 and q > 4 * e + 1:
        out.append(perret_bound(q, e))
    if e >= 3:
        if q % 2:
            out.append(nx_odd_bound(q, e))
        elif q >= 4 and e % 2:
            out.append(nx_even_bound(q, e))
        b_e = count_monic_irreducibles(q, e)
        out.append(gennx_bounds(q, e, q + 1, 0, b_r=b_e, h_ratio=1))
    if e == 3 and q >= 3:
        out.extend(cube_bounds(q))
    if q % 2 and e >= 3:
        for r in divisors(e):
            s = e // r
            if r >= 3 and r % 2 == 1 and gcd(r, s) == 1:
                N = rational_qodd_N(q, r, s)
                if N:
                    b_s = q + 1 if s == 1 else count_monic_irreducibles(q, s)
                    out.append(thm_qodd_bound(N, 0, r, s, q=q, b_r=count_monic_irreducibles(q, r),
                                              b_s=b_s, h_ratio=1))
        if e % 2:
            out.append(cor_qoddcor(q, e))
    if e >= 3 and e % 2:
        b_e = count_monic_irreducibles(q, e)
        N = 0
        for cand in range(q + 1, 0, -1):
            if b_e > _anyp_threshold(p, cand, e):
                N = cand
                break
        if N:
            out.append(thm_anyp_bound(p, N, 0, 1, q=q, r=e, b_r=b_e, b_s=q + 1, h_ratio=1))
        if q % 2 == 0:
            out.append(thm_qeven_bound(q, e, q + 1, 0, b_r=b_e, h_ratio=1))
            if k % 2 == 1 and (e >= 5 or q >= 4):
                out.append(thm_qevenagain(q, e))
    if e == 3 and p in (3, 5, 7):
        out.append(thm_357(q, p))
    if theta is not None:
        out.extend(kem_bounds(q, e, theta, plan=e <= 64, budget=budget))
    return out


def best_table(q: int, r: int = 1, s: int = 1, theta: Fraction | None = None,
               budget: int = 200_000) -> list[BoundReport]:
    """All bounds on A(q^(r s)) over every way of writing q^(r s) as a prime-power power.

    Raises :class:`SanityWallError` if any lower bound without a violated
    hypothesis exceeds the Drinfeld-Vladut enclosure.
    """
    try:
        prime_power(q)
    except FieldError:
        raise
    if r < 1 or s < 1:
        raise ValueError("r and s must be positive")
    Q = q ** (r * s)
    reports: list[BoundReport] = [weil_serre_upper(q, r * s), drinfeld_vladut_upper(q, r * s)]
    ihara = ihara_square(q, r * s)
    if ihara:
        reports.append(ihara)
    for base, e in _representations(Q):
        reports.extend(_at(base, e, theta, budget))
    dv = reports[1]
    for rep in reports:
        if rep.kind == LOWER and not rep.violated and rep.high > dv.high:
            raise SanityWallError(
                f"{rep.name} at {rep.label()} = {frac_str(rep.high)} exceeds sqrt(q)-1 <= {frac_str(dv.high)}")
    return reports


def best_lower(reports: list[BoundReport]) -> BoundReport | None:
    """Largest certified lower bound; ties broken by name, violated entries skipped."""
    eligible = [rep for rep in reports if rep.kind == LOWER and not rep.violated]
    if not eligible:
        return None
    return max(eligible, key=lambda rep: (rep.value, [-ord(ch) for ch in rep.name]))
