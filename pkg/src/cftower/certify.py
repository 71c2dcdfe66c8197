"""Verification and search of explicit class field tower certificates.

A certificate describes a tower field inside a multi-quadratic extension
Top = k(sqrt u_1, ..., sqrt u_n) of k = F_q(x), together with a set T of
places and claimed invariants. The verifier recomputes everything from the
polynomials: irreducibility, local splitting with square-root witnesses,
genera by Hurwitz, |S|, a lower bound for the 2-rank of Cl_S, the
Golod-Shafarevich inequality and the resulting bound |S|/(g-1) on A(q).

Three shapes are understood:

* ``base_cover`` Q and ``second_cover`` {"u": P}: the tower field is
  k(sqrt Q, sqrt P), with T given as places of k whose places in k(sqrt Q)
  form T. The rank comes from ramification in the quadratic step.
* ``second_cover`` {"u": P} alone: tower field k(sqrt P), T places of k.
* ``second_cover`` {"factors": [P_1, ...]} alone: tower field
  k(sqrt(P_1...P_n)), rank from the unramified part of
  k(sqrt P_1, ..., sqrt P_n) over it modulo the decomposition groups of T.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .covers import LocalType, Subspace, bits_str, local_type, relative_place
from .exact import frac_str, parse_fraction
from .ffield import (
    FieldError,
    FieldSpec,
    Poly,
    PolyParseError,
    enumerate_monic_irreducibles,
    factor_trial,
    field_from_q,
    format_poly,
    is_prime,
    is_square_in_residue_field,
    parse_poly,
    poly_gcd,
    poly_is_irreducible,
    prime_power,
    squarefree_decomposition,
)
from .places import Place
from .towers import d_l_constants, gs_inequality, unit_rank

PROP_PATH = "ramification"
COMPOSITUM_PATH = "compositum"


class CertificateError(ValueError):
    """The certificate file is structurally malformed."""


@dataclass(frozen=True)
class Claimed:
    s_size: int
    rank_lb: int
    genus: int
    bound: Fraction
    l: int = 2
    t_size: int | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"s_size": self.s_size, "rank_lb": self.rank_lb, "genus": self.genus,
                               "l": self.l, "bound": frac_str(self.bound)}
        if self.t_size is not None:
            out["t_size"] = self.t_size
        return out


@dataclass(frozen=True)
class TowerCertificate:
    q: int
    base_cover: str | None
    second_cover: dict  # {"u": str} or {"factors": [str, ...]}
    T: tuple[str, ...] | None  # None: derive from the split places
    claimed: Claimed
    witnesses: dict = field(default_factory=dict)  # place -> sqrt of the first cover mod place
    R: tuple[str, ...] | None = None  # expected ramified places of the second cover
    name: str | None = None
    notes: tuple[str, ...] = ()

    @property
    def shape(self) -> str:
        if "factors" in self.second_cover:
            return COMPOSITUM_PATH
        return PROP_PATH

    def to_json(self) -> dict:
        out: dict[str, Any] = {"q": self.q,
                               "base_cover": {"u": self.base_cover} if self.base_cover else None,
                               "second_cover": dict(self.second_cover),
                               "T": list(self.T) if self.T is not None else None,
                               "claimed": self.claimed.to_json()}
        if self.witnesses:
            out["witnesses"] = dict(self.witnesses)
        if self.R is not None:
            out["R"] = list(self.R)
        if self.name:
            out["name"] = self.name
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise CertificateError(msg)


def certificate_from_json(data: Any) -> TowerCertificate:
    """Build a certificate from parsed JSON, checking the schema only."""
    _require(isinstance(data, dict), "certificate must be a JSON object")
    for key in ("q", "second_cover", "claimed"):
        _require(key in data, f"missing key {key!r}")
    q = data["q"]
    _require(isinstance(q, int) and not isinstance(q, bool), "q must be an integer")
    try:
        prime_power(q)
    except FieldError as exc:
        raise CertificateError(str(exc)) from None
    base = data.get("base_cover")
    if base is not None:
        _require(isinstance(base, dict) and isinstance(base.get("u"), str), "base_cover must be {\"u\": str}")
        base = base["u"]
    second = data["second_cover"]
    _require(isinstance(second, dict), "second_cover must be an object")
    if "u" in second:
        _require(isinstance(second["u"], str) and set(second) == {"u"}, "second_cover.u must be a string")
    else:
        fs = second.get("factors")
        _require(isinstance(fs, list) and fs and all(isinstance(f, str) for f in fs) and set(second) == {"factors"},
                 "second_cover needs \"u\" or a nonempty \"factors\" list")
        _require(base is None, "a factor list cannot sit over a base cover")
    T = data.get("T")
    if T is not None:
        _require(isinstance(T, list) and T and all(isinstance(t, str) for t in T), "T must be a nonempty list of strings")
        T = tuple(T)
    c = data["claimed"]
    _require(isinstance(c, dict), "claimed must be an object")
    for key in ("s_size", "rank_lb", "genus", "bound"):
        _require(key in c, f"claimed.{key} missing")
    for key in ("s_size", "rank_lb", "genus", "l", "t_size"):
        if key in c:
            _require(isinstance(c[key], int) and not isinstance(c[key], bool), f"claimed.{key} must be an integer")
    try:
        bound = parse_fraction(str(c["bound"]))
    except (ValueError, ZeroDivisionError) as exc:
        raise CertificateError(f"claimed.bound: {exc}") from None
    l = c.get("l", 2)
    _require(l == 2, "only l = 2 certificates are supported")
    claimed = Claimed(c["s_size"], c["rank_lb"], c["genus"], bound, l, c.get("t_size"))
    wit = data.get("witnesses", {})
    _require(isinstance(wit, dict) and all(isinstance(k, str) and isinstance(v, str) for k, v in wit.items()),
             "witnesses must map place strings to polynomial strings")
    R = data.get("R")
    if R is not None:
        _require(isinstance(R, list) and all(isinstance(t, str) for t in R), "R must be a list of strings")
        R = tuple(R)
    notes = data.get("notes", [])
    _require(isinstance(notes, list), "notes must be a list")
    return TowerCertificate(q, base, dict(second), T, claimed, dict(wit), R, data.get("name"), tuple(notes))


def load_certificate(path: str) -> TowerCertificate:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CertificateError(f"cannot read {path}: {exc}") from None
    return certificate_from_json(data)


def dump_certificate(cert: TowerCertificate) -> str:
    return json.dumps(cert.to_json(), indent=2)


# -- builtin data ------------------------------------------------------------

def _linear(a: int, p: int) -> str:
    a %= p
    return "x" if a == 0 else f"x+{a}"


def _product(factors: Sequence[str]) -> str:
    return "*".join(f if f == "x" else f"({f})" for f in factors)


def builtin_certificate(p: int) -> TowerCertificate:
    if p == 7:
        P = ["x", "x+1", "x+2", "x^2+4*x+6", "x^2+3*x+6", "x^2+3*x+1", "x^2+6*x+4", "x^2+6*x+3",
             "x^2+2*x+2", "x^2+4"]
        witnesses = {"x^2+4*x+6": "2*x+3", "x^2+3*x+6": "x+3", "x^2+3*x+1": "5*x+2", "x^2+6*x+4": "1",
                     "x^2+6*x+3": "2*x+2", "x^2+2*x+2": "x+3", "x^2+4": "5*x+2"}
        return TowerCertificate(
            7, "x^6+2*x^5+3*x^4+3*x^3+x^2+1", {"u": _product(P)},
            tuple(_linear(a, 7) for a in range(2, 7)),
            Claimed(s_size=18, rank_lb=11, genus=21, bound=Fraction(9, 10), t_size=10),
            witnesses, tuple(P) + ("inf",), "A(7)")
    if p == 11:
        P = ["x^2+4*x+2", "x^2+5*x+7", "x^2+8*x+9", "x^2+6*x+7", "x^2+1", "x^2+3", "x^2+4", "x^2+5",
             "x^2+9", "x^2+10*x+6", "x^2+6*x+3", "x^2+x+1", "x^2+6*x+2", "x^2+9*x+5", "x^2+6*x+10",
             "x^2+x+4", "x^2+x+6", "x^2+x+7", "x^2+x+8", "x^2+10*x+4", "x^2+9*x+4", "x^2+9*x+10",
             "x^2+6*x+1", "x^2+7*x+9"]
        return TowerCertificate(
            11, None, {"factors": P}, tuple(_linear(a, 11) for a in range(11)) + ("inf",),
            Claimed(s_size=24, rank_lb=12, genus=23, bound=Fraction(12, 11), t_size=12), name="A(11)")
    if p == 13:
        roots = [0, 1, 2, 3, 4, 5, 6, 7, 9]
        P = ["x" if a == 0 else f"x-{a}" for a in roots]
        return TowerCertificate(
            13, None, {"u": _product(P)}, ("x+2", "x+3"),
            Claimed(s_size=4, rank_lb=7, genus=4, bound=Fraction(4, 3), t_size=2), name="A(13)",
            notes=("genus stored as 4: the Hurwitz count for a degree-9 squarefree P; "
                   "the printed value 3 is inconsistent with the stated bound 4/3",))
    if p == 17:
        roots = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 15]
        P = ["x" if a == 0 else f"x-{a}" for a in roots]
        return TowerCertificate(
            17, None, {"u": _product(P)}, None,
            Claimed(s_size=8, rank_lb=9, genus=6, bound=Fraction(8, 5)), name="A(17)",
            notes=("T is derived: the largest set of completely split rational places, "
                   "in sort order, that satisfies the Golod-Shafarevich inequality",))
    raise ValueError(f"no builtin certificate for p = {p}; choose 7, 11, 13 or 17")


BUILTIN_PRIMES = (7, 11, 13, 17)


# -- the field model ---------------------------------------------------------

@dataclass
class Step:
    name: str
    ok: bool
    detail: Any = None

    def to_json(self) -> dict:
        return {"step": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class VerificationReport:
    name: str | None
    shape: str
    steps: list[Step]
    values: dict
    discrepancies: list[str]
    notes: list[str]
    verdict: bool

    @property
    def bound(self) -> Fraction | None:
        b = self.values.get("bound")
        return parse_fraction(b) if b else None

    def step(self, name: str) -> Step | None:
        return next((s for s in self.steps if s.name == name), None)

    def to_json(self) -> dict:
        return {"name": self.name, "shape": self.shape, "verdict": "pass" if self.verdict else "fail",
                "values": self.values, "discrepancies": self.discrepancies, "notes": self.notes,
                "steps": [s.to_json() for s in self.steps]}


def split_product(text: str) -> list[str]:
    """Top-level factors of a product such as ``x*(x+1)*(x^2+4)``."""
    depth = 0
    parts, cur = [], ""
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            return [text.strip()]
        if depth == 0 and ch == "*" and text[i:i + 2] != "**" and (i == 0 or text[i - 1] != "*"):
            parts.append(cur)
            cur = ""
        else:
            cur += ch
        i += 1
    parts.append(cur)
    out = []
    for part in parts:
        part = part.strip()
        if part.startswith("(") and part.endswith(")") and _balanced(part[1:-1]):
            part = part[1:-1].strip()
        out.append(part)
    return out


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += (ch == "(") - (ch == ")")
        if depth < 0:
            return False
    return depth == 0


def parse_place(text: str, F: FieldSpec) -> Place:
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return Place.infinity(F)
    return Place(F, parse_poly(text, F))


def _witness_key(w: Poly) -> tuple:
    return tuple(w.coeffs)


def _squarefree_places(u: Poly) -> list[tuple[Place, int]]:
    F = u.field
    out = []
    for part, mult in squarefree_decomposition(u):
        out.extend((Place(F, P), mult) for P, _ in factor_trial(part))
    return out


@dataclass
class _Model:
    F: FieldSpec
    us: list[Poly]
    labels: list[str]
    W: Subspace  # Gal(Top / tower base E)
    path: str

    @property
    def n(self) -> int:
        return len(self.us)

    def ramified(self) -> list[Place]:
        seen: dict = {}
        for u in self.us:
            for P, mult in _squarefree_places(u):
                if mult % 2:
                    seen[P.sort_key()] = P
            if u.deg % 2:
                inf = Place.infinity(self.F)
                seen[inf.sort_key()] = inf
        return [seen[k] for k in sorted(seen)]

    def local(self, P: Place) -> LocalType:
        return local_type(self.F, self.us, P)


def _twice_genus_minus_2(n: int, ram: Sequence[tuple[Place, LocalType]], Wp: Subspace) -> int:
    """2g - 2 of Fix(Wp) inside the (Z/2)^n extension of the rational field."""
    degree = (1 << n) // Wp.size
    total = -2 * degree
    for P, loc in ram:
        rel = relative_place(P, loc, Wp)
        e = 1 << (loc.inertia.dim - rel.rel_inertia_dim)
        total += rel.e_places * (e - 1) * rel.e_residue_degree
    return total


def _gs_text(rank: int, units: int) -> str:
    rel = ">=" if gs_inequality(rank, units) else "<"
    return f"{rank} {rel} 2+2*sqrt({units + 1})"


def _fail(report: VerificationReport, step: str, detail: Any) -> VerificationReport:
    report.steps.append(Step(step, False, detail))
    report.discrepancies.append(f"{step}: {detail}")
    report.verdict = False
    return report


def verify(cert: TowerCertificate) -> VerificationReport:
    """Recompute a certificate from scratch; the verdict is pass iff every step
    passes and the recomputed values meet the claims."""
    report = VerificationReport(cert.name, cert.shape, [], {}, [], list(cert.notes), True)
    try:
        F = field_from_q(cert.q)
    except FieldError as exc:
        return _fail(report, "field", str(exc))
    if F.p == 2:
        return _fail(report, "field", "Kummer certificates need odd q")

    # parsing and irreducibility
    try:
        base = parse_poly(cert.base_cover, F) if cert.base_cover else None
        if cert.shape == COMPOSITUM_PATH:
            listed = list(cert.second_cover["factors"])
            factors = [parse_poly(s, F) for s in listed]
        else:
            listed = split_product(cert.second_cover["u"])
            factors = [parse_poly(s, F) for s in listed]
    except PolyParseError as exc:
        return _fail(report, "parse", str(exc))
    irr = []
    for text, f in zip(listed, factors):
        ok = f.deg < 1 or poly_is_irreducible(f)
        irr.append({"factor": text, "degree": max(f.deg, 0), "irreducible": ok})
    bad = [d["factor"] for d in irr if d["degree"] > 0 and not d["irreducible"]]
    if bad:
        return _fail(report, "irreducibility", {"reducible": bad, "factors": irr})
    report.steps.append(Step("irreducibility", True, {"factors": irr}))

    second = Poly.const(F, 1)
    for f in factors:
        second = second * f
    if second.deg < 1 or any(mult > 1 for _, mult in squarefree_decomposition(second)):
        return _fail(report, "squarefree", "the second cover polynomial must be squarefree and nonconstant")
    if base is not None:
        if base.deg < 1 or any(mult > 1 for _, mult in squarefree_decomposition(base)):
            return _fail(report, "squarefree", "the base cover polynomial must be squarefree and nonconstant")
        if poly_gcd(base, second).deg > 0:
            return _fail(report, "squarefree", "base and second cover polynomials share a factor")

    if cert.shape == COMPOSITUM_PATH:
        if any(f.deg < 1 for f in factors):
            return _fail(report, "squarefree", "factors must be nonconstant")
        for i, j in itertools.combinations(range(len(factors)), 2):
            if poly_gcd(factors[i], factors[j]).deg > 0:
                return _fail(report, "squarefree", f"factors {i + 1} and {j + 1} are not coprime")
        n = len(factors)
        model = _Model(F, factors, list(listed), Subspace.even_weight(n), COMPOSITUM_PATH)
    elif base is not None:
        model = _Model(F, [base, second], ["base", "second"], Subspace.span(2, [0b10]), PROP_PATH)
    else:
        model = _Model(F, [second], ["second"], Subspace.whole(1), PROP_PATH)

    # ramification of the second cover against the listed set
    ram_second = [P for P, mult in _squarefree_places(second) if mult % 2]
    if second.deg % 2:
        ram_second.append(Place.infinity(F))
    ram_names = sorted(str(P) for P in ram_second)
    if cert.R is not None:
        try:
            listed_R = sorted(str(parse_place(s, F)) for s in cert.R)
        except (PolyParseError, ValueError) as exc:
            return _fail(report, "ramified_set", str(exc))
        if listed_R != ram_names:
            return _fail(report, "ramified_set", {"listed": listed_R, "computed": ram_names})
    report.steps.append(Step("ramified_set", True, {"places": ram_names, "count": len(ram_names)}))

    # stored square-root witnesses for the first cover
    if cert.witnesses:
        target = model.us[0]
        rows = []
        ok_all = True
        for ptext, wtext in sorted(cert.witnesses.items()):
            try:
                Pp = parse_poly(ptext, F)
                w = parse_poly(wtext, F)
            except PolyParseError as exc:
                return _fail(report, "witnesses", str(exc))
            ok = (w * w - target) % Pp == Poly(F)
            ok_all &= ok
            rows.append({"place": format_poly(Pp), "sqrt": format_poly(w), "holds": ok})
        if not ok_all:
            return _fail(report, "witnesses", rows)
        report.steps.append(Step("witnesses", True, rows))

    # local data at ramified places and at the T places
    ram = model.ramified()
    ram_local = [(P, model.local(P)) for P in ram]
    W = model.W
    split_rational = []
    table = {}
    rational = _rational_places(F)

    def describe(P: Place, loc: LocalType) -> dict:
        rel = relative_place(P, loc, W)
        entry = {"place": str(P), "degree": P.degree, "mask": bits_str(loc.mask, loc.n),
                 "chars": bits_str(loc.chars, loc.n), "places_in_tower_base": rel.e_places,
                 "ramified_in_top": rel.ramified_in_top, "splits_in_top": rel.splits_in_top}
        if model.path == PROP_PATH:
            entry["places_in_top"] = rel.e_places * rel.top_per_e_place
        if not P.is_infinite and P.degree <= 3:
            # witnesses for each cover polynomial, or for the product in the compositum shape
            named = list(zip(model.labels, model.us)) if model.n <= 2 else [("product", second)]
            wit = {}
            for label, u in named:
                if u % P.poly == Poly(F):
                    continue
                sq, w = is_square_in_residue_field(u, P.poly)
                if sq and w is not None:
                    wit[label] = format_poly(w)
            if wit:
                entry["sqrt_witnesses"] = wit
        return entry

    locals_rational = {P.sort_key(): model.local(P) for P in rational}
    for P in rational:
        loc = locals_rational[P.sort_key()]
        if loc.splits_completely:
            split_rational.append(P)
    for P, loc in ram_local:
        table[str(P)] = describe(P, loc)

    # T
    if cert.T is None:
        T = _derive_T(model, rational, locals_rational, ram_local, q=cert.q)
        if not T:
            return _fail(report, "T", "no set of split rational places satisfies the tower criterion")
        report.notes.append("T derived: " + ", ".join(str(P) for P in T))
    else:
        try:
            T = [parse_place(s, F) for s in cert.T]
        except (PolyParseError, ValueError) as exc:
            return _fail(report, "T", f"bad place: {exc}")
        if len({P.sort_key() for P in T}) != len(T):
            return _fail(report, "T", "T lists a place twice")
    T_local = [(P, model.local(P)) for P in T]
    for P, loc in T_local:
        table.setdefault(str(P), describe(P, loc))
    report.steps.append(Step("splitting_table", True, [table[k] for k in sorted(table)]))
    split_names = [str(P) for P in split_rational]
    report.values["split_rational_places"] = split_names
    if model.path == PROP_PATH and base is None:
        T_names = sorted(str(P) for P in T)
        if any(P.degree == 1 for P in T) and sorted(split_names) != T_names:
            report.notes.append(f"completely split rational places {split_names} differ from T {T_names}")

    # genera
    if base is not None:
        first = _twice_genus_minus_2(1, [(P, local_type(F, [base], P)) for P in _ram_of(base)],
                                     Subspace.span(1, []))
        report.values["genus_first_cover"] = first // 2 + 1
    try:
        vals = _tower_values(model, ram_local, T_local, cert.q)
    except ArithmeticError as exc:
        return _fail(report, "genus", str(exc))
    extras = vals.pop("extras")
    report.values.update(extras)
    tower_genus, g_base, g_top = vals["genus"], vals["genus_base"], vals["genus_top"]
    t_size, s_size, rank = vals["t_size"], vals["s_size"], vals["rank_lb"]
    report.values["genus_base"] = g_base
    report.values["genus_top"] = g_top
    report.values["twice_genus_minus_2_top"] = vals["twice_genus_minus_2_top"]
    report.values["t_size"] = t_size
    report.values["s_size"] = s_size
    report.values["T"] = [str(P) for P in T]
    report.steps.append(Step("genus", tower_genus >= 2, {"tower_field_genus": tower_genus,
                                                          "base_genus": g_base, "top_genus": g_top}))
    if tower_genus < 2:
        return _fail(report, "genus", f"tower field genus {tower_genus} < 2")

    units = unit_rank(2, cert.q, s_size)
    report.values["unit_rank"] = units
    report.values["rank_lb"] = rank
    report.steps.append(Step("rank_lower_bound", True, report.values["rank_formula"]))
    gs = gs_inequality(rank, units)
    report.values["gs_check"] = _gs_text(rank, units)
    report.steps.append(Step("golod_shafarevich", gs, report.values["gs_check"]))
    bound = Fraction(s_size, tower_genus - 1)
    report.values["genus"] = tower_genus
    report.values["bound"] = frac_str(bound)

    c = cert.claimed
    checks = [
        ("s_size", s_size >= c.s_size, s_size, c.s_size),
        ("rank_lb", rank >= c.rank_lb, rank, c.rank_lb),
        ("genus", tower_genus == c.genus, tower_genus, c.genus),
        ("bound", bound >= c.bound, frac_str(bound), frac_str(c.bound)),
    ]
    if c.t_size is not None:
        checks.append(("t_size", t_size == c.t_size, t_size, c.t_size))
    for name, ok, got, want in checks:
        if not ok:
            report.discrepancies.append(f"{name}: recomputed {got}, claimed {want}")
    claims_ok = all(ok for _, ok, _, _ in checks)
    report.steps.append(Step("claims", claims_ok, {name: {"recomputed": got, "claimed": want}
                                                   for name, _, got, want in checks}))
    if not gs:
        report.discrepancies.append("golod_shafarevich: inequality fails")
    report.verdict = all(s.ok for s in report.steps)
    return report


def _tower_values(model: _Model, ram_local, T_local, q: int) -> dict:
    """Genera, |T|, |S| and the 2-rank lower bound for the model and T."""
    W = model.W
    zero = Subspace.span(model.n, [])
    g_top_twice = _twice_genus_minus_2(model.n, ram_local, zero)
    g_base_twice = _twice_genus_minus_2(model.n, ram_local, W)
    if g_top_twice % 2 or g_base_twice % 2:
        raise ArithmeticError("Hurwitz sum is odd")
    g_top = g_top_twice // 2 + 1
    g_base = g_base_twice // 2 + 1
    rels = [relative_place(P, loc, W) for P, loc in T_local]
    extras: dict = {}
    if model.path == PROP_PATH:
        genus = g_top
        t_size = sum(r.e_places for r in rels)
        s_size = sum(r.e_places * r.top_per_e_place for r in rels)
        inertia_sum = 0
        for P, loc in ram_local:
            rel = relative_place(P, loc, W)
            inertia_sum += rel.rel_inertia_dim * rel.e_places
        constants = d_l_constants(2, q)
        some_split = any(r.splits_in_top for r in rels)
        rank = inertia_sum - (t_size - 1 + constants) - W.dim - (0 if some_split else 1)
        extras["inertia_sum"] = inertia_sum
        extras["rank_formula"] = (f"{inertia_sum}-({t_size}-1+{constants})-{W.dim}"
                                  + ("" if some_split else "-1") + f"={rank}")
        extras["t_place_splits_completely"] = some_split
    else:
        genus = g_base
        t_size = len(T_local)
        s_size = sum(r.e_places for r in rels)
        J = Subspace.span(model.n, [])
        for P, loc in ram_local:
            J = J + (loc.inertia & W)
        H = J
        for r in rels:
            H = H + r.rel_decomposition
        generators = sum(1 for r in rels if r.rel_decomposition.dim)
        rank = W.dim - H.dim
        extras["rank_via_generator_count"] = f"{W.dim}-{J.dim}-{generators}={W.dim - J.dim - generators}"
        extras["galois_rank"] = W.dim
        extras["inertia_span_rank"] = J.dim
        extras["decomposition_span_rank"] = H.dim - J.dim
        extras["rank_formula"] = f"{W.dim}-{H.dim}={rank}"
    rank = max(rank, 0)
    units = unit_rank(2, q, s_size) if s_size else 0
    return {"genus": genus, "genus_base": g_base, "genus_top": g_top,
            "twice_genus_minus_2_top": g_top_twice, "t_size": t_size, "s_size": s_size,
            "rank_lb": rank, "units": units, "gs": s_size > 0 and gs_inequality(rank, units),
            "bound": Fraction(s_size, genus - 1) if genus >= 2 else None, "extras": extras}


def _rational_places(F: FieldSpec) -> list[Place]:
    out = [Place.infinity(F)] + [Place(F, Poly.x(F) + Poly.const(F, a)) for a in F.elements()]
    return sorted(out, key=Place.sort_key)


def _ram_of(u: Poly) -> list[Place]:
    out = [P for P, mult in _squarefree_places(u) if mult % 2]
    if u.deg % 2:
        out.append(Place.infinity(u.field))
    return out


def _derive_T(model: _Model, rational: list[Place], locals_rational: dict, ram_local, q: int) -> list[Place]:
    """Largest prefix of the rational places, completely split ones first, meeting the criterion."""
    W = model.W
    order = sorted(rational, key=lambda P: (not locals_rational[P.sort_key()].splits_completely, P.sort_key()))
    rels = [relative_place(P, loc, W) for P, loc in ram_local]
    inertia_sum = sum(rel.e_places * rel.rel_inertia_dim for rel in rels)
    constants = d_l_constants(2, q)
    best: list[Place] = []
    t_size = s_size = 0
    some_split = False
    for P in order:
        rel = relative_place(P, locals_rational[P.sort_key()], W)
        t_size += rel.e_places
        s_size += rel.e_places * rel.top_per_e_place
        some_split |= rel.splits_in_top
        rank = inertia_sum - (t_size - 1 + constants) - W.dim - (0 if some_split else 1)
        if not gs_inequality(rank, unit_rank(2, q, s_size)):
            break
        best.append(P)
    return best


# -- search ------------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    max_linear: int | None = None
    max_quad: int = 0
    budget: int = 200_000
    seed: int = 0
    two_level: bool = False
    top: int = 10


@dataclass
class SearchResult:
    p: int
    evaluated: int
    exhaustive: bool
    certificates: list[TowerCertificate]
    reports: list[VerificationReport]

    def to_json(self) -> dict:
        return {"p": self.p, "evaluated": self.evaluated, "exhaustive": self.exhaustive,
                "certificates": [c.to_json() for c in self.certificates],
                "bounds": [r.values.get("bound") for r in self.reports]}


def _gs_max_t(n_ram: int, max_t: int) -> int:
    """Largest t with the criterion holding for a single quadratic cover of k
    with n_ram ramified places, |T| = t split places and |S| = 2t."""
    best = 0
    for t in range(1, max_t + 1):
        if gs_inequality(n_ram - t - 1, 2 * t):
            best = t
        else:
            break
    return best


def _candidate_masks(m: int, fixed: int, limits, budget: int, rng) -> tuple[np.ndarray, bool]:
    """Boolean selection matrix over m factors; factor ``fixed`` always chosen."""
    free = [i for i in range(m) if i != fixed]
    total = 1 << len(free)
    if total <= budget:
        idx = np.arange(total, dtype=np.int64)
        bits = ((idx[:, None] >> np.arange(len(free))) & 1).astype(bool)
        exhaustive = True
    else:
        bits = rng.random((budget, len(free))) < 0.5
        bits = np.unique(bits, axis=0)
        exhaustive = False
    sel = np.zeros((bits.shape[0], m), dtype=bool)
    sel[:, free] = bits
    sel[:, fixed] = True
    lin_mask, quad_mask, max_lin, max_quad = limits
    keep = (sel[:, lin_mask].sum(axis=1) <= max_lin) & (sel[:, quad_mask].sum(axis=1) <= max_quad)
    return sel[keep], exhaustive


def search(p: int, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Search squarefree P = c * (product of linear and quadratic irreducibles)
    for single quadratic covers y^2 = P meeting the tower criterion.

    Every candidate is scored exactly; the best ones are turned into
    certificates and verified before being returned.
    """
    if not is_prime(p) or p == 2 or p > 31:
        raise ValueError("p must be an odd prime <= 31")
    F = field_from_q(p)
    rng = np.random.default_rng(config.seed)
    linears = [Poly.x(F) - Poly.const(F, a) for a in range(p)]
    quads = list(enumerate_monic_irreducibles(F, 2, 10**6)) if config.max_quad > 0 else []
    factors = linears + quads
    m = len(factors)
    max_lin = p if config.max_linear is None else config.max_linear
    lin_mask = np.array([i < p for i in range(m)])
    budget = max(1, config.budget // 2)  # two leading coefficients per mask
    sel, exhaustive = _candidate_masks(m, 0, (lin_mask, ~lin_mask, max_lin, config.max_quad), budget, rng)

    nonres = next(c for c in range(2, p) if pow(c, (p - 1) // 2, p) == p - 1)
    # chi of each factor at each rational point: 0 at roots, 1 for nonresidues
    nr = np.zeros((m, p), dtype=np.int64)
    root = np.zeros((m, p), dtype=np.int64)
    for i, f in enumerate(factors):
        for a in range(p):
            v = f(a)
            if v == 0:
                root[i, a] = 1
            elif pow(v, (p - 1) // 2, p) == p - 1:
                nr[i, a] = 1
    degs = np.array([f.deg for f in factors], dtype=np.int64)
    max_t_table = np.array([_gs_max_t(k, p + 1) for k in range(m + 2)])

    rows: list[tuple] = []
    evaluated = 0
    chunk = 50_000
    for start in range(0, sel.shape[0], chunk):
        S = sel[start:start + chunk].astype(np.int64)
        parity = (S @ nr) % 2
        is_root = (S @ root) > 0
        deg = S @ degs
        odd = deg % 2
        n_ram = S.sum(axis=1) + odd
        genus = (deg + odd) // 2 - 1
        for c_nr, c in ((0, 1), (1, nonres)):
            split = (~is_root) & ((parity ^ c_nr) == 0)
            n_split = split.sum(axis=1) + ((odd == 0) & (c_nr == 0))
            t = np.minimum(max_t_table[n_ram], n_split)
            ok = (t >= 1) & (genus >= 2)
            evaluated += S.shape[0]
            for j in np.nonzero(ok)[0]:
                rows.append((Fraction(2 * int(t[j]), int(genus[j]) - 1), tuple(np.nonzero(S[j])[0]), c,
                             int(t[j])))
    rows.sort(key=lambda r: (-r[0], r[1], r[2]))
    certs, reports = [], []
    for score, chosen, c, t in rows:
        if len(certs) >= config.top:
            break
        cert = _single_cover_certificate(F, [factors[i] for i in chosen], c, t)
        rep = verify(cert)
        if rep.verdict:
            certs.append(cert)
            reports.append(rep)
    if config.two_level:
        extra_c, extra_r, extra_n = _two_level_search(F, config, rng)
        evaluated += extra_n
        merged = sorted(zip(certs + extra_c, reports + extra_r),
                        key=lambda cr: (-cr[1].bound, json.dumps(cr[0].to_json(), sort_keys=True)))
        merged = merged[:config.top]
        certs = [c for c, _ in merged]
        reports = [r for _, r in merged]
    return SearchResult(p, evaluated, exhaustive, certs, reports)


def _single_cover_certificate(F: FieldSpec, chosen: Sequence[Poly], c: int, t: int) -> TowerCertificate:
    texts = [format_poly(f) for f in chosen]
    u = _product(texts)
    if c != 1:
        u = f"{c}*{u}"
    P = Poly.const(F, c)
    for f in chosen:
        P = P * f
    model = _Model(F, [P], ["second"], Subspace.whole(1), PROP_PATH)
    rational = _rational_places(F)
    split = [Q for Q in rational if model.local(Q).splits_completely][:t]
    n_ram = len(chosen) + P.deg % 2
    genus = (P.deg + P.deg % 2) // 2 - 1
    return TowerCertificate(
        F.q, None, {"u": u}, tuple(str(Q) for Q in split),
        Claimed(s_size=2 * t, rank_lb=n_ram - t - 1, genus=genus, bound=Fraction(2 * t, genus - 1), t_size=t),
        name=f"search p={F.q}")


def _two_level_bases(F: FieldSpec, rng, count: int = 6) -> list[Poly]:
    """Random irreducible polynomials of degree 5 or 6 under which every rational place splits."""
    p = F.q
    out: list[Poly] = []
    for _ in range(200_000):
        d = int(rng.integers(5, 7))
        Q = Poly(F, [int(c) for c in rng.integers(0, p, size=d)] + [1])
        if all(pow(Q(a), (p - 1) // 2, p) == 1 for a in range(p)) and poly_is_irreducible(Q):
            if Q not in out:
                out.append(Q)
            if len(out) >= count:
                break
    return sorted(out, key=lambda Q: Q.sort_key())


def _two_level_search(F: FieldSpec, config: SearchConfig, rng) -> tuple[list, list, int]:
    """Sampled towers k(sqrt Q, sqrt P) with Q from :func:`_two_level_bases` and P
    a product of linear and quadratic places; T is derived for each candidate."""
    p = F.q
    quads = list(enumerate_monic_irreducibles(F, 2, 10**6))
    places = [Poly.x(F) - Poly.const(F, a) for a in range(p)] + quads
    bases = _two_level_bases(F, rng)
    if not bases:
        return [], [], 0
    rational = _rational_places(F)
    max_lin = p if config.max_linear is None else config.max_linear
    local_cache: dict = {}

    def local(us: tuple, P: Place) -> LocalType:
        # the base bit depends only on (Q, P); the second bit is recomputed
        key = (us[0].sort_key(), P.sort_key())
        if key not in local_cache:
            local_cache[key] = local_type(F, [us[0]], P)
        b = local_cache[key]
        s_ = local_type(F, [us[1]], P)
        return LocalType(2, b.mask | (s_.mask << 1), b.chars | (s_.chars << 1))

    scored = []
    evaluated = 0
    seen = set()
    for _ in range(min(config.budget, 5000)):
        qi = int(rng.integers(len(bases)))
        n_lin = int(rng.integers(0, min(max_lin, p) + 1))
        n_quad = int(rng.integers(0, min(config.max_quad, len(quads)) + 1))
        if n_lin + n_quad < 2:
            continue
        lin_idx = rng.choice(p, size=n_lin, replace=False).tolist()
        quad_idx = (p + rng.choice(len(quads), size=n_quad, replace=False)).tolist()
        chosen = tuple(sorted(lin_idx + quad_idx))
        fs = [places[i] for i in chosen]
        if (qi, chosen) in seen:
            continue
        seen.add((qi, chosen))
        evaluated += 1
        Q = bases[qi]
        P = Poly.const(F, 1)
        for f in fs:
            P = P * f
        model = _Model(F, [Q, P], ["base", "second"], Subspace.span(2, [0b10]), PROP_PATH)
        us = (Q, P)
        ram = [Place(F, Q)] + [Place(F, f) for f in fs]
        if Q.deg % 2 or P.deg % 2:
            ram.append(Place.infinity(F))
        ram_local = [(R, local(us, R)) for R in ram]
        locals_rational = {R.sort_key(): local(us, R) for R in rational}
        T = _derive_T(model, rational, locals_rational, ram_local, p)
        if not T:
            continue
        vals = _tower_values(model, ram_local, [(R, locals_rational[R.sort_key()]) for R in T], p)
        if vals["bound"] is None or not vals["gs"]:
            continue
        scored.append((vals["bound"], qi, chosen, T, vals))
    scored.sort(key=lambda r: (-r[0], r[1], r[2]))
    certs, reports = [], []
    for bound, qi, chosen, T, vals in scored:
        if len(certs) >= config.top:
            break
        cert = TowerCertificate(
            p, format_poly(bases[qi]), {"u": _product([format_poly(places[i]) for i in chosen])},
            tuple(str(R) for R in T),
            Claimed(vals["s_size"], vals["rank_lb"], vals["genus"], bound, t_size=vals["t_size"]),
            name=f"search p={p} two-level")
        rep = verify(cert)
        if rep.verdict:
            certs.append(cert)
            reports.append(rep)
    return certs, reports, evaluated
