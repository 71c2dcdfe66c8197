"""Command-line interface: ``cftower <subcommand> ...``.

Exit codes: 0 pass, 1 fail, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import bounds as bd
from .certify import (
    BUILTIN_PRIMES,
    CertificateError,
    SearchConfig,
    builtin_certificate,
    load_certificate,
    search,
    verify,
)
from .covers import KummerCover
from .exact import decimal_str, frac_str, parse_fraction
from .ffield import BudgetExceeded, FieldError, PolyParseError, field_from_q, parse_poly
from .places import (
    DEFAULT_BUDGET,
    GenusMismatch,
    b_r_exact_rational_ff,
    b_r_interval,
    h_ratio,
    l_polynomial,
    places_from_counts,
    point_counts,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # one-line diagnostic, exit code 2
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _fraction(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--budget", type=_positive, default=argparse.SUPPRESS,
                        help="cap on enumeration work (default: $CFTOWER_BUDGET or 10^7)")

    parser = _Parser(prog="cftower", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", parents=[common], help="table of bounds on A(q^(r s))")
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--r", type=_positive, default=1)
    p.add_argument("--s", type=_positive, default=1)
    p.add_argument("--theta", type=_fraction, help="parameter of the compositum construction, in (0, 1/2)")

    p = sub.add_parser("count", parents=[common], help="B_r exactly and within its interval")
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--kummer", help="count on y^2 = u(x) instead of the rational field")

    p = sub.add_parser("curve", parents=[common], help="invariants of y^2 = u(x)")
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--kummer", required=True)

    p = sub.add_parser("certify", parents=[common], help="verify a built-in tower certificate")
    p.add_argument("--p", type=int, required=True, choices=BUILTIN_PRIMES)

    p = sub.add_parser("verify", parents=[common], help="verify a certificate file")
    p.add_argument("file")

    p = sub.add_parser("search", parents=[common], help="search for tower certificates over F_p")
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--max-linear", type=_nonneg)
    p.add_argument("--max-quad", type=_nonneg, default=0)
    p.add_argument("--top", type=_positive, default=10)
    p.add_argument("--two-level", action="store_true")
    p.add_argument("--out", help="write the best certificate to this JSON file")
    return parser


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


# -- subcommands -------------------------------------------------------------

def cmd_bounds(args) -> int:
    try:
        table = bd.best_table(args.q, args.r, args.s, args.theta, budget=args.budget)
    except bd.SanityWallError as exc:
        print(f"sanity wall: {exc}", file=sys.stderr)
        return EXIT_FAIL
    best = bd.best_lower(table)
    if args.json:
        _emit({"target": args.q ** (args.r * args.s),
               "best_lower": best.to_json() if best else None,
               "reports": [r.to_json() for r in table]})
        return EXIT_PASS
    Q = args.q ** (args.r * args.s)
    print(f"bounds on A({Q}) = A({args.q}^{args.r * args.s})")
    for rep in table:
        if rep.exact_equality and rep.name == "drinfeld_vladut_upper":
            print(f"  upper  A({Q}) = {frac_str(rep.value)} (exact, square q)")
            continue
        status = "violated" if rep.violated else ("assumed" if any(h.status == bd.ASSUMED for h in rep.hypotheses)
                                                  else "ok")
        iv = f"  in [{decimal_str(rep.interval[0])}, {decimal_str(rep.interval[1])}]" if rep.interval else ""
        print(f"  {rep.kind:5}  {rep.label():12} {rep.name:30} {frac_str(rep.value):>14}  "
              f"~{decimal_str(rep.value)}{iv}  [{status}]")
    if best:
        print(f"best lower bound: {frac_str(best.value)} ({best.name} via {best.label()})")
    return EXIT_PASS


def cmd_count(args) -> int:
    F = field_from_q(args.q)
    if args.kummer:
        cover = KummerCover(F, parse_poly(args.kummer, F))
        g = cover.genus
        try:
            counts = point_counts(cover, args.r, args.budget)
        except BudgetExceeded as exc:
            return _inconclusive(args, str(exc))
        exact = places_from_counts(counts, args.r)
    else:
        g = 0
        exact = b_r_exact_rational_ff(F, args.r)
    lo, hi = b_r_interval(args.q, args.r, g)
    inside = lo <= exact <= hi
    if args.json:
        _emit({"q": args.q, "r": args.r, "genus": g, "B_r": exact,
               "interval": [frac_str(lo), frac_str(hi)],
               "interval_decimal": [decimal_str(lo), decimal_str(hi)], "inside": inside})
    else:
        print(f"q={args.q} r={args.r} genus={g}")
        print(f"  B_r exact     {exact}")
        print(f"  interval low  {frac_str(lo):>30}  ~{decimal_str(lo)}")
        print(f"  interval high {frac_str(hi):>30}  ~{decimal_str(hi)}")
        print(f"  inside: {'yes' if inside else 'NO'}")
    return EXIT_PASS if inside else EXIT_FAIL


def _inconclusive(args, why: str) -> int:
    if args.json:
        _emit({"status": "inconclusive", "reason": why})
    else:
        print(f"inconclusive: {why}")
    return EXIT_FAIL


def cmd_curve(args) -> int:
    F = field_from_q(args.q)
    cover = KummerCover(F, parse_poly(args.kummer, F))
    g = cover.genus
    out: dict = {"q": args.q, "u": args.kummer, "genus": g,
                 "ramified": [str(P) for P in cover.ramified_places()]}
    try:
        counts = point_counts(cover, 4, args.budget)
        out["N_1"] = counts[0]
        out["B_r"] = {str(r): places_from_counts(counts, r) for r in range(1, 5)}
    except BudgetExceeded as exc:
        out["B_r"] = {"status": "inconclusive", "reason": str(exc)}
    try:
        L = l_polynomial(cover, g, args.budget)
        out["L_polynomial"] = [int(c) for c in L.coeffs]
        out["class_number"] = L.class_number
        out["h_ratio_3"] = h_ratio(L, 3)
    except BudgetExceeded as exc:
        out["L_polynomial"] = {"status": "inconclusive", "reason": str(exc)}
    except GenusMismatch as exc:
        out["L_polynomial"] = {"status": "fail", "reason": str(exc)}
    if args.json:
        _emit(out)
    else:
        print(f"y^2 = {args.kummer} over F_{args.q}")
        print(f"  genus {g}")
        print(f"  ramified places: {', '.join(out['ramified'])}")
        if "N_1" in out:
            print(f"  N_1 = {out['N_1']}")
            for r, b in out["B_r"].items():
                print(f"  B_{r} = {b}")
        else:
            print(f"  B_r: inconclusive ({out['B_r']['reason']})")
        Lp = out["L_polynomial"]
        if isinstance(Lp, list):
            print(f"  L(u) coefficients {Lp}")
            print(f"  class number {out['class_number']}, h(F_3)/h(F) = {out['h_ratio_3']}")
        else:
            print(f"  L-polynomial: {Lp['status']} ({Lp['reason']})")
    return EXIT_FAIL if isinstance(out["L_polynomial"], dict) and out["L_polynomial"]["status"] == "fail" else EXIT_PASS


def _print_report(rep, as_json: bool) -> int:
    if as_json:
        _emit(rep.to_json())
    else:
        v = rep.values
        print(f"certificate {rep.name or ''} ({rep.shape} rank path)")
        for step in rep.steps:
            print(f"  [{'ok' if step.ok else 'FAIL'}] {step.name}")
        for key in ("genus_first_cover", "genus_base", "genus", "twice_genus_minus_2_top", "t_size", "s_size",
                    "rank_formula", "rank_via_generator_count", "gs_check"):
            if key in v:
                print(f"  {key}: {v[key]}")
        if "T" in v:
            print(f"  T: {', '.join(v['T'])}")
        for note in rep.notes:
            print(f"  note: {note}")
        for d in rep.discrepancies:
            print(f"  discrepancy: {d}")
        if "bound" in v:
            print(f"  bound: A(q) >= {v['bound']}")
        print("PASS" if rep.verdict else "FAIL")
    return EXIT_PASS if rep.verdict else EXIT_FAIL


def cmd_certify(args) -> int:
    return _print_report(verify(builtin_certificate(args.p)), args.json)


def cmd_verify(args) -> int:
    return _print_report(verify(load_certificate(args.file)), args.json)


def cmd_search(args) -> int:
    config = SearchConfig(max_linear=args.max_linear, max_quad=args.max_quad, budget=args.budget,
                          seed=args.seed, two_level=args.two_level, top=args.top)
    result = search(args.p, config)
    if args.out and result.certificates:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(result.certificates[0].to_json(), fh, indent=2)
            fh.write("\n")
    if args.json:
        _emit(result.to_json())
    else:
        mode = "exhaustive" if result.exhaustive else "sampled"
        print(f"search over F_{args.p}: {result.evaluated} candidates ({mode})")
        for cert, rep in zip(result.certificates, result.reports):
            base = f"Q={cert.base_cover}, " if cert.base_cover else ""
            print(f"  {rep.values['bound']:>6}  {base}P={cert.second_cover['u']}  T={','.join(cert.T or ())}")
        if not result.certificates:
            print("  no certificate found")
    return EXIT_PASS if result.certificates else EXIT_FAIL


COMMANDS = {"bounds": cmd_bounds, "count": cmd_count, "curve": cmd_curve, "certify": cmd_certify,
            "verify": cmd_verify, "search": cmd_search}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"cftower: {exc}", file=sys.stderr)
        return EXIT_INPUT
    args.json = getattr(args, "json", False)
    default_budget = 200_000 if args.command in ("search", "bounds") else int(os.environ.get("CFTOWER_BUDGET", DEFAULT_BUDGET))
    args.budget = getattr(args, "budget", default_budget)
    try:
        return COMMANDS[args.command](args)
    except (CertificateError, PolyParseError, FieldError, ValueError) as exc:
        print(f"cftower: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
