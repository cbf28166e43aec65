"""Command-line front end: ``etaseries {eval,coeffs,bounds,verify,bench}``.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 no admissible truncation (plan failure, term cap, base exhausted), 4 pole at s = 1.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from fractions import Fraction

import mpmath

from .bounds import BoundProfile, cstar_abs_bound
from .checks import bench_rows, bench_soft_checks, run_verify
from .coefficients import PochhammerRatio, coefficient_table
from .exceptions import BaseExhausted, MaxTermsExceeded, PlanFailure, PoleAtOne
from .numerics import PrecisionContext
from .series import SeriesConfig, eta, eta_b, zeta

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PLAN = 3
EXIT_POLE = 4

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^\s*(?P<re>{_NUM})(?:(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?\s*$")


def parse_complex(text: str) -> tuple[str, str]:
    """Split ``RE``, ``RE+IMi`` or ``RE-IMi`` into decimal strings ``(re, im)``."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse complex number {text!r}; expected RE, RE+IMi or RE-IMi")
    return m.group("re"), m.group("im") or "0"


def format_fixed(x, digits: int) -> str:
    """Round an mpf to ``digits`` fractional decimal digits (round half to even)."""
    sign, man, exp, _ = x._mpf_
    value = (-1) ** sign * Fraction(man) * Fraction(2) ** exp if man else Fraction(0)
    scaled = round(value * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def _format_bound(x) -> str:
    # nudged up so the printed bound still bounds
    return mpmath.nstr(x * (1 + mpmath.mpf(10) ** -5), 6, min_fixed=1, max_fixed=0)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fn", choices=("eta", "etab", "zeta"), default="eta")
    p.add_argument("--s", default="2", help="complex argument: RE, RE+IMi or RE-IMi")
    p.add_argument("--b", type=int, default=2, help="base of eta_b (default 2)")
    p.add_argument("--ell", type=int, default=0, help="block exponent; 0 picks automatically")
    p.add_argument("--digits", type=int, default=30)
    p.add_argument("--max-terms", type=int, default=10000)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--terms", type=int, default=20, help="coefficient count for coeffs/bounds")
    p.add_argument("--quick", action="store_true", help="smaller verification grid")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized verification points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="etaseries", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("eval", "evaluate eta, eta_b or zeta"),
        ("coeffs", "dump the coefficients cstar_m(s) as CSV"),
        ("bounds", "dump coefficient bounds as CSV"),
        ("verify", "run the self-verification suite"),
        ("bench", "term-count and timing sweep"),
    ):
        _common(sub.add_parser(name, help=help_))
    return parser


def _context(args, parser) -> PrecisionContext:
    if args.digits < 1:
        parser.error("--digits must be at least 1")
    if args.b < 2:
        parser.error("--b must be at least 2")
    if args.ell not in (0,) and args.ell < 2:
        parser.error("--ell must be 0 (auto) or at least 2")
    return PrecisionContext(args.digits)


def _argument(args, parser, ctx):
    try:
        re_, im_ = parse_complex(args.s)
    except ValueError as exc:
        parser.error(str(exc))
    mp = ctx.mp
    s = mp.mpc(mp.mpf(re_), mp.mpf(im_))
    if s.real <= 0:
        parser.error("Re s must be positive")
    return s


def cmd_eval(args, parser) -> int:
    ctx = _context(args, parser)
    s = _argument(args, parser, ctx)
    cfg = SeriesConfig(args.b, args.ell, ctx, args.max_terms)
    fn = {"eta": eta, "etab": eta_b, "zeta": zeta}[args.fn]
    result = fn(s, cfg)
    doc = {
        "function": {"eta": "eta", "etab": "eta_b", "zeta": "zeta"}[args.fn],
        "s": args.s,
        "b": result.b,
        "ell": result.ell,
        "value_re": format_fixed(result.value.real, args.digits),
        "value_im": format_fixed(result.value.imag, args.digits),
        "terms_used": result.terms_used,
        "remainder_bound": _format_bound(result.remainder_bound),
        "elapsed_ms": round(result.elapsed * 1000, 3),
    }
    if args.format == "json":
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=list(doc), lineterminator="\n")
        w.writeheader()
        w.writerow(doc)
    return 0


def cmd_coeffs(args, parser) -> int:
    ctx = _context(args, parser)
    s = _argument(args, parser, ctx)
    mp = ctx.mp
    table = coefficient_table(args.b, s, ctx).extend_cstar(args.terms)
    profile = BoundProfile(args.b, s.real, ctx)
    poch = PochhammerRatio(s, ctx)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["m", "re_cstar", "im_cstar", "abs_cstar", "bound_sigma"])
    for m in range(args.terms + 1):
        c = table.cstar[m]
        w.writerow([m] + [mp.nstr(x, args.digits) for x in
                          (c.real, c.imag, abs(c), cstar_abs_bound(s, m, profile, poch))])
    return 0


def cmd_bounds(args, parser) -> int:
    ctx = _context(args, parser)
    s = _argument(args, parser, ctx)
    mp = ctx.mp
    profile = BoundProfile(args.b, s.real, ctx)
    poch = PochhammerRatio(s, ctx)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["m", "upper_sigma", "abs_bound", "lower"])
    for m in range(args.terms + 1):
        w.writerow([m] + [mp.nstr(x, args.digits) for x in
                          (profile.upper(m), cstar_abs_bound(s, m, profile, poch), profile.lower)])
    return 0


def cmd_verify(args, parser) -> int:
    results = run_verify(quick=args.quick, seed=args.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VERIFY_FAILED if failed else 0


def cmd_bench(args, parser) -> int:
    ell = args.ell or 2
    rows = bench_rows(ell=ell)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["t", "digits", "M", "elapsed_ms"])
    for t, digits, M, ms in rows:
        w.writerow([t, digits, M, f"{ms:.3f}"])
    for r in bench_soft_checks(rows):
        print(r.line(), file=sys.stderr)
    return 0


COMMANDS = {
    "eval": cmd_eval,
    "coeffs": cmd_coeffs,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except PoleAtOne as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POLE
    except (PlanFailure, MaxTermsExceeded, BaseExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PLAN


if __name__ == "__main__":
    sys.exit(main())
