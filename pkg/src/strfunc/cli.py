"""Command-line front end: string functions, Hecke sums, Appell functions, suites, numerics."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import hecke as hk
from . import numeric as nm
from . import registry as rg
from .appell import appell_m
from .errors import InvalidSpec, StrfuncError, UnknownCase
from .series import PuiseuxSeries
from .theta import QPower

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive_rational(text: str) -> Fraction:
    v = _rational(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("order must be positive")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _sign(text: str) -> int:
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError("sign must be + or -")


def _threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("threads must be at least 1")
    return n


def _emit_series(s: PuiseuxSeries, fmt: str, out) -> None:
    if fmt == "json":
        out.write(s.dumps() + "\n")
    else:
        out.write(s.to_text() + "\n")


def cmd_stringfn(args, out) -> int:
    spec = hk.StringSpec(args.p, args.pp, args.ell, args.m)
    build = {"script": hk.string_script_C, "full": hk.string_C, "pf": hk.pf_character}[args.norm]
    _emit_series(build(spec, args.order), args.format, out)
    return EXIT_OK


def cmd_hecke(args, out) -> int:
    params = hk.HeckeParams(args.a, args.b, args.c, QPower(args.x_sign, args.x_exp),
                            QPower(args.y_sign, args.y_exp))
    _emit_series(hk.hecke_f(params, args.order), args.format, out)
    return EXIT_OK


def cmd_appell(args, out) -> int:
    s = appell_m(QPower(args.x_sign, args.x_exp), QPower(args.z_sign, args.z_exp), args.rho, args.order)
    _emit_series(s, args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = rg.run_suite(args.suite, args.order, workers=args.threads)
    if args.format == "json":
        out.write(report.dumps() + "\n")
    else:
        out.write(report.table() + "\n")
    return report.exit_code


def cmd_modular(args, out) -> int:
    taus = nm.TAU_GRID if args.tau == "grid" else (nm.Tau.parse(args.tau),)
    checks = nm.CHECKS if args.check == "all" else (args.check,)
    tol = {} if args.tol is None else {c: args.tol for c in checks}
    reports = nm.verify_transforms(taus, checks, tol, args.order, workers=args.threads)
    if args.format == "json":
        out.write(json.dumps([r.to_json() for r in reports], indent=1) + "\n")
    else:
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            out.write(f"{r.check:<8} tau={r.tau:.6g}  residual={r.residual:.3e}  tol={r.tol:.1e}  {status}\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _parse_eta(text: str) -> dict:
    """'1:-2,6:1,12:2' -> {1: -2, 6: 1, 12: 2}."""
    out = {}
    for part in text.split(","):
        k, _, e = part.partition(":")
        out[int(k)] = int(e)
    return out


def cmd_kp_scan(args, out) -> int:
    if args.target:
        N, descriptor, diff = rg.KP_TARGETS[args.target]
    else:
        if args.level is None or args.eta is None:
            raise InvalidSpec("give --target, or both --level and --eta")
        N, descriptor, diff = args.level, _parse_eta(args.eta), None
    if args.differences is not None:
        diff = args.differences
    matches = rg.kp_scan(N, descriptor, args.order, diff)
    if args.format == "json":
        out.write(json.dumps([{"m": x.m, "ell": x.ell, "sigma": str(x.sigma), "shift": str(x.shift),
                               "minus": list(x.minus) if x.minus else None} for x in matches], indent=1) + "\n")
    else:
        out.write(f"level {N}, target {descriptor}: {len(matches)} match(es)\n")
        for x in matches:
            out.write(f"  {x.describe()}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="strfunc", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, order=Fraction(100)):
        p.add_argument("--order", type=_positive_rational, default=order)
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("stringfn", help="admissible-level string function")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--pp", type=int, required=True, help="p'")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--norm", choices=("script", "full", "pf"), default="script")
    common(p)
    p.set_defaults(func=cmd_stringfn)

    p = sub.add_parser("hecke", help="Hecke-type double sum f_{a,b,c}(x, y; q)")
    for name in ("a", "b", "c"):
        p.add_argument(name, type=int)
    p.add_argument("--x-sign", type=_sign, default=1)
    p.add_argument("--x-exp", type=_rational, required=True)
    p.add_argument("--y-sign", type=_sign, default=1)
    p.add_argument("--y-exp", type=_rational, required=True)
    common(p)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("appell", help="Appell function m(x, z; q^rho)")
    p.add_argument("--x-sign", type=_sign, default=1)
    p.add_argument("--x-exp", type=_rational, required=True)
    p.add_argument("--z-sign", type=_sign, default=1)
    p.add_argument("--z-exp", type=_rational, required=True)
    p.add_argument("--rho", type=_positive_rational, default=Fraction(1))
    common(p)
    p.set_defaults(func=cmd_appell)

    p = sub.add_parser("verify", help="run registered identity cases")
    p.add_argument("--suite", default="all", help="case-name glob, or 'all'")
    p.add_argument("--order", type=_positive_rational, default=None,
                   help="override every case's default order")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--threads", type=_threads, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("modular", help="numeric transformation-law checks")
    p.add_argument("--check", choices=nm.CHECKS + ("all",), default="all")
    p.add_argument("--tau", default="grid", help="'a+bi' or 'grid'")
    p.add_argument("--tol", type=_positive_float, default=None)
    p.add_argument("--order", type=int, default=400)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--threads", type=_threads, default=4)
    p.set_defaults(func=cmd_modular)

    p = sub.add_parser("kp-scan", help="match string functions against eta quotients")
    p.add_argument("--target", choices=sorted(rg.KP_TARGETS))
    p.add_argument("--level", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--eta", help="eta-quotient exponents as k:e pairs, e.g. 1:-2,2:1")
    p.add_argument("--differences", action=argparse.BooleanOptionalAction, default=None)
    common(p, Fraction(40))
    p.set_defaults(func=cmd_kp_scan)
    return ap


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InvalidSpec, UnknownCase, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"strfunc: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except StrfuncError as exc:
        print(f"strfunc: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
