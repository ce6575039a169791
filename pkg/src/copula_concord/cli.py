"""Command-line interface.

Subcommands: eval, measure, region, inverse, scan, verify.  Exit codes:
0 success, 1 verification failure, 2 invalid input, 3 unsupported
evaluation mode.  COPULA_CONCORD_THREADS caps suite parallelism (0 = one
thread per CPU).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bounds import BoundParams, lower_bound, upper_bound
from .concordance import Measure, UnsupportedModeError, measure
from .core import M, PI, W, Copula
from .regions import extremal_scan, max_asymmetry_given, range_curve, range_of
from .verify import SUITES, run_suites, worker_count

__all__ = ["main", "build_parser", "parse_copula_spec"]

_SUFFIXES = (
    (".t", "transpose"),
    (".s1", "sigma1"),
    (".s2", "sigma2"),
    (".hat", "survival"),
)
_BASES = {"w": W, "m": M, "pi": PI}


def parse_copula_spec(text: str) -> Copula:
    """Parse ``w|m|pi|lower:a,b,c|upper:a,b,c`` with optional transform
    suffixes ``.t|.s1|.s2|.hat`` applied left to right."""
    spec = text.strip()
    ops: list[str] = []
    stripped = True
    while stripped:
        stripped = False
        for suffix, op in _SUFFIXES:
            if spec.endswith(suffix):
                spec = spec[: -len(suffix)]
                ops.append(op)
                stripped = True
                break
    base = spec.lower()
    if base in _BASES:
        C = _BASES[base]
    elif base.startswith(("lower:", "upper:")):
        family, _, params = base.partition(":")
        parts = params.split(",")
        if len(parts) != 3:
            raise ValueError(
                f"{family} spec needs three comma-separated parameters a,b,c, got {params!r}"
            )
        a, b, c = (float(x) for x in parts)
        p = BoundParams(a, b, c)
        C = lower_bound(p) if family == "lower" else upper_bound(p)
    else:
        raise ValueError(
            f"unknown copula spec {text!r}; expected w|m|pi|lower:a,b,c|upper:a,b,c"
            " with optional .t/.s1/.s2/.hat suffixes"
        )
    for op in reversed(ops):
        C = getattr(C, op)()
    return C


def _cmd_eval(args) -> int:
    C = parse_copula_spec(args.copula)
    print(f"{C(args.u, args.v):.15g}")
    return 0


def _cmd_measure(args) -> int:
    C = parse_copula_spec(args.copula)
    res = measure(args.kind, C, mode=args.mode, n=args.n)
    print(f"{res.value:.15g} mode={res.mode} error_bound={res.error_bound:.15g}")
    return 0


def _cmd_region(args) -> int:
    if args.plot and not args.curve:
        raise ValueError("--plot requires --curve")
    if args.curve:
        if args.out is None:
            raise ValueError("--curve requires --out FILE")
        curve = range_curve(args.kind)
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            curve.write_csv(fh, resolution=args.resolution)
        if args.plot:
            from .plotting import plot_range_band

            ms, lows, highs = curve.sample(args.resolution)
            plot_range_band(args.kind, ms, lows, highs, args.plot)
        return 0
    if args.m is None:
        raise ValueError("give an asymmetry level m, or --curve with --out")
    lo, hi = range_of(args.kind, args.m)
    print(f"({lo:.15g}, {hi:.15g})")
    return 0


def _cmd_inverse(args) -> int:
    if args.plot and not args.curve:
        raise ValueError("--plot requires --curve")
    if args.curve:
        if args.out is None:
            raise ValueError("--curve requires --out FILE")
        low = -0.5 if Measure(args.kind) is Measure.PHI else -1.0
        kappas = np.linspace(low, 1.0, args.resolution + 1)
        mus = [max_asymmetry_given(args.kind, float(k)) for k in kappas]
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("kappa,mu_max\n")
            for k, mu in zip(kappas, mus):
                fh.write(f"{k:.17g},{mu:.17g}\n")
        if args.plot:
            from .plotting import plot_inverse_curve

            plot_inverse_curve(args.kind, kappas, mus, args.plot)
        return 0
    if args.kappa is None:
        raise ValueError("give a measure value, or --curve with --out")
    print(f"{max_asymmetry_given(args.kind, args.kappa):.15g}")
    return 0


def _cmd_scan(args) -> int:
    res = extremal_scan(args.kind, args.m, n=args.n)
    print(res.summary())
    return 0 if res.table_pass else 1


def _cmd_verify(args) -> int:
    text, ok = run_suites([args.suite], n=args.n, seed=args.seed, threads=worker_count())
    sys.stdout.write(text)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="copula-concord",
        description=(
            "Extremal bivariate copulas with prescribed pointwise asymmetry: "
            "evaluation, concordance measures, attainable ranges, verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    kinds = [k.value for k in Measure]

    p = sub.add_parser("eval", help="evaluate a copula at a point")
    p.add_argument("copula", help="w|m|pi|lower:a,b,c|upper:a,b,c with .t/.s1/.s2/.hat suffixes")
    p.add_argument("u", type=float)
    p.add_argument("v", type=float)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("measure", help="concordance measure of a copula")
    p.add_argument("kind", choices=kinds)
    p.add_argument("copula")
    p.add_argument(
        "--mode", choices=("closed", "segments", "checkerboard"), default="closed"
    )
    p.add_argument("--n", type=int, default=256, help="checkerboard order")
    p.set_defaults(handler=_cmd_measure)

    p = sub.add_parser("region", help="attainable range at asymmetry m, or the full curve")
    p.add_argument("kind", choices=kinds)
    p.add_argument("m", type=float, nargs="?")
    p.add_argument("--curve", action="store_true", help="emit (m, lower, upper) CSV")
    p.add_argument("--resolution", type=int, default=333)
    p.add_argument("--out", help="CSV output path (required with --curve)")
    p.add_argument("--plot", metavar="PNG", help="also render the band as a figure")
    p.set_defaults(handler=_cmd_region)

    p = sub.add_parser("inverse", help="largest asymmetry compatible with a measure value")
    p.add_argument("kind", choices=kinds)
    p.add_argument("kappa", type=float, nargs="?")
    p.add_argument("--curve", action="store_true", help="emit (kappa, mu_max) CSV")
    p.add_argument("--resolution", type=int, default=333)
    p.add_argument("--out", help="CSV output path (required with --curve)")
    p.add_argument("--plot", metavar="PNG", help="also render the curve as a figure")
    p.set_defaults(handler=_cmd_inverse)

    p = sub.add_parser("scan", help="scan the extremal families over the parameter triangle")
    p.add_argument("kind", choices=kinds)
    p.add_argument("m", type=float)
    p.add_argument("--n", type=int, default=64, help="barycentric grid order")
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("verify", help="run deterministic verification suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--n", type=int, default=256, help="oracle grid order")
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(handler=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UnsupportedModeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
