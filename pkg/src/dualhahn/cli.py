"""Command line: ``dualhahn verify <suite> [options]``.

Exit status: 0 when every gating check passes, 1 when a check fails or is
vacuous, 2 for an invalid configuration, 3 when a space exceeds the dimension
limit (``DUALHAHN_MAX_DIM``).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from dualhahn import __version__
from dualhahn.opalg import DimensionError
from dualhahn.suites import SUITES, RunConfig, build_report, run_suites

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_DIMENSION = 0, 1, 2, 3


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/3, got {text!r}") from None


def _sign(text: str) -> int:
    if text not in ("1", "+1", "-1"):
        raise argparse.ArgumentTypeError(f"expected +1 or -1, got {text!r}")
    return int(text)


def _partition(text: str) -> tuple[int, int]:
    parts = text.replace("x", ",").split(",")
    try:
        m, mprime = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a partition like 2,2, got {text!r}") from None
    if m < 2 or mprime < 2 or m % 2 or mprime % 2:
        raise argparse.ArgumentTypeError("partition blocks must be even and >= 2")
    return m, mprime


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualhahn", description="Verify oscillator realizations of the "
                                     "dual -1 Hahn algebra and the osp(1|2) Clebsch-Gordan problem.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--cutoff", type=int, help="boson cutoff N (per-suite default when omitted)")
    v.add_argument("--mu1", type=_rational, default=Fraction(1, 3), help="rational p/q (default 1/3)")
    v.add_argument("--mu2", type=_rational, default=Fraction(1, 5), help="rational p/q (default 1/5)")
    v.add_argument("--eps1", type=_sign, default=1)
    v.add_argument("--eps2", type=_sign, default=1)
    v.add_argument("--partition", type=_partition, default=(2, 2), help="block sizes m,m' (default 2,2)")
    v.add_argument("--backend", choices=("exact", "float"), help="exact (analytic basis) or float (orthonormal)")
    v.add_argument("--budget", type=_nonneg, help="override the window budget of every check")
    v.add_argument("--output", choices=("text", "json"), default="text")
    v.add_argument("--seed", type=int, default=0, help="seed for the randomly sampled irreps")
    v.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identical output)")
    v.add_argument("--jobs", type=int, default=1, help="worker threads")
    v.add_argument("--j-max", type=_nonneg, dest="j_max", help="largest coupled index for the CG suite")
    v.add_argument("--csv", help="write the CG table to this path")
    v.add_argument("--tolerance", type=float, default=1e-10, help="residual tolerance on the float backend")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.cutoff is not None and args.cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if args.jobs < 1:
        raise ValueError("jobs must be >= 1")
    if args.mu1 < 0 or args.mu2 < 0:
        raise ValueError("mu1 and mu2 must be non-negative")
    return RunConfig(
        suite=args.suite, cutoff=args.cutoff, mu1=args.mu1, mu2=args.mu2, eps1=args.eps1, eps2=args.eps2,
        partition=args.partition, backend=args.backend, budget=args.budget, seed=args.seed, jobs=args.jobs,
        j_max=args.j_max, tolerance=args.tolerance, csv=args.csv,
    )


def render_text(report: dict) -> str:
    lines = [f"dualhahn {report['version']}"]
    for suite in report["suites"]:
        lines.append(f"[{'PASS' if suite['passed'] else 'FAIL'}] {suite['suite']}")
        for rep in suite["reports"]:
            counts: dict[str, int] = {}
            for row in rep["results"]:
                key = row["status"] + ("*" if row["informational"] else "")
                counts[key] = counts.get(key, 0) + 1
            tally = ", ".join(f"{k} {n}" for k, n in sorted(counts.items()))
            lines.append(f"  {rep['name']}: {tally}")
            for row in rep["results"]:
                if row["status"] != "PASS" and not row["informational"]:
                    lines.append(f"    {row['status']} {row['tag']}  {row['relation']}  "
                                 f"max_abs={row['max_abs']:.3g} budget={row['budget']}")
    lines.append("(* informational, does not affect the exit status)")
    lines.append("RESULT: " + ("PASS" if report["passed"] else "FAIL"))
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        results = run_suites(cfg)
    except DimensionError as exc:
        print(f"dualhahn: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except ValueError as exc:
        print(f"dualhahn: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = build_report(cfg, results, timing=args.timing)
    if args.output == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        print(render_text(report))
    return EXIT_OK if report["passed"] else EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
