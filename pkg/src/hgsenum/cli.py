"""Command-line entry point: ``hgsenum <command> [options]``.

Exit codes: 0 success with no discrepancies, 1 discrepancies found,
2 bad arguments, 3 a library error such as an exceeded cap.
"""

from __future__ import annotations

import argparse
import sys

from .errors import CapExceeded, HgsError
from .report import COMMANDS, FORMATS, TYPES, RunConfig, emit, run

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3

HELP = {
    "catalog": "closed-form rows for a Sophie Germain q",
    "enumerate": "enumerate and classify transitive subgroups of Hol(N)",
    "verify": "compare the generic enumeration with the closed-form rows",
    "oracle": "brute-force regular subgroups of Sym(n) against the count formula",
    "realizable": "wreath-product group of degree n that no holomorph contains",
}


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hgsenum", description="Hopf-Galois structures of squarefree degree")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HELP[name])
        if name in ("catalog", "enumerate", "verify"):
            p.add_argument("--q", type=int, help="Sophie Germain prime q (p = 2q+1)")
        if name in ("enumerate", "oracle", "realizable"):
            p.add_argument("--n", type=int, help="degree")
        p.add_argument("--type", choices=TYPES, default="both")
        p.add_argument("--format", choices=FORMATS, default="json")
        p.add_argument("--cap", type=_positive, dest="element_cap",
                       help="element cap per group (default from HGSENUM_ELEMENT_CAP or 200000)")
        p.add_argument("--subgroup-cap", type=_positive,
                       help="subgroup-list cap (default from HGSENUM_SUBGROUP_CAP or 1000000)")
        p.add_argument("--workers", type=_positive, default=1)
        p.add_argument("--output", "-o", help="write the report here instead of standard output")
        p.add_argument("--errata", action="store_true",
                       help="use the corrected M_0 row in the metacyclic catalogue")
        p.add_argument("--timing", action="store_true", help="record run time in the report header")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command, q=getattr(args, "q", None), n=getattr(args, "n", None),
        type=args.type, format=args.format, element_cap=args.element_cap,
        subgroup_cap=args.subgroup_cap, workers=args.workers, output=args.output,
        errata=args.errata, timing=args.timing,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = config_from_args(args)
    try:
        report = run(cfg)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"hgsenum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"hgsenum: error: {exc} (raise it with --cap/--subgroup-cap or "
              "HGSENUM_ELEMENT_CAP/HGSENUM_SUBGROUP_CAP)", file=sys.stderr)
        return EXIT_ERROR
    except HgsError as exc:
        print(f"hgsenum: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    data = emit(report, cfg.format)
    if cfg.output:
        with open(cfg.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
