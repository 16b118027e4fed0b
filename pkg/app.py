"""
BCJ Command Line Application

Entry point for the abelian-cycle calculus. Parses flags, configures
logging, dispatches to a subcommand handler and maps the outcome to an
exit code: 0 on success, 1 on a domain error, 2 on a usage error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from BCJ import DEFAULT_SEED, DEFAULT_THREADS, Mode, SelftestLevel, TorelliError, configure_logging
from utils.command_handler import dispatch
from utils.rendering import error_result, render_result

logger = logging.getLogger(__name__)


def _add_common_flags(parser: argparse.ArgumentParser, seed, threads, verbose):
    parser.add_argument("--verbose", action="store_true", default=verbose, help="Log at DEBUG level")
    parser.add_argument("--seed", type=int, default=seed, help="Seed for randomized suites")
    parser.add_argument("--threads", type=int, default=threads,
                        help="Worker processes for long enumerations")


def build_parser() -> argparse.ArgumentParser:
    """Global flags plus one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="bcj",
        description="Mod 2 invariants of abelian cycles in the Torelli group",
    )
    _add_common_flags(parser, DEFAULT_SEED, DEFAULT_THREADS, False)
    # repeated after the subcommand; SUPPRESS keeps values given before it
    common = argparse.ArgumentParser(add_help=False)
    _add_common_flags(common, argparse.SUPPRESS, argparse.SUPPRESS, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", help="Sigma value of a symplectic subspace", parents=[common])
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--subspace", required=True, help="Generators, e.g. 'a1, b1+a2'")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.CLOSED.value)

    p = sub.add_parser("enumerate", help="2-dimensional symplectic subspaces", parents=[common])
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("decide-equal", help="Compare two genus-1 abelian cycles", parents=[common])
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--pair1", required=True, help="'x1, y1; x2, y2'")
    p.add_argument("--pair2", required=True, help="'x1, y1; x2, y2'")
    p.add_argument("--cert", help="Write the certificate JSON here")

    p = sub.add_parser("verify-cert", help="Replay a certificate", parents=[common])
    p.add_argument("file")

    p = sub.add_parser("tree", help="Invariants of a curve system tree", parents=[common])
    p.add_argument("--g", type=int)
    p.add_argument("--tree", required=True, help="Nested form, e.g. '0(1)(1)(2)'")
    action = p.add_mutually_exclusive_group()
    action.add_argument("--sigma-k", action="store_true", help="Wedge of the curve sigmas (default)")
    action.add_argument("--vanishes", action="store_true")
    action.add_argument("--reduce", action="store_true")
    action.add_argument("--classify", action="store_true")

    p = sub.add_parser("dim-bounds", help="Upper and lower bounds for genus-1 abelian cycles", parents=[common])
    p.add_argument("--g", type=int, required=True)

    p = sub.add_parser("census", help="Admissible trees as CSV", parents=[common])
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("selftest", help="Run the property suites", parents=[common])
    p.add_argument("--level", choices=[s.value for s in SelftestLevel], default=SelftestLevel.QUICK.value)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0

    configure_logging(args.verbose)

    try:
        result = dispatch(args)
    except TorelliError as e:
        logger.warning(f"{args.command} failed: {e}")
        result = error_result(str(e), [type(e).__name__])
    except Exception as e:
        logger.error(f"Unexpected failure in {args.command}: {e}", exc_info=True)
        result = error_result(f"internal error: {e}")

    render_result(result)
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
