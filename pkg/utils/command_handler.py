"""
Command Handler for the BCJ Command Line

This module contains one handler per subcommand. Handlers take the parsed
argparse namespace and return a CommandResult; they raise TorelliError on
violated preconditions and leave exit codes to the entry point.
"""

import json
import logging
from pathlib import Path
from typing import Callable, Dict

from BCJ import (
    HypothesisViolation,
    Mode,
    ParseError,
    SelftestLevel,
    census_frame,
    check_certificate,
    classify,
    count_symplectic_2subspaces,
    cycle_system,
    decide_equal_genus1,
    dim_report,
    dump_certificate,
    enumerate_symplectic_2subspaces,
    format_tree,
    genus_context,
    load_certificate,
    parse_int_subgroup,
    parse_subspace,
    parse_tree,
    reduce_to_genus1,
    run_selftest,
    sigma_of_subspace,
    tree_sigma_k,
    validate_options,
    validate_tree,
    vanishes_main3,
)
from utils.rendering import CommandResult, frame_to_csv, frame_to_table, ok_result

logger = logging.getLogger(__name__)


def _require_options(**options):
    is_valid, problems = validate_options(**options)
    if not is_valid:
        raise HypothesisViolation("; ".join(problems))


def handle_sigma(args) -> CommandResult:
    _require_options(g=args.g)
    ctx = genus_context(args.g)
    value = sigma_of_subspace(parse_subspace(args.subspace, ctx), ctx, Mode(args.mode))
    return ok_result({"sigma": str(value), "mode": value.mode.value}, text=str(value))


def handle_enumerate(args) -> CommandResult:
    _require_options(g=args.g)
    if args.count_only:
        count = count_symplectic_2subspaces(args.g)
        return ok_result({"count": count}, text=str(count))
    lines = [str(v) for v in enumerate_symplectic_2subspaces(genus_context(args.g))]
    return ok_result({"count": len(lines)}, text="\n".join(lines))


def _parse_pair(text: str, ctx):
    chunks = [c for c in text.split(";") if c.strip()]
    if len(chunks) != 2:
        raise ParseError(f"expected two parts 'x1, y1; x2, y2' in {text!r}")
    return cycle_system([parse_int_subgroup(c, ctx) for c in chunks])


def handle_decide_equal(args) -> CommandResult:
    _require_options(g=args.g)
    ctx = genus_context(args.g)
    p = _parse_pair(args.pair1, ctx)
    q = _parse_pair(args.pair2, ctx)
    verdict = decide_equal_genus1(p, q, ctx)
    payload = {"verdict": verdict.kind.value}
    if verdict.certificate is not None:
        payload["steps"] = len(verdict.certificate.steps)
        if args.cert:
            Path(args.cert).write_text(dump_certificate(verdict.certificate))
            payload["certificate"] = args.cert
            logger.info(f"Certificate written to {args.cert}")
    return ok_result(payload)


def handle_verify_cert(args) -> CommandResult:
    try:
        text = Path(args.file).read_text()
    except OSError as e:
        raise ParseError(f"cannot read certificate {args.file}: {e}") from e
    problems = check_certificate(load_certificate(text))
    if problems:
        return CommandResult("error", {"valid": False}, problems)
    return ok_result({"valid": True})


def handle_tree(args) -> CommandResult:
    tree = parse_tree(args.tree)
    if args.g is not None and tree.g != args.g:
        raise HypothesisViolation(f"tree has genus {tree.g}, --g says {args.g}")
    is_valid, problems = validate_tree(tree)
    if not is_valid:
        raise HypothesisViolation("inadmissible curve system: " + "; ".join(problems))

    if args.vanishes:
        return ok_result({"vanishes": vanishes_main3(tree)})
    if args.reduce:
        systems = reduce_to_genus1(tree)
        return ok_result({"systems": [[str(part) for part in s.parts] for s in systems]})
    if args.classify:
        cls = classify(tree)
        return ok_result({
            "outermost": [list(e) for e in cls.outermost_edges()],
            "grouping": [list(e) for e in cls.grouping_edges()],
            "caps": {f"{u}-{v}": c for (u, v), c in sorted(cls.cap.items())},
            "cap_bases": {f"{u}-{v}": b for (u, v), b in sorted(cls.cap_base.items())},
            "simple": cls.simple,
        })
    value = tree_sigma_k(tree)
    return ok_result({
        "tree": format_tree(tree),
        "k": value.k,
        "zero": value.is_zero(),
        "terms": [list(t) for t in value.wedge.sorted_terms()],
    })


def handle_dim_bounds(args) -> CommandResult:
    _require_options(g=args.g, threads=args.threads)
    report = dim_report(args.g, threads=args.threads)
    return ok_result(json.loads(report.to_json()))


def handle_census(args) -> CommandResult:
    _require_options(g=args.g, k=args.k)
    frame = census_frame(args.g, args.k)
    summary = {
        "classes": len(frame),
        "sigma_k_zero": int(frame["sigma_k_zero"].sum()),
    }
    logger.info(f"Census g={args.g}, k={args.k}: {summary}")
    return ok_result(summary, text=frame_to_csv(frame))


def handle_selftest(args) -> CommandResult:
    frame = run_selftest(SelftestLevel(args.level), seed=args.seed)
    failed = frame[frame["status"] != "ok"]
    table = frame_to_table(frame[["name", "status", "elapsed"]])
    if len(failed):
        return CommandResult("error", {"failed": failed["name"].tolist()},
                             [f"{row.name}: {row.detail}" for row in failed.itertuples()], table)
    return ok_result({"suites": len(frame)}, text=table)


HANDLERS: Dict[str, Callable] = {
    "sigma": handle_sigma,
    "enumerate": handle_enumerate,
    "decide-equal": handle_decide_equal,
    "verify-cert": handle_verify_cert,
    "tree": handle_tree,
    "dim-bounds": handle_dim_bounds,
    "census": handle_census,
    "selftest": handle_selftest,
}


def dispatch(args) -> CommandResult:
    return HANDLERS[args.command](args)
