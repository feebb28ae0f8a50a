"""Command-line front end.

Exit codes: 0 success / property holds, 1 property fails, 2 invalid input.
JSON results go to stdout; ``-v`` adds a human summary on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .enumerator import (
    Corpus,
    EnumerationError,
    enumerate_min_persistent,
    enumerate_min_rigid,
    find_s_inverse_stuck,
    random_min_persistent,
)
from .graph import DirectedGraph, GraphError, dumps, labeled_equal, parse_edge_list
from .opkit import OperationError
from .persistence import check_min_persistent
from .sequencer import (
    Plan,
    PlanError,
    ReplayError,
    construct_T,
    construct_from_seed,
    decompose_A,
    decompose_T,
    replay,
    transform_general,
    transform_same_underlying,
)

EXIT_OK, EXIT_FALSE, EXIT_INVALID = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: str, text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None


def load_graph(path: str) -> DirectedGraph:
    """JSON graph, or a ``u v`` edge list when the text does not start with ``{``."""
    text = _read(path)
    try:
        if text.lstrip().startswith("{"):
            return DirectedGraph.from_dict(_load_json(path, text))
        return parse_edge_list(text)
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_plan(path: str) -> tuple[Plan, DirectedGraph | None]:
    data = _load_json(path, _read(path))
    try:
        plan = Plan.from_dict(data)
        final = DirectedGraph.from_dict(data["final"]) if "final" in data else None
    except (GraphError, OperationError, PlanError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None
    return plan, final


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def _cmd_check(args, log) -> int:
    g = load_graph(args.graph)
    report = check_min_persistent(g)
    _emit(report.to_dict())
    if report.is_minimally_persistent:
        log(f"minimally persistent; dof {report.dof}")
        return EXIT_OK
    log(f"not minimally persistent: {report.violation.message}")
    return EXIT_FALSE


def _emit_plan(plan: Plan, log) -> int:
    _emit(plan.to_dict())
    log(f"{len(plan)} steps: {' '.join(plan.kinds()) or '(none)'}")
    return EXIT_OK


def _cmd_decompose(args, log) -> int:
    g = load_graph(args.graph)
    return _emit_plan(decompose_A(g) if args.mode == "A" else decompose_T(g), log)


def _cmd_construct(args, log) -> int:
    g = load_graph(args.graph)
    return _emit_plan(construct_from_seed(g) if args.mode == "A" else construct_T(g), log)


def _cmd_transform(args, log) -> int:
    a, b = load_graph(args.source), load_graph(args.target)
    if args.mode == "same-underlying":
        plan = transform_same_underlying(a, b)
    else:
        plan = transform_general(a, b, mode=args.ops)
    return _emit_plan(plan, log)


def _cmd_enumerate(args, log) -> int:
    if args.rigid:
        views = enumerate_min_rigid(args.n)
        graphs = tuple(DirectedGraph(uv.vertices, uv.edges) for uv in views)
        corpus = Corpus(args.n, graphs)
    elif args.stuck:
        corpus = Corpus(args.n, tuple(find_s_inverse_stuck(args.n)))
    else:
        corpus = enumerate_min_persistent(args.n)
    sys.stdout.write(corpus.to_ndjson())
    log(f"{len(corpus)} graphs on {args.n} vertices")
    return EXIT_OK


def _cmd_random(args, log) -> int:
    g = random_min_persistent(args.n, args.seed)
    _emit(g.to_dict())
    log(f"random graph with {len(g.edges)} edges")
    return EXIT_OK


def _cmd_replay(args, log) -> int:
    plan, stored_final = load_plan(args.planfile)
    try:
        replayed = replay(plan)
    except ReplayError as exc:
        _emit({"ok": False, "step": exc.step, "reason": exc.reason})
        log(f"replay diverged at step {exc.step}: {exc.reason}")
        return EXIT_FALSE
    if stored_final is not None and not labeled_equal(replayed.final, stored_final):
        k = len(plan.steps)
        _emit({"ok": False, "step": k, "reason": "final graph differs from the stored one"})
        log(f"replay diverged at step {k}: final graph differs")
        return EXIT_FALSE
    _emit({"ok": True, "steps": len(plan.steps)})
    log(f"replayed {len(plan.steps)} steps; every intermediate graph minimally persistent")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="minpersist", description="Minimal rigidity and persistence toolkit."
    )
    p.add_argument("-v", "--verbose", action="store_true", help="summary on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="decide minimal persistence")
    s.add_argument("graph")
    s.set_defaults(func=_cmd_check)

    s = sub.add_parser("decompose", help="plan down to a leader-follower seed")
    s.add_argument("graph")
    s.add_argument("--mode", choices=["A", "T"], default="A")
    s.set_defaults(func=_cmd_decompose)

    s = sub.add_parser("construct", help="plan up from a leader-follower seed")
    s.add_argument("graph")
    s.add_argument("--mode", choices=["A", "T"], default="A")
    s.set_defaults(func=_cmd_construct)

    s = sub.add_parser("transform", help="plan from one graph to another")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--mode", choices=["general", "same-underlying"], default="general")
    s.add_argument("--ops", choices=["A", "T"], default="A",
                   help="operation set for --mode general")
    s.set_defaults(func=_cmd_transform)

    s = sub.add_parser("enumerate", help="labelled corpus as NDJSON")
    s.add_argument("n", type=int)
    group = s.add_mutually_exclusive_group()
    group.add_argument("--rigid", action="store_true", help="undirected minimally rigid graphs")
    group.add_argument("--stuck", action="store_true",
                       help="only graphs no reverse standard operation applies to")
    s.set_defaults(func=_cmd_enumerate)

    s = sub.add_parser("random", help="random minimally persistent graph")
    s.add_argument("n", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_random)

    s = sub.add_parser("replay", help="re-execute and verify a stored plan")
    s.add_argument("planfile")
    s.set_defaults(func=_cmd_replay)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK

    def log(msg: str) -> None:
        if args.verbose:
            print(msg, file=sys.stderr)

    try:
        return args.func(args, log)
    except (InputError, GraphError, PlanError, OperationError, EnumerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())
