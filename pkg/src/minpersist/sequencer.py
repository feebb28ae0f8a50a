"""Plans that build, take apart and transform minimally persistent graphs.

Every planner here is deterministic: ties go to the smallest vertex id and
paths are breadth-first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .graph import DirectedGraph, GraphError, UndirectedView, labeled_equal
from .opkit import (
    CycleReversal,
    EdgeReversal,
    Operation,
    OperationError,
    PathReversal,
    RevAtypVertexAdd,
    RevStdEdgeSplit,
    RevStdVertexAdd,
    StdEdgeSplit,
    StdVertexAdd,
    apply,
    apply_outcome,
    invert,
    op_from_dict,
    op_to_dict,
    split_removals,
    validate,
)
from .persistence import dof_allocation, is_minimally_persistent
from .rigidity import is_free_pair, is_minimally_rigid


class PlanError(ValueError):
    """A planner's preconditions fail."""


class ReplayError(ValueError):
    def __init__(self, step: int, reason: str) -> None:
        super().__init__(f"step {step}: {reason}")
        self.step = step
        self.reason = reason


@dataclass(frozen=True)
class Relabel:
    """Vertex renaming applied before step ``at`` (0-based) during replay."""

    at: int
    mapping: Mapping[int, int]

    def to_dict(self) -> dict:
        return {"at": self.at, "map": {str(k): self.mapping[k] for k in sorted(self.mapping)}}

    @classmethod
    def from_dict(cls, data: dict) -> Relabel:
        return cls(int(data["at"]), {int(k): int(v) for k, v in data["map"].items()})


@dataclass(frozen=True)
class Plan:
    initial: DirectedGraph
    steps: tuple[Operation, ...] = ()
    snapshots: tuple[DirectedGraph, ...] = ()
    relabel: Relabel | None = None

    @property
    def final(self) -> DirectedGraph:
        g = self.snapshots[-1] if self.snapshots else self.initial
        if self.relabel is not None and self.relabel.at == len(self.steps):
            g = g.relabel(dict(self.relabel.mapping))
        return g

    def __len__(self) -> int:
        return len(self.steps)

    def kinds(self) -> list[str]:
        return [op.kind for op in self.steps]

    def graph_before(self, t: int) -> DirectedGraph:
        g = self.initial if t == 0 else self.snapshots[t - 1]
        if self.relabel is not None and self.relabel.at == t:
            g = g.relabel(dict(self.relabel.mapping))
        return g

    def to_dict(self) -> dict:
        out: dict = {"initial": self.initial.to_dict()}
        if self.relabel is not None:
            out["relabel"] = self.relabel.to_dict()
        out["steps"] = [op_to_dict(op) for op in self.steps]
        out["final"] = self.final.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: dict) -> Plan:
        """Parse a stored plan; snapshots are not stored, so none are set.

        Use :func:`replay` to recompute and verify them.
        """
        if not isinstance(data, dict) or "initial" not in data or "steps" not in data:
            raise PlanError('plan JSON needs "initial" and "steps"')
        relabel = Relabel.from_dict(data["relabel"]) if data.get("relabel") else None
        return cls(
            DirectedGraph.from_dict(data["initial"]),
            tuple(op_from_dict(s) for s in data["steps"]),
            (),
            relabel,
        )


class _Builder:
    """Accumulates steps while tracking the current graph."""

    def __init__(self, g: DirectedGraph) -> None:
        self.initial = g
        self.current = g
        self.steps: list[Operation] = []
        self.snapshots: list[DirectedGraph] = []
        self.relabel: Relabel | None = None

    def do(self, op: Operation) -> DirectedGraph:
        self.current = apply(self.current, op)
        self.steps.append(op)
        self.snapshots.append(self.current)
        return self.current

    def extend(self, ops: Iterable[Operation]) -> None:
        for op in ops:
            self.do(op)

    def rename(self, mapping: dict[int, int]) -> None:
        if self.relabel is not None:
            raise PlanError("a plan carries at most one relabelling")
        if any(k != v for k, v in mapping.items()):
            self.relabel = Relabel(len(self.steps), mapping)
            self.current = self.current.relabel(mapping)

    def plan(self) -> Plan:
        return Plan(self.initial, tuple(self.steps), tuple(self.snapshots), self.relabel)


def _require_mp(g: DirectedGraph, what: str = "input") -> None:
    if len(g.vertices) < 2 or not is_minimally_persistent(g):
        raise PlanError(f"{what} graph is not minimally persistent")


def replay(plan: Plan) -> Plan:
    """Re-execute a plan, checking every intermediate graph.

    Returns the plan with recomputed snapshots. Steps are numbered from 1;
    step 0 is the initial graph.
    """
    if not is_minimally_persistent(plan.initial):
        raise ReplayError(0, "initial graph is not minimally persistent")
    g = plan.initial
    snaps = []
    for t, op in enumerate(plan.steps):
        if plan.relabel is not None and plan.relabel.at == t:
            g = g.relabel(dict(plan.relabel.mapping))
        try:
            g = apply(g, op)
        except (OperationError, GraphError) as exc:
            raise ReplayError(t + 1, str(exc)) from None
        if not is_minimally_persistent(g):
            raise ReplayError(t + 1, "result is not minimally persistent")
        snaps.append(g)
    return Plan(plan.initial, plan.steps, tuple(snaps), plan.relabel)


# -- decomposition to a leader-follower seed ------------------------------------


def removal_step(g: DirectedGraph) -> Operation:
    """The vertex removal chosen at one step of ``decompose_A``.

    Degree patterns are tried in the order (0, 2), (1, 1), (1, 2) and, within
    a pattern, by increasing vertex id.
    """
    by_shape: dict[tuple[int, int], list[int]] = {(0, 2): [], (1, 1): [], (1, 2): []}
    ins = g.in_degree_map()
    outs = g.out_degree_map()
    for v in g.sorted_vertices():
        shape = (ins[v], outs[v])
        if shape in by_shape:
            by_shape[shape].append(v)
    if by_shape[(0, 2)]:
        return RevStdVertexAdd(by_shape[(0, 2)][0])
    if by_shape[(1, 1)]:
        return RevAtypVertexAdd(by_shape[(1, 1)][0])
    for i in by_shape[(1, 2)]:
        for op in split_removals(g, i):
            if validate(g, op):
                return op
    raise PlanError("no removable vertex found; the removal argument failed")


def decompose_A(g: DirectedGraph) -> Plan:
    """Strip ``g`` to a leader-follower seed with reverse standard/atypical operations."""
    _require_mp(g)
    b = _Builder(g)
    while len(b.current.vertices) > 2:
        b.do(removal_step(b.current))
    return b.plan()


def invert_plan(plan: Plan) -> Plan:
    """The plan running ``plan`` backwards, from its final graph."""
    if plan.relabel is not None:
        raise PlanError("cannot invert a relabelled plan")
    b = _Builder(plan.final)
    for t in range(len(plan.steps) - 1, -1, -1):
        b.do(invert(plan.steps[t], before=plan.graph_before(t)))
    return b.plan()


def construct_from_seed(target: DirectedGraph) -> Plan:
    """Build ``target`` from a leader-follower seed with forward A operations."""
    return invert_plan(decompose_A(target))


def decompose_T(g: DirectedGraph) -> Plan:
    """Reach a seed using only edge reversals and reverse standard operations."""
    _require_mp(g)
    b = _Builder(g)
    while len(b.current.vertices) > 2:
        h = b.current
        op = removal_step(h)
        if op.kind in ("RevStdVertexAdd", "RevStdEdgeSplit"):
            b.do(op)
        elif op.kind == "RevAtypVertexAdd":
            (j,) = h.in_neighbors(op.i)
            b.do(EdgeReversal(j, op.i))
            b.do(RevStdVertexAdd(op.i))
        else:
            # standard-splitting pre-image of the same smaller graph
            smaller = apply(h, op)
            k, l = op.add_pair
            (j,) = h.in_neighbors(op.i)
            preimage = apply(smaller, StdEdgeSplit(op.i, k, l, j))
            b.extend(transform_same_underlying(h, preimage).steps)
            b.do(RevStdEdgeSplit(op.i, (k, l)))
    return b.plan()


def construct_T(target: DirectedGraph) -> Plan:
    """Build ``target`` from a seed with standard operations and edge reversals."""
    return invert_plan(decompose_T(target))


# -- same underlying graph ------------------------------------------------------


def _check_allocation(g: DirectedGraph, target: Mapping[int, int]) -> None:
    if set(target) != set(g.vertices):
        raise PlanError("target allocation must cover exactly the graph's vertices")
    if any(not 0 <= d <= 2 for d in target.values()):
        raise PlanError("a vertex holds between 0 and 2 degrees of freedom")
    if sum(target.values()) != 3:
        raise PlanError("a minimally persistent graph has exactly 3 degrees of freedom")
    if len(g.vertices) == 2:
        # each seed vertex has a single edge, so it keeps at least one dof
        if any(d == 0 for d in target.values()):
            raise PlanError("a seed vertex cannot have zero degrees of freedom")


def reposition_dof(g: DirectedGraph, target: Mapping[int, int]) -> Plan:
    """Move degrees of freedom onto ``target`` with at most three path reversals.

    Each reversal runs from the smallest-id vertex still short of its target
    to the smallest-id vertex holding a surplus.
    """
    _require_mp(g)
    target = dict(target)
    _check_allocation(g, target)
    b = _Builder(g)
    while True:
        current = dof_allocation(b.current)
        short = [v for v in sorted(current) if current[v] < target[v]]
        if not short:
            break
        surplus = [v for v in sorted(current) if current[v] > target[v]]
        path = b.current.directed_path(short[0], surplus[0])
        if path is None:
            raise PlanError(f"no directed path from {short[0]} to {surplus[0]}")
        b.do(PathReversal(tuple(path)))
    return b.plan()


def mismatch_cycle(a: DirectedGraph, b: DirectedGraph) -> tuple[int, ...] | None:
    """A directed cycle of ``a`` made of edges pointing the other way in ``b``.

    Starts at the smallest mismatched edge and keeps following the smallest
    mismatched out-edge until a vertex repeats.
    """
    bad = sorted(e for e in a.edges if e not in b.edges)
    if not bad:
        return None
    nxt: dict[int, list[int]] = {}
    for u, v in bad:
        nxt.setdefault(u, []).append(v)
    walk = list(bad[0])
    seen = {walk[0]: 0, walk[1]: 1}
    while True:
        options = nxt.get(walk[-1])
        if not options:
            raise PlanError("mismatched edges do not close into a cycle")
        w = options[0]
        if w in seen:
            return tuple(walk[seen[w]:])
        seen[w] = len(walk)
        walk.append(w)


def _check_same_underlying(a: DirectedGraph, b: DirectedGraph) -> None:
    if a.vertices != b.vertices:
        raise PlanError("graphs have different vertex sets")
    if a.underlying() != b.underlying():
        raise PlanError("graphs have different underlying undirected graphs")


def align_orientations(a: DirectedGraph, b: DirectedGraph) -> Plan:
    """Turn ``a`` into ``b`` with cycle reversals (same allocation required)."""
    _require_mp(a, "first")
    _require_mp(b, "second")
    _check_same_underlying(a, b)
    if dof_allocation(a) != dof_allocation(b):
        raise PlanError("graphs have different degree-of-freedom allocations")
    plan = _Builder(a)
    while (cycle := mismatch_cycle(plan.current, b)) is not None:
        plan.do(CycleReversal(cycle))
    return plan.plan()


def lower_to_edge_reversals(plan: Plan) -> Plan:
    """Replace path and cycle reversals with their elementary edge reversals."""
    b = _Builder(plan.initial)
    for op in plan.steps:
        outcome = apply_outcome(b.current, op)
        if op.kind in ("PathReversal", "CycleReversal"):
            b.extend(outcome.lowered)
        else:
            b.do(op)
    return b.plan()


def transform_same_underlying(a: DirectedGraph, b: DirectedGraph) -> Plan:
    """Turn ``a`` into ``b`` by edge reversals only."""
    _require_mp(a, "first")
    _require_mp(b, "second")
    _check_same_underlying(a, b)
    moved = reposition_dof(a, dof_allocation(b))
    aligned = align_orientations(moved.final, b)
    macro = Plan(a, moved.steps + aligned.steps)
    return lower_to_edge_reversals(macro)


# -- between arbitrary minimally persistent graphs --------------------------------


def _seed_bridge(sa: DirectedGraph, sb: DirectedGraph, mode: str):
    """Relabelling and optional edge reversal taking seed ``sa`` to seed ``sb``."""
    ((fa, la),) = sa.edges
    ((fb, lb),) = sb.edges
    if sa.vertices == sb.vertices:
        if (fa, la) == (fb, lb):
            return {}, None
        if mode == "T":
            return {}, EdgeReversal(fa, la)
    return {fa: fb, la: lb}, None


def transform_general(a: DirectedGraph, b: DirectedGraph, mode: str = "A") -> Plan:
    """Take ``a`` apart to a seed and rebuild ``b`` from it.

    ``mode="A"`` uses only operations of A and their inverses; seeds that
    differ are matched by relabelling. ``mode="T"`` uses edge reversals and
    the standard operations, and bridges equal-vertex seeds by one reversal.
    """
    if mode not in ("A", "T"):
        raise PlanError(f"mode must be 'A' or 'T', got {mode!r}")
    _require_mp(a, "first")
    _require_mp(b, "second")
    if labeled_equal(a, b):
        return Plan(a)
    down = decompose_A(a) if mode == "A" else decompose_T(a)
    up = construct_from_seed(b) if mode == "A" else construct_T(b)
    builder = _Builder(a)
    builder.extend(down.steps)
    mapping, reversal = _seed_bridge(builder.current, up.initial, mode)
    builder.rename(mapping)
    if reversal is not None:
        builder.do(reversal)
    if not labeled_equal(builder.current, up.initial):
        raise AssertionError("seed bridge failed")
    builder.extend(up.steps)
    return builder.plan()


# -- orienting minimally rigid graphs -------------------------------------------


def undirected_henneberg(uv: UndirectedView) -> list[tuple]:
    """Reverse Henneberg decomposition of a minimally rigid graph.

    Returns records in forward (construction) order: the base edge first as
    ``("K2", a, b)``, then ``("VA", v, (a, b))`` and ``("ES", v, (x, y), z)``
    where the split edge is ``x-y`` and ``z`` is the third neighbour.
    """
    if not is_minimally_rigid(uv):
        raise PlanError("graph is not minimally rigid")
    removed: list[tuple] = []
    g = uv
    while len(g.vertices) > 2:
        degree = {v: g.degree(v) for v in sorted(g.vertices)}
        twos = [v for v, d in degree.items() if d == 2]
        if twos:
            v = twos[0]
            removed.append(("VA", v, tuple(g.neighbors(v))))
            g = g.without_vertex(v)
            continue
        for v in (v for v, d in degree.items() if d == 3):
            a, b_, c = g.neighbors(v)
            rest = g.without_vertex(v)
            pair = next(
                (p for p in ((a, b_), (a, c), (b_, c)) if is_free_pair(rest, *p)), None
            )
            if pair is not None:
                (third,) = {a, b_, c} - set(pair)
                removed.append(("ES", v, pair, third))
                g = rest.with_edge(*pair)
                break
        else:
            raise PlanError("no degree-2 or removable degree-3 vertex")
    (base,) = g.edges
    return [("K2", *base)] + removed[::-1]


def orient_min_rigid(uv: UndirectedView) -> tuple[DirectedGraph, Plan]:
    """Orient a minimally rigid graph to a minimally persistent one.

    The undirected Henneberg sequence is replayed with directed standard
    operations from the seed ``(larger id -> smaller id)``.
    """
    if len(uv.vertices) < 2:
        raise PlanError("need at least two vertices")
    records = undirected_henneberg(uv)
    _, a, b_ = records[0]
    seed = DirectedGraph.build([(max(a, b_), min(a, b_))])
    builder = _Builder(seed)
    for rec in records[1:]:
        if rec[0] == "VA":
            _, v, (x, y) = rec
            builder.do(StdVertexAdd(v, x, y))
        else:
            _, v, (x, y), z = rec
            tail, head = (x, y) if builder.current.has_edge(x, y) else (y, x)
            builder.do(StdEdgeSplit(v, tail, head, z))
    plan = builder.plan()
    return plan.final, plan


def leader_follower_seed(follower: int = 2, leader: int = 1) -> DirectedGraph:
    return DirectedGraph.build([(follower, leader)])


__all__ = [
    "Plan",
    "PlanError",
    "Relabel",
    "ReplayError",
    "align_orientations",
    "construct_T",
    "construct_from_seed",
    "decompose_A",
    "decompose_T",
    "invert_plan",
    "leader_follower_seed",
    "lower_to_edge_reversals",
    "mismatch_cycle",
    "orient_min_rigid",
    "removal_step",
    "replay",
    "reposition_dof",
    "transform_general",
    "transform_same_underlying",
    "undirected_henneberg",
]
