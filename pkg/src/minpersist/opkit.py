"""Persistence-preserving operations on minimally persistent graphs.

Forward operations::

    StdVertexAdd   new vertex with edges (new, j), (new, k)
    StdEdgeSplit   (j, k) becomes (j, new), (new, k), plus (new, l)
    EdgeReversal   (i, j) becomes (j, i); needs a degree of freedom at j
    PathReversal   reverse a directed path whose last vertex has a dof
    CycleReversal  reverse a directed cycle
    AtypVertexAdd  edges (j, new), (new, k); needs a dof at j
    AtypEdgeSplit  drop (k, l), add (j, new), (new, k), (new, l) and
                   reverse a directed path j -> ... -> k

and the reverse (vertex removing) operations ``RevStdVertexAdd``,
``RevStdEdgeSplit``, ``RevAtypVertexAdd`` and ``RevAtypEdgeSplit``.

Every operation checks that its input is minimally persistent and that its
own preconditions hold before touching the graph. There is no unchecked
path.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import ClassVar, Union

from .graph import DirectedGraph, Edge, GraphError
from .persistence import is_minimally_persistent
from .rigidity import is_free_pair


class OperationError(ValueError):
    """An operation's preconditions do not hold on the given graph."""


@dataclass(frozen=True)
class Check:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


OK = Check(True)


def _fail(reason: str) -> Check:
    return Check(False, reason)


# -- operation values ---------------------------------------------------------


@dataclass(frozen=True)
class StdVertexAdd:
    kind: ClassVar[str] = "StdVertexAdd"
    new: int
    j: int
    k: int


@dataclass(frozen=True)
class StdEdgeSplit:
    kind: ClassVar[str] = "StdEdgeSplit"
    new: int
    j: int
    k: int
    l: int  # noqa: E741


@dataclass(frozen=True)
class EdgeReversal:
    kind: ClassVar[str] = "EdgeReversal"
    i: int
    j: int


@dataclass(frozen=True)
class PathReversal:
    kind: ClassVar[str] = "PathReversal"
    path: tuple[int, ...]


@dataclass(frozen=True)
class CycleReversal:
    kind: ClassVar[str] = "CycleReversal"
    cycle: tuple[int, ...]


@dataclass(frozen=True)
class AtypVertexAdd:
    kind: ClassVar[str] = "AtypVertexAdd"
    new: int
    j: int
    k: int


@dataclass(frozen=True)
class AtypEdgeSplit:
    kind: ClassVar[str] = "AtypEdgeSplit"
    new: int
    j: int
    k: int
    l: int  # noqa: E741
    path: tuple[int, ...]


@dataclass(frozen=True)
class RevStdVertexAdd:
    kind: ClassVar[str] = "RevStdVertexAdd"
    i: int


@dataclass(frozen=True)
class RevStdEdgeSplit:
    kind: ClassVar[str] = "RevStdEdgeSplit"
    i: int
    add_pair: Edge


@dataclass(frozen=True)
class RevAtypVertexAdd:
    kind: ClassVar[str] = "RevAtypVertexAdd"
    i: int


@dataclass(frozen=True)
class RevAtypEdgeSplit:
    kind: ClassVar[str] = "RevAtypEdgeSplit"
    i: int
    path: tuple[int, ...]
    add_pair: Edge


Operation = Union[
    StdVertexAdd,
    StdEdgeSplit,
    EdgeReversal,
    PathReversal,
    CycleReversal,
    AtypVertexAdd,
    AtypEdgeSplit,
    RevStdVertexAdd,
    RevStdEdgeSplit,
    RevAtypVertexAdd,
    RevAtypEdgeSplit,
]

OPERATION_TYPES: dict[str, type] = {
    cls.kind: cls
    for cls in (
        StdVertexAdd,
        StdEdgeSplit,
        EdgeReversal,
        PathReversal,
        CycleReversal,
        AtypVertexAdd,
        AtypEdgeSplit,
        RevStdVertexAdd,
        RevStdEdgeSplit,
        RevAtypVertexAdd,
        RevAtypEdgeSplit,
    )
}

SET_S = frozenset({"StdVertexAdd", "StdEdgeSplit"})
SET_T = SET_S | {"EdgeReversal"}
SET_A = SET_S | {"AtypVertexAdd", "AtypEdgeSplit"}
REVERSE_KINDS = frozenset(
    {"RevStdVertexAdd", "RevStdEdgeSplit", "RevAtypVertexAdd", "RevAtypEdgeSplit"}
)
_JSON_NAMES = {"add_pair": "addPair"}
_PY_NAMES = {v: k for k, v in _JSON_NAMES.items()}


def op_to_dict(op: Operation) -> dict:
    args = {}
    for f in fields(op):  # declaration order keeps output stable
        value = getattr(op, f.name)
        if isinstance(value, tuple):
            value = list(value)
        args[_JSON_NAMES.get(f.name, f.name)] = value
    return {"op": op.kind, "args": args}


def op_from_dict(data: dict) -> Operation:
    if not isinstance(data, dict) or "op" not in data:
        raise OperationError('operation JSON needs an "op" key')
    cls = OPERATION_TYPES.get(data["op"])
    if cls is None:
        raise OperationError(f"unknown operation kind {data['op']!r}")
    raw = data.get("args", {})
    if not isinstance(raw, dict):
        raise OperationError('"args" must be an object')
    args = {_PY_NAMES.get(k, k): v for k, v in raw.items()}
    expected = {f.name for f in fields(cls)}
    if set(args) != expected:
        raise OperationError(
            f"{cls.kind} expects args {sorted(expected)}, got {sorted(args)}"
        )
    for name, value in args.items():
        if isinstance(value, list):
            value = tuple(value)
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
                raise OperationError(f"{cls.kind}.{name} must be a list of ints")
            args[name] = value
        elif isinstance(value, bool) or not isinstance(value, int):
            raise OperationError(f"{cls.kind}.{name} must be an int")
    if "add_pair" in args and len(args["add_pair"]) != 2:
        raise OperationError(f"{cls.kind}.addPair must have two entries")
    return cls(**args)


# -- shared checks ------------------------------------------------------------


def _input_ok(g: DirectedGraph) -> Check:
    if not is_minimally_persistent(g):
        return _fail("input graph is not minimally persistent")
    return OK


def _fresh_ok(g: DirectedGraph, new: int) -> Check:
    if isinstance(new, bool) or not isinstance(new, int) or new < 0:
        return _fail(f"new vertex id {new!r} must be a non-negative integer")
    if new in g.vertices:
        return _fail(f"vertex {new} already present")
    return OK


def _exist(g: DirectedGraph, *vs: int) -> Check:
    for v in vs:
        if v not in g.vertices:
            return _fail(f"unknown vertex {v}")
    return OK


def check_path(g: DirectedGraph, path: tuple[int, ...]) -> Check:
    """A simple directed path; a closed walk with only its ends equal counts."""
    if not path:
        return _fail("empty path")
    if not (c := _exist(g, *path)):
        return c
    inner = path[:-1] if len(path) > 1 and path[0] == path[-1] else path
    if len(set(inner)) != len(inner):
        return _fail(f"path {list(path)} repeats a vertex")
    if len(path) == 2 and path[0] == path[1]:
        return _fail("a closed path needs at least two edges")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            return _fail(f"path edge ({a}, {b}) not in graph")
    return OK


def check_cycle(g: DirectedGraph, cycle: tuple[int, ...]) -> Check:
    if len(cycle) < 2:
        return _fail("a cycle needs at least two vertices")
    if not (c := _exist(g, *cycle)):
        return c
    if len(set(cycle)) != len(cycle):
        return _fail(f"cycle {list(cycle)} repeats a vertex")
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if not g.has_edge(a, b):
            return _fail(f"cycle edge ({a}, {b}) not in graph")
    return OK


def _path_edges(path: tuple[int, ...]) -> list[Edge]:
    return list(zip(path, path[1:]))


def _cycle_edges(cycle: tuple[int, ...]) -> list[Edge]:
    return list(zip(cycle, cycle[1:] + cycle[:1]))


def normalize_cycle(cycle) -> tuple[int, ...]:
    cycle = tuple(cycle)
    if len(cycle) > 1 and cycle[0] == cycle[-1]:
        cycle = cycle[:-1]
    return cycle


def _other_out(g: DirectedGraph, i: int, x: int) -> int:
    (y,) = [w for w in g.out_neighbors(i) if w != x]
    return y


# -- validation ---------------------------------------------------------------


def _validate_std_vertex_add(g, op: StdVertexAdd) -> Check:
    if op.j == op.k:
        return _fail("StdVertexAdd needs two distinct anchors")
    return _fresh_ok(g, op.new) and _exist(g, op.j, op.k)


def _validate_std_edge_split(g, op: StdEdgeSplit) -> Check:
    if not (c := _fresh_ok(g, op.new) and _exist(g, op.j, op.k, op.l)):
        return c
    if not g.has_edge(op.j, op.k):
        return _fail(f"edge ({op.j}, {op.k}) not in graph")
    if op.l in (op.j, op.k):
        return _fail(f"third vertex {op.l} collides with the split edge")
    return OK


def _validate_edge_reversal(g, op: EdgeReversal) -> Check:
    if not (c := _exist(g, op.i, op.j)):
        return c
    if not g.has_edge(op.i, op.j):
        return _fail(f"edge ({op.i}, {op.j}) not in graph")
    if g.dof(op.j) < 1:
        return _fail(f"vertex {op.j} has no degree of freedom to give")
    return OK


def _validate_path_reversal(g, op: PathReversal) -> Check:
    if not (c := check_path(g, op.path)):
        return c
    if len(op.path) > 1 and g.dof(op.path[-1]) < 1:
        return _fail(f"path end {op.path[-1]} has no degree of freedom")
    return OK


def _validate_cycle_reversal(g, op: CycleReversal) -> Check:
    return check_cycle(g, normalize_cycle(op.cycle))


def _validate_atyp_vertex_add(g, op: AtypVertexAdd) -> Check:
    if op.j == op.k:
        return _fail("AtypVertexAdd needs two distinct anchors")
    if not (c := _fresh_ok(g, op.new) and _exist(g, op.j, op.k)):
        return c
    if g.dof(op.j) < 1:
        return _fail(f"vertex {op.j} has no degree of freedom to give")
    return OK


def _validate_atyp_edge_split(g, op: AtypEdgeSplit) -> Check:
    if not (c := _fresh_ok(g, op.new) and _exist(g, op.j, op.k, op.l)):
        return c
    if len({op.j, op.k, op.l}) != 3:
        return _fail("AtypEdgeSplit needs three distinct vertices j, k, l")
    if not g.has_edge(op.k, op.l):
        return _fail(f"edge ({op.k}, {op.l}) not in graph")
    if not op.path or op.path[0] != op.j or op.path[-1] != op.k:
        return _fail(f"path must run from j={op.j} to k={op.k}")
    return check_path(g, op.path)


def _split_shape(g: DirectedGraph, i: int) -> Check:
    if i not in g.vertices:
        return _fail(f"unknown vertex {i}")
    if g.degrees(i) != (1, 2):
        return _fail(f"vertex {i} has (in, out) = {g.degrees(i)}, need (1, 2)")
    return OK


def _validate_rev_std_vertex_add(g, op: RevStdVertexAdd) -> Check:
    if op.i not in g.vertices:
        return _fail(f"unknown vertex {op.i}")
    if g.degrees(op.i) != (0, 2):
        return _fail(f"vertex {op.i} has (in, out) = {g.degrees(op.i)}, need (0, 2)")
    return OK


def _validate_rev_atyp_vertex_add(g, op: RevAtypVertexAdd) -> Check:
    if op.i not in g.vertices:
        return _fail(f"unknown vertex {op.i}")
    if g.degrees(op.i) != (1, 1):
        return _fail(f"vertex {op.i} has (in, out) = {g.degrees(op.i)}, need (1, 1)")
    return OK


def _validate_rev_std_edge_split(g, op: RevStdEdgeSplit) -> Check:
    if not (c := _split_shape(g, op.i)):
        return c
    (j,) = g.in_neighbors(op.i)
    a, x = op.add_pair
    if a != j:
        return _fail(f"added edge must leave the in-neighbour {j}")
    if x not in g.out_neighbors(op.i):
        return _fail(f"added edge must reach an out-neighbour of {op.i}")
    rest = g.without_vertex(op.i)
    if rest.connected(j, x):
        return _fail(f"({j}, {x}) is already an explicit edge")
    if not is_free_pair(rest.underlying(), j, x):
        return _fail(f"({j}, {x}) is an implicit edge once {op.i} is removed")
    return OK


def _validate_rev_atyp_edge_split(g, op: RevAtypEdgeSplit) -> Check:
    if not (c := _split_shape(g, op.i)):
        return c
    (j,) = g.in_neighbors(op.i)
    outs = g.out_neighbors(op.i)
    k, l = op.add_pair
    if sorted((k, l)) != outs:
        return _fail(f"added pair must join the out-neighbours {outs}")
    if not op.path or op.path[0] != k or op.path[-1] != j:
        return _fail(f"path must run from {k} to the in-neighbour {j}")
    rest = g.without_vertex(op.i)
    if not (c := check_path(rest, op.path)):
        return c
    if not is_free_pair(rest.underlying(), k, l):
        return _fail(f"({k}, {l}) is an explicit or implicit edge once {op.i} is removed")
    return OK


_VALIDATORS = {
    "StdVertexAdd": _validate_std_vertex_add,
    "StdEdgeSplit": _validate_std_edge_split,
    "EdgeReversal": _validate_edge_reversal,
    "PathReversal": _validate_path_reversal,
    "CycleReversal": _validate_cycle_reversal,
    "AtypVertexAdd": _validate_atyp_vertex_add,
    "AtypEdgeSplit": _validate_atyp_edge_split,
    "RevStdVertexAdd": _validate_rev_std_vertex_add,
    "RevStdEdgeSplit": _validate_rev_std_edge_split,
    "RevAtypVertexAdd": _validate_rev_atyp_vertex_add,
    "RevAtypEdgeSplit": _validate_rev_atyp_edge_split,
}


def validate(g: DirectedGraph, op: Operation) -> Check:
    """Decide whether ``op`` may be applied to ``g``; never raises."""
    if not (c := _input_ok(g)):
        return c
    try:
        return _VALIDATORS[op.kind](g, op)
    except (GraphError, ValueError) as exc:
        return _fail(str(exc))


def validate_reverse(g: DirectedGraph, op: Operation) -> Check:
    if op.kind not in REVERSE_KINDS:
        return _fail(f"{op.kind} is not a reverse operation")
    return validate(g, op)


def _require(g: DirectedGraph, op: Operation) -> None:
    c = validate(g, op)
    if not c:
        raise OperationError(f"{op.kind}: {c.reason}")


# -- application --------------------------------------------------------------


@dataclass(frozen=True)
class OpOutcome:
    graph: DirectedGraph
    applied_edge_reversals: int = 0
    # elementary reversals realising a macro, in execution order
    lowered: tuple[EdgeReversal, ...] = field(default=())


def _reverse_edges(g: DirectedGraph, edges: list[Edge]) -> DirectedGraph:
    return g.replace_edges(remove=edges, add=[(b, a) for a, b in edges])


def _run_reversals(g: DirectedGraph, steps: list[EdgeReversal]) -> DirectedGraph:
    for step in steps:
        g = apply_edge_reversal(g, step.i, step.j)
    return g


def apply_std_vertex_add(g: DirectedGraph, new: int, j: int, k: int) -> DirectedGraph:
    _require(g, StdVertexAdd(new, j, k))
    return g.with_vertex(new).replace_edges(add=[(new, j), (new, k)])


def apply_std_edge_split(
    g: DirectedGraph, new: int, j: int, k: int, l: int  # noqa: E741
) -> DirectedGraph:
    _require(g, StdEdgeSplit(new, j, k, l))
    return g.with_vertex(new).replace_edges(
        remove=[(j, k)], add=[(j, new), (new, k), (new, l)]
    )


def apply_edge_reversal(g: DirectedGraph, i: int, j: int) -> DirectedGraph:
    _require(g, EdgeReversal(i, j))
    return g.reverse_edge(i, j)


def path_reversal_steps(path) -> list[EdgeReversal]:
    """Elementary reversals for a path, last edge first."""
    return [EdgeReversal(a, b) for a, b in reversed(_path_edges(tuple(path)))]


def apply_path_reversal(g: DirectedGraph, path) -> OpOutcome:
    path = tuple(path)
    _require(g, PathReversal(path))
    steps = path_reversal_steps(path)
    return OpOutcome(_run_reversals(g, steps), len(steps), tuple(steps))


def cycle_reversal_steps(g: DirectedGraph, cycle) -> list[EdgeReversal]:
    """Lower a cycle reversal to edge reversals.

    With a degree of freedom on the cycle the reversal is a closed path
    reversal at that vertex. Otherwise a path P from the cycle to some vertex
    with a dof is reversed first, the cycle second, and P back last.
    """
    cycle = normalize_cycle(cycle)
    dofs = [v for v in sorted(cycle) if g.dof(v) >= 1]
    if dofs:
        c = dofs[0]
        t = cycle.index(c)
        return path_reversal_steps(cycle[t:] + cycle[:t] + (c,))
    on_cycle = set(cycle)
    start = min(cycle)
    for m in sorted(v for v in g.vertices if g.dof(v) >= 1):
        walk = g.directed_path(start, m)
        if walk is not None:
            break
    else:
        raise OperationError("no vertex with a degree of freedom is reachable from the cycle")
    last = max(t for t, v in enumerate(walk) if v in on_cycle)
    tail = tuple(walk[last:])
    i = tail[0]
    t = cycle.index(i)
    rotated = cycle[t:] + cycle[:t] + (i,)
    return (
        path_reversal_steps(tail)
        + path_reversal_steps(rotated)
        + path_reversal_steps(tail[::-1])
    )


def apply_cycle_reversal(g: DirectedGraph, cycle) -> OpOutcome:
    cycle = normalize_cycle(cycle)
    _require(g, CycleReversal(cycle))
    steps = cycle_reversal_steps(g, cycle)
    out = _run_reversals(g, steps)
    expected = _reverse_edges(g, _cycle_edges(cycle))
    if out != expected:
        raise AssertionError("cycle reversal lowering diverged")
    return OpOutcome(out, len(steps), tuple(steps))


def apply_atyp_vertex_add(g: DirectedGraph, new: int, j: int, k: int) -> DirectedGraph:
    _require(g, AtypVertexAdd(new, j, k))
    return g.with_vertex(new).replace_edges(add=[(j, new), (new, k)])


def apply_atyp_edge_split(
    g: DirectedGraph, new: int, j: int, k: int, l: int, path  # noqa: E741
) -> DirectedGraph:
    path = tuple(path)
    _require(g, AtypEdgeSplit(new, j, k, l, path))
    h = _reverse_edges(g, _path_edges(path))
    return h.with_vertex(new).replace_edges(
        remove=[(k, l)], add=[(j, new), (new, k), (new, l)]
    )


def default_atyp_path(g: DirectedGraph, j: int, k: int) -> tuple[int, ...] | None:
    path = g.directed_path(j, k)
    return None if path is None else tuple(path)


def apply_atyp_edge_split_auto(
    g: DirectedGraph, new: int, j: int, k: int, l: int  # noqa: E741
) -> DirectedGraph:
    """Atypical edge splitting along the breadth-first path from j to k."""
    path = default_atyp_path(g, j, k)
    if path is None:
        raise OperationError(f"AtypEdgeSplit: no directed path from {j} to {k}")
    return apply_atyp_edge_split(g, new, j, k, l, path)


def apply_reverse(g: DirectedGraph, op: Operation) -> DirectedGraph:
    c = validate_reverse(g, op)
    if not c:
        raise OperationError(f"{op.kind}: {c.reason}")
    if op.kind in ("RevStdVertexAdd", "RevAtypVertexAdd"):
        return g.without_vertex(op.i)
    rest = g.without_vertex(op.i)
    if op.kind == "RevStdEdgeSplit":
        return rest.replace_edges(add=[tuple(op.add_pair)])
    rest = _reverse_edges(rest, _path_edges(op.path))
    return rest.replace_edges(add=[tuple(op.add_pair)])


def apply_outcome(g: DirectedGraph, op: Operation) -> OpOutcome:
    kind = op.kind
    if kind == "PathReversal":
        return apply_path_reversal(g, op.path)
    if kind == "CycleReversal":
        return apply_cycle_reversal(g, op.cycle)
    if kind == "EdgeReversal":
        return OpOutcome(apply_edge_reversal(g, op.i, op.j), 1, (op,))
    if kind in REVERSE_KINDS:
        return OpOutcome(apply_reverse(g, op))
    if kind == "StdVertexAdd":
        return OpOutcome(apply_std_vertex_add(g, op.new, op.j, op.k))
    if kind == "StdEdgeSplit":
        return OpOutcome(apply_std_edge_split(g, op.new, op.j, op.k, op.l))
    if kind == "AtypVertexAdd":
        return OpOutcome(apply_atyp_vertex_add(g, op.new, op.j, op.k))
    if kind == "AtypEdgeSplit":
        return OpOutcome(apply_atyp_edge_split(g, op.new, op.j, op.k, op.l, op.path))
    raise OperationError(f"unknown operation kind {kind!r}")


def apply(g: DirectedGraph, op: Operation) -> DirectedGraph:
    return apply_outcome(g, op).graph


# -- inversion ----------------------------------------------------------------


def invert(op: Operation, before: DirectedGraph | None = None) -> Operation:
    """The operation undoing ``op``.

    Reverse vertex additions and reverse standard splittings do not record the
    removed vertex's anchors, so ``before`` (the graph ``op`` was applied to)
    is required for them.
    """
    kind = op.kind
    if kind == "StdVertexAdd":
        return RevStdVertexAdd(op.new)
    if kind == "StdEdgeSplit":
        return RevStdEdgeSplit(op.new, (op.j, op.k))
    if kind == "AtypVertexAdd":
        return RevAtypVertexAdd(op.new)
    if kind == "AtypEdgeSplit":
        return RevAtypEdgeSplit(op.new, tuple(reversed(op.path)), (op.k, op.l))
    if kind == "EdgeReversal":
        return EdgeReversal(op.j, op.i)
    if kind == "PathReversal":
        return PathReversal(tuple(reversed(op.path)))
    if kind == "CycleReversal":
        return CycleReversal(tuple(reversed(normalize_cycle(op.cycle))))
    if kind == "RevAtypEdgeSplit":
        k, l = op.add_pair
        return AtypEdgeSplit(op.i, op.path[-1], k, l, tuple(reversed(op.path)))
    if before is None:
        raise OperationError(f"inverting {kind} needs the graph it was applied to")
    if kind == "RevStdVertexAdd":
        j, k = before.out_neighbors(op.i)
        return StdVertexAdd(op.i, j, k)
    if kind == "RevAtypVertexAdd":
        (j,) = before.in_neighbors(op.i)
        (k,) = before.out_neighbors(op.i)
        return AtypVertexAdd(op.i, j, k)
    if kind == "RevStdEdgeSplit":
        j, x = op.add_pair
        return StdEdgeSplit(op.i, j, x, _other_out(before, op.i, x))
    raise OperationError(f"unknown operation kind {kind!r}")


# -- enumeration of applicable operations ---------------------------------------


def forward_candidates(
    g: DirectedGraph, kinds=SET_A | SET_T, new: int | None = None
) -> list[Operation]:
    """Every applicable forward operation of the given kinds, in a fixed order.

    Vertex additions take unordered anchor pairs; atypical splittings use the
    breadth-first path. Path and cycle reversals are not listed.
    """
    if not is_minimally_persistent(g):
        return []
    new = g.fresh_vertex() if new is None else new
    vs = g.sorted_vertices()
    edges = g.sorted_edges()
    ops: list[Operation] = []
    if "StdVertexAdd" in kinds:
        ops += [StdVertexAdd(new, j, k) for j in vs for k in vs if j < k]
    if "StdEdgeSplit" in kinds:
        ops += [StdEdgeSplit(new, j, k, l) for j, k in edges for l in vs if l not in (j, k)]
    if "EdgeReversal" in kinds:
        ops += [EdgeReversal(i, j) for i, j in edges if g.dof(j) >= 1]
    if "AtypVertexAdd" in kinds:
        ops += [AtypVertexAdd(new, j, k) for j in vs if g.dof(j) >= 1 for k in vs if k != j]
    if "AtypEdgeSplit" in kinds:
        for k, l in edges:
            for j in vs:
                if j in (k, l):
                    continue
                path = default_atyp_path(g, j, k)
                if path is not None:
                    ops.append(AtypEdgeSplit(new, j, k, l, path))
    return ops


def reverse_candidates(g: DirectedGraph) -> list[Operation]:
    """Every valid reverse operation, with breadth-first atypical paths."""
    if not is_minimally_persistent(g) or len(g.vertices) <= 2:
        return []
    ops: list[Operation] = []
    for i in g.sorted_vertices():
        shape = g.degrees(i)
        if shape == (0, 2):
            ops.append(RevStdVertexAdd(i))
        elif shape == (1, 1):
            ops.append(RevAtypVertexAdd(i))
        elif shape == (1, 2):
            ops.extend(split_removals(g, i))
    return [op for op in ops if validate(g, op)]


def split_removals(g: DirectedGraph, i: int) -> list[Operation]:
    """Candidate reverse splittings of a (1, 2) vertex, standard ones first.

    The atypical candidates search a path from k to j first, then from l.
    Candidates are not validated here.
    """
    (j,) = g.in_neighbors(i)
    k, l = g.out_neighbors(i)
    ops: list[Operation] = [RevStdEdgeSplit(i, (j, k)), RevStdEdgeSplit(i, (j, l))]
    rest = g.without_vertex(i)
    for a, b in ((k, l), (l, k)):
        path = rest.directed_path(a, j)
        if path is not None:
            ops.append(RevAtypEdgeSplit(i, tuple(path), (a, b)))
    return ops
