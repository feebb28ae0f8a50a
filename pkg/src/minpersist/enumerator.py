"""Exhaustive and random generation of minimally rigid / persistent graphs.

Enumeration is labelled: graphs live on the vertex set ``{1, ..., n}`` and
two graphs are the same only if their edge sets are equal.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from . import __version__
from .graph import DirectedGraph, Edge, UndirectedView, dumps
from .opkit import (
    SET_A,
    SET_T,
    Operation,
    RevStdEdgeSplit,
    RevStdVertexAdd,
    forward_candidates,
    validate,
)
from .persistence import dof_allocation
from .rigidity import is_free_pair
from .sequencer import Plan, _Builder, leader_follower_seed

MAX_RIGID_N = 7
MAX_PERSISTENT_N = 6


class EnumerationError(ValueError):
    pass


def _check_n(n: int, hi: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or not 2 <= n <= hi:
        raise EnumerationError(f"n must be an integer in [2, {hi}], got {n!r}")


def _canonical(n: int, edges: Iterable[Edge]) -> tuple[Edge, ...]:
    """Smallest sorted edge tuple over all relabellings of ``{1..n}``."""
    edges = list(edges)
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        img = tuple(sorted(
            (min(perm[a - 1], perm[b - 1]), max(perm[a - 1], perm[b - 1])) for a, b in edges
        ))
        if best is None or img < best:
            best = img
    return best


def _expand(n: int, edges: frozenset[Edge]) -> Iterator[frozenset[Edge]]:
    """Undirected Henneberg moves adding vertex ``n + 1``."""
    new = n + 1
    vs = range(1, n + 1)
    for a, b in itertools.combinations(vs, 2):
        yield edges | {(a, new), (b, new)}
    for a, b in sorted(edges):
        for c in vs:
            if c not in (a, b):
                yield (edges - {(a, b)}) | {(a, new), (b, new), (c, new)}


def _iso_classes(n: int) -> list[tuple[Edge, ...]]:
    """One canonical representative per isomorphism class of Laman graphs."""
    level = {((1, 2),)}
    for m in range(2, n):
        nxt = set()
        for rep in level:
            for grown in _expand(m, frozenset(rep)):
                nxt.add(_canonical(m + 1, grown))
        level = nxt
    return sorted(level)


def enumerate_min_rigid(n: int) -> list[UndirectedView]:
    """All labelled minimally rigid graphs on ``{1..n}``, sorted by edge list."""
    _check_n(n, MAX_RIGID_N)
    labelled: set[tuple[Edge, ...]] = set()
    for rep in _iso_classes(n):
        for perm in itertools.permutations(range(1, n + 1)):
            labelled.add(tuple(sorted(
                (min(perm[a - 1], perm[b - 1]), max(perm[a - 1], perm[b - 1])) for a, b in rep
            )))
    vs = frozenset(range(1, n + 1))
    return [UndirectedView(vs, frozenset(es)) for es in sorted(labelled)]


def orientations(uv: UndirectedView, max_out: int = 2) -> Iterator[DirectedGraph]:
    """Orientations of ``uv`` with every out-degree at most ``max_out``.

    Edges are assigned in sorted order, tail at the smaller id first.
    """
    edges = uv.sorted_edges()
    out = dict.fromkeys(uv.vertices, 0)
    chosen: list[Edge] = []

    def rec(t: int) -> Iterator[DirectedGraph]:
        if t == len(edges):
            yield DirectedGraph(uv.vertices, frozenset(chosen))
            return
        a, b = edges[t]
        for tail, head in ((a, b), (b, a)):
            if out[tail] < max_out:
                out[tail] += 1
                chosen.append((tail, head))
                yield from rec(t + 1)
                chosen.pop()
                out[tail] -= 1

    yield from rec(0)


def is_s_inverse_stuck(g: DirectedGraph) -> bool:
    """No reverse standard vertex addition or edge splitting applies."""
    if len(g.vertices) <= 2:
        return False
    ins = g.in_degree_map()
    outs = g.out_degree_map()
    for v in g.sorted_vertices():
        if (ins[v], outs[v]) == (0, 2):
            return False
    rest_cache: dict[int, UndirectedView] = {}
    for v in g.sorted_vertices():
        if (ins[v], outs[v]) != (1, 2):
            continue
        (j,) = g.in_neighbors(v)
        rest = rest_cache.setdefault(v, g.without_vertex(v).underlying())
        for x in g.out_neighbors(v):
            if is_free_pair(rest, j, x):
                return False
    return True


@dataclass(frozen=True)
class Corpus:
    n: int
    graphs: tuple[DirectedGraph, ...]

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self) -> Iterator[DirectedGraph]:
        return iter(self.graphs)

    @cached_property
    def metadata(self) -> list[dict]:
        return [
            {"dof": dof_allocation(g), "stuck": is_s_inverse_stuck(g)} for g in self.graphs
        ]

    def header(self) -> dict:
        return {
            "n": self.n,
            "count": len(self.graphs),
            "generator": f"minpersist {__version__}",
        }

    def to_ndjson(self) -> str:
        lines = [dumps(self.header())]
        lines += [dumps(g.to_dict()) for g in self.graphs]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_ndjson(cls, text: str) -> Corpus:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = json.loads(lines[0])
        graphs = tuple(DirectedGraph.from_dict(json.loads(ln)) for ln in lines[1:])
        if header.get("count") != len(graphs):
            raise EnumerationError("corpus header count does not match its records")
        return cls(int(header["n"]), graphs)


def enumerate_min_persistent(n: int) -> Corpus:
    _check_n(n, MAX_PERSISTENT_N)
    graphs = [g for uv in enumerate_min_rigid(n) for g in orientations(uv)]
    graphs.sort(key=lambda g: g.sorted_edges())
    return Corpus(n, tuple(graphs))


def find_s_inverse_stuck(n: int) -> list[DirectedGraph]:
    _check_n(n, MAX_PERSISTENT_N)
    return [g for g in enumerate_min_persistent(n) if is_s_inverse_stuck(g)]


# -- random generation ----------------------------------------------------------


def random_plan(
    length: int, seed: int | random.Random, kinds=SET_A, start: DirectedGraph | None = None
) -> Plan:
    """Apply ``length`` operations drawn uniformly among the valid ones.

    Candidates are all applicable ``(kind, parameters)`` tuples of the given
    kinds, as listed by :func:`minpersist.opkit.forward_candidates`.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    b = _Builder(start if start is not None else leader_follower_seed())
    for _ in range(length):
        options = forward_candidates(b.current, kinds)
        if not options:
            break
        b.do(rng.choice(options))
    return b.plan()


def random_min_persistent(n: int, seed: int) -> DirectedGraph:
    """A graph on ``n`` vertices grown from the seed ``2 -> 1`` by A operations."""
    if n < 2:
        raise EnumerationError("need at least two vertices")
    return random_plan(n - 2, seed, SET_A).final


def random_mixed_plan(max_length: int, seed: int) -> Plan:
    """Random T and A operations, plan length drawn from ``[1, max_length]``."""
    rng = random.Random(seed)
    return random_plan(rng.randint(1, max_length), rng, SET_A | SET_T)


def s_inverse_candidates(g: DirectedGraph) -> list[Operation]:
    """Valid reverse standard operations on ``g``."""
    ops: list[Operation] = []
    for v in g.sorted_vertices():
        shape = g.degrees(v)
        if shape == (0, 2):
            ops.append(RevStdVertexAdd(v))
        elif shape == (1, 2):
            (j,) = g.in_neighbors(v)
            ops += [RevStdEdgeSplit(v, (j, x)) for x in g.out_neighbors(v)]
    return [op for op in ops if validate(g, op)]


__all__ = [
    "Corpus",
    "EnumerationError",
    "enumerate_min_persistent",
    "enumerate_min_rigid",
    "find_s_inverse_stuck",
    "is_s_inverse_stuck",
    "orientations",
    "random_min_persistent",
    "random_mixed_plan",
    "random_plan",
    "s_inverse_candidates",
]
