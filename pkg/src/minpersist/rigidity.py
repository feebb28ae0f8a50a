"""Generic minimal rigidity in the plane.

The decision procedure is the (2,3) pebble game; ``oracle_minimally_rigid``
is an exhaustive Laman subgraph count kept around to cross-check it.
"""

from __future__ import annotations

import copy
import itertools
from dataclasses import dataclass
from typing import Iterable

from .graph import Edge, GraphError, UndirectedView, UnknownVertexError

ORACLE_MAX_VERTICES = 10


class PebbleGame:
    """Incremental (2,3) pebble game.

    Every registered vertex starts with two pebbles. Accepted edges are kept
    in an internal orientation, and ``pebbles[v] + out-degree(v) == 2`` holds
    for every vertex between calls.
    """

    def __init__(self, vertices: Iterable[int] = ()) -> None:
        self.pebbles: dict[int, int] = {}
        self.out: dict[int, set[int]] = {}
        self.accepted: list[Edge] = []
        self.last_rejected_span: frozenset[int] | None = None
        for v in vertices:
            self.add_vertex(v)

    def add_vertex(self, v: int) -> None:
        if v in self.pebbles:
            return
        self.pebbles[v] = 2
        self.out[v] = set()

    def copy(self) -> PebbleGame:
        return copy.deepcopy(self)

    @property
    def free_pebbles(self) -> int:
        return sum(self.pebbles.values())

    def orientation(self) -> list[Edge]:
        return sorted((u, w) for u, ws in self.out.items() for w in ws)

    def _find_pebble(self, root: int, blocked: set[int]) -> bool:
        # depth-first, smallest id first; moves one pebble back onto root
        parent = {root: root}
        stack = [root]
        found = None
        while stack and found is None:
            u = stack.pop()
            fresh = []
            for w in sorted(self.out[u]):
                if w in parent or w in blocked:
                    continue
                parent[w] = u
                if self.pebbles[w] > 0:
                    found = w
                    break
                fresh.append(w)
            stack.extend(reversed(fresh))
        if found is None:
            return False
        w = found
        while w != root:
            p = parent[w]
            self.out[p].remove(w)
            self.out[w].add(p)
            w = p
        self.pebbles[found] -= 1
        self.pebbles[root] += 1
        return True

    def _reach(self, sources: Iterable[int]) -> set[int]:
        seen = set(sources)
        stack = list(seen)
        while stack:
            for w in self.out[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def try_insert(self, u: int, v: int) -> bool:
        """Accept ``{u, v}`` iff it is independent of the accepted edges.

        On rejection ``last_rejected_span`` holds a vertex set whose accepted
        edges plus ``{u, v}`` overshoot the ``2|V'| - 3`` bound.
        """
        if u == v:
            raise GraphError("pebble game edges need two distinct endpoints")
        for x in (u, v):
            if x not in self.pebbles:
                raise UnknownVertexError(x)
        blocked = {u, v}
        while self.pebbles[u] + self.pebbles[v] < 4:
            if self.pebbles[u] < 2 and self._find_pebble(u, blocked):
                continue
            if self.pebbles[v] < 2 and self._find_pebble(v, blocked):
                continue
            self.last_rejected_span = frozenset(self._reach(blocked))
            return False
        self.pebbles[u] -= 1
        self.out[u].add(v)
        self.accepted.append((min(u, v), max(u, v)))
        self.last_rejected_span = None
        return True

    def spanned_edges(self, vertices: Iterable[int]) -> list[Edge]:
        vs = set(vertices)
        return sorted(e for e in self.accepted if e[0] in vs and e[1] in vs)


def pebble_try_insert(state: PebbleGame, u: int, v: int) -> tuple[bool, PebbleGame]:
    """Functional form of :meth:`PebbleGame.try_insert`; ``state`` is untouched."""
    new = state.copy()
    return new.try_insert(u, v), new


@dataclass(frozen=True)
class RigidityVerdict:
    rank: int
    is_rigid: bool
    is_minimally_rigid: bool
    # first rejected edge and a Laman-violating edge subset containing it
    rejected_edge: Edge | None = None
    violating_edges: tuple[Edge, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "isRigid": self.is_rigid,
            "isMinimallyRigid": self.is_minimally_rigid,
        }


def build_game(uv: UndirectedView) -> tuple[PebbleGame, list[Edge]]:
    """Insert every edge in sorted order; return the game and the rejects."""
    game = PebbleGame(sorted(uv.vertices))
    rejected = [e for e in uv.sorted_edges() if not game.try_insert(*e)]
    return game, rejected


def check_rigidity(uv: UndirectedView) -> RigidityVerdict:
    n = len(uv.vertices)
    if n < 2:
        raise GraphError("rigidity is only defined here for at least two vertices")
    game = PebbleGame(sorted(uv.vertices))
    first_reject: Edge | None = None
    witness: tuple[Edge, ...] | None = None
    for e in uv.sorted_edges():
        if not game.try_insert(*e) and first_reject is None:
            first_reject = e
            span = game.last_rejected_span or frozenset(e)
            witness = tuple(sorted(game.spanned_edges(span) + [e]))
    rank = len(game.accepted)
    is_rigid = rank == 2 * n - 3
    return RigidityVerdict(
        rank=rank,
        is_rigid=is_rigid,
        is_minimally_rigid=is_rigid and len(uv.edges) == 2 * n - 3,
        rejected_edge=first_reject,
        violating_edges=witness,
    )


def is_minimally_rigid(uv: UndirectedView) -> bool:
    return len(uv.vertices) >= 2 and check_rigidity(uv).is_minimally_rigid


def defines_implicit_edge(uv: UndirectedView, u: int, v: int) -> bool:
    """True if joining ``u`` and ``v`` would overload some subgraph."""
    if u == v:
        raise GraphError("implicit edges join two distinct vertices")
    for x in (u, v):
        if x not in uv.vertices:
            raise UnknownVertexError(x)
    if uv.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is already an explicit edge")
    game, _ = build_game(uv)
    return not game.try_insert(u, v)


def is_free_pair(uv: UndirectedView, u: int, v: int) -> bool:
    """Neither an explicit nor an implicit edge."""
    return not uv.has_edge(u, v) and not defines_implicit_edge(uv, u, v)


def oracle_minimally_rigid(uv: UndirectedView) -> bool:
    """Exhaustive check over every non-empty edge subset. Test support only."""
    n = len(uv.vertices)
    if n > ORACLE_MAX_VERTICES:
        raise GraphError(f"oracle limited to {ORACLE_MAX_VERTICES} vertices, got {n}")
    edges = uv.sorted_edges()
    if n < 2 or len(edges) != 2 * n - 3:
        return False
    for r in range(1, len(edges) + 1):
        for subset in itertools.combinations(edges, r):
            spanned = {x for e in subset for x in e}
            if r > 2 * len(spanned) - 3:
                return False
    return True
