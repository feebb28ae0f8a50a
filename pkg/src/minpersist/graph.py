"""Directed graphs with stable integer vertex ids.

Graph values are immutable; every mutation helper returns a new graph.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised on malformed graphs or invalid graph queries."""


class UnknownVertexError(GraphError):
    def __init__(self, v: object) -> None:
        super().__init__(f"unknown vertex {v!r}")
        self.vertex = v


def _check_id(v: object) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise GraphError(f"vertex ids must be non-negative integers, got {v!r}")
    return v


@dataclass(frozen=True)
class UndirectedView:
    """Direction-erased graph; edges are stored as ``(min, max)`` pairs."""

    vertices: frozenset[int]
    edges: frozenset[Edge]

    @classmethod
    def build(cls, vertices: Iterable[int], edges: Iterable[Edge]) -> UndirectedView:
        vs = frozenset(_check_id(v) for v in vertices)
        es = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop on {u}")
            if u not in vs or v not in vs:
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            es.add((min(u, v), max(u, v)))
        return cls(vs, frozenset(es))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> list[int]:
        if v not in self.vertices:
            raise UnknownVertexError(v)
        return sorted({b if a == v else a for a, b in self.edges if v in (a, b)})

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def without_vertex(self, v: int) -> UndirectedView:
        if v not in self.vertices:
            raise UnknownVertexError(v)
        return UndirectedView(
            self.vertices - {v}, frozenset(e for e in self.edges if v not in e)
        )

    def with_edge(self, u: int, v: int) -> UndirectedView:
        return UndirectedView.build(self.vertices, set(self.edges) | {(u, v)})

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class DirectedGraph:
    """A simple directed graph.

    Self-loops are rejected. Anti-parallel pairs are representable so that
    checkers can report them, but no minimally rigid graph contains one.
    """

    vertices: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        for v in self.vertices:
            _check_id(v)
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop on {u}")
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside the vertex set")

    @classmethod
    def build(cls, edges: Iterable[Edge], vertices: Iterable[int] = ()) -> DirectedGraph:
        """Build from an edge list; endpoints are added to the vertex set."""
        es = frozenset((int(u), int(v)) for u, v in edges)
        vs = set(vertices)
        for u, v in es:
            vs.add(u)
            vs.add(v)
        return cls(frozenset(vs), es)

    # -- queries -----------------------------------------------------------

    def _require(self, *vs: int) -> None:
        for v in vs:
            if v not in self.vertices:
                raise UnknownVertexError(v)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def connected(self, u: int, v: int) -> bool:
        """True if an edge joins u and v in either direction."""
        return (u, v) in self.edges or (v, u) in self.edges

    def out_neighbors(self, v: int) -> list[int]:
        self._require(v)
        return sorted(b for a, b in self.edges if a == v)

    def in_neighbors(self, v: int) -> list[int]:
        self._require(v)
        return sorted(a for a, b in self.edges if b == v)

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbors(v))

    def out_degree(self, v: int) -> int:
        return len(self.out_neighbors(v))

    def degrees(self, v: int) -> tuple[int, int]:
        """Return ``(in_degree, out_degree)`` of ``v``."""
        return self.in_degree(v), self.out_degree(v)

    def dof(self, v: int) -> int:
        """Degrees of freedom of ``v``: ``max(0, 2 - out_degree)``."""
        return max(0, 2 - self.out_degree(v))

    def out_degree_map(self) -> dict[int, int]:
        out = dict.fromkeys(self.vertices, 0)
        for u, _ in self.edges:
            out[u] += 1
        return out

    def in_degree_map(self) -> dict[int, int]:
        ins = dict.fromkeys(self.vertices, 0)
        for _, v in self.edges:
            ins[v] += 1
        return ins

    def antiparallel_pairs(self) -> list[Edge]:
        return sorted((u, v) for u, v in self.edges if u < v and (v, u) in self.edges)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    def directed_path(self, source: int, target: int) -> list[int] | None:
        """Breadth-first directed path from ``source`` to ``target``.

        Neighbours are expanded in increasing id order, so the result is
        deterministic. ``source == target`` gives the length-0 path.
        """
        self._require(source, target)
        if source == target:
            return [source]
        adj = self.adjacency()
        parent = {source: source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w in parent:
                    continue
                parent[w] = u
                if w == target:
                    path = [w]
                    while path[-1] != source:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(w)
        return None

    def reachable(self, source: int) -> set[int]:
        self._require(source)
        adj = self.adjacency()
        seen = {source}
        stack = [source]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def underlying(self) -> UndirectedView:
        return UndirectedView(
            self.vertices, frozenset((min(u, v), max(u, v)) for u, v in self.edges)
        )

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_vertices())

    def __len__(self) -> int:
        return len(self.vertices)

    # -- copy-on-write updates ----------------------------------------------

    def replace_edges(
        self, remove: Iterable[Edge] = (), add: Iterable[Edge] = ()
    ) -> DirectedGraph:
        es = set(self.edges)
        for e in remove:
            es.remove(e)
        for e in add:
            if e in es:
                raise GraphError(f"edge {e} already present")
            es.add(e)
        return DirectedGraph(self.vertices, frozenset(es))

    def with_vertex(self, v: int) -> DirectedGraph:
        _check_id(v)
        if v in self.vertices:
            raise GraphError(f"vertex {v} already present")
        return DirectedGraph(self.vertices | {v}, self.edges)

    def without_vertex(self, v: int) -> DirectedGraph:
        self._require(v)
        return DirectedGraph(
            self.vertices - {v}, frozenset(e for e in self.edges if v not in e)
        )

    def reverse_edge(self, u: int, v: int) -> DirectedGraph:
        if (u, v) not in self.edges:
            raise GraphError(f"edge ({u}, {v}) not in graph")
        return self.replace_edges(remove=[(u, v)], add=[(v, u)])

    def relabel(self, mapping: dict[int, int]) -> DirectedGraph:
        """Rename vertices; ids missing from ``mapping`` keep their label."""
        f = lambda v: mapping.get(v, v)  # noqa: E731
        vs = frozenset(f(v) for v in self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("relabelling is not injective")
        return DirectedGraph(vs, frozenset((f(u), f(v)) for u, v in self.edges))

    def fresh_vertex(self) -> int:
        """Propose an unused id: one more than the current maximum."""
        return max(self.vertices, default=0) + 1

    # -- serialisation -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": self.sorted_vertices(),
            "edges": [list(e) for e in self.sorted_edges()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> DirectedGraph:
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise GraphError('graph JSON needs "vertices" and "edges" keys')
        vertices = data["vertices"]
        edges = data["edges"]
        if not isinstance(vertices, list) or not isinstance(edges, list):
            raise GraphError('"vertices" and "edges" must be lists')
        pairs = []
        for e in edges:
            if not isinstance(e, list) or len(e) != 2:
                raise GraphError(f"edge must be a [from, to] pair, got {e!r}")
            pairs.append((_check_id(e[0]), _check_id(e[1])))
        if len(set(pairs)) != len(pairs):
            raise GraphError("duplicate edge in edge list")
        return cls(frozenset(_check_id(v) for v in vertices), frozenset(pairs))

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> DirectedGraph:
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"DirectedGraph({self.sorted_edges()}, vertices={self.sorted_vertices()})"


def labeled_equal(a: DirectedGraph, b: DirectedGraph) -> bool:
    return a.vertices == b.vertices and a.edges == b.edges


def parse_edge_list(text: str) -> DirectedGraph:
    """Read ``u v`` lines (directed ``u -> v``); a lone id declares a vertex.

    Blank lines and ``#`` comments are skipped.
    """
    vertices: set[int] = set()
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            ids = [_check_id(int(p)) for p in parts]
        except ValueError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
        if len(ids) == 1:
            vertices.add(ids[0])
        elif len(ids) == 2:
            edges.append((ids[0], ids[1]))
        else:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
    if len(set(edges)) != len(edges):
        raise GraphError("duplicate edge in edge list")
    return DirectedGraph.build(edges, vertices)


def dumps(obj: object) -> str:
    """Compact, byte-stable JSON."""
    return json.dumps(obj, separators=(",", ":"))
