"""Minimal persistence: minimally rigid with every out-degree at most 2."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .graph import DirectedGraph, Edge, GraphError
from .rigidity import RigidityVerdict, check_rigidity

MAX_OUT_DEGREE = 2
TOTAL_DOF = 3


@dataclass(frozen=True)
class Violation:
    """Why a graph is not minimally persistent.

    ``kind`` is one of ``out-degree``, ``anti-parallel``, ``dependent-edges``
    or ``not-rigid``.
    """

    kind: str
    message: str
    vertex: int | None = None
    edges: tuple[Edge, ...] | None = None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "message": self.message}
        if self.vertex is not None:
            out["vertex"] = self.vertex
        if self.edges is not None:
            out["edges"] = [list(e) for e in self.edges]
        return out


@dataclass(frozen=True)
class PersistenceReport:
    rigidity: RigidityVerdict
    max_out_degree: int
    is_minimally_persistent: bool
    dof: dict[int, int]
    violation: Violation | None = None

    def to_dict(self) -> dict:
        return {
            "isMinimallyPersistent": self.is_minimally_persistent,
            "rigidity": self.rigidity.to_dict(),
            "maxOutDegree": self.max_out_degree,
            "dof": {str(v): self.dof[v] for v in sorted(self.dof)},
            "violation": None if self.violation is None else self.violation.to_dict(),
        }


def dof_allocation(g: DirectedGraph) -> dict[int, int]:
    return {v: max(0, 2 - d) for v, d in sorted(g.out_degree_map().items())}


def total_dof(g: DirectedGraph) -> int:
    return sum(dof_allocation(g).values())


def _rigidity_of(g: DirectedGraph) -> RigidityVerdict:
    verdict = check_rigidity(g.underlying())
    if g.antiparallel_pairs():
        # the underlying view collapses the pair, so recount on directed edges
        verdict = replace(verdict, is_minimally_rigid=False)
    return verdict


def check_min_persistent(g: DirectedGraph) -> PersistenceReport:
    n = len(g.vertices)
    if n < 2:
        raise GraphError("minimal persistence needs at least two vertices")
    out = g.out_degree_map()
    rigidity = _rigidity_of(g)
    max_out = max(out.values())
    violation = None
    heavy = sorted(v for v, d in out.items() if d > MAX_OUT_DEGREE)
    anti = g.antiparallel_pairs()
    if heavy:
        v = heavy[0]
        violation = Violation(
            "out-degree", f"vertex {v} has out-degree {out[v]} > {MAX_OUT_DEGREE}", vertex=v
        )
    elif anti:
        u, v = anti[0]
        violation = Violation(
            "anti-parallel",
            f"edges ({u}, {v}) and ({v}, {u}) overload a 2-vertex subgraph",
            edges=((u, v), (v, u)),
        )
    elif rigidity.violating_edges is not None:
        violation = Violation(
            "dependent-edges",
            f"edge {rigidity.rejected_edge} completes a subgraph with more than "
            "2|V'|-3 edges",
            edges=rigidity.violating_edges,
        )
    elif not rigidity.is_rigid:
        violation = Violation(
            "not-rigid", f"rank {rigidity.rank} < 2|V|-3 = {2 * n - 3}"
        )
    return PersistenceReport(
        rigidity=rigidity,
        max_out_degree=max_out,
        is_minimally_persistent=violation is None,
        dof=dof_allocation(g),
        violation=violation,
    )


@lru_cache(maxsize=1 << 16)
def is_minimally_persistent(g: DirectedGraph) -> bool:
    if len(g.vertices) < 2:
        return False
    if max(g.out_degree_map().values()) > MAX_OUT_DEGREE:
        return False
    if len(g.edges) != 2 * len(g.vertices) - 3:
        return False
    return _rigidity_of(g).is_minimally_rigid
