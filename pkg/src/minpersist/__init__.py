"""Combinatorial rigidity and minimal persistence of directed graphs in the plane."""

__version__ = "0.1.0"

from .graph import DirectedGraph, GraphError, UndirectedView, labeled_equal  # noqa: E402
from .persistence import check_min_persistent, dof_allocation, is_minimally_persistent  # noqa: E402
from .rigidity import (  # noqa: E402
    PebbleGame,
    check_rigidity,
    defines_implicit_edge,
    oracle_minimally_rigid,
)

__all__ = [
    "DirectedGraph",
    "GraphError",
    "PebbleGame",
    "UndirectedView",
    "check_min_persistent",
    "check_rigidity",
    "defines_implicit_edge",
    "dof_allocation",
    "is_minimally_persistent",
    "labeled_equal",
    "oracle_minimally_rigid",
]
