from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from minpersist.enumerator import enumerate_min_persistent  # noqa: E402
from minpersist.graph import DirectedGraph  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def corpus(n: int):
    return enumerate_min_persistent(n)


@pytest.fixture
def triangle() -> DirectedGraph:
    return DirectedGraph.build([(2, 1), (3, 1), (3, 2)])


@pytest.fixture
def cycle3() -> DirectedGraph:
    return DirectedGraph.build([(1, 2), (2, 3), (3, 1)])


@pytest.fixture
def seed() -> DirectedGraph:
    return DirectedGraph.build([(2, 1)])


@pytest.fixture
def split4() -> DirectedGraph:
    # triangle (2,1),(3,1),(3,2) after splitting (3,2) towards 1 with new vertex 4
    return DirectedGraph.build([(2, 1), (3, 1), (3, 4), (4, 2), (4, 1)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
