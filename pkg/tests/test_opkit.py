import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus
from minpersist.graph import DirectedGraph
from minpersist.opkit import (
    AtypEdgeSplit,
    AtypVertexAdd,
    CycleReversal,
    EdgeReversal,
    OperationError,
    PathReversal,
    RevAtypEdgeSplit,
    RevAtypVertexAdd,
    RevStdEdgeSplit,
    RevStdVertexAdd,
    StdEdgeSplit,
    StdVertexAdd,
    apply,
    apply_atyp_edge_split,
    apply_atyp_edge_split_auto,
    apply_atyp_vertex_add,
    apply_cycle_reversal,
    apply_edge_reversal,
    apply_path_reversal,
    apply_reverse,
    apply_std_edge_split,
    apply_std_vertex_add,
    forward_candidates,
    invert,
    op_from_dict,
    op_to_dict,
    reverse_candidates,
    split_removals,
    validate,
    validate_reverse,
)
from minpersist.persistence import dof_allocation, is_minimally_persistent
from minpersist.sequencer import transform_same_underlying
from oracles import simple_cycles


def G(*edges):
    return DirectedGraph.build(edges)


# -- standard operations --------------------------------------------------------


def test_std_vertex_add(seed, triangle):
    g = apply_std_vertex_add(seed, 3, 1, 2)
    assert g == triangle
    assert dof_allocation(g) == {1: 2, 2: 1, 3: 0}
    with pytest.raises(OperationError):
        apply_std_vertex_add(seed, 3, 1, 1)
    with pytest.raises(OperationError):
        apply_std_vertex_add(seed, 2, 1, 2)


def test_refuses_non_persistent_input():
    bad = G((1, 2), (2, 3), (3, 4), (4, 1))
    c = validate(bad, StdVertexAdd(5, 1, 2))
    assert not c and "not minimally persistent" in c.reason
    with pytest.raises(OperationError):
        apply_std_vertex_add(bad, 5, 1, 2)


def test_std_edge_split(triangle, split4):
    g = apply_std_edge_split(triangle, 4, 3, 2, 1)
    assert g == split4
    assert g.out_degree(3) == triangle.out_degree(3) == 2
    with pytest.raises(OperationError):
        apply_std_edge_split(triangle, 4, 2, 3, 1)
    with pytest.raises(OperationError):
        apply_std_edge_split(triangle, 4, 3, 2, 2)


# -- reversals ----------------------------------------------------------------


def test_edge_reversal(triangle, split4):
    g = apply_edge_reversal(triangle, 2, 1)
    assert g == G((1, 2), (3, 1), (3, 2))
    assert dof_allocation(g)[1] == 1 and dof_allocation(g)[2] == 2
    assert apply_edge_reversal(g, 1, 2) == triangle
    assert split4.dof(4) == 0
    with pytest.raises(OperationError):
        apply_edge_reversal(split4, 3, 4)
    with pytest.raises(OperationError):
        apply_edge_reversal(triangle, 1, 2)


def test_path_reversal(triangle):
    out = apply_path_reversal(triangle, [3, 2, 1])
    assert out.graph == G((1, 2), (2, 3), (3, 1))
    assert dof_allocation(out.graph) == {1: 1, 2: 1, 3: 1}
    assert out.applied_edge_reversals == 2
    assert out.lowered == (EdgeReversal(2, 1), EdgeReversal(3, 2))
    same = apply_path_reversal(triangle, [2])
    assert same.graph == triangle and same.applied_edge_reversals == 0


def test_closed_path_keeps_allocation(cycle3):
    out = apply_path_reversal(cycle3, [1, 2, 3, 1])
    assert out.graph == G((2, 1), (3, 2), (1, 3))
    assert dof_allocation(out.graph) == dof_allocation(cycle3)


def test_path_reversal_order_matters(split4):
    # reversing the first edge first would take a dof from vertex 4, which has none
    path = [3, 4, 1]
    out = apply_path_reversal(split4, path)
    assert is_minimally_persistent(out.graph)
    assert not validate(split4, EdgeReversal(3, 4))
    with pytest.raises(OperationError):
        apply_edge_reversal(split4, 3, 4)


def test_path_reversal_errors(triangle):
    for path in ([3, 1, 2], [1, 3], [3, 2, 3]):
        with pytest.raises(OperationError):
            apply_path_reversal(triangle, path)
    # end vertex 3 has out-degree 2
    g = apply_edge_reversal(triangle, 2, 1)
    assert g.dof(3) == 0
    with pytest.raises(OperationError):
        apply_path_reversal(g, [1, 3])


def test_cycle_reversal(cycle3):
    out = apply_cycle_reversal(cycle3, [1, 2, 3])
    assert out.graph == G((2, 1), (3, 2), (1, 3))
    assert dof_allocation(out.graph) == {1: 1, 2: 1, 3: 1}
    back = apply_cycle_reversal(out.graph, [3, 2, 1])
    assert back.graph == cycle3
    with pytest.raises(OperationError):
        apply_cycle_reversal(cycle3, [1, 3, 2])


def test_cycle_reversal_without_dof_on_cycle():
    # from the n=5 corpus: 1->2->4->1 with every cycle vertex at out-degree 2
    g = G((1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 1), (4, 5))
    cycle = (1, 2, 4)
    assert all(g.dof(v) == 0 for v in cycle)
    # shortest escape P is the single edge 1 -> 3, and 3 holds a dof
    assert g.dof(3) == 1
    out = apply_cycle_reversal(g, cycle)
    assert out.applied_edge_reversals == len(cycle) + 2 * 1
    assert out.graph == G((2, 1), (1, 3), (2, 3), (4, 2), (3, 5), (1, 4), (4, 5))
    assert dof_allocation(out.graph) == dof_allocation(g)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_every_cycle_reversal_lowering(n):
    for g in corpus(n):
        for c in simple_cycles(g):
            out = apply_cycle_reversal(g, c)
            assert out.graph.underlying() == g.underlying()
            assert dof_allocation(out.graph) == dof_allocation(g)
            h = g
            for step in out.lowered:
                h = apply_edge_reversal(h, step.i, step.j)
            assert h == out.graph


# -- atypical operations ------------------------------------------------------


def test_atyp_vertex_add(seed, triangle):
    g = apply_atyp_vertex_add(seed, 3, 1, 2)
    assert g == G((2, 1), (1, 3), (3, 2))
    assert dof_allocation(g) == {1: 1, 2: 1, 3: 1}
    with pytest.raises(OperationError):
        apply_atyp_vertex_add(triangle, 4, 3, 1)
    with pytest.raises(OperationError):
        apply_atyp_vertex_add(seed, 2, 1, 2)


def test_atyp_edge_split(cycle3):
    g = apply_atyp_edge_split(cycle3, 4, 2, 3, 1, [2, 3])
    assert g == G((1, 2), (3, 2), (2, 4), (4, 3), (4, 1))
    assert dof_allocation(g) == {1: 1, 2: 1, 3: 1, 4: 0}
    assert apply_atyp_edge_split_auto(cycle3, 4, 2, 3, 1) == g
    with pytest.raises(OperationError):
        apply_atyp_edge_split(cycle3, 4, 2, 1, 3, [2, 3, 1])
    with pytest.raises(OperationError):
        apply_atyp_edge_split(cycle3, 4, 1, 3, 1, [1, 2, 3])


def test_atyp_edge_split_rejects_coinciding_j_and_k(cycle3):
    # j = k would need both (k, new) and (new, k)
    assert not validate(cycle3, AtypEdgeSplit(4, 3, 3, 1, (3,)))


# -- reverse operations -------------------------------------------------------


def test_validate_reverse(triangle, cycle3, split4):
    assert validate_reverse(triangle, RevStdVertexAdd(3))
    assert not any(validate_reverse(cycle3, RevStdVertexAdd(v)) for v in (1, 2, 3))
    assert validate_reverse(cycle3, RevAtypVertexAdd(3))
    assert validate_reverse(split4, RevStdEdgeSplit(4, (3, 2)))
    c = validate_reverse(split4, RevStdEdgeSplit(4, (3, 1)))
    assert not c and "explicit" in c.reason
    assert not validate_reverse(triangle, StdVertexAdd(4, 1, 2))


def test_apply_reverse(triangle, cycle3, split4, seed):
    assert apply_reverse(triangle, RevStdVertexAdd(3)) == seed
    assert apply_reverse(cycle3, RevAtypVertexAdd(3)) == G((1, 2))
    assert apply_reverse(split4, RevStdEdgeSplit(4, (3, 2))) == triangle
    with pytest.raises(OperationError):
        apply_reverse(split4, RevStdEdgeSplit(4, (3, 1)))


def test_rev_atyp_edge_split_round_trip(cycle3):
    g = apply_atyp_edge_split(cycle3, 4, 2, 3, 1, [2, 3])
    op = RevAtypEdgeSplit(4, (3, 2), (3, 1))
    assert validate_reverse(g, op)
    assert apply_reverse(g, op) == cycle3


# -- inversion and serialisation ----------------------------------------------


def test_invert_examples():
    assert invert(EdgeReversal(1, 2)) == EdgeReversal(2, 1)
    assert invert(StdVertexAdd(3, 1, 2)) == RevStdVertexAdd(3)
    assert invert(AtypEdgeSplit(4, 2, 3, 1, (2, 3))) == RevAtypEdgeSplit(4, (3, 2), (3, 1))
    with pytest.raises(OperationError):
        invert(RevStdVertexAdd(3))


def test_invert_needs_the_pre_graph(triangle, split4):
    assert invert(RevStdVertexAdd(3), before=triangle) == StdVertexAdd(3, 1, 2)
    assert invert(RevStdEdgeSplit(4, (3, 2)), before=split4) == StdEdgeSplit(4, 3, 2, 1)


def _round_trips(g, op):
    h = apply(g, op)
    back = apply(h, invert(op, before=g))
    inv = invert(op, before=g)
    return back == g and apply(back, invert(inv, before=h)) == h


@pytest.mark.parametrize("n", [2, 3, 4])
def test_round_trip_forward_ops(n):
    for g in corpus(n):
        for op in forward_candidates(g):
            assert _round_trips(g, op), op


@pytest.mark.parametrize("n", [3, 4, 5])
def test_round_trip_reverse_ops(n):
    for g in corpus(n):
        for op in reverse_candidates(g):
            assert _round_trips(g, op), op


def test_macro_round_trip(triangle, cycle3):
    op = PathReversal((3, 2, 1))
    assert apply(apply(triangle, op), invert(op)) == triangle
    op = CycleReversal((1, 2, 3))
    assert apply(apply(cycle3, op), invert(op)) == cycle3


def test_op_json_round_trip():
    ops = [
        StdVertexAdd(3, 1, 2),
        StdEdgeSplit(4, 3, 2, 1),
        EdgeReversal(2, 1),
        PathReversal((3, 2, 1)),
        CycleReversal((1, 2, 3)),
        AtypVertexAdd(3, 1, 2),
        AtypEdgeSplit(4, 2, 3, 1, (2, 3)),
        RevStdVertexAdd(3),
        RevStdEdgeSplit(4, (3, 2)),
        RevAtypVertexAdd(3),
        RevAtypEdgeSplit(4, (3, 2), (3, 1)),
    ]
    for op in ops:
        assert op_from_dict(op_to_dict(op)) == op
    assert op_to_dict(RevStdEdgeSplit(4, (3, 2))) == {
        "op": "RevStdEdgeSplit",
        "args": {"i": 4, "addPair": [3, 2]},
    }


@pytest.mark.parametrize(
    "data",
    [
        {"args": {}},
        {"op": "Teleport", "args": {}},
        {"op": "EdgeReversal", "args": {"i": 1}},
        {"op": "EdgeReversal", "args": {"i": 1, "j": "2"}},
        {"op": "EdgeReversal", "args": {"i": True, "j": 2}},
        {"op": "RevStdEdgeSplit", "args": {"i": 4, "addPair": [3]}},
        {"op": "EdgeReversal", "args": [1, 2]},
    ],
)
def test_op_json_rejects_malformed(data):
    with pytest.raises(OperationError):
        op_from_dict(data)


# -- preservation -------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_forward_ops_preserve_exhaustively(n):
    for g in corpus(n):
        for op in forward_candidates(g):
            assert is_minimally_persistent(apply(g, op)), op


@pytest.mark.parametrize("n", [3, 4, 5])
def test_reverse_ops_preserve_exhaustively(n):
    for g in corpus(n):
        for op in reverse_candidates(g):
            assert is_minimally_persistent(apply(g, op)), op


def test_path_reversals_preserve_on_corpus():
    for g in corpus(4):
        for i in g.sorted_vertices():
            for j in g.sorted_vertices():
                path = g.directed_path(i, j)
                if path is None or len(path) < 2 or g.dof(j) < 1:
                    continue
                h = g
                for step in apply_path_reversal(g, path).lowered:
                    h = apply_edge_reversal(h, step.i, step.j)
                    assert is_minimally_persistent(h)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_preservation_soak(seed):
    rng = random.Random(seed)
    g = DirectedGraph.build([(2, 1)])
    for _ in range(12):
        ops = forward_candidates(g) + reverse_candidates(g)
        op = rng.choice(ops)
        g = apply(g, op)
        assert is_minimally_persistent(g)


# -- equivalences between operations --------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_atyp_vertex_add_is_std_add_then_reversal(n):
    for g in corpus(n):
        new = g.fresh_vertex()
        for op in forward_candidates(g, {"AtypVertexAdd"}):
            via_std = apply(apply(g, StdVertexAdd(new, op.j, op.k)), EdgeReversal(new, op.j))
            assert apply(g, op) == via_std


@pytest.mark.parametrize("n", [3, 4])
def test_atyp_edge_split_reachable_by_reversals(n):
    for g in corpus(n):
        for op in forward_candidates(g, {"AtypEdgeSplit"}):
            atyp = apply(g, op)
            std = apply(g, StdEdgeSplit(op.new, op.k, op.l, op.j))
            plan = transform_same_underlying(std, atyp)
            assert set(plan.kinds()) <= {"EdgeReversal"}
            assert plan.final == atyp


@pytest.mark.parametrize("n", [3, 4, 5])
def test_one_of_two_split_removals_applies(n):
    for g in corpus(n):
        for i in g.sorted_vertices():
            if g.degrees(i) == (1, 2):
                assert any(validate(g, op) for op in split_removals(g, i))


def test_validate_never_raises(triangle):
    weird = [
        EdgeReversal(9, 1),
        PathReversal(()),
        CycleReversal((1,)),
        RevStdEdgeSplit(9, (1, 2)),
        RevAtypEdgeSplit(3, (), (1, 2)),
        AtypEdgeSplit(4, 1, 9, 2, (1, 9)),
    ]
    for op in weird:
        assert not validate(triangle, op)


@pytest.mark.slow
def test_one_of_two_split_removals_applies_n6():
    for g in corpus(6):
        for i in g.sorted_vertices():
            if g.degrees(i) == (1, 2):
                assert any(validate(g, op) for op in split_removals(g, i))
