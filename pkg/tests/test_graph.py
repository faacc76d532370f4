import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphc import gf2
from graphc.graph import (
    GraphState,
    LocalCorrection,
    LocalOp,
    MalformedTableauError,
    Role,
    apply_corrections_inverse,
    graph_to_dot,
    graph_to_tableau,
    to_graph,
)
from graphc.oracle import LOCAL, equal_up_to_global_phase, graph_state, tableau_state
from graphc.tableau import StabilizerTableau, init_state, run_clifford, same_group
from helpers import random_clifford_circuit

# Final pre-measurement states of the controlled-V-dagger prefix (0-indexed wires).
CV00_FINAL = ["+ZIIII", "+IXXIZ", "+ZZZII", "+IIZZX", "+IZIIX"]
CVP0_FINAL = ["+XIXXI", "+IXXIZ", "+ZZZII", "+IIZZX", "+IZIIX"]


def strs(t):
    return [str(p) for p in t.stabilizers()]


def corr(*pairs):
    return tuple(LocalCorrection(q, LocalOp(op)) for op, q in pairs)


def test_ghz_conversion():
    t = StabilizerTableau.from_strings(["+XXX", "+ZZI", "+IZZ"])
    ext = to_graph(t)
    assert ext.graph.edges() == [(0, 1), (0, 2)]
    assert ext.corrections == corr(("H", 1), ("H", 2))
    assert strs(graph_to_tableau(ext.graph)) == ["+XZZ", "+ZXI", "+ZIX"]


def test_cv_zero_zero_conversion():
    ext = to_graph(StabilizerTableau.from_strings(CV00_FINAL))
    assert ext.graph.edges() == [(1, 2), (1, 4)]
    assert not ext.graph.adjacency[0].any() and not ext.graph.adjacency[3].any()
    assert ext.corrections == corr(("H", 0), ("H", 2), ("H", 3))


def test_cv_plus_zero_conversion():
    t = StabilizerTableau.from_strings(CVP0_FINAL)
    ext = to_graph(t)
    assert ext.graph.edges() == [(0, 2), (0, 3), (1, 2), (1, 4)]
    assert ext.corrections == corr(("H", 2), ("H", 3))
    assert strs(graph_to_tableau(ext.graph)) == ["+XIZZI", "+IXZIZ", "+ZZXII", "+ZIIXI", "+IZIIX"]
    assert same_group(apply_corrections_inverse(ext.graph, ext.corrections), t)


def test_phase_and_diagonal_corrections():
    # -Y on one qubit needs Z then P-dagger.
    ext = to_graph(StabilizerTableau.from_strings(["-Y"]))
    assert ext.corrections == corr(("Z", 0), ("Sdg", 0))
    ext = to_graph(StabilizerTableau.from_strings(["+YZ", "+ZX"]))
    assert ext.corrections == corr(("Sdg", 0))
    assert ext.graph.edges() == [(0, 1)]


def test_graph_to_tableau_small():
    assert strs(graph_to_tableau(GraphState.from_edges(2, []))) == ["+XI", "+IX"]
    assert strs(graph_to_tableau(GraphState.from_edges(2, [(0, 1)]))) == ["+XZ", "+ZX"]


def test_empty_corrections_give_graph_tableau():
    g = GraphState.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert apply_corrections_inverse(g, []) == graph_to_tableau(g)


def test_ghz_inverse_corrections_recover_group():
    t = StabilizerTableau.from_strings(["+XXX", "+ZZI", "+IZZ"])
    ext = to_graph(t)
    assert same_group(apply_corrections_inverse(ext.graph, ext.corrections), t)
    assert ext.graph_to_state() == [LocalCorrection(2, LocalOp.H), LocalCorrection(1, LocalOp.H)]


def test_malformed_tableau_rejected():
    with pytest.raises(MalformedTableauError):
        to_graph(StabilizerTableau.from_strings(["+XI", "+ZI"]))
    with pytest.raises(MalformedTableauError):
        to_graph(StabilizerTableau.from_strings(["+ZI", "+ZI"]))


def test_graphstate_validation():
    with pytest.raises(ValueError):
        GraphState(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        GraphState(np.array([[1, 0], [0, 0]]))


def test_dot_colors_by_role():
    g = GraphState.from_edges(3, [(0, 1), (0, 2)], [Role.INPUT, Role.OUTPUT, Role.ANCILLA])
    dot = graph_to_dot(g)
    assert "0 [label=\"0\", fillcolor=green" in dot
    assert "fillcolor=lightblue" in dot and "fillcolor=white" in dot
    assert "0 -- 1;" in dot and "0 -- 2;" in dot


def _random_tableau(rng, n_max=8):
    n = int(rng.integers(1, n_max + 1))
    c = random_clifford_circuit(rng, n, int(rng.integers(0, 41)))
    return run_clifford(init_state(c.initial_states), c.gates)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_idempotent_on_graph_states(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    upper = np.triu(rng.integers(0, 2, (n, n)), 1)
    g = GraphState(upper + upper.T)
    ext = to_graph(graph_to_tableau(g))
    assert ext.graph == g
    assert ext.corrections == ()


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_output_structure_and_round_trip(seed):
    t = _random_tableau(np.random.default_rng(seed))
    ext = to_graph(t)
    out = graph_to_tableau(ext.graph)
    assert np.array_equal(out.x, np.eye(t.n, dtype=np.uint8))
    assert np.array_equal(out.z, out.z.T) and not out.z.diagonal().any()
    assert {c.op for c in ext.corrections} <= {LocalOp.H, LocalOp.SDG, LocalOp.Z}
    assert same_group(apply_corrections_inverse(ext.graph, ext.corrections), t)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dense_graph_plus_corrections_equals_input_state(seed):
    rng = np.random.default_rng(seed)
    t = _random_tableau(rng, n_max=7)
    ext = to_graph(t)
    state = graph_state(ext.graph.edges(), t.n)
    for c in ext.graph_to_state():
        state.apply_1q(LOCAL[c.op], c.qubit)
    assert equal_up_to_global_phase(state, tableau_state(t))


def test_gf2_helpers():
    m = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    assert gf2.rank(m) == 2
    coeffs = gf2.solve_combination(m, np.array([1, 0, 1]))
    assert np.array_equal((coeffs @ m) % 2, [1, 0, 1])
    assert gf2.solve_combination(m, np.array([1, 0, 0])) is None


def _time_conversion(n, rng):
    c = random_clifford_circuit(rng, n, 12 * n)
    t = run_clifford(init_state(c.initial_states), c.gates)
    best = float("inf")
    for _ in range(3):
        start = time.perf_counter()
        to_graph(t)
        best = min(best, time.perf_counter() - start)
    return best


@pytest.mark.slow
def test_conversion_scales_at_most_cubically():
    rng = np.random.default_rng(2024)
    t64, t128, t256 = (_time_conversion(n, rng) for n in (64, 128, 256))
    # Trend check only: a cubic algorithm grows 64x from 64 to 256 qubits.
    assert t256 / t64 < 64 * 2
    assert t256 / t128 < 8 * 2
