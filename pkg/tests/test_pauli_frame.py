from dataclasses import replace


import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphc.circuit import CircuitIR, GateKind, parse_circuit, parse_input_labels
from graphc.compiler import compile_circuit
from graphc.icm import to_inverse_icm
from graphc.oracle import DenseState, verify_pattern
from graphc.pauli_frame import (
    Angle,
    MissingOutcomeError,
    OutputCorrection,
    PauliFrame,
    ScheduledMeasurement,
    TrackingError,
    assign_rounds,
    resolve_basis,
    resolve_output,
    track,
)
from helpers import CV_TEXT

F = frozenset


def by_symbol(schedule):
    return {m.symbol: m for m in schedule}


def test_cv_dependencies():
    res = track(to_inverse_icm(parse_circuit(CV_TEXT)))
    s = by_symbol(res.schedule)
    assert (s["m0"].wire, s["m0"].angle, s["m0"].outcome_relabel_deps) == (0, Angle.MINUS_PI4, F())
    assert (s["m3"].wire, s["m3"].angle, s["m3"].outcome_relabel_deps) == (2, Angle.PLUS_PI4, F({"m0"}))
    assert (s["m4"].wire, s["m4"].angle, s["m4"].outcome_relabel_deps) == (1, Angle.MINUS_PI4, F({"m0"}))
    assert all(not m.basis_flip_deps and m.round == 0 for m in res.schedule)
    assert res.outputs == [
        OutputCorrection(3, F(), F({"m3"})),
        OutputCorrection(4, F({"m3", "m4"}), F()),
    ]


def test_single_t_teleport():
    res = track(to_inverse_icm(CircuitIR.build(1, [("t", 0)])))
    (m,) = res.schedule
    assert (m.wire, m.angle, m.symbol, m.round) == (0, Angle.PLUS_PI4, "m0", 0)
    assert res.outputs == [OutputCorrection(1, F(), F({"m0"}))]


def test_t_after_hadamard_gets_basis_flip():
    res = track(to_inverse_icm(CircuitIR.build(1, [("t", 0), ("h", 0), ("t", 0)])))
    first, second = res.schedule
    assert second.basis_flip_deps == F({"m0"})
    assert (first.round, second.round) == (0, 1)


def test_output_byproduct_on_wire_three_is_z_of_m3():
    # Putting m4 instead of m3 in the Z frame of wire 3 must break the pattern.
    # With a |0> control the wire-3 Z acts trivially, so use |+0>.
    c = parse_circuit(CV_TEXT).with_initial_states(parse_input_labels("+0"))
    p = compile_circuit(c)
    assert verify_pattern(c, p).ok
    wrong = tuple(
        OutputCorrection(oc.wire, oc.x_deps, F({"m4"})) if oc.wire == 3 else oc
        for oc in p.output_corrections
    )
    assert not verify_pattern(c, replace(p, output_corrections=wrong)).ok


def test_resolve_basis():
    m = ScheduledMeasurement(0, Angle.PLUS_PI4, "m5", F({"m1"}), F({"m2", "m3"}))
    assert resolve_basis(m, {"m1": 0, "m2": 0, "m3": 0}) == (Angle.PLUS_PI4, 0)
    assert resolve_basis(m, {"m1": 1, "m2": 1, "m3": 0}) == (Angle.MINUS_PI4, 1)
    assert resolve_basis(m, {"m1": 1, "m2": 1, "m3": 1}) == (Angle.MINUS_PI4, 0)
    with pytest.raises(MissingOutcomeError):
        resolve_basis(m, {"m2": 0, "m3": 0})


def test_resolve_output():
    c = OutputCorrection(3, F({"m0"}), F({"m0", "m1"}))
    assert resolve_output(c, {"m0": 1, "m1": 1}) == (1, 0)
    with pytest.raises(MissingOutcomeError):
        resolve_output(c, {"m0": 1})


def test_round_layering():
    sched = [
        ScheduledMeasurement(0, Angle.PLUS_PI4, "a", F(), F()),
        ScheduledMeasurement(1, Angle.PLUS_PI4, "b", F({"a"}), F()),
        ScheduledMeasurement(2, Angle.PLUS_PI4, "c", F({"a", "b"}), F()),
        ScheduledMeasurement(3, Angle.PLUS_PI4, "d", F(), F({"c"})),
    ]
    assert [m.round for m in assign_rounds(sched)] == [0, 1, 2, 0]
    with pytest.raises(TrackingError):
        assign_rounds([ScheduledMeasurement(0, Angle.PLUS_PI4, "a", F({"zz"}), F())])


def test_angle_flip():
    assert Angle.PLUS_PI4.flipped() is Angle.MINUS_PI4
    assert Angle.MINUS_PI4.radians == pytest.approx(-np.pi / 4)


def test_non_clifford_frame_push_rejected():
    with pytest.raises(TrackingError):
        PauliFrame.empty(1).conjugate(GateKind.T, (0,))


def _pauli(n, xs, zs):
    """Dense operator prod_q X^x Z^z with qubit 0 most significant."""
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Z = np.diag([1, -1]).astype(complex)
    out = np.eye(1, dtype=complex)
    for q in range(n):
        out = np.kron(out, np.linalg.matrix_power(X, xs[q]) @ np.linalg.matrix_power(Z, zs[q]))
    return out


def _gate_matrix(n, kind, targets):
    cols = []
    for b in range(2**n):
        s = DenseState(np.eye(2**n, dtype=complex)[b])
        cols.append(s.apply_gate(kind, targets).amplitudes)
    return np.stack(cols, axis=1)


CLIFFORDS = [GateKind.H, GateKind.S, GateKind.SDG, GateKind.X, GateKind.Y, GateKind.Z, GateKind.CNOT, GateKind.CZ]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_frame_update_matches_conjugation(seed):
    # U P U^dag must equal the pushed frame's Pauli up to phase, for each symbol.
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    kind = CLIFFORDS[rng.integers(len(CLIFFORDS))]
    targets = tuple(int(q) for q in rng.choice(n, kind.arity, replace=False))
    xs, zs = rng.integers(0, 2, n), rng.integers(0, 2, n)
    frame = PauliFrame([F({"s"}) if b else F() for b in xs], [F({"s"}) if b else F() for b in zs])
    frame.conjugate(kind, targets)
    u = _gate_matrix(n, kind, targets)
    lhs = u @ _pauli(n, xs, zs) @ u.conj().T
    rhs = _pauli(n, [int("s" in d) for d in frame.x], [int("s" in d) for d in frame.z])
    k = np.vdot(rhs.reshape(-1), lhs.reshape(-1)) / 2**n
    assert abs(abs(k) - 1) < 1e-9
    assert np.allclose(lhs, k * rhs)


def test_tracking_is_per_symbol_linear():
    # Two symbols on different wires propagate independently through CNOT.
    f = PauliFrame([F({"a"}), F()], [F(), F({"b"})])
    f.conjugate(GateKind.CNOT, (0, 1))
    assert f.x == [F({"a"}), F({"a"})]
    assert f.z == [F({"b"}), F({"b"})]
