"""Dense statevector oracle for checking compiled patterns at desk scale.

Qubit 0 is the most significant bit of the amplitude index, so
``amplitudes[0b011]`` is the amplitude of ``|011>``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from graphc.circuit import CircuitIR, GateKind, InitState
from graphc.graph import LocalOp
from graphc.pattern import CompiledPattern
from graphc.pauli_frame import resolve_basis, resolve_output
from graphc.tableau import StabilizerTableau

DEFAULT_CAP = 14

_S2 = 1 / math.sqrt(2)
_W = np.exp(1j * math.pi / 4)
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) * _S2
S = np.diag([1, 1j]).astype(complex)
T = np.diag([1, _W]).astype(complex)
SX = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex) / 2
V_DAG = np.array([[1 - 1j, 1 + 1j], [1 + 1j, 1 - 1j]], dtype=complex) / 2

SINGLE = {
    GateKind.H: H,
    GateKind.S: S,
    GateKind.SDG: S.conj().T,
    GateKind.X: X,
    GateKind.Y: Y,
    GateKind.Z: Z,
    GateKind.T: T,
    GateKind.TDG: T.conj().T,
}

LOCAL = {
    LocalOp.H: H,
    LocalOp.S: S,
    LocalOp.SDG: S.conj().T,
    LocalOp.Z: Z,
    LocalOp.SX: SX,
    LocalOp.SXDG: SX.conj().T,
}


class CapExceededError(ValueError):
    pass


class OracleError(RuntimeError):
    pass


def rotated_observable(angle: float) -> np.ndarray:
    """A(angle) = cos(angle) X - sin(angle) Y."""
    return math.cos(angle) * X - math.sin(angle) * Y


def rotated_eigenvector(angle: float, eigenvalue: int) -> np.ndarray:
    """Eigenvector of A(angle) for eigenvalue +1 or -1."""
    return np.array([1, eigenvalue * np.exp(-1j * angle)], dtype=complex) * _S2


class DenseState:
    def __init__(self, amplitudes: np.ndarray, cap: int = DEFAULT_CAP):
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(math.log2(amplitudes.size))) if amplitudes.size else -1
        if n < 0 or 2**n != amplitudes.size:
            raise ValueError("amplitude vector length must be a power of two")
        if n > cap:
            raise CapExceededError(f"{n} qubits exceeds the cap of {cap}")
        self.n = n
        self.amplitudes = amplitudes
        self.cap = cap

    @classmethod
    def from_labels(cls, labels: Sequence[InitState], cap: int = DEFAULT_CAP) -> DenseState:
        if len(labels) > cap:
            raise CapExceededError(f"{len(labels)} qubits exceeds the cap of {cap}")
        one = {InitState.ZERO: np.array([1, 0], dtype=complex), InitState.PLUS: np.array([_S2, _S2])}
        amps = np.ones(1, dtype=complex)
        for label in labels:
            amps = np.kron(amps, one[label])
        return cls(amps, cap)

    @classmethod
    def basis(cls, bits: str, cap: int = DEFAULT_CAP) -> DenseState:
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int(bits, 2) if bits else 0] = 1
        return cls(amps, cap)

    def copy(self) -> DenseState:
        return DenseState(self.amplitudes.copy(), self.cap)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> DenseState:
        nrm = self.norm()
        if nrm == 0:
            raise OracleError("cannot normalize the zero vector")
        self.amplitudes = self.amplitudes / nrm
        return self

    def _tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n)

    def apply_1q(self, matrix: np.ndarray, q: int) -> DenseState:
        psi = np.tensordot(matrix, self._tensor(), axes=([1], [q]))
        self.amplitudes = np.moveaxis(psi, 0, q).reshape(-1)
        return self

    def apply_controlled(self, matrix: np.ndarray, control: int, target: int) -> DenseState:
        psi = self._tensor().copy()
        idx = [slice(None)] * self.n
        idx[control] = 1
        sub = psi[tuple(idx)]
        t_axis = target if target < control else target - 1
        sub = np.moveaxis(np.tensordot(matrix, sub, axes=([1], [t_axis])), 0, t_axis)
        psi[tuple(idx)] = sub
        self.amplitudes = psi.reshape(-1)
        return self

    def apply_gate(self, kind: GateKind, targets: Sequence[int]) -> DenseState:
        if kind is GateKind.CNOT:
            return self.apply_controlled(X, *targets)
        if kind is GateKind.CZ:
            return self.apply_controlled(Z, *targets)
        if kind is GateKind.MEASURE_Z:
            raise OracleError("run_circuit takes measurement-free circuits")
        return self.apply_1q(SINGLE[kind], targets[0])

    def apply_pauli(self, x_bits: Sequence[int], z_bits: Sequence[int], sign: int = 1) -> DenseState:
        """Apply sign * P where P has Y for x=z=1."""
        for q, (xb, zb) in enumerate(zip(x_bits, z_bits)):
            if xb and zb:
                self.apply_1q(Y, q)
            elif xb:
                self.apply_1q(X, q)
            elif zb:
                self.apply_1q(Z, q)
        self.amplitudes = sign * self.amplitudes
        return self

    def project_out(self, q: int, bra: np.ndarray) -> DenseState:
        """Contract qubit q with <bra|, dropping it from the register (unnormalized)."""
        psi = np.tensordot(np.conj(bra), self._tensor(), axes=([0], [q]))
        return DenseState(psi.reshape(-1), self.cap)


def run_circuit(c: CircuitIR, cap: int = DEFAULT_CAP) -> DenseState:
    state = DenseState.from_labels(c.initial_states, cap)
    for g in c.gates:
        state.apply_gate(g.kind, g.targets)
    return state


def circuit_unitary(c: CircuitIR, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Dense unitary of a measurement-free circuit (initial states ignored)."""
    dim = 2**c.num_wires
    cols = []
    for k in range(dim):
        state = DenseState(np.eye(dim, dtype=complex)[k], cap)
        for g in c.gates:
            state.apply_gate(g.kind, g.targets)
        cols.append(state.amplitudes)
    return np.stack(cols, axis=1)


def measure_rotated(
    s: DenseState, wire: int, angle: float, sign: int, forced_outcome: int
) -> tuple[DenseState, float]:
    """Project ``wire`` onto the (-1)^outcome eigenvector of sign * A(angle).

    Returns the renormalized post-measurement state and the branch weight.  A
    zero-weight branch returns the unnormalized (zero) state with weight 0.
    """
    if not 0 <= wire < s.n:
        raise ValueError(f"wire {wire} out of range for {s.n} qubits")
    vec = rotated_eigenvector(angle, sign * (-1) ** forced_outcome)
    proj = np.outer(vec, vec.conj())
    out = s.copy().apply_1q(proj, wire)
    weight = out.norm() ** 2
    if weight < 1e-24:
        return out, 0.0
    return out.normalize(), weight


def equal_up_to_global_phase(a: DenseState, b: DenseState, tol: float = 1e-9) -> bool:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n} qubits")
    na, nb = a.norm(), b.norm()
    if na == 0 or nb == 0:
        return False
    overlap = abs(np.vdot(a.amplitudes, b.amplitudes)) / (na * nb)
    return overlap >= 1 - tol


def graph_state(n_edges: Sequence[tuple[int, int]], n: int, cap: int = DEFAULT_CAP) -> DenseState:
    state = DenseState.from_labels([InitState.PLUS] * n, cap)
    for u, v in n_edges:
        state.apply_controlled(Z, u, v)
    return state


def pattern_state(p: CompiledPattern, cap: int = DEFAULT_CAP) -> DenseState:
    """Pre-measurement state: graph state followed by the local corrections."""
    state = graph_state(p.graph.edges(), p.num_nodes, cap)
    for c in p.local_corrections:
        state.apply_1q(LOCAL[c.op], c.qubit)
    return state


def run_pattern(p: CompiledPattern, outcomes: Mapping[str, int], cap: int = DEFAULT_CAP) -> DenseState:
    """Execute a pattern for one assignment of (logical) measurement outcomes.

    Returns the normalized state of the output nodes, ordered as ``p.outputs``.
    Raises :class:`OracleError` for a zero-probability branch.
    """
    if p.num_nodes > cap:
        raise CapExceededError(f"{p.num_nodes} qubits exceeds the cap of {cap}")
    state = pattern_state(p, cap)
    bras: dict[int, np.ndarray] = {}
    for layer in p.rounds():
        for m in layer:
            angle, relabel = resolve_basis(m, outcomes)
            state, weight = measure_rotated(state, m.wire, angle.radians, (-1) ** relabel, outcomes[m.symbol])
            if weight == 0.0:
                raise OracleError(f"zero-probability branch at {m.symbol}")
            bras[m.wire] = rotated_eigenvector(angle.radians, (-1) ** (relabel + outcomes[m.symbol]))

    for oc in p.output_corrections:
        xb, zb = resolve_output(oc, outcomes)
        if xb:
            state.apply_1q(X, oc.wire)
        if zb:
            state.apply_1q(Z, oc.wire)

    # Drop measured nodes from the highest index down so axis numbers stay valid.
    for wire in sorted(bras, reverse=True):
        reduced = state.project_out(wire, bras[wire])
        if abs(reduced.norm() - 1) > 1e-9:
            raise OracleError(f"measured node {wire} does not factor out")
        state = reduced
    remaining = sorted(set(range(p.num_nodes)) - set(bras))
    order = [remaining.index(w) for w in p.outputs]
    amps = np.transpose(state._tensor(), order).reshape(-1) if order else state.amplitudes
    return DenseState(amps, cap).normalize()


def outcome_branches(p: CompiledPattern, max_exhaustive: int = 8, samples: int = 64, seed: int = 0):
    """All outcome assignments when t_count <= max_exhaustive, else a seeded sample."""
    symbols = [m.symbol for m in p.schedule]
    if len(symbols) <= max_exhaustive:
        for bits in itertools.product((0, 1), repeat=len(symbols)):
            yield dict(zip(symbols, bits))
        return
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        yield dict(zip(symbols, (int(b) for b in rng.integers(0, 2, len(symbols)))))


@dataclass
class VerifyResult:
    ok: bool
    branches: int
    failing: dict[str, int] | None = None
    overlap: float | None = None


def verify_pattern(
    c: CircuitIR,
    p: CompiledPattern,
    tol: float = 1e-9,
    cap: int = DEFAULT_CAP,
    max_exhaustive: int = 8,
    seed: int = 0,
) -> VerifyResult:
    """Compare every outcome branch of ``p`` against direct simulation of ``c``.

    The circuit is run from the pattern's input labels; terminal measurements
    are dropped since the pattern reports them as output reads.
    """
    if len(p.input_labels) != c.num_wires or len(p.outputs) != c.num_wires:
        return VerifyResult(False, 0)
    ideal = run_circuit(c.without_measurements().with_initial_states(p.input_labels), cap)
    count = 0
    for outcomes in outcome_branches(p, max_exhaustive, seed=seed):
        count += 1
        try:
            got = run_pattern(p, outcomes, cap)
        except OracleError:
            return VerifyResult(False, count, outcomes, 0.0)
        overlap = abs(np.vdot(ideal.amplitudes, got.amplitudes))
        if overlap < 1 - tol:
            return VerifyResult(False, count, outcomes, float(overlap))
    return VerifyResult(True, count)


def tableau_state(t: StabilizerTableau, cap: int = DEFAULT_CAP, seed: int = 7) -> DenseState:
    """The state stabilized by a tableau, by projecting a random vector."""
    n = t.n
    if n > cap:
        raise CapExceededError(f"{n} qubits exceeds the cap of {cap}")
    rng = np.random.default_rng(seed)
    state = DenseState(rng.normal(size=2**n) + 1j * rng.normal(size=2**n), cap)
    for row in t.stabilizers():
        image = state.copy().apply_pauli(row.x, row.z, row.sign)
        state = DenseState((state.amplitudes + image.amplitudes) / 2, cap)
    return state.normalize()


def stabilizes(t: StabilizerTableau, s: DenseState, tol: float = 1e-10) -> bool:
    for row in t.stabilizers():
        image = s.copy().apply_pauli(row.x, row.z, row.sign)
        if np.max(np.abs(image.amplitudes - s.amplitudes)) > tol:
            return False
    return True
