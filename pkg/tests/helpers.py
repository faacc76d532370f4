"""Circuits from the worked examples plus random-circuit generators."""

import numpy as np

from graphc.circuit import CircuitIR, GateKind, InitState

GHZ_TEXT = """\
qubits 3
h 0
cnot 0 1
cnot 1 2
"""

# Controlled-V-dagger: wire 0 is the control a, wire 1 the target b.
CV_TEXT = """\
qubits 2
tdg 0
h 1
cnot 1 0
t 0
tdg 1
cnot 1 0
h 1
"""

TOFFOLI_OPS = [
    ("t", 0), ("t", 1), ("h", 2),
    ("cnot", 0, 1), ("t", 2),
    ("cnot", 1, 2),
    ("tdg", 1), ("t", 2),
    ("cnot", 0, 1),
    ("cnot", 1, 2),
    ("cnot", 0, 1), ("tdg", 2),
    ("cnot", 1, 2),
    ("cnot", 0, 1), ("tdg", 2),
    ("cnot", 1, 2),
    ("h", 2),
]


def toffoli_circuit(labels=None):
    return CircuitIR.build(3, TOFFOLI_OPS, labels)


CLIFFORD_1Q = [GateKind.H, GateKind.S, GateKind.SDG, GateKind.X, GateKind.Y, GateKind.Z]
CLIFFORD_2Q = [GateKind.CNOT, GateKind.CZ]


def random_clifford_ops(rng, n, depth):
    ops = []
    for _ in range(depth):
        if n > 1 and rng.random() < 0.4:
            a, b = rng.choice(n, 2, replace=False)
            ops.append((CLIFFORD_2Q[rng.integers(2)], int(a), int(b)))
        else:
            ops.append((CLIFFORD_1Q[rng.integers(len(CLIFFORD_1Q))], int(rng.integers(n))))
    return ops


def random_labels(rng, n):
    return [InitState.PLUS if rng.random() < 0.5 else InitState.ZERO for _ in range(n)]


def random_clifford_circuit(rng, n, depth, labels=None):
    return CircuitIR.build(n, random_clifford_ops(rng, n, depth), labels)


def random_clifford_t_circuit(rng, max_wires=4, max_t=4, max_depth=12):
    n = int(rng.integers(1, max_wires + 1))
    ops = random_clifford_ops(rng, n, int(rng.integers(0, max_depth + 1)))
    for _ in range(int(rng.integers(0, max_t + 1))):
        kind = GateKind.T if rng.random() < 0.5 else GateKind.TDG
        ops.insert(int(rng.integers(len(ops) + 1)), (kind, int(rng.integers(n))))
    return CircuitIR.build(n, ops, random_labels(rng, n))


def toffoli_ideal(bits: str) -> np.ndarray:
    """|a b c> -> |a b c^(a b)> as an amplitude vector, computed directly."""
    a, b, c = (int(ch) for ch in bits)
    out = np.zeros(8, dtype=complex)
    out[(a << 2) | (b << 1) | (c ^ (a & b))] = 1
    return out
