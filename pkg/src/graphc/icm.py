"""Inverse-ICM rewriting: teleport every T/T-dagger through a fresh ancilla.

Each T on logical wire ``w`` becomes ``CNOT(current(w) -> a)`` with ``a`` a
new ``|0>`` ancilla; the old wire is left for a rotated-basis measurement and
``a`` carries the logical qubit from then on.  What remains is a Clifford-only
circuit on the widened register.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from graphc.circuit import CircuitError, CircuitIR, GateKind, InitState, format_circuit
from graphc.graph import Role
from graphc.tableau import StabilizerTableau, init_state, run_clifford


class TSign(enum.Enum):
    PLUS = "T"
    MINUS = "Tdg"


@dataclass(frozen=True)
class TeleportedT:
    measured_wire: int
    continuation_wire: int
    sign: TSign
    source_gate_id: int

    @property
    def symbol(self) -> str:
        """Name of this teleportation's measurement outcome."""
        return f"m{self.source_gate_id}"


@dataclass(frozen=True)
class IcmCircuit:
    clifford_prefix: CircuitIR
    teleportations: tuple[TeleportedT, ...]
    wire_map: tuple[int, ...]  # original wire -> wire holding its final state
    roles: tuple[Role, ...]
    output_reads: tuple[int, ...] = ()  # final wires read out in the Z basis

    @property
    def num_original(self) -> int:
        return len(self.wire_map)

    @property
    def input_labels(self) -> tuple[InitState, ...]:
        return self.clifford_prefix.initial_states[: self.num_original]


def to_inverse_icm(c: CircuitIR) -> IcmCircuit:
    n = c.num_wires
    current = list(range(n))
    ops: list[tuple] = []
    teleports: list[TeleportedT] = []
    reads: list[int] = []
    measured: set[int] = set()

    for g in c.gates:
        if any(w in measured for w in g.targets):
            raise CircuitError(f"gate {g.id} acts after a measurement (mid-circuit measurement)")
        if g.kind is GateKind.MEASURE_Z:
            measured.add(g.targets[0])
            reads.append(g.targets[0])
        elif g.kind in (GateKind.T, GateKind.TDG):
            w = g.targets[0]
            ancilla = n + len(teleports)
            ops.append((GateKind.CNOT, current[w], ancilla))
            sign = TSign.PLUS if g.kind is GateKind.T else TSign.MINUS
            teleports.append(TeleportedT(current[w], ancilla, sign, g.id))
            current[w] = ancilla
        else:
            ops.append((g.kind, *(current[w] for w in g.targets)))

    width = n + len(teleports)
    inits = tuple(c.initial_states) + (InitState.ZERO,) * len(teleports)
    prefix = CircuitIR.build(width, ops, inits)

    outputs = set(current)
    roles = tuple(
        Role.OUTPUT if w in outputs else Role.INPUT if w < n else Role.ANCILLA
        for w in range(width)
    )
    return IcmCircuit(
        prefix,
        tuple(teleports),
        tuple(current),
        roles,
        tuple(current[w] for w in reads),
    )


def prefix_final_tableau(icm: IcmCircuit, seed: int = 0) -> StabilizerTableau:
    """Stabilizer state of the widened register after the Clifford prefix.

    The prefix has no measurements, so ``seed`` only matters if that ever
    changes; it is accepted so every pipeline stage has the same signature.
    """
    t = init_state(icm.clifford_prefix.initial_states)
    return run_clifford(t, icm.clifford_prefix.gates, np.random.default_rng(seed))


def format_prefix(icm: IcmCircuit) -> str:
    """Prefix in circuit text form, with ``# teleport`` notes on the teleport CNOTs."""
    pairs = {(tp.measured_wire, tp.continuation_wire): tp for tp in icm.teleportations}
    lines = format_circuit(icm.clifford_prefix).splitlines()
    header = len(lines) - len(icm.clifford_prefix.gates)
    out = lines[:header]
    for line, g in zip(lines[header:], icm.clifford_prefix.gates):
        tp = pairs.get(g.targets) if g.kind is GateKind.CNOT else None
        if tp is not None:
            out.append(
                f"# teleport {tp.sign.value} (gate {tp.source_gate_id}): "
                f"measure wire {tp.measured_wire}, continue on {tp.continuation_wire}"
            )
        out.append(line)
    for w in icm.output_reads:
        out.append(f"# read wire {w} in Z")
    return "\n".join(out) + "\n"
