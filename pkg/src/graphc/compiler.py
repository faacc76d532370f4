"""End-to-end compilation of a Clifford+T circuit into a graph-state pattern."""

from __future__ import annotations

from collections.abc import Sequence

from graphc.circuit import CircuitError, CircuitIR, InitState
from graphc.graph import to_graph
from graphc.icm import prefix_final_tableau, to_inverse_icm
from graphc.pattern import CompiledPattern, assemble
from graphc.pauli_frame import track


def compile_circuit(
    c: CircuitIR,
    seed: int = 0,
    input_labels: Sequence[InitState] | None = None,
) -> CompiledPattern:
    if input_labels is not None:
        if len(input_labels) != c.num_wires:
            raise CircuitError(f"{len(input_labels)} input labels for {c.num_wires} wires")
        c = c.with_initial_states(input_labels)
    icm = to_inverse_icm(c)
    ext = to_graph(prefix_final_tableau(icm, seed))
    return assemble(icm, ext, track(icm))
