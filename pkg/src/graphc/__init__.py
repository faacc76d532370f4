"""Compile Clifford+T circuits into graph states with a feed-forward measurement schedule."""

from graphc.circuit import CircuitIR, Gate, GateKind, InitState, count_t_gates, parse_circuit
from graphc.compiler import compile_circuit
from graphc.graph import GraphState, LocalCorrection, LocalOp, Role, to_graph
from graphc.pattern import CompiledPattern, from_json, to_dot, to_json
from graphc.tableau import StabilizerTableau, init_state

__all__ = [
    "CircuitIR",
    "CompiledPattern",
    "Gate",
    "GateKind",
    "GraphState",
    "InitState",
    "LocalCorrection",
    "LocalOp",
    "Role",
    "StabilizerTableau",
    "compile_circuit",
    "count_t_gates",
    "from_json",
    "init_state",
    "parse_circuit",
    "to_dot",
    "to_graph",
    "to_json",
]
