"""Compiled pattern: graph, local corrections, measurement schedule, outputs.

Qubits are 0-indexed throughout.  ``local_corrections`` are listed in the
order they are applied to the freshly prepared graph state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import jsonschema

from graphc.circuit import InitState
from graphc.graph import GraphExtraction, GraphState, LocalCorrection, LocalOp, Role, graph_to_dot
from graphc.icm import IcmCircuit
from graphc.pauli_frame import Angle, OutputCorrection, ScheduledMeasurement, TrackResult

VERSION = "graphc/1"


class PatternError(ValueError):
    pass


class SchemaError(PatternError):
    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")


@dataclass(frozen=True)
class CompiledPattern:
    graph: GraphState
    local_corrections: tuple[LocalCorrection, ...]
    schedule: tuple[ScheduledMeasurement, ...]
    output_corrections: tuple[OutputCorrection, ...]
    input_labels: tuple[InitState, ...]
    outputs: tuple[int, ...]  # output node of each original wire, in wire order
    t_count: int
    output_reads: tuple[int, ...] = ()

    def __post_init__(self):
        n = self.graph.n
        if len(self.schedule) != self.t_count:
            raise PatternError(f"{len(self.schedule)} measurements for t_count {self.t_count}")
        measured = {m.wire for m in self.schedule}
        if len(measured) != len(self.schedule):
            raise PatternError("a node is measured twice")
        roles = self.graph.roles
        for w in self.outputs:
            if not 0 <= w < n or roles[w] is not Role.OUTPUT:
                raise PatternError(f"output {w} is not an Output node")
        if measured & set(self.outputs):
            raise PatternError("output nodes must not be measured")
        if measured | set(self.outputs) != set(range(n)):
            raise PatternError("every node must be measured or be an output")
        for c in self.local_corrections:
            if not 0 <= c.qubit < n:
                raise PatternError(f"correction on node {c.qubit} out of range")
        for oc in self.output_corrections:
            if oc.wire not in self.outputs:
                raise PatternError(f"output correction on non-output node {oc.wire}")
        for w in self.output_reads:
            if w not in self.outputs:
                raise PatternError(f"read of non-output node {w}")

    @property
    def num_nodes(self) -> int:
        return self.graph.n

    @property
    def roles(self) -> tuple[Role, ...]:
        return self.graph.roles

    def rounds(self) -> list[list[ScheduledMeasurement]]:
        depth = max((m.round for m in self.schedule), default=-1) + 1
        return [[m for m in self.schedule if m.round == r] for r in range(depth)]


def assemble(icm: IcmCircuit, ext: GraphExtraction, tracked: TrackResult) -> CompiledPattern:
    width = icm.clifford_prefix.num_wires
    if ext.graph.n != width or len(icm.roles) != width:
        raise PatternError(f"graph has {ext.graph.n} nodes, ICM register has {width} wires")
    measured = {tp.measured_wire for tp in icm.teleportations}
    if {m.wire for m in tracked.schedule} != measured:
        raise PatternError("schedule does not match the ICM teleportations")
    return CompiledPattern(
        graph=ext.graph.with_roles(icm.roles),
        local_corrections=tuple(ext.graph_to_state()),
        schedule=tuple(tracked.schedule),
        output_corrections=tuple(tracked.outputs),
        input_labels=icm.input_labels,
        outputs=icm.wire_map,
        t_count=len(icm.teleportations),
        output_reads=icm.output_reads,
    )


# -- JSON -------------------------------------------------------------------

_SYMS = {"type": "array", "items": {"type": "string"}, "uniqueItems": True}
_NODE = {"type": "integer", "minimum": 0}

SCHEMA = {
    "type": "object",
    "required": [
        "version", "num_nodes", "edges", "roles", "input_labels", "outputs",
        "local_corrections", "measurements", "output_corrections", "output_reads", "t_count",
    ],
    "additionalProperties": False,
    "properties": {
        "version": {"const": VERSION},
        "num_nodes": {"type": "integer", "minimum": 1},
        "edges": {"type": "array", "items": {"type": "array", "items": _NODE, "minItems": 2, "maxItems": 2}},
        "roles": {"type": "array", "items": {"enum": [r.value for r in Role]}},
        "input_labels": {"type": "array", "items": {"enum": [s.value for s in InitState]}},
        "outputs": {"type": "array", "items": _NODE},
        "local_corrections": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["qubit", "op"],
                "additionalProperties": False,
                "properties": {"qubit": _NODE, "op": {"enum": [o.value for o in LocalOp]}},
            },
        },
        "measurements": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["wire", "symbol", "angle", "basis_flip_deps", "outcome_relabel_deps", "round"],
                "additionalProperties": False,
                "properties": {
                    "wire": _NODE,
                    "symbol": {"type": "string"},
                    "angle": {"enum": [a.value for a in Angle]},
                    "basis_flip_deps": _SYMS,
                    "outcome_relabel_deps": _SYMS,
                    "round": {"type": "integer", "minimum": 0},
                },
            },
        },
        "output_corrections": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["wire", "x_deps", "z_deps"],
                "additionalProperties": False,
                "properties": {"wire": _NODE, "x_deps": _SYMS, "z_deps": _SYMS},
            },
        },
        "output_reads": {"type": "array", "items": _NODE},
        "t_count": {"type": "integer", "minimum": 0},
    },
}


def to_dict(p: CompiledPattern) -> dict:
    return {
        "version": VERSION,
        "num_nodes": p.num_nodes,
        "edges": [list(e) for e in p.graph.edges()],
        "roles": [r.value for r in p.roles],
        "input_labels": [s.value for s in p.input_labels],
        "outputs": list(p.outputs),
        "local_corrections": [{"qubit": c.qubit, "op": c.op.value} for c in p.local_corrections],
        "measurements": [
            {
                "wire": m.wire,
                "symbol": m.symbol,
                "angle": m.angle.value,
                "basis_flip_deps": sorted(m.basis_flip_deps),
                "outcome_relabel_deps": sorted(m.outcome_relabel_deps),
                "round": m.round,
            }
            for m in p.schedule
        ],
        "output_corrections": [
            {"wire": c.wire, "x_deps": sorted(c.x_deps), "z_deps": sorted(c.z_deps)}
            for c in p.output_corrections
        ],
        "output_reads": list(p.output_reads),
        "t_count": p.t_count,
    }


def to_json(p: CompiledPattern) -> str:
    return json.dumps(to_dict(p), indent=2) + "\n"


def from_json(text: str) -> CompiledPattern:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return from_dict(doc)


def from_dict(doc) -> CompiledPattern:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        pointer = "".join(f"/{part}" for part in exc.absolute_path)
        raise SchemaError(exc.message, pointer) from None

    n = doc["num_nodes"]
    if len(doc["roles"]) != n:
        raise SchemaError(f"expected {n} roles", "/roles")
    for i, (u, v) in enumerate(doc["edges"]):
        if u >= n or v >= n or u == v:
            raise SchemaError(f"bad edge [{u}, {v}] for {n} nodes", f"/edges/{i}")
    try:
        graph = GraphState.from_edges(n, map(tuple, doc["edges"]), [Role(r) for r in doc["roles"]])
        return CompiledPattern(
            graph=graph,
            local_corrections=tuple(
                LocalCorrection(c["qubit"], LocalOp(c["op"])) for c in doc["local_corrections"]
            ),
            schedule=tuple(
                ScheduledMeasurement(
                    wire=m["wire"],
                    angle=Angle(m["angle"]),
                    symbol=m["symbol"],
                    basis_flip_deps=frozenset(m["basis_flip_deps"]),
                    outcome_relabel_deps=frozenset(m["outcome_relabel_deps"]),
                    round=m["round"],
                )
                for m in doc["measurements"]
            ),
            output_corrections=tuple(
                OutputCorrection(c["wire"], frozenset(c["x_deps"]), frozenset(c["z_deps"]))
                for c in doc["output_corrections"]
            ),
            input_labels=tuple(InitState(s) for s in doc["input_labels"]),
            outputs=tuple(doc["outputs"]),
            t_count=doc["t_count"],
            output_reads=tuple(doc["output_reads"]),
        )
    except (PatternError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from exc


# -- DOT --------------------------------------------------------------------


def to_dot(p: CompiledPattern, absorb_corrections: bool = False) -> str:
    """DOT rendering; node labels list the local corrections acting on each node.

    With ``absorb_corrections`` the labels also show each measured node's
    observable so the corrections can be read as part of the measurement basis.
    """
    per_node: dict[int, list[str]] = {}
    for c in p.local_corrections:
        per_node.setdefault(c.qubit, []).append(c.op.value)
    measured = {m.wire: m for m in p.schedule}
    labels = {}
    for v in range(p.num_nodes):
        parts = [str(v)]
        if per_node.get(v):
            parts.append(" ".join(per_node[v]))
        if absorb_corrections and v in measured:
            parts.append(f"A({measured[v].angle.value})")
        labels[v] = "\\n".join(parts)
    return graph_to_dot(p.graph, name="pattern", labels=labels)
