"""Graph states and the stabilizer-to-graph conversion.

The conversion row-reduces the X block of a tableau to the identity, using
Hadamards to pull missing pivots over from the Z block, then clears the Z
diagonal with P-dagger and the negative signs with Z.  The Z block that is
left over is the adjacency matrix.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from graphc.tableau import StabilizerTableau, TableauError


class Role(enum.Enum):
    INPUT = "input"
    OUTPUT = "output"
    ANCILLA = "ancilla"


class LocalOp(enum.Enum):
    """Single-qubit Cliffords that appear in correction lists."""

    H = "H"
    S = "S"
    SDG = "Sdg"
    Z = "Z"
    SX = "SX"
    SXDG = "SXdg"

    @property
    def inverse(self) -> LocalOp:
        return _INVERSE.get(self, self)


_INVERSE = {
    LocalOp.S: LocalOp.SDG,
    LocalOp.SDG: LocalOp.S,
    LocalOp.SX: LocalOp.SXDG,
    LocalOp.SXDG: LocalOp.SX,
}

_TABLEAU_METHOD = {
    LocalOp.H: "h",
    LocalOp.S: "s",
    LocalOp.SDG: "sdg",
    LocalOp.Z: "pauli_z",
    LocalOp.SX: "sx",
    LocalOp.SXDG: "sxdg",
}


@dataclass(frozen=True)
class LocalCorrection:
    qubit: int
    op: LocalOp

    def __str__(self) -> str:
        return f"{self.op.value}@{self.qubit}"

    def inverse(self) -> LocalCorrection:
        return LocalCorrection(self.qubit, self.op.inverse)


def apply_local(t: StabilizerTableau, corr: LocalCorrection) -> None:
    getattr(t, _TABLEAU_METHOD[corr.op])(corr.qubit)


def invert_sequence(corrections: Iterable[LocalCorrection]) -> list[LocalCorrection]:
    """Inverse of an operator sequence: reversed order, each op inverted."""
    return [c.inverse() for c in reversed(list(corrections))]


class GraphState:
    """Undirected simple graph with a role per node."""

    def __init__(self, adjacency: np.ndarray, roles: Sequence[Role] | None = None):
        a = np.asarray(adjacency, dtype=np.uint8)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("adjacency must be square")
        if not np.array_equal(a, a.T) or a.diagonal().any() or (a > 1).any():
            raise ValueError("adjacency must be a symmetric 0/1 matrix with zero diagonal")
        self.adjacency = a
        self.roles = tuple(roles) if roles is not None else (Role.OUTPUT,) * n
        if len(self.roles) != n:
            raise ValueError(f"{len(self.roles)} roles for {n} nodes")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], roles: Sequence[Role] | None = None
    ) -> GraphState:
        a = np.zeros((n, n), dtype=np.uint8)
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge ({u}, {v}) for {n} nodes")
            a[u, v] = a[v, u] = 1
        return cls(a, roles)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adjacency))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def neighbors(self, k: int) -> list[int]:
        return [int(v) for v in np.flatnonzero(self.adjacency[k])]

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1, dtype=np.int64)

    def with_roles(self, roles: Sequence[Role]) -> GraphState:
        return GraphState(self.adjacency.copy(), roles)

    def copy(self) -> GraphState:
        return GraphState(self.adjacency.copy(), self.roles)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphState):
            return NotImplemented
        return self.roles == other.roles and np.array_equal(self.adjacency, other.adjacency)

    def __repr__(self) -> str:
        return f"GraphState(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class GraphExtraction:
    """Result of :func:`to_graph`.

    ``corrections`` lists the local ops in the order they were applied to take
    the input state to the graph state.
    """

    graph: GraphState
    corrections: tuple[LocalCorrection, ...]

    def graph_to_state(self) -> list[LocalCorrection]:
        """Ops that take the graph state back to the original state, in application order."""
        return invert_sequence(self.corrections)


class MalformedTableauError(TableauError):
    pass


def to_graph(t: StabilizerTableau) -> GraphExtraction:
    if not t.is_valid():
        raise MalformedTableauError("tableau is rank deficient or has anticommuting generators")
    t = t.copy()
    n = t.n
    ops: list[LocalCorrection] = []

    def act(q: int, op: LocalOp) -> None:
        corr = LocalCorrection(q, op)
        apply_local(t, corr)
        ops.append(corr)

    # Make the X block full rank, upper triangular.
    for i in range(n):
        if not t.x[i:, i].any():
            act(i, LocalOp.H)
        below = np.flatnonzero(t.x[i:, i])
        if below.size == 0:
            raise MalformedTableauError(f"no pivot available for column {i}")
        j = i + int(below[0])
        if j != i:
            t.swap_rows(i, j)
        for j in range(i + 1, n):
            if t.x[j, i]:
                t.rowsum(i, j)

    # Back-substitute to a diagonal X block.
    for i in range(n - 2, -1, -1):
        for j in range(n - 1, i, -1):
            if t.x[i, j]:
                t.rowsum(j, i)

    for i in range(n):
        if t.r[i]:
            act(i, LocalOp.Z)
        if t.z[i, i]:
            act(i, LocalOp.SDG)

    assert np.array_equal(t.x, np.eye(n, dtype=np.uint8))
    assert np.array_equal(t.z, t.z.T) and not t.z.diagonal().any()
    assert not t.r.any()
    return GraphExtraction(GraphState(t.z.copy()), tuple(ops))


def graph_to_tableau(g: GraphState) -> StabilizerTableau:
    n = g.n
    return StabilizerTableau(np.eye(n, dtype=np.uint8), g.adjacency.copy(), np.zeros(n, dtype=np.uint8))


def apply_corrections(g: GraphState, corrections: Iterable[LocalCorrection]) -> StabilizerTableau:
    """Tableau of the graph state after applying ``corrections`` in order."""
    t = graph_to_tableau(g)
    for c in corrections:
        apply_local(t, c)
    return t


def apply_corrections_inverse(g: GraphState, corrections: Iterable[LocalCorrection]) -> StabilizerTableau:
    """Undo the ops recorded by :func:`to_graph`, recovering the original group."""
    return apply_corrections(g, invert_sequence(corrections))


_ROLE_COLORS = {Role.INPUT: "green", Role.OUTPUT: "lightblue", Role.ANCILLA: "white"}


def graph_to_dot(g: GraphState, name: str = "G", labels: dict[int, str] | None = None) -> str:
    lines = [f"graph {name} {{", "  node [shape=circle, style=filled];"]
    for v in range(g.n):
        role = g.roles[v]
        label = labels.get(v, str(v)) if labels else str(v)
        lines.append(f'  {v} [label="{label}", fillcolor={_ROLE_COLORS[role]}, role={role.value}];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
