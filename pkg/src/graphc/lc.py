"""Local complementation moves over compiled patterns.

Complementing at ``k`` maps ``|G>`` to ``|tau_k(G)>`` via the local unitary
``SX_k * prod_{j in N(k)} Sdg_j`` (up to global phase).  The pattern's
corrections absorb the inverse so the represented state never changes.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, replace

import numpy as np

from graphc.graph import GraphState, LocalCorrection, LocalOp
from graphc.pattern import CompiledPattern

EXHAUSTIVE_MAX_NODES = 10


class Objective(enum.Enum):
    EDGE_COUNT = "edges"
    MAX_DEGREE = "degree"

    def __call__(self, g: GraphState) -> int:
        if self is Objective.EDGE_COUNT:
            return int(g.adjacency.sum()) // 2
        return int(g.degrees().max(initial=0))


@dataclass(frozen=True)
class LcMove:
    vertex: int


def _check_vertex(n: int, k: int) -> None:
    if not 0 <= k < n:
        raise ValueError(f"vertex {k} out of range for {n} nodes")


def _complement_adjacency(a: np.ndarray, k: int) -> np.ndarray:
    nbrs = np.flatnonzero(a[k])
    out = a.copy()
    block = out[np.ix_(nbrs, nbrs)] ^ 1
    np.fill_diagonal(block, 0)
    out[np.ix_(nbrs, nbrs)] = block
    return out


def local_complement(g: GraphState, k: int) -> GraphState:
    _check_vertex(g.n, k)
    return GraphState(_complement_adjacency(g.adjacency, k), g.roles)


def lc_with_corrections(p: CompiledPattern, k: int) -> CompiledPattern:
    _check_vertex(p.num_nodes, k)
    undo = [LocalCorrection(k, LocalOp.SXDG)]
    undo += [LocalCorrection(j, LocalOp.S) for j in p.graph.neighbors(k)]
    return replace(
        p,
        graph=local_complement(p.graph, k),
        local_corrections=tuple(undo) + p.local_corrections,
    )


def apply_moves(p: CompiledPattern, moves) -> CompiledPattern:
    for m in moves:
        p = lc_with_corrections(p, m.vertex)
    return p


def optimize(
    p: CompiledPattern,
    objective: Objective = Objective.EDGE_COUNT,
    budget: int = 100,
    exhaustive: bool = False,
) -> tuple[CompiledPattern, list[LcMove]]:
    """Reduce ``objective`` by local complementation.

    Greedy steepest descent by default: each step takes the move with the
    lowest resulting objective (ties to the lowest vertex) and stops at a local
    minimum or after ``budget`` moves.  ``exhaustive`` runs a breadth-first
    search of the orbit instead (at most ``budget`` moves deep), for graphs up
    to ``EXHAUSTIVE_MAX_NODES`` nodes.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    if exhaustive:
        moves = _orbit_search(p.graph, objective, budget)
    else:
        moves = _greedy(p.graph, objective, budget)
    return apply_moves(p, moves), moves


def _greedy(g: GraphState, objective: Objective, budget: int) -> list[LcMove]:
    moves: list[LcMove] = []
    current = objective(g)
    while len(moves) < budget:
        best_k, best_val = None, current
        for k in range(g.n):
            if not g.adjacency[k].any():
                continue
            val = objective(local_complement(g, k))
            if val < best_val:
                best_k, best_val = k, val
        if best_k is None:
            break
        g = local_complement(g, best_k)
        current = best_val
        moves.append(LcMove(best_k))
    return moves


def _orbit_search(g: GraphState, objective: Objective, budget: int) -> list[LcMove]:
    if g.n > EXHAUSTIVE_MAX_NODES:
        raise ValueError(f"exhaustive search is limited to {EXHAUSTIVE_MAX_NODES} nodes")
    start = g.adjacency
    key = start.tobytes()
    seen = {key}
    queue = deque([(start, [])])
    best_val, best_moves = objective(g), []
    while queue:
        a, path = queue.popleft()
        if len(path) == budget:
            continue
        for k in range(g.n):
            if not a[k].any():
                continue
            b = _complement_adjacency(a, k)
            kb = b.tobytes()
            if kb in seen:
                continue
            seen.add(kb)
            moves = path + [LcMove(k)]
            val = objective(GraphState(b, g.roles))
            if val < best_val:
                best_val, best_moves = val, moves
            queue.append((b, moves))
    return best_moves
