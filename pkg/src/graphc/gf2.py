"""Dense GF(2) linear algebra on numpy uint8 arrays."""

from __future__ import annotations

import numpy as np


def row_reduce(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Return the reduced row echelon form of ``m`` and its pivot columns."""
    r = (np.asarray(m, dtype=np.uint8) & 1).copy()
    rows, cols = r.shape
    pivots: list[int] = []
    top = 0
    for col in range(cols):
        if top == rows:
            break
        hits = np.flatnonzero(r[top:, col])
        if hits.size == 0:
            continue
        found = top + int(hits[0])
        if found != top:
            r[[top, found]] = r[[found, top]]
        others = np.flatnonzero(r[:, col])
        others = others[others != top]
        r[others] ^= r[top]
        pivots.append(col)
        top += 1
    return r, pivots


def rank(m: np.ndarray) -> int:
    return len(row_reduce(m)[1])


def solve_combination(rows: np.ndarray, target: np.ndarray) -> np.ndarray | None:
    """Find ``c`` with ``c @ rows == target`` over GF(2).

    Returns the 0/1 coefficient vector, or ``None`` when ``target`` is not in
    the row space.
    """
    rows = np.asarray(rows, dtype=np.uint8) & 1
    target = np.asarray(target, dtype=np.uint8) & 1
    k = rows.shape[0]
    # Augment the transposed system [rows^T | target] and eliminate.
    aug = np.concatenate([rows.T, target[:, None]], axis=1)
    red, pivots = row_reduce(aug)
    if k in pivots:
        return None
    coeffs = np.zeros(k, dtype=np.uint8)
    for row, col in enumerate(pivots):
        coeffs[col] = red[row, k]
    return coeffs
