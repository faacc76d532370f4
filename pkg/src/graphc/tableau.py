"""Generator-only stabilizer tableau (no destabilizer rows).

Row ``i`` encodes the generator ``(-1)^r[i] * P_0 (x) P_1 (x) ...`` where the
bit pair ``(x[i, q], z[i, q])`` selects ``P_q``: (0,0)=I, (1,0)=X, (0,1)=Z,
(1,1)=Y.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from graphc import gf2
from graphc.circuit import Gate, GateKind, InitState

# Exponent of i in the single-qubit product P_a * P_b, indexed by the codes
# x + 2z of a and b.  Entries follow from XY = iZ, YZ = iX, ZX = iY.
_I, _X, _Z, _Y = 0, 1, 2, 3
_PRODUCT_PHASE = np.zeros((4, 4), dtype=np.int64)
for _a, _b in ((_X, _Y), (_Y, _Z), (_Z, _X)):
    _PRODUCT_PHASE[_a, _b] = 1
    _PRODUCT_PHASE[_b, _a] = 3


class TableauError(ValueError):
    """Raised when a tableau operation's precondition is violated."""


@dataclass(frozen=True)
class PauliString:
    x: tuple[int, ...]
    z: tuple[int, ...]
    sign: int = 1

    def __str__(self) -> str:
        letters = "".join("IXZY"[xb + 2 * zb] for xb, zb in zip(self.x, self.z))
        return ("+" if self.sign > 0 else "-") + letters

    @classmethod
    def from_str(cls, text: str) -> PauliString:
        sign = -1 if text.startswith("-") else 1
        body = text.lstrip("+-").upper()
        x = tuple(int(ch in "XY") for ch in body)
        z = tuple(int(ch in "ZY") for ch in body)
        if any(ch not in "IXYZ" for ch in body):
            raise ValueError(f"not a Pauli string: {text!r}")
        return cls(x, z, sign)


def product_phase(x1, z1, x2, z2) -> int:
    """Exponent k (mod 4) with P1*P2 = i^k * P(x1^x2, z1^z2), term by term."""
    a = np.asarray(x1, dtype=np.int64) + 2 * np.asarray(z1, dtype=np.int64)
    b = np.asarray(x2, dtype=np.int64) + 2 * np.asarray(z2, dtype=np.int64)
    return int(_PRODUCT_PHASE[a, b].sum()) % 4


def product_phase_ag(x1, z1, x2, z2) -> int:
    """Same quantity as :func:`product_phase` via the Aaronson-Gottesman g function."""
    x1, z1, x2, z2 = (np.asarray(v, dtype=np.int64) for v in (x1, z1, x2, z2))
    g = np.where(
        (x1 == 1) & (z1 == 1),
        z2 - x2,
        np.where(x1 == 1, z2 * (2 * x2 - 1), np.where(z1 == 1, x2 * (1 - 2 * z2), 0)),
    )
    return int(g.sum()) % 4


class StabilizerTableau:
    def __init__(self, x: np.ndarray, z: np.ndarray, r: np.ndarray):
        self.x = np.asarray(x, dtype=np.uint8)
        self.z = np.asarray(z, dtype=np.uint8)
        self.r = np.asarray(r, dtype=np.uint8)
        n = self.x.shape[0]
        if self.x.shape != (n, n) or self.z.shape != (n, n) or self.r.shape != (n,):
            raise TableauError("tableau blocks must be n x n, n x n and n")

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def phases(self) -> np.ndarray:
        """Generator signs as +1/-1."""
        return 1 - 2 * self.r.astype(np.int64)

    def copy(self) -> StabilizerTableau:
        return StabilizerTableau(self.x.copy(), self.z.copy(), self.r.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, StabilizerTableau):
            return NotImplemented
        return (
            np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
            and np.array_equal(self.r, other.r)
        )

    def __repr__(self) -> str:
        return f"StabilizerTableau({[str(p) for p in self.stabilizers()]})"

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> StabilizerTableau:
        paulis = [PauliString.from_str(s) for s in rows]
        x = np.array([p.x for p in paulis], dtype=np.uint8)
        z = np.array([p.z for p in paulis], dtype=np.uint8)
        r = np.array([p.sign < 0 for p in paulis], dtype=np.uint8)
        return cls(x, z, r)

    # -- inspection -----------------------------------------------------

    def row(self, i: int) -> PauliString:
        return PauliString(
            tuple(int(b) for b in self.x[i]),
            tuple(int(b) for b in self.z[i]),
            -1 if self.r[i] else 1,
        )

    def stabilizers(self) -> list[PauliString]:
        return [self.row(i) for i in range(self.n)]

    def dump(self) -> str:
        return "\n".join(str(p) for p in self.stabilizers())

    def commutation_matrix(self) -> np.ndarray:
        x = self.x.astype(np.int64)
        z = self.z.astype(np.int64)
        return (x @ z.T + z @ x.T) % 2

    def is_valid(self) -> bool:
        """All generators commute and are independent."""
        return not self.commutation_matrix().any() and gf2.rank(np.hstack([self.x, self.z])) == self.n

    # -- Clifford conjugation -------------------------------------------

    def h(self, q: int) -> None:
        self.r ^= self.x[:, q] & self.z[:, q]
        self.x[:, q], self.z[:, q] = self.z[:, q].copy(), self.x[:, q].copy()

    def s(self, q: int) -> None:
        self.r ^= self.x[:, q] & self.z[:, q]
        self.z[:, q] ^= self.x[:, q]

    def sdg(self, q: int) -> None:
        self.r ^= self.x[:, q] & (self.z[:, q] ^ 1)
        self.z[:, q] ^= self.x[:, q]

    def pauli_x(self, q: int) -> None:
        self.r ^= self.z[:, q]

    def pauli_y(self, q: int) -> None:
        self.r ^= self.x[:, q] ^ self.z[:, q]

    def pauli_z(self, q: int) -> None:
        self.r ^= self.x[:, q]

    def cnot(self, c: int, t: int) -> None:
        if c == t:
            raise TableauError("CNOT control and target must differ")
        x, z = self.x, self.z
        self.r ^= x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1)
        x[:, t] ^= x[:, c]
        z[:, c] ^= z[:, t]

    def cz(self, a: int, b: int) -> None:
        self.h(b)
        self.cnot(a, b)
        self.h(b)

    def sx(self, q: int) -> None:
        self.h(q)
        self.s(q)
        self.h(q)

    def sxdg(self, q: int) -> None:
        self.h(q)
        self.sdg(q)
        self.h(q)

    def apply(self, gate: Gate) -> StabilizerTableau:
        """Conjugate every generator by a Clifford gate (in place); returns self."""
        try:
            method = _GATE_METHODS[gate.kind]
        except KeyError:
            raise TableauError(f"{gate.kind.value} is not a Clifford gate") from None
        for w in gate.targets:
            if not 0 <= w < self.n:
                raise TableauError(f"wire {w} out of range for {self.n} qubits")
        getattr(self, method)(*gate.targets)
        return self

    # -- row operations --------------------------------------------------

    def rowsum(self, i: int, j: int) -> None:
        """Replace generator j by the product s_i * s_j."""
        if i == j:
            raise TableauError("rowsum needs two distinct rows")
        k = product_phase(self.x[i], self.z[i], self.x[j], self.z[j])
        if k % 2:
            raise TableauError(f"rows {i} and {j} anticommute")
        self.r[j] = (self.r[i] ^ self.r[j] ^ (k // 2)) & 1
        self.x[j] ^= self.x[i]
        self.z[j] ^= self.z[i]

    def swap_rows(self, i: int, j: int) -> None:
        for block in (self.x, self.z):
            block[[i, j]] = block[[j, i]]
        self.r[[i, j]] = self.r[[j, i]]

    def group_product(self, coeffs: np.ndarray) -> PauliString:
        """Product of the generators selected by a 0/1 vector, in row order."""
        n = self.n
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        k = 0
        for i in np.flatnonzero(coeffs):
            k += product_phase(x, z, self.x[i], self.z[i]) + 2 * int(self.r[i])
            x ^= self.x[i]
            z ^= self.z[i]
        k %= 4
        if k % 2:
            raise TableauError("generators do not commute")
        return PauliString(tuple(map(int, x)), tuple(map(int, z)), -1 if k == 2 else 1)

    # -- measurement -----------------------------------------------------

    def measure_z(
        self,
        q: int,
        forced_outcome: int | None = None,
        rng: np.random.Generator | None = None,
    ) -> tuple[int, bool]:
        """Measure Z on qubit q in place; returns ``(outcome, deterministic)``."""
        if not 0 <= q < self.n:
            raise TableauError(f"qubit {q} out of range for {self.n} qubits")
        anti = np.flatnonzero(self.x[:, q])
        if anti.size == 0:
            target = np.zeros(2 * self.n, dtype=np.uint8)
            target[self.n + q] = 1
            coeffs = gf2.solve_combination(np.hstack([self.x, self.z]), target)
            if coeffs is None:
                raise TableauError("Z is neither in nor anticommuting with the group")
            return (1 if self.group_product(coeffs).sign < 0 else 0), True

        if forced_outcome is None:
            rng = rng if rng is not None else np.random.default_rng(0)
            outcome = int(rng.integers(2))
        else:
            outcome = int(forced_outcome) & 1
        p = int(anti[0])
        for j in anti[1:]:
            self.rowsum(p, int(j))
        self.x[p] = 0
        self.z[p] = 0
        self.z[p, q] = 1
        self.r[p] = outcome
        return outcome, False


_GATE_METHODS = {
    GateKind.H: "h",
    GateKind.S: "s",
    GateKind.SDG: "sdg",
    GateKind.X: "pauli_x",
    GateKind.Y: "pauli_y",
    GateKind.Z: "pauli_z",
    GateKind.CNOT: "cnot",
    GateKind.CZ: "cz",
}


def init_state(labels: Sequence[InitState]) -> StabilizerTableau:
    n = len(labels)
    if n == 0:
        raise TableauError("need at least one qubit")
    x = np.zeros((n, n), dtype=np.uint8)
    z = np.zeros((n, n), dtype=np.uint8)
    for i, label in enumerate(labels):
        (x if label is InitState.PLUS else z)[i, i] = 1
    return StabilizerTableau(x, z, np.zeros(n, dtype=np.uint8))


def apply_gate(t: StabilizerTableau, g: Gate) -> StabilizerTableau:
    return t.copy().apply(g)


def rowsum(t: StabilizerTableau, i: int, j: int) -> StabilizerTableau:
    out = t.copy()
    out.rowsum(i, j)
    return out


def measure_pauli_z(
    t: StabilizerTableau,
    q: int,
    forced_outcome: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[StabilizerTableau, int, bool]:
    out = t.copy()
    outcome, deterministic = out.measure_z(q, forced_outcome, rng)
    return out, outcome, deterministic


def extract_stabilizers(t: StabilizerTableau) -> list[PauliString]:
    return t.stabilizers()


def canonical_form(t: StabilizerTableau) -> StabilizerTableau:
    """Reduced row echelon form of the generators, with signs carried by rowsum.

    Two tableaus generate the same stabilizer group iff their canonical forms
    are equal.
    """
    out = t.copy()
    n = out.n
    top = 0
    for col in range(2 * n):
        block, c = (out.x, col) if col < n else (out.z, col - n)
        hits = np.flatnonzero(block[top:, c])
        if hits.size == 0:
            continue
        pivot = top + int(hits[0])
        if pivot != top:
            out.swap_rows(top, pivot)
        for j in np.flatnonzero(block[:, c]):
            if j != top:
                out.rowsum(top, int(j))
        top += 1
        if top == n:
            break
    return out


def same_group(a: StabilizerTableau, b: StabilizerTableau) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)


def run_clifford(t: StabilizerTableau, gates: Sequence[Gate], rng: np.random.Generator | None = None) -> StabilizerTableau:
    """Apply a gate list in place; Z measurements use ``rng``."""
    for g in gates:
        if g.kind is GateKind.MEASURE_Z:
            t.measure_z(g.targets[0], rng=rng)
        else:
            t.apply(g)
    return t
