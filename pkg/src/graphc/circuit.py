"""Clifford+T circuit representation and its line-oriented text format.

A circuit file looks like::

    qubits 3
    init 0 plus      # optional, default is zero
    h 0
    cnot 0 1
    t 2
    measure 2

Keywords are case-insensitive, wires are 0-indexed and ``#`` starts a comment.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field


class CircuitError(ValueError):
    """Raised for structurally invalid circuits."""


class ParseError(CircuitError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class GateKind(enum.Enum):
    H = "h"
    S = "s"
    SDG = "sdg"
    X = "x"
    Y = "y"
    Z = "z"
    CNOT = "cnot"
    CZ = "cz"
    T = "t"
    TDG = "tdg"
    MEASURE_Z = "measure"

    @property
    def arity(self) -> int:
        return 2 if self in (GateKind.CNOT, GateKind.CZ) else 1

    @property
    def is_clifford(self) -> bool:
        return self not in (GateKind.T, GateKind.TDG, GateKind.MEASURE_Z)


class InitState(enum.Enum):
    ZERO = "zero"
    PLUS = "plus"

    @property
    def symbol(self) -> str:
        return "0" if self is InitState.ZERO else "+"

    @classmethod
    def from_symbol(cls, ch: str) -> InitState:
        try:
            return {"0": cls.ZERO, "+": cls.PLUS}[ch]
        except KeyError:
            raise CircuitError(f"unknown input state symbol {ch!r} (expected '0' or '+')") from None


def parse_input_labels(text: str) -> tuple[InitState, ...]:
    """Parse a compact label string such as ``"+0"`` into init states."""
    return tuple(InitState.from_symbol(ch) for ch in text)


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    targets: tuple[int, ...]
    id: int

    def __post_init__(self):
        if len(self.targets) != self.kind.arity:
            raise CircuitError(
                f"{self.kind.value} takes {self.kind.arity} wire(s), got {len(self.targets)}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise CircuitError(f"{self.kind.value} targets must be distinct: {self.targets}")

    def __str__(self) -> str:
        return " ".join([self.kind.value, *map(str, self.targets)])


@dataclass(frozen=True)
class CircuitIR:
    num_wires: int
    initial_states: tuple[InitState, ...] = ()
    gates: tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        if self.num_wires < 1:
            raise CircuitError("a circuit needs at least one wire")
        if not self.initial_states:
            object.__setattr__(self, "initial_states", (InitState.ZERO,) * self.num_wires)
        if len(self.initial_states) != self.num_wires:
            raise CircuitError(
                f"{len(self.initial_states)} initial states for {self.num_wires} wires"
            )
        measured: set[int] = set()
        for expected_id, g in enumerate(self.gates):
            if g.id != expected_id:
                raise CircuitError(f"gate ids must be 0..N-1 in order, found {g.id} at {expected_id}")
            for w in g.targets:
                if not 0 <= w < self.num_wires:
                    raise CircuitError(f"wire index {w} out of range for {self.num_wires} wires")
                if w in measured:
                    raise CircuitError(f"gate '{g}' follows a measurement on wire {w}")
            if g.kind is GateKind.MEASURE_Z:
                measured.add(g.targets[0])

    @classmethod
    def build(
        cls,
        num_wires: int,
        ops: Iterable[tuple],
        initial_states: Sequence[InitState] | None = None,
    ) -> CircuitIR:
        """Build a circuit from ``(kind, *wires)`` tuples, assigning ids in order.

        ``kind`` may be a :class:`GateKind` or its text name.
        """
        gates = []
        for i, (kind, *targets) in enumerate(ops):
            if not isinstance(kind, GateKind):
                kind = GateKind(kind.lower())
            gates.append(Gate(kind, tuple(targets), i))
        return cls(num_wires, tuple(initial_states or ()), tuple(gates))

    def with_initial_states(self, states: Sequence[InitState]) -> CircuitIR:
        return CircuitIR(self.num_wires, tuple(states), self.gates)

    def without_measurements(self) -> CircuitIR:
        ops = [(g.kind, *g.targets) for g in self.gates if g.kind is not GateKind.MEASURE_Z]
        return CircuitIR.build(self.num_wires, ops, self.initial_states)

    def prepend(self, ops: Iterable[tuple]) -> CircuitIR:
        """Return a copy with extra gates inserted at the front (ids renumbered)."""
        rest = [(g.kind, *g.targets) for g in self.gates]
        return CircuitIR.build(self.num_wires, [*ops, *rest], self.initial_states)

    @property
    def measured_wires(self) -> tuple[int, ...]:
        return tuple(g.targets[0] for g in self.gates if g.kind is GateKind.MEASURE_Z)


def count_t_gates(c: CircuitIR) -> int:
    return sum(g.kind in (GateKind.T, GateKind.TDG) for g in c.gates)


def validate_clifford_prefix(c: CircuitIR) -> bool:
    """True iff the circuit has no T/T-dagger gates, so a tableau can run it end to end."""
    return count_t_gates(c) == 0


def parse_circuit(source: str) -> CircuitIR:
    num_wires: int | None = None
    inits: dict[int, InitState] = {}
    ops: list[tuple[GateKind, tuple[int, ...], int]] = []
    measured: set[int] = set()

    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip().lower()
        if not line:
            continue
        word, *args = line.split()

        if word == "qubits":
            if num_wires is not None:
                raise ParseError("duplicate 'qubits' declaration", lineno)
            if len(args) != 1:
                raise ParseError("expected 'qubits N'", lineno)
            num_wires = _int_arg(args[0], lineno)
            if num_wires < 1:
                raise ParseError("'qubits' needs a positive count", lineno)
            continue

        if num_wires is None:
            raise ParseError("'qubits N' must come first", lineno)

        if word == "init":
            if len(args) != 2:
                raise ParseError("expected 'init <wire> zero|plus'", lineno)
            wire = _wire_arg(args[0], num_wires, lineno)
            if ops:
                raise ParseError("'init' must precede all gates", lineno)
            try:
                inits[wire] = InitState(args[1])
            except ValueError:
                raise ParseError(f"unknown initial state {args[1]!r}", lineno) from None
            continue

        try:
            kind = GateKind(word)
        except ValueError:
            raise ParseError(f"unknown gate {word!r}", lineno) from None
        if len(args) != kind.arity:
            raise ParseError(f"{word} takes {kind.arity} wire(s), got {len(args)}", lineno)
        targets = tuple(_wire_arg(a, num_wires, lineno) for a in args)
        if len(set(targets)) != len(targets):
            raise ParseError(f"{word} targets must be distinct", lineno)
        for w in targets:
            if w in measured:
                raise ParseError(f"gate on wire {w} after its measurement", lineno)
        if kind is GateKind.MEASURE_Z:
            measured.add(targets[0])
        ops.append((kind, targets, lineno))

    if num_wires is None:
        raise ParseError("missing 'qubits N' declaration")
    states = [inits.get(w, InitState.ZERO) for w in range(num_wires)]
    gates = tuple(Gate(kind, targets, i) for i, (kind, targets, _) in enumerate(ops))
    return CircuitIR(num_wires, tuple(states), gates)


def format_circuit(c: CircuitIR) -> str:
    lines = [f"qubits {c.num_wires}"]
    for w, s in enumerate(c.initial_states):
        if s is not InitState.ZERO:
            lines.append(f"init {w} {s.value}")
    lines.extend(str(g) for g in c.gates)
    return "\n".join(lines) + "\n"


def _int_arg(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def _wire_arg(tok: str, num_wires: int, lineno: int) -> int:
    w = _int_arg(tok, lineno)
    if not 0 <= w < num_wires:
        raise ParseError(f"wire index {w} out of range for {num_wires} wires", lineno)
    return w
