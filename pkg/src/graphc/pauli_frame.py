"""Pauli-frame tracking for teleported T gates.

Every teleportation leaves a ``Z^s`` byproduct on its continuation wire,
where ``s`` is the (logical) outcome of the rotated-basis measurement.  The
byproducts are pushed through the rest of the Clifford prefix; whatever sits
on a measured wire when it is read adjusts that measurement, and whatever is
left on the output wires becomes a final Pauli correction.

Observable convention: ``A(theta) = cos(theta) X - sin(theta) Y``.  A T gate is
teleported by measuring ``A(pi/4)``, T-dagger by ``A(-pi/4)``.  An X byproduct
flips the angle sign, a Z byproduct negates the observable (relabels the
outcome).
"""

from __future__ import annotations

import enum
import math
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from graphc.circuit import GateKind
from graphc.icm import IcmCircuit, TSign

Deps = frozenset[str]
_EMPTY: Deps = frozenset()


class Angle(enum.Enum):
    PLUS_PI4 = "+pi/4"
    MINUS_PI4 = "-pi/4"

    @property
    def radians(self) -> float:
        return math.pi / 4 if self is Angle.PLUS_PI4 else -math.pi / 4

    def flipped(self) -> Angle:
        return Angle.MINUS_PI4 if self is Angle.PLUS_PI4 else Angle.PLUS_PI4


class TrackingError(RuntimeError):
    pass


class MissingOutcomeError(KeyError):
    pass


@dataclass(frozen=True)
class ScheduledMeasurement:
    wire: int
    angle: Angle
    symbol: str
    basis_flip_deps: Deps = _EMPTY
    outcome_relabel_deps: Deps = _EMPTY
    round: int = 0


@dataclass(frozen=True)
class OutputCorrection:
    wire: int
    x_deps: Deps = _EMPTY
    z_deps: Deps = _EMPTY


@dataclass
class PauliFrame:
    """Per-wire X and Z byproduct dependencies (sets of outcome symbols)."""

    x: list[Deps] = field(default_factory=list)
    z: list[Deps] = field(default_factory=list)

    @classmethod
    def empty(cls, n: int) -> PauliFrame:
        return cls([_EMPTY] * n, [_EMPTY] * n)

    def conjugate(self, kind: GateKind, targets: tuple[int, ...]) -> None:
        """Push the frame through a Clifford gate (signs are not tracked)."""
        x, z = self.x, self.z
        if kind is GateKind.H:
            (q,) = targets
            x[q], z[q] = z[q], x[q]
        elif kind in (GateKind.S, GateKind.SDG):
            (q,) = targets
            z[q] = z[q] ^ x[q]
        elif kind is GateKind.CNOT:
            c, t = targets
            x[t] = x[t] ^ x[c]
            z[c] = z[c] ^ z[t]
        elif kind is GateKind.CZ:
            a, b = targets
            z[a], z[b] = z[a] ^ x[b], z[b] ^ x[a]
        elif kind in (GateKind.X, GateKind.Y, GateKind.Z):
            pass
        else:
            raise TrackingError(f"cannot push a Pauli frame through {kind.value}")


class TrackResult(NamedTuple):
    schedule: list[ScheduledMeasurement]
    outputs: list[OutputCorrection]


def track(icm: IcmCircuit) -> TrackResult:
    prefix = icm.clifford_prefix
    frame = PauliFrame.empty(prefix.num_wires)
    pending = {tp.continuation_wire: tp for tp in icm.teleportations}
    schedule: list[ScheduledMeasurement] = []

    for g in prefix.gates:
        frame.conjugate(g.kind, g.targets)
        if g.kind is not GateKind.CNOT or g.targets[1] not in pending:
            continue
        tp = pending.pop(g.targets[1])
        if g.targets[0] != tp.measured_wire:
            raise TrackingError(f"continuation wire {tp.continuation_wire} touched before its teleport")
        m = tp.measured_wire
        angle = Angle.PLUS_PI4 if tp.sign is TSign.PLUS else Angle.MINUS_PI4
        schedule.append(ScheduledMeasurement(m, angle, tp.symbol, frame.x[m], frame.z[m]))
        frame.z[tp.continuation_wire] = frame.z[tp.continuation_wire] ^ {tp.symbol}

    if pending:
        raise TrackingError(f"teleportations without a CNOT in the prefix: {sorted(pending)}")

    outputs = [
        OutputCorrection(w, frame.x[w], frame.z[w])
        for w in icm.wire_map
        if frame.x[w] or frame.z[w]
    ]
    return TrackResult(assign_rounds(schedule), outputs)


def assign_rounds(schedule: list[ScheduledMeasurement]) -> list[ScheduledMeasurement]:
    """Longest-path layering over basis-flip dependencies."""
    by_symbol = {m.symbol: m for m in schedule}
    rounds: dict[str, int] = {}
    visiting: set[str] = set()

    def depth(sym: str) -> int:
        if sym in rounds:
            return rounds[sym]
        if sym in visiting:
            raise TrackingError(f"dependency cycle through {sym}")
        visiting.add(sym)
        deps = by_symbol[sym].basis_flip_deps
        unknown = deps - by_symbol.keys()
        if unknown:
            raise TrackingError(f"unknown outcome symbols {sorted(unknown)}")
        rounds[sym] = 1 + max((depth(d) for d in deps), default=-1)
        visiting.discard(sym)
        return rounds[sym]

    return [replace(m, round=depth(m.symbol)) for m in schedule]


def _parity(deps: Deps, outcomes: Mapping[str, int]) -> int:
    bit = 0
    for sym in deps:
        try:
            bit ^= int(outcomes[sym]) & 1
        except KeyError:
            raise MissingOutcomeError(sym) from None
    return bit


def resolve_basis(m: ScheduledMeasurement, outcomes: Mapping[str, int]) -> tuple[Angle, int]:
    """Angle to measure and whether to negate the observable, given earlier outcomes."""
    angle = m.angle.flipped() if _parity(m.basis_flip_deps, outcomes) else m.angle
    return angle, _parity(m.outcome_relabel_deps, outcomes)


def resolve_output(c: OutputCorrection, outcomes: Mapping[str, int]) -> tuple[int, int]:
    """``(x, z)`` exponents of the Pauli byproduct left on an output wire."""
    return _parity(c.x_deps, outcomes), _parity(c.z_deps, outcomes)
