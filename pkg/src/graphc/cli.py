"""``graphc`` command-line driver.

Exit codes: 0 success, 1 unreadable or unparsable input, 2 validation or
qubit-cap error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from graphc.circuit import CircuitError, ParseError, parse_circuit, parse_input_labels, validate_clifford_prefix
from graphc.compiler import compile_circuit
from graphc.graph import to_graph
from graphc.lc import Objective, optimize
from graphc.oracle import DEFAULT_CAP, CapExceededError, verify_pattern
from graphc.pattern import PatternError, from_json, to_dot, to_json
from graphc.tableau import init_state, run_clifford

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_circuit(path: str, input_state: str | None = None):
    try:
        c = parse_circuit(_read(path))
    except ParseError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc}") from exc
    if input_state is not None:
        try:
            labels = parse_input_labels(input_state)
            if len(labels) != c.num_wires:
                raise CircuitError(f"--input-state has {len(labels)} labels for {c.num_wires} wires")
        except CircuitError as exc:
            raise _Fail(EXIT_INVALID, str(exc)) from exc
        c = c.with_initial_states(labels)
    return c


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_compile(args) -> int:
    c = _load_circuit(args.circuit, args.input_state)
    try:
        pattern = compile_circuit(c, seed=args.seed)
        if args.optimize != "none":
            pattern, moves = optimize(pattern, Objective(args.optimize), args.budget, args.exhaustive)
            print(f"applied {len(moves)} local complementation move(s)", file=sys.stderr)
    except (CircuitError, PatternError, ValueError) as exc:
        raise _Fail(EXIT_INVALID, str(exc)) from exc
    _write(args.out, to_json(pattern))
    if args.dot:
        _write(args.dot, to_dot(pattern))
    return EXIT_OK


def cmd_verify(args) -> int:
    c = _load_circuit(args.circuit)
    try:
        pattern = from_json(_read(args.pattern))
    except PatternError as exc:
        raise _Fail(EXIT_INPUT, f"{args.pattern}: {exc}") from exc
    if pattern.num_nodes > args.cap or c.num_wires > args.cap:
        raise _Fail(EXIT_INVALID, f"pattern has {pattern.num_nodes} qubits, cap is {args.cap}")
    try:
        result = verify_pattern(c, pattern, tol=args.tol, cap=args.cap, seed=args.seed)
    except CapExceededError as exc:
        raise _Fail(EXIT_INVALID, str(exc)) from exc
    if not result.ok:
        if result.failing is None:
            print("mismatch: pattern does not match the circuit's register", file=sys.stderr)
        else:
            assignment = " ".join(f"{k}={v}" for k, v in sorted(result.failing.items()))
            print(f"mismatch for outcomes: {assignment or '(none)'}", file=sys.stderr)
        return EXIT_MISMATCH
    print(f"ok: {result.branches} branch(es) match")
    return EXIT_OK


def cmd_graph(args) -> int:
    c = _load_circuit(args.circuit, args.input_state)
    if not validate_clifford_prefix(c):
        raise _Fail(EXIT_INVALID, "graph conversion needs a Clifford-only circuit")
    t = run_clifford(init_state(c.initial_states), c.gates, np.random.default_rng(args.seed))
    ext = to_graph(t)
    edges = ", ".join(f"{u}-{v}" for u, v in ext.graph.edges()) or "none"
    corrections = " ".join(str(x) for x in ext.corrections) or "none"
    print(f"edges: {edges}; corrections: {corrections}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphc", description="Compile Clifford+T circuits to graph-state patterns.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a circuit into a pattern (JSON)")
    p.add_argument("circuit")
    p.add_argument("-o", "--out", help="output path, '-' for stdout (default)")
    p.add_argument("--dot", metavar="PATH", help="also write a DOT rendering")
    p.add_argument("--optimize", choices=["edges", "degree", "none"], default="none")
    p.add_argument("--budget", type=int, default=100, help="max local complementation moves")
    p.add_argument("--exhaustive", action="store_true", help="search the whole LC orbit (<= 10 nodes)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--input-state", help="initial states, e.g. '+0'")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="check a pattern against its circuit with the statevector oracle")
    p.add_argument("circuit")
    p.add_argument("pattern")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max qubits for dense simulation")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="convert a Clifford circuit's output state to a graph state")
    p.add_argument("circuit")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--input-state")
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"graphc: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
