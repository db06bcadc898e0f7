"""Command-line interface.

Subcommands: compile (print matrices), prove (top-down derivation), model
(bottom-up least model), gen (random test programs).  prove and model run
the attention engine and the symbolic engine side by side unless told
otherwise, and exit 4 if the two ever disagree.

Exit codes: 0 proved / fixpoint reached, 1 failed, 2 diverged or step
budget exhausted, 3 bad input (including usage errors), 4 engine
disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import zip_longest
from pathlib import Path

from . import engine, oracle
from .compiler import compile_program
from .engine import Status
from .generate import random_program_text
from .program import (
    ParseError,
    Program,
    ProgramError,
    atom_name,
    parse_program,
    parse_query,
    render_query,
    scan_query_symbols,
    validate_and_complete,
)

EXIT_PROVED = 0
EXIT_FAILED = 1
EXIT_DIVERGED = 2
EXIT_INPUT_ERROR = 3
EXIT_DISAGREEMENT = 4

_STATUS_EXIT = {
    Status.PROVED: EXIT_PROVED,
    Status.FAILED: EXIT_FAILED,
    Status.DIVERGED: EXIT_DIVERGED,
    Status.FIXPOINT_REACHED: 0,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; keep 2 reserved for "diverged".
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_INPUT_ERROR)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="attnlogic",
        description=(
            "Compile one-clause-per-head logic programs into attention "
            "matrices and run top-down/bottom-up derivations on them."
        ),
    )
    sub = parser.add_subparsers(
        dest="command", required=True, metavar="command", parser_class=_Parser
    )

    def add_format(p):
        p.add_argument(
            "--format", choices=("text", "json"), default="text",
            help="output format (default: text)",
        )

    def add_run_flags(p):
        p.add_argument(
            "--max-steps", type=_positive_int, default=engine.DEFAULT_MAX_STEPS,
            help="step budget safety net (default: %(default)s)",
        )
        p.add_argument(
            "--engine", choices=("attention", "symbolic", "both"), default="both",
            help="which engine(s) to run (default: both, cross-checked)",
        )
        p.add_argument("--trace", action="store_true", help="show every derivation step")

    p = sub.add_parser("compile", help="print the compiled matrices and symbol table")
    p.add_argument("program", help="program file")
    add_format(p)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("prove", help="run a top-down derivation for a query")
    p.add_argument("program", help="program file")
    p.add_argument("--query", required=True, help='query, e.g. "p & q"')
    add_format(p)
    add_run_flags(p)
    p.add_argument(
        "--full-trace", action="store_true",
        help="keep deriving past a failure until the state repeats",
    )
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("model", help="compute the least model bottom-up")
    p.add_argument("program", help="program file")
    add_format(p)
    add_run_flags(p)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("gen", help="generate a random complete program")
    p.add_argument("--symbols", type=_positive_int, required=True, dest="n_symbols")
    p.add_argument("--seed", type=int, default=0)
    add_format(p)
    p.set_defaults(func=cmd_gen)

    return parser


def _load(path: str, extra_symbols=()) -> Program:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return validate_and_complete(parse_program(text), extra_symbols)
    except ParseError as exc:
        raise ProgramError(f"{path}:{exc}") from exc
    except ProgramError as exc:
        raise ProgramError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# compile
# ---------------------------------------------------------------------------

def cmd_compile(args) -> int:
    compiled = compile_program(_load(args.program))
    if args.format == "json":
        print(json.dumps(compiled.to_json_dict(), indent=2))
        return 0
    table = compiled.table
    print("symbols:", " ".join(table.symbols))
    w, n = table.width, table.n
    for name, matrix, size in (
        ("H (keys)", compiled.head_matrix, w),
        ("B (top-down values)", compiled.body_matrix, w),
        ("M (bottom-up keys)", compiled.rule_matrix, n),
    ):
        print(f"\n{name}, {size}x{size}:")
        cells = [[str(x) for x in row] for row in matrix]
        pad = max(len(c) for row in cells for c in row)
        for row in cells:
            print(" ".join(c.rjust(pad) for c in row))
    return 0


# ---------------------------------------------------------------------------
# prove
# ---------------------------------------------------------------------------

def cmd_prove(args) -> int:
    program = _load(args.program, scan_query_symbols(args.query))
    try:
        query = parse_query(args.query, program.table)
    except ProgramError as exc:
        raise ProgramError(f"query: {exc}") from exc
    truncate = not args.full_trace

    trace = None
    sym = None
    if args.engine in ("attention", "both"):
        compiled = compile_program(program)
        trace = engine.topdown_derive(query, compiled, args.max_steps, truncate)
    if args.engine in ("symbolic", "both"):
        sym = oracle.symbolic_topdown(query, program, args.max_steps, truncate)

    if args.engine == "both":
        problem = _first_divergence(trace, sym)
        if problem:
            print(f"engine disagreement: {problem}", file=sys.stderr)
            return EXIT_DISAGREEMENT

    if trace is not None:
        status = trace.status
        states = trace.decoded_sequence()
        step_count = trace.step_count
    else:
        status, states = sym
        step_count = len(states) - 1

    table = program.table
    if args.format == "json":
        doc = {"status": status.value, "steps": step_count}
        if args.trace:
            doc["trace"] = trace.to_json_dict() if trace is not None else _symbolic_trace_dict(status, states, table)
        print(json.dumps(doc))
    else:
        if args.trace:
            for state in states:
                print(render_query(state, table))
        print(_status_line(status, step_count))
    return _STATUS_EXIT[status]


def _symbolic_trace_dict(status: Status, states, table) -> dict:
    return {
        "mode": "symbolic",
        "status": status.value,
        "steps": [
            {"decoded": [atom_name(a) for a in sorted(q, key=table.index_of)]}
            for q in states[1:]
        ],
    }


def _status_line(status: Status, steps: int) -> str:
    noun = "step" if steps == 1 else "steps"
    return f"{status.value} in {steps} {noun}"


def _first_divergence(trace, sym) -> str | None:
    """First point where the two engines' derivations differ, if any."""
    status, states = sym
    table = trace.table
    for k, (a, b) in enumerate(zip_longest(trace.decoded_sequence(), states)):
        if a != b:
            left = "(none)" if a is None else render_query(a, table)
            right = "(none)" if b is None else render_query(b, table)
            return f"step {k}: attention derived [{left}], symbolic derived [{right}]"
    if trace.status is not status:
        return f"attention status {trace.status.value}, symbolic status {status.value}"
    return None


# ---------------------------------------------------------------------------
# model
# ---------------------------------------------------------------------------

def cmd_model(args) -> int:
    program = _load(args.program)

    trace = None
    model_attention = None
    if args.engine in ("attention", "both"):
        compiled = compile_program(program)
        trace = engine.bottomup_fixpoint(compiled, args.max_steps)
        if trace.status is Status.DIVERGED:
            print(f"no fixpoint within {args.max_steps} steps", file=sys.stderr)
            return EXIT_DIVERGED
        model_attention = trace.final_decoded

    model_symbolic = None
    if args.engine in ("symbolic", "both"):
        try:
            model_symbolic = oracle.least_model(program, args.max_steps)
        except oracle.FixpointNotReachedError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_DIVERGED

    if args.engine == "both" and model_attention != model_symbolic:
        print(
            "engine disagreement: attention model "
            f"[{' '.join(sorted(model_attention))}] vs symbolic model "
            f"[{' '.join(sorted(model_symbolic))}]",
            file=sys.stderr,
        )
        return EXIT_DISAGREEMENT

    model = model_attention if model_attention is not None else model_symbolic
    names = sorted(model)
    if args.format == "json":
        doc = {"status": Status.FIXPOINT_REACHED.value, "model": names}
        if trace is not None:
            doc["steps"] = trace.step_count
        if args.trace and trace is not None:
            doc["trace"] = trace.to_json_dict()
        print(json.dumps(doc))
    else:
        if args.trace and trace is not None:
            order = program.table.index_of
            for state in trace.decoded_sequence():
                print("{" + " ".join(sorted(state, key=order)) + "}")
        print(" ".join(names))
    return 0


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    text = random_program_text(args.n_symbols, args.seed)
    if args.format == "json":
        print(json.dumps({"program": text, "symbols": args.n_symbols, "seed": args.seed}))
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR
    try:
        return args.func(args)
    except ProgramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def run() -> None:
    raise SystemExit(main())
