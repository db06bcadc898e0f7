"""Definite logic programs with at most one clause per head.

This module owns the textual format, the in-memory clause/program types,
and the validation/completion step that every other module builds on.

Program files (`.lp`) contain clauses like::

    p <- q & r.     % conjunctive body
    t <- true.      % fact
    w <- false.     % explicit failure
    % a comment runs to the end of the line

Heads are identifiers; `true` / `false` are reserved and may only form an
entire body.  A validated program is *complete*: every symbol that occurs
anywhere (heads, bodies, or caller-supplied query symbols) heads exactly
one clause, with `s <- false.` synthesized for symbols left undefined.
Clause order equals symbol order, so the clause for symbol i is clause i.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

# Distinguished atoms. They occupy the last two vector dimensions and are
# written `true` / `false` in the surface syntax.
TOP = "⊤"
BOT = "⊥"

RESERVED = {"true": TOP, "false": BOT}
_SURFACE = {TOP: "true", BOT: "false"}

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ProgramError(Exception):
    """A program or query was rejected; the message says why."""


class ParseError(ProgramError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class DuplicateHeadError(ProgramError):
    """Two clauses define the same head, violating the one-clause-per-head rule."""

    def __init__(self, symbol: str, first_line: int, second_line: int):
        super().__init__(
            f"duplicate head '{symbol}': clauses at line {first_line} and line {second_line}"
        )
        self.symbol = symbol
        self.first_line = first_line
        self.second_line = second_line


class UnknownSymbolError(ProgramError):
    def __init__(self, name: str):
        super().__init__(f"unknown symbol '{name}'")
        self.name = name


def atom_name(atom: str) -> str:
    """Surface spelling of an atom (`true`/`false` for the distinguished atoms)."""
    return _SURFACE.get(atom, atom)


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # ident | arrow | amp | dot | end
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
      (?P<skip>\s+|%[^\n]*)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<arrow><-)
    | (?P<amp>&)
    | (?P<dot>\.)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[_Token]:
    line_starts = [0] + [m.end() for m in re.finditer(r"\n", text)]

    def linecol(pos: int) -> tuple[int, int]:
        i = bisect.bisect_right(line_starts, pos) - 1
        return i + 1, pos - line_starts[i] + 1

    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            line, col = linecol(pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        if m.lastgroup != "skip":
            line, col = linecol(m.start())
            tokens.append(_Token(m.lastgroup, m.group(), line, col))
        pos = m.end()
    line, col = linecol(len(text))
    tokens.append(_Token("end", "end of input", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SourceClause:
    """A clause as written, before validation and completion.

    `body` keeps distinct atoms in source order; a `true`/`false` body is
    the one-element tuple (TOP,) / (BOT,).
    """

    head: str
    body: tuple[str, ...]
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Clause:
    """A validated clause: symbols only, or exactly {TOP} / {BOT}."""

    head: str
    body: frozenset[str]

    @property
    def is_fact(self) -> bool:
        return self.body == frozenset((TOP,))

    @property
    def is_failure(self) -> bool:
        return self.body == frozenset((BOT,))


@dataclass(frozen=True)
class SymbolTable:
    """Canonical ordering of the proper symbols.

    Index i < n names symbols[i]; the two slots after them hold TOP and BOT,
    so vectors over "all atoms" have n + 2 dimensions.
    """

    symbols: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for s in self.symbols:
            if not _IDENT_RE.match(s) or s in RESERVED:
                raise ProgramError(f"invalid symbol name '{s}'")
        index = {s: i for i, s in enumerate(self.symbols)}
        if len(index) != len(self.symbols):
            raise ProgramError("duplicate symbols in table")
        index[TOP] = len(self.symbols)
        index[BOT] = len(self.symbols) + 1
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def width(self) -> int:
        """Dimension of query vectors: one per symbol plus TOP and BOT."""
        return len(self.symbols) + 2

    @property
    def atoms(self) -> tuple[str, ...]:
        return self.symbols + (TOP, BOT)

    def __contains__(self, atom: str) -> bool:
        return atom in self._index

    def index_of(self, atom: str) -> int:
        try:
            return self._index[atom]
        except KeyError:
            raise UnknownSymbolError(atom) from None

    def atom_at(self, i: int) -> str:
        if i == len(self.symbols):
            return TOP
        if i == len(self.symbols) + 1:
            return BOT
        return self.symbols[i]


@dataclass(frozen=True)
class Program:
    """A validated, completed program: clause i heads table.symbols[i]."""

    clauses: tuple[Clause, ...]
    table: SymbolTable

    def clause_for(self, symbol: str) -> Clause:
        return self.clauses[self.table.index_of(symbol)]

    @property
    def fact_heads(self) -> frozenset[str]:
        return frozenset(c.head for c in self.clauses if c.is_fact)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def parse_program(text: str) -> list[SourceClause]:
    """Parse program text into unvalidated clauses, in source order."""
    tokens = _tokenize(text)
    clauses = []
    i = 0
    while tokens[i].kind != "end":
        clause, i = _parse_clause(tokens, i)
        clauses.append(clause)
    return clauses


def _parse_clause(tokens: list[_Token], i: int) -> tuple[SourceClause, int]:
    tok = tokens[i]
    if tok.kind != "ident":
        raise ParseError(f"expected clause head, found {tok.text!r}", tok.line, tok.col)
    if tok.text in RESERVED:
        raise ParseError(
            f"reserved word '{tok.text}' cannot be a clause head", tok.line, tok.col
        )
    head, head_line, head_col = tok.text, tok.line, tok.col
    i += 1

    tok = tokens[i]
    if tok.kind != "arrow":
        raise ParseError(f"expected '<-', found {tok.text!r}", tok.line, tok.col)
    i += 1

    tok = tokens[i]
    if tok.kind != "ident":
        raise ParseError(f"expected body atom, found {tok.text!r}", tok.line, tok.col)
    if tok.text in RESERVED:
        # true/false must be the entire body; `p <- true & q` is malformed.
        body = (RESERVED[tok.text],)
        i += 1
        if tokens[i].kind == "amp":
            raise ParseError(
                f"'{tok.text}' must be the entire body", tokens[i].line, tokens[i].col
            )
    else:
        atoms = [tok.text]
        i += 1
        while tokens[i].kind == "amp":
            i += 1
            tok = tokens[i]
            if tok.kind != "ident":
                raise ParseError(
                    f"expected body atom after '&', found {tok.text!r}", tok.line, tok.col
                )
            if tok.text in RESERVED:
                raise ParseError(
                    f"'{tok.text}' cannot appear inside a conjunction", tok.line, tok.col
                )
            if tok.text not in atoms:  # conjunction is idempotent
                atoms.append(tok.text)
            i += 1
        body = tuple(atoms)

    tok = tokens[i]
    if tok.kind != "dot":
        raise ParseError(f"expected '.', found {tok.text!r}", tok.line, tok.col)
    return SourceClause(head, body, head_line, head_col), i + 1


def _parse_atom_list(text: str) -> list[str]:
    """Parse `atom ("&" atom)*`, mapping true/false to TOP/BOT, deduplicating."""
    tokens = _tokenize(text)
    tok = tokens[0]
    if tok.kind != "ident":
        raise ParseError(f"expected query atom, found {tok.text!r}", tok.line, tok.col)
    atoms = [RESERVED.get(tok.text, tok.text)]
    i = 1
    while tokens[i].kind == "amp":
        i += 1
        tok = tokens[i]
        if tok.kind != "ident":
            raise ParseError(
                f"expected query atom after '&', found {tok.text!r}", tok.line, tok.col
            )
        atom = RESERVED.get(tok.text, tok.text)
        if atom not in atoms:
            atoms.append(atom)
        i += 1
    tok = tokens[i]
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.text!r} in query", tok.line, tok.col)
    return atoms


def parse_query(text: str, table: SymbolTable) -> frozenset[str]:
    """Parse a query string into its atom set, checked against the table."""
    atoms = _parse_atom_list(text)
    for atom in atoms:
        if atom not in table:
            raise UnknownSymbolError(atom)
    return frozenset(atoms)


def scan_query_symbols(text: str) -> tuple[str, ...]:
    """Proper symbols mentioned by a query string, in first-appearance order.

    Used to widen the symbol table before validation so query-only symbols
    get a failure clause instead of being rejected.
    """
    return tuple(a for a in _parse_atom_list(text) if a not in (TOP, BOT))


# ---------------------------------------------------------------------------
# Validation and completion
# ---------------------------------------------------------------------------

def validate_and_complete(
    clauses: Sequence[SourceClause], extra_symbols: Iterable[str] = ()
) -> Program:
    """Check the one-clause-per-head rule and complete the program.

    The symbol table is ordered by first textual appearance (heads and body
    atoms in source order), followed by `extra_symbols` in the order given.
    Every symbol without a clause gets `s <- false.`; clauses are then
    arranged so that clause i heads symbol i.
    """
    by_head: dict[str, SourceClause] = {}
    for clause in clauses:
        prior = by_head.get(clause.head)
        if prior is not None:
            raise DuplicateHeadError(clause.head, prior.line, clause.line)
        by_head[clause.head] = clause

    order: list[str] = []
    seen: set[str] = set()

    def note(name: str) -> None:
        if name in (TOP, BOT) or name in seen:
            return
        if not _IDENT_RE.match(name) or name in RESERVED:
            raise ProgramError(f"invalid symbol name '{name}'")
        seen.add(name)
        order.append(name)

    for clause in clauses:
        note(clause.head)
        for atom in clause.body:
            note(atom)
    for sym in extra_symbols:
        note(sym)

    if not order:
        raise ProgramError("empty program")

    table = SymbolTable(tuple(order))
    completed = []
    for sym in order:
        draft = by_head.get(sym)
        body = frozenset((BOT,)) if draft is None else frozenset(draft.body)
        completed.append(Clause(sym, body))
    return Program(tuple(completed), table)


def load_program(text: str, extra_symbols: Iterable[str] = ()) -> Program:
    """Parse, validate, and complete in one go."""
    return validate_and_complete(parse_program(text), extra_symbols)


# ---------------------------------------------------------------------------
# Rendering (inverse of parsing, up to canonical ordering)
# ---------------------------------------------------------------------------

def _atom_sort_key(table: SymbolTable | None):
    if table is not None:
        return table.index_of
    return lambda a: (a in (TOP, BOT), a)


def render_query(atoms: Iterable[str], table: SymbolTable | None = None) -> str:
    ordered = sorted(atoms, key=_atom_sort_key(table))
    return " & ".join(atom_name(a) for a in ordered)


def render_clause(clause: Clause, table: SymbolTable | None = None) -> str:
    return f"{clause.head} <- {render_query(clause.body, table)}."


def render_program(program: Program) -> str:
    lines = [render_clause(c, program.table) for c in program.clauses]
    return "\n".join(lines) + "\n"
