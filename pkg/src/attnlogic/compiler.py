"""Compile a completed program into attention parameters.

Three matrices come out of a program over n symbols:

* head matrix  -- (n+2) x (n+2) attention keys; one unit row per clause head
  plus built-in rows for TOP and BOT.  Because clause i heads symbol i, this
  is always the identity.
* body matrix  -- (n+2) x (n+2) top-down values; row i is the 0/1 indicator
  of clause i's body (a true body is the TOP unit row, a false body the BOT
  unit row), and the last two rows keep TOP and BOT pointing at themselves.
* rule matrix  -- n x n bottom-up keys over the symbol dimensions only; a
  conjunctive body of size m puts weight 1/m on each member so the row dots
  to exactly 1 against an interpretation satisfying the whole body, a fact
  puts 1 on its own head (it sustains itself once true), and a false body
  is a zero row (it can never fire).

Entries are ints and `fractions.Fraction`s; nothing is ever rounded, so
"the body is fully satisfied" is the exact comparison `dot >= 1`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .program import BOT, TOP, Program, SymbolTable, UnknownSymbolError, atom_name

Vector = tuple  # entries are int or Fraction
Matrix = tuple  # of Vector rows


class NonBooleanVectorError(ValueError):
    """A vector expected to be 0/1-valued had some other entry."""


def identity_matrix(size: int) -> Matrix:
    return tuple(
        tuple(1 if i == j else 0 for j in range(size)) for i in range(size)
    )


@dataclass(frozen=True)
class CompiledProgram:
    """Immutable attention parameters for one program; shareable across runs."""

    table: SymbolTable
    head_matrix: Matrix
    body_matrix: Matrix
    rule_matrix: Matrix
    fact_heads: frozenset[int]  # symbol indices of true-body clauses

    def to_json_dict(self) -> dict:
        """JSON form: {"symbols", "H", "B", "M"}, rationals as "num/den" strings."""
        return {
            "symbols": list(self.table.symbols),
            "H": [list(row) for row in self.head_matrix],
            "B": [list(row) for row in self.body_matrix],
            "M": [[str(x) for x in row] for row in self.rule_matrix],
        }


def compile_program(program: Program) -> CompiledProgram:
    """Build the head/body/rule matrices for a validated, completed program."""
    table = program.table
    n = table.n
    width = table.width
    top_i, bot_i = n, n + 1

    body_rows = []
    rule_rows = []
    fact_heads = set()
    for i, clause in enumerate(program.clauses):
        if clause.is_fact:
            body_rows.append(_unit_row(width, top_i))
            rule_rows.append(_unit_row(n, i))
            fact_heads.add(i)
        elif clause.is_failure:
            body_rows.append(_unit_row(width, bot_i))
            rule_rows.append((0,) * n)
        else:
            members = {table.index_of(a) for a in clause.body}
            body_rows.append(_indicator_row(width, members))
            weight = 1 if len(members) == 1 else Fraction(1, len(members))
            rule_rows.append(tuple(weight if j in members else 0 for j in range(n)))
    # TOP and BOT map to themselves, keeping proved/failed states stable.
    body_rows.append(_unit_row(width, top_i))
    body_rows.append(_unit_row(width, bot_i))

    return CompiledProgram(
        table=table,
        head_matrix=identity_matrix(width),
        body_matrix=tuple(body_rows),
        rule_matrix=tuple(rule_rows),
        fact_heads=frozenset(fact_heads),
    )


def _unit_row(size: int, position: int) -> Vector:
    return tuple(1 if j == position else 0 for j in range(size))


def _indicator_row(size: int, positions: Iterable[int]) -> Vector:
    marked = set(positions)
    return tuple(1 if j in marked else 0 for j in range(size))


# ---------------------------------------------------------------------------
# Vector encoding and decoding
# ---------------------------------------------------------------------------

def vectorize_query(atoms: Iterable[str], table: SymbolTable) -> Vector:
    """0/1 indicator of a nonempty atom set, over all n+2 dimensions."""
    indices = {table.index_of(a) for a in atoms}
    if not indices:
        raise ValueError("empty query")
    return _indicator_row(table.width, indices)


def vectorize_interpretation(symbols: Iterable[str], table: SymbolTable) -> Vector:
    """0/1 indicator of a symbol set over the n symbol dimensions only."""
    indices = set()
    for s in symbols:
        if s in (TOP, BOT):
            raise UnknownSymbolError(atom_name(s))
        indices.add(table.index_of(s))
    return _indicator_row(table.n, indices)


def devectorize(vector: Sequence, table: SymbolTable) -> frozenset[str]:
    """Atom set whose indicator is `vector`; inverse of the vectorizers.

    Accepts either width: n+2 entries decode to atoms (possibly TOP/BOT),
    n entries decode to proper symbols.
    """
    if len(vector) == table.width:
        lookup = table.atom_at
    elif len(vector) == table.n:
        lookup = lambda i: table.symbols[i]
    else:
        raise ValueError(
            f"vector length {len(vector)} matches neither {table.n} nor {table.width}"
        )
    out = []
    for i, x in enumerate(vector):
        if x == 1:
            out.append(lookup(i))
        elif x != 0:
            raise NonBooleanVectorError(f"entry {i} is {x!r}, not 0 or 1")
    return frozenset(out)
