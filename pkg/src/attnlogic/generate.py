"""Seeded random program and query generation for test corpora.

Output is grammar-valid text over symbols p1..pN in which every symbol
heads exactly one clause, so parsing it back needs zero completions.
"""

from __future__ import annotations

import random
from typing import Iterable

from .program import BOT, TOP, SymbolTable

# Per-clause body distribution; fixed so corpora mix proved, failed, and
# diverging behavior.
FACT_PROB = 0.2
FAILURE_PROB = 0.1


def random_program_text(n_symbols: int, seed: int = 0) -> str:
    """A complete random program over p1..p{n_symbols}; deterministic per seed."""
    if n_symbols < 1:
        raise ValueError("n_symbols must be >= 1")
    rng = random.Random(seed)
    names = [f"p{i}" for i in range(1, n_symbols + 1)]
    lines = []
    for name in names:
        roll = rng.random()
        if roll < FACT_PROB:
            body = "true"
        elif roll < FACT_PROB + FAILURE_PROB:
            body = "false"
        else:
            size = rng.randint(1, n_symbols)
            body = " & ".join(rng.sample(names, size))
        lines.append(f"{name} <- {body}.")
    return "\n".join(lines) + "\n"


def random_query_atoms(table: SymbolTable, rng: random.Random) -> frozenset[str]:
    """A nonempty random atom set over the table, true/false included."""
    pool = list(table.symbols) + [TOP, BOT]
    size = rng.randint(1, len(pool))
    return frozenset(rng.sample(pool, size))


def random_interpretation(
    table: SymbolTable, rng: random.Random, include: Iterable[str] = ()
) -> frozenset[str]:
    """A random symbol set containing `include` (e.g. the program's facts)."""
    chosen = {s for s in table.symbols if rng.random() < 0.5}
    return frozenset(chosen | set(include))
