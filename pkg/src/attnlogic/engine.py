"""Inference by iterated attention steps.

Top-down proving runs layers of hardmax attention followed by an entrywise
Heaviside step: the query vector picks out clause heads (keys are the
identity), the attended value is the average of their body rows, and the
Heaviside step turns "appears with any positive weight" back into a 0/1
query vector.  Bottom-up model computation runs attention with the identity
activation against the rule matrix and thresholds at exactly 1, so a head
fires iff its body is fully satisfied.

All arithmetic is exact (ints and Fractions); termination never depends on
a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .compiler import (
    CompiledProgram,
    Matrix,
    Vector,
    devectorize,
    identity_matrix,
    vectorize_query,
)
from .program import BOT, TOP, SymbolTable, atom_name

DEFAULT_MAX_STEPS = 1000


class Status(Enum):
    """Terminal classification of a derivation."""

    PROVED = "proved"      # top-down state became exactly {true}
    FAILED = "failed"      # false entered the derived query
    DIVERGED = "diverged"  # a state repeated, or max_steps ran out
    FIXPOINT_REACHED = "fixpoint"


# ---------------------------------------------------------------------------
# Attention primitives
# ---------------------------------------------------------------------------

def hardmax(scores: Sequence) -> tuple:
    """Weight 1/M on each of the M maximal entries, 0 elsewhere.

    Comparisons are exact, so ties are ties and near-ties are not.
    """
    if not scores:
        raise ValueError("hardmax of an empty score vector")
    top = max(scores)
    count = sum(1 for s in scores if s == top)
    weight = Fraction(1, count)
    return tuple(weight if s == top else 0 for s in scores)


def _dot(u: Sequence, v: Sequence):
    total = 0
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


def attention(query: Sequence, keys: Matrix, values: Matrix, activation: str = "hardmax") -> Vector:
    """One attention application: weigh value rows by activated key scores.

    activation "hardmax" averages the value rows of the maximal-score keys;
    "identity" uses the raw scores as weights (no normalization at all).
    """
    if not keys or len(keys) != len(values):
        raise ValueError("keys and values must be nonempty and equal in number")
    if len(query) != len(keys[0]):
        raise ValueError(f"query has {len(query)} dims, keys have {len(keys[0])}")
    scores = [_dot(query, row) for row in keys]
    cols = len(values[0])

    if activation == "hardmax":
        weights = hardmax(scores)
        # Every nonzero hardmax weight is the same 1/M, so the weighted sum
        # of rows is the plain row sum scaled once.  Exact and much cheaper.
        weight = None
        sums = [0] * cols
        for w, row in zip(weights, values):
            if w:
                weight = w
                for j, v in enumerate(row):
                    if v:
                        sums[j] += v
        return tuple(weight * s if s else 0 for s in sums)

    if activation == "identity":
        out = [0] * cols
        for s, row in zip(scores, values):
            if s:
                for j, v in enumerate(row):
                    if v:
                        out[j] += s * v
        return tuple(out)

    raise ValueError(f"unknown activation {activation!r}")


def heaviside(vector: Sequence) -> Vector:
    """Entrywise: strictly positive -> 1, else 0."""
    return tuple(1 if x > 0 else 0 for x in vector)


def threshold_at_one(vector: Sequence) -> Vector:
    """Entrywise: x >= 1 -> 1, else 0 (exact comparison)."""
    return tuple(1 if x >= 1 else 0 for x in vector)


# ---------------------------------------------------------------------------
# Single steps
# ---------------------------------------------------------------------------

def topdown_step(query_vector: Sequence, compiled: CompiledProgram) -> Vector:
    """One goal-reduction layer: replace every atom by its clause body."""
    attended = attention(
        query_vector, compiled.head_matrix, compiled.body_matrix, "hardmax"
    )
    return heaviside(attended)


def bottomup_step(interpretation: Sequence, compiled: CompiledProgram) -> Vector:
    """One consequence layer: a head fires iff its body is satisfied.

    A fact's rule row is its own diagonal, so facts persist once present but
    do not ignite from an empty interpretation; seeding is the iterator's job.
    """
    n = compiled.table.n
    attended = attention(
        interpretation, compiled.rule_matrix, identity_matrix(n), "identity"
    )
    return threshold_at_one(attended)


# ---------------------------------------------------------------------------
# Traces and full derivations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TraceStep:
    pre: Vector          # attention output, exact rationals
    post: Vector         # 0/1 state after the activation step
    decoded: frozenset[str]


@dataclass(frozen=True)
class DerivationTrace:
    mode: str  # "topdown" | "bottomup"
    status: Status
    table: SymbolTable
    initial: Vector
    steps: tuple[TraceStep, ...]
    cycle_start: int | None = None  # index of the first visit of the repeated state

    @property
    def step_count(self) -> int:
        return len(self.steps)

    @property
    def initial_decoded(self) -> frozenset[str]:
        return devectorize(self.initial, self.table)

    @property
    def final_decoded(self) -> frozenset[str]:
        if self.steps:
            return self.steps[-1].decoded
        return self.initial_decoded

    def decoded_sequence(self) -> list[frozenset[str]]:
        """All visited states: the start followed by every step result."""
        return [self.initial_decoded] + [s.decoded for s in self.steps]

    def to_json_dict(self) -> dict:
        ordered = self.table.index_of
        doc = {
            "mode": self.mode,
            "status": self.status.value,
            "steps": [
                {
                    "pre": [str(x) for x in step.pre],
                    "post": list(step.post),
                    "decoded": [
                        atom_name(a) for a in sorted(step.decoded, key=ordered)
                    ],
                }
                for step in self.steps
            ],
        }
        if self.cycle_start is not None:
            doc["cycle_start"] = self.cycle_start
        return doc


def topdown_derive(
    query: Iterable[str],
    compiled: CompiledProgram,
    max_steps: int = DEFAULT_MAX_STEPS,
    truncate_failure: bool = True,
) -> DerivationTrace:
    """Iterate top-down steps from a query until proved, failed, or diverged.

    Stops as soon as the state equals {true} (proved), as soon as false
    appears (failed; pass truncate_failure=False to keep stepping until the
    state repeats), or when a state repeats / max_steps runs out (diverged).
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    table = compiled.table
    vector = vectorize_query(query, table)
    decoded = devectorize(vector, table)

    steps: list[TraceStep] = []
    seen = {vector: 0}
    failed = BOT in decoded
    status = None
    cycle_start = None

    if decoded == frozenset((TOP,)):
        status = Status.PROVED
    elif failed and truncate_failure:
        status = Status.FAILED

    while status is None and len(steps) < max_steps:
        pre = attention(vector, compiled.head_matrix, compiled.body_matrix, "hardmax")
        post = heaviside(pre)
        decoded = devectorize(post, table)
        steps.append(TraceStep(pre, post, decoded))
        failed = failed or BOT in decoded

        if decoded == frozenset((TOP,)) and not failed:
            status = Status.PROVED
        elif failed and truncate_failure:
            status = Status.FAILED
        elif post in seen:
            cycle_start = seen[post]
            status = Status.FAILED if failed else Status.DIVERGED
        else:
            seen[post] = len(steps)
        vector = post

    if status is None:  # max_steps exhausted before any terminal condition
        status = Status.FAILED if failed else Status.DIVERGED

    return DerivationTrace(
        mode="topdown",
        status=status,
        table=table,
        initial=vectorize_query(query, table),
        steps=tuple(steps),
        cycle_start=cycle_start,
    )


def bottomup_fixpoint(
    compiled: CompiledProgram, max_steps: int = DEFAULT_MAX_STEPS
) -> DerivationTrace:
    """Iterate bottom-up steps from the facts until the model stabilizes.

    Each iteration re-unions the fact seed, so the sequence grows
    monotonically and stabilizes within n productive steps.  Only productive
    steps are recorded; the application that confirms the fixpoint is not a
    step of the derivation.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    table = compiled.table
    n = table.n
    seed = tuple(1 if i in compiled.fact_heads else 0 for i in range(n))
    values = identity_matrix(n)

    steps: list[TraceStep] = []
    vector = seed
    status = Status.DIVERGED
    for _ in range(max_steps):
        pre = attention(vector, compiled.rule_matrix, values, "identity")
        post = tuple(
            1 if f or s else 0 for f, s in zip(threshold_at_one(pre), seed)
        )
        if post == vector:
            status = Status.FIXPOINT_REACHED
            break
        steps.append(TraceStep(pre, post, devectorize(post, table)))
        vector = post

    return DerivationTrace(
        mode="bottomup",
        status=status,
        table=table,
        initial=seed,
        steps=tuple(steps),
    )
