"""Reference symbolic engines: goal reduction, consequences, least model.

Everything here works directly on atom sets and clause lookups, with no
vectors or matrices anywhere, so it serves as the ground truth the attention
engine is tested against.
"""

from __future__ import annotations

from typing import Iterable

from .engine import Status
from .program import BOT, TOP, Program

DEFAULT_MAX_STEPS = 1000


class FixpointNotReachedError(RuntimeError):
    """least_model was capped before the iteration stabilized."""


def symbolic_topdown_step(query: frozenset[str], program: Program) -> frozenset[str]:
    """Replace every atom by the body of its defining clause and re-union.

    TOP and BOT reproduce themselves; set union is the idempotence
    simplification.
    """
    out: set[str] = set()
    for atom in query:
        if atom in (TOP, BOT):
            out.add(atom)
        else:
            out |= program.clause_for(atom).body
    return frozenset(out)


def symbolic_topdown(
    query: frozenset[str],
    program: Program,
    max_steps: int = DEFAULT_MAX_STEPS,
    truncate_failure: bool = True,
) -> tuple[Status, list[frozenset[str]]]:
    """Full goal reduction; returns the status and every visited query.

    Classification matches the attention engine: proved on exactly {true},
    failed the moment false appears (unless truncate_failure is off, in
    which case iteration continues until a state repeats), diverged on a
    repeated state or an exhausted step budget.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    states = [frozenset(query)]
    seen = {states[0]: 0}
    failed = BOT in states[0]
    status = None

    if states[0] == frozenset((TOP,)):
        status = Status.PROVED
    elif failed and truncate_failure:
        status = Status.FAILED

    while status is None and len(states) <= max_steps:
        q = symbolic_topdown_step(states[-1], program)
        states.append(q)
        failed = failed or BOT in q
        if q == frozenset((TOP,)) and not failed:
            status = Status.PROVED
        elif failed and truncate_failure:
            status = Status.FAILED
        elif q in seen:
            status = Status.FAILED if failed else Status.DIVERGED
        else:
            seen[q] = len(states) - 1

    if status is None:
        status = Status.FAILED if failed else Status.DIVERGED
    return status, states


def symbolic_tp(interpretation: Iterable[str], program: Program) -> frozenset[str]:
    """Immediate-consequence operator: heads whose bodies hold in I.

    Facts always fire; false bodies never do.  Note the result need not
    contain I itself.
    """
    held = frozenset(interpretation)
    out = set()
    for clause in program.clauses:
        if clause.is_fact or (not clause.is_failure and clause.body <= held):
            out.add(clause.head)
    return frozenset(out)


def least_model(program: Program, max_steps: int | None = None) -> frozenset[str]:
    """Iterate the consequence operator from the empty set to stabilization.

    Monotonicity bounds the iteration by the symbol count; max_steps is only
    a guard for callers that insist on a cap.
    """
    if max_steps is not None and max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    interp: frozenset[str] = frozenset()
    applications = 0
    while max_steps is None or applications < max_steps:
        nxt = symbolic_tp(interp, program)
        applications += 1
        if nxt == interp:
            return interp
        interp = nxt
    raise FixpointNotReachedError(f"no fixpoint within {max_steps} steps")
