"""Backtracking search for binary constraint networks.

Used by the homomorphism solvers: variables are pattern vertices,
values are target vertices, and each constraint lists the allowed
value pairs for an ordered variable pair. The search maintains arc
consistency after every assignment, picks the most constrained
variable first (ties by variable order), and tries values in sorted
order, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque
from typing import Hashable, Iterator, Sequence

from .errors import SearchBudget

Value = Hashable


@dataclass(frozen=True)
class Constraint:
    x: str
    y: str
    allowed: frozenset[tuple[Value, Value]]


def solve_csp(
    variables: Sequence[str],
    domains: dict[str, Sequence[Value]],
    constraints: Sequence[Constraint],
    budget: SearchBudget,
) -> dict[str, Value] | None:
    return next(iter_csp_solutions(variables, domains, constraints, budget), None)


def iter_csp_solutions(
    variables: Sequence[str],
    domains: dict[str, Sequence[Value]],
    constraints: Sequence[Constraint],
    budget: SearchBudget,
) -> Iterator[dict[str, Value]]:
    """Yield every solution, in deterministic order."""
    order = {v: i for i, v in enumerate(variables)}
    work: dict[str, list[Value]] = {}
    for v in variables:
        seen = set()
        column = []
        for value in domains[v]:
            if value not in seen:
                seen.add(value)
                column.append(value)
        work[v] = column

    # Unary constraints come from loops; keep binary ones per variable.
    incident: dict[str, list[Constraint]] = {v: [] for v in variables}
    binary: list[Constraint] = []
    for c in constraints:
        if c.x == c.y:
            work[c.x] = [a for a in work[c.x] if (a, a) in c.allowed]
        else:
            binary.append(c)
            incident[c.x].append(c)
            incident[c.y].append(c)

    if not _propagate(work, binary, incident, list(variables), budget):
        return
    yield from _search(variables, order, work, binary, incident, {}, budget)


def _revise(work, c: Constraint, target: str) -> bool:
    """Prune target's domain against the other end of c."""
    if target == c.x:
        other, pairs = c.y, c.allowed
        keep = [a for a in work[c.x] if any((a, b) in pairs for b in work[c.y])]
    else:
        keep = [b for b in work[c.y] if any((a, b) in c.allowed for a in work[c.x])]
        other = c.x
    changed = len(keep) != len(work[target])
    work[target] = keep
    return changed


def _propagate(work, binary, incident, dirty: list[str], budget: SearchBudget) -> bool:
    """AC-3 starting from the dirty variables; False on a wiped domain."""
    queue = deque((c, end)
                  for v in dirty for c in incident[v]
                  for end in (c.x, c.y) if end != v)
    while queue:
        budget.tick()
        c, target = queue.popleft()
        if _revise(work, c, target):
            if not work[target]:
                return False
            for c2 in incident[target]:
                neighbor = c2.y if c2.x == target else c2.x
                if neighbor != target:
                    queue.append((c2, neighbor))
    return True


def _search(variables, order, work, binary, incident, assignment, budget):
    if len(assignment) == len(variables):
        yield dict(assignment)
        return
    candidates = [v for v in variables if v not in assignment]
    var = min(candidates, key=lambda v: (len(work[v]), order[v]))
    for value in sorted(work[var]):
        budget.tick()
        saved = {v: list(work[v]) for v in variables if v not in assignment}
        work[var] = [value]
        assignment[var] = value
        if _propagate(work, binary, incident, [var], budget):
            yield from _search(variables, order, work, binary, incident,
                               assignment, budget)
        del assignment[var]
        for v, column in saved.items():
            work[v] = column
