"""Clause sets over integer-indexed Boolean variables.

Literals are DIMACS-style signed ints: ``v`` positive, ``-v`` negative.
A clause is a frozenset of literals.  Variable 0 is never used.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Sequence

Clause = frozenset


def clause(*lits: int) -> frozenset[int]:
    return frozenset(lits)


class ClauseSet:
    """A CNF formula: clauses plus a variable table with printable names."""

    __slots__ = ("clauses", "num_vars", "names")

    def __init__(
        self,
        clauses: Iterable[frozenset[int]],
        num_vars: int | None = None,
        names: Sequence[str] | None = None,
    ):
        self.clauses: tuple[frozenset[int], ...] = tuple(
            frozenset(c) for c in clauses
        )
        max_used = max((abs(l) for c in self.clauses for l in c), default=0)
        self.num_vars = num_vars if num_vars is not None else max_used
        if max_used > self.num_vars:
            raise ValueError(
                f"clause mentions variable {max_used} above num_vars={self.num_vars}"
            )
        if names is None:
            names = [str(i) for i in range(1, self.num_vars + 1)]
        if len(names) != self.num_vars:
            raise ValueError("need exactly one name per variable")
        self.names = tuple(names)
        for c in self.clauses:
            if 0 in c:
                raise ValueError("literal 0 is not allowed")

    def validate(self) -> list[str]:
        """Warn (not reject) about tautological clauses."""
        issues = []
        for i, c in enumerate(self.clauses):
            if any(-l in c for l in c):
                issues.append(f"clause {i} contains both polarities of a variable")
        for msg in issues:
            warnings.warn(msg, stacklevel=2)
        return issues

    def name_of(self, var: int) -> str:
        return self.names[var - 1]

    def __len__(self) -> int:
        return len(self.clauses)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClauseSet)
            and self.num_vars == other.num_vars
            and set(self.clauses) == set(other.clauses)
        )

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.clauses)))


def satisfies(clauses: Iterable[frozenset[int]], assignment: dict[int, bool]) -> bool:
    """Total-assignment satisfaction check."""
    for c in clauses:
        if not any(assignment.get(abs(l), False) == (l > 0) for l in c):
            return False
    return True


def enumerate_assignments(cs: ClauseSet, var_limit: int = 20) -> list[dict[int, bool]]:
    """All satisfying total assignments, by brute force (test oracle)."""
    if cs.num_vars > var_limit:
        raise ValueError(
            f"{cs.num_vars} variables is above the enumeration limit {var_limit}"
        )
    out = []
    for bits in range(1 << cs.num_vars):
        tau = {v: bool((bits >> (v - 1)) & 1) for v in range(1, cs.num_vars + 1)}
        if satisfies(cs.clauses, tau):
            out.append(tau)
    return out


def count_assignments(cs: ClauseSet, var_limit: int = 20) -> int:
    return len(enumerate_assignments(cs, var_limit))
