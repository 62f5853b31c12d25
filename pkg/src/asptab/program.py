"""Ground normal logic programs: atoms, default literals, bodies, rules.

Atoms are interned strings.  The distinguished pseudo-atom ``BOT`` stands
for falsity; it is a legal rule head (a constraint) but never counts as a
program atom.  Bodies are canonicalized sets of default literals, so two
structurally equal bodies are the same object as far as equality and
hashing are concerned.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

# Pseudo-atom for falsity.  The token cannot be produced by the program
# grammar, so it never collides with a user atom.
BOT = "_|_"

_NUM_RE = re.compile(r"(\d+)")


def natural_key(name: str):
    """Sort key that orders embedded integers numerically (p2 < p10)."""
    parts = _NUM_RE.split(name)
    return tuple((1, p) if i % 2 == 0 else (0, int(p)) for i, p in enumerate(parts))


class Lit(NamedTuple):
    """A default literal: an atom or its default negation."""

    atom: str
    positive: bool

    def negate(self) -> "Lit":
        return Lit(self.atom, not self.positive)

    def __str__(self) -> str:
        return self.atom if self.positive else "not " + self.atom


def _litkey(lit: Lit):
    return (0 if lit.positive else 1, natural_key(lit.atom))


@dataclass(frozen=True)
class Body:
    """Canonicalized rule body: positive atoms first, then negated ones."""

    pos: tuple[str, ...]
    neg: tuple[str, ...]

    @staticmethod
    def make(pos: Iterable[str] = (), neg: Iterable[str] = ()) -> "Body":
        return Body(
            tuple(sorted(set(pos), key=natural_key)),
            tuple(sorted(set(neg), key=natural_key)),
        )

    @staticmethod
    def of(lits: Iterable[Lit]) -> "Body":
        ls = list(lits)
        return Body.make(
            (l.atom for l in ls if l.positive), (l.atom for l in ls if not l.positive)
        )

    @property
    def literals(self) -> tuple[Lit, ...]:
        return tuple(Lit(a, True) for a in self.pos) + tuple(
            Lit(a, False) for a in self.neg
        )

    @property
    def atoms(self) -> frozenset[str]:
        return frozenset(self.pos) | frozenset(self.neg)

    def __len__(self) -> int:
        return len(self.pos) + len(self.neg)

    def sort_key(self):
        return tuple(_litkey(l) for l in self.literals)

    def text(self) -> str:
        """Compact no-whitespace form used in proof files and name maps."""
        items = list(self.pos) + ["~" + a for a in self.neg]
        return "{" + ",".join(items) + "}"

    def __str__(self) -> str:
        return ", ".join(str(l) for l in self.literals)


EMPTY_BODY = Body((), ())


@dataclass(frozen=True)
class Rule:
    """A normal rule ``head <- body``; an empty body makes it a fact."""

    head: str
    body: Body = EMPTY_BODY

    @property
    def is_fact(self) -> bool:
        return len(self.body) == 0

    @property
    def is_constraint(self) -> bool:
        return self.head == BOT

    def __str__(self) -> str:
        if self.is_fact:
            return ("" if self.is_constraint else self.head) + "."
        head = "" if self.is_constraint else self.head + " "
        return f"{head}:- {self.body}."


def rule(head: str, pos: Iterable[str] = (), neg: Iterable[str] = ()) -> Rule:
    return Rule(head, Body.make(pos, neg))


class Program:
    """An immutable sequence of rules with cached symbol views."""

    __slots__ = ("rules", "_atoms", "_bodies", "_rules_for", "_body_heads")

    def __init__(self, rules: Iterable[Rule] = ()):
        self.rules: tuple[Rule, ...] = tuple(rules)
        atoms: set[str] = set()
        for r in self.rules:
            if r.head != BOT:
                atoms.add(r.head)
            atoms.update(r.body.atoms)
        atoms.discard(BOT)
        self._atoms = tuple(sorted(atoms, key=natural_key))
        bodies = sorted({r.body for r in self.rules}, key=Body.sort_key)
        self._bodies = tuple(bodies)
        rules_for: dict[str, list[Body]] = {}
        body_heads: dict[Body, list[str]] = {}
        for r in self.rules:
            bs = rules_for.setdefault(r.head, [])
            if r.body not in bs:
                bs.append(r.body)
            hs = body_heads.setdefault(r.body, [])
            if r.head not in hs:
                hs.append(r.head)
        self._rules_for = {
            h: tuple(sorted(bs, key=Body.sort_key)) for h, bs in rules_for.items()
        }
        self._body_heads = {
            b: tuple(sorted(hs, key=natural_key)) for b, hs in body_heads.items()
        }

    @property
    def atoms(self) -> tuple[str, ...]:
        """atom(P): all atoms occurring in the program, BOT excluded."""
        return self._atoms

    @property
    def bodies(self) -> tuple[Body, ...]:
        """body(P): the distinct bodies, canonically ordered."""
        return self._bodies

    @property
    def heads(self) -> frozenset[str]:
        return frozenset(self._rules_for)

    def rules_for(self, head: str) -> tuple[Body, ...]:
        """body(rule(head)): the distinct bodies of rules with this head."""
        return self._rules_for.get(head, ())

    def heads_of(self, body: Body) -> tuple[str, ...]:
        return self._body_heads.get(body, ())

    def dlit(self) -> tuple[Lit, ...]:
        """All default literals over atom(P), positives first."""
        return tuple(Lit(a, True) for a in self._atoms) + tuple(
            Lit(a, False) for a in self._atoms
        )

    def union(self, other: "Program | Iterable[Rule]") -> "Program":
        extra = other.rules if isinstance(other, Program) else tuple(other)
        return Program(self.rules + tuple(extra))

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __eq__(self, other) -> bool:
        return isinstance(other, Program) and self.rules == other.rules

    def __hash__(self):
        return hash(self.rules)

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.rules)

    def validate(self) -> list[str]:
        """Non-fatal oddities: BOT used in a body, never-satisfiable bodies."""
        issues = []
        for i, r in enumerate(self.rules):
            if BOT in r.body.atoms:
                issues.append(f"rule {i}: falsity symbol occurs in a body")
            if set(r.body.pos) & set(r.body.neg):
                issues.append(f"rule {i}: body contains an atom both plain and negated")
        return issues


@dataclass(frozen=True)
class ExtensionStep:
    """One application of the extension rule: a fresh head, one or more bodies."""

    head: str
    bodies: tuple[Body, ...]

    @property
    def rules(self) -> tuple[Rule, ...]:
        return tuple(Rule(self.head, b) for b in self.bodies)


@dataclass(frozen=True)
class ExtensionSet:
    """An ordered chain of extension-rule applications.

    Heads must be fresh at their introduction point; bodies may mention
    atoms of the base program and of earlier steps.  Freshness is checked
    by :func:`extend`, not here.
    """

    steps: tuple[ExtensionStep, ...] = ()

    @property
    def rules(self) -> tuple[Rule, ...]:
        out: list[Rule] = []
        for s in self.steps:
            out.extend(s.rules)
        return tuple(out)

    @property
    def heads(self) -> tuple[str, ...]:
        return tuple(s.head for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def rule_count(self) -> int:
        return sum(len(s.bodies) for s in self.steps)


def extend(
    program: Program, ext: ExtensionSet, new_rules: Iterable[Rule]
) -> ExtensionSet:
    """Append extension steps for ``new_rules``, validating freshness.

    Rules are grouped by head: consecutive rules sharing a head form one
    (general) extension step.  Every head must be fresh with respect to
    the program, BOT, and all earlier steps; every body literal must be
    over atoms known at that point.
    """
    known = set(program.atoms) | {BOT} | set(ext.heads)
    steps = list(ext.steps)
    group_head: str | None = None
    group_bodies: list[Body] = []

    def flush():
        nonlocal group_head, group_bodies
        if group_head is not None:
            steps.append(ExtensionStep(group_head, tuple(group_bodies)))
            known.add(group_head)
            group_head, group_bodies = None, []

    for r in new_rules:
        if r.head != group_head:
            flush()
            if r.head in known:
                raise ValueError(f"extension head {r.head!r} is not fresh")
            if r.head == BOT:
                raise ValueError("extension head must not be the falsity symbol")
            group_head = r.head
        for a in r.body.atoms:
            if a not in known or a == BOT:
                raise ValueError(
                    f"extension body literal over unknown atom {a!r} in rule for {r.head!r}"
                )
        group_bodies.append(r.body)
    flush()
    return ExtensionSet(tuple(steps))


def combine(program: Program, ext: ExtensionSet) -> Program:
    """The program extended by all extension rules."""
    return Program(program.rules + ext.rules)
