"""Faithful translations between clause sets and normal logic programs.

``to_asp`` encodes a CNF so that stable models of the output correspond
one-to-one with satisfying assignments.  ``to_cnf`` emits the clausal
completion of a program, which characterizes its stable models exactly
when the program is tight.  Both directions return a name map realizing
the model correspondence.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .cnf import ClauseSet, satisfies
from .program import BOT, Body, Program, Rule, natural_key
from .semantics import is_stable


@dataclass
class AspNames:
    """Names introduced by to_asp: per-variable atom pairs and clause atoms."""

    pos_atom: dict[str, str] = field(default_factory=dict)  # var name -> a_x
    neg_atom: dict[str, str] = field(default_factory=dict)  # var name -> complement
    clause_atom: dict[int, str] = field(default_factory=dict)  # clause idx -> c_i

    def var_of_atom(self, atom: str) -> str | None:
        for x, a in self.pos_atom.items():
            if a == atom:
                return x
        return None


@dataclass
class CnfNames:
    """Variable ids assigned by to_cnf to atoms and bodies."""

    atom_var: dict[str, int] = field(default_factory=dict)
    body_var: dict[Body, int] = field(default_factory=dict)

    def lit_of(self, atom: str, positive: bool = True) -> int:
        v = self.atom_var[atom]
        return v if positive else -v


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def to_asp(cs: ClauseSet) -> tuple[Program, AspNames]:
    """Encode a clause set as a normal logic program.

    Per variable x: a guessing pair  a_x <- not a_x'.  a_x' <- not a_x.
    Per clause C:   a constraint     :- not c,  plus c <- a_x for each
    positive and c <- not a_x for each negative literal of C.
    """
    if cs.num_vars == 0:
        raise ValueError("clause set has no variables")
    names = AspNames()
    taken: set[str] = set()
    for v in range(1, cs.num_vars + 1):
        x = cs.name_of(v)
        names.pos_atom[x] = _fresh(f"a_{x}", taken)
        names.neg_atom[x] = _fresh(f"a_{x}'", taken)

    seen: dict[frozenset[int], int] = {}
    kept: list[tuple[int, frozenset[int]]] = []
    for i, c in enumerate(cs.clauses, start=1):
        if c in seen:
            warnings.warn(f"duplicate clause {i} dropped (same as {seen[c]})")
            continue
        seen[c] = i
        kept.append((i, c))
        names.clause_atom[i] = _fresh(f"c{i}", taken)

    rules: list[Rule] = []
    for v in range(1, cs.num_vars + 1):
        x = cs.name_of(v)
        a, na = names.pos_atom[x], names.neg_atom[x]
        rules.append(Rule(a, Body.make(neg=[na])))
        rules.append(Rule(na, Body.make(neg=[a])))
    for i, _ in kept:
        rules.append(Rule(BOT, Body.make(neg=[names.clause_atom[i]])))
    for i, c in kept:
        ca = names.clause_atom[i]
        for lit in sorted(c, key=abs):
            a = names.pos_atom[cs.name_of(abs(lit))]
            if lit > 0:
                rules.append(Rule(ca, Body.make(pos=[a])))
            else:
                rules.append(Rule(ca, Body.make(neg=[a])))
    return Program(rules), names


def _conj_clauses(var: int, lits: list[int]) -> list[frozenset[int]]:
    """var <-> AND(lits) as clauses; the long clause first."""
    out = [frozenset([var] + [-l for l in lits])]
    out.extend(frozenset([-var, l]) for l in lits)
    return out


def _disj_clauses(var: int, lits: list[int]) -> list[frozenset[int]]:
    """var <-> OR(lits) as clauses; short clauses first, long clause last."""
    out = [frozenset([var, -l]) for l in lits]
    out.append(frozenset([-var] + lits))
    return out


def to_cnf(program: Program) -> tuple[ClauseSet, CnfNames]:
    """Clausal completion of a program.

    One variable per atom and per distinct body.  Emits, in order: the
    body definitions (x_B <-> conjunction of body literals), unit clauses
    forbidding bodies of constraints, the head definitions
    (x_h <-> disjunction of its rule bodies), and unit clauses forcing
    headless atoms false.  Faithful for tight programs only.
    """
    for r in program:
        if BOT in r.body.atoms:
            raise ValueError("falsity symbol inside a rule body is not translatable")
    names = CnfNames()
    var_names: list[str] = []
    for a in program.atoms:
        names.atom_var[a] = len(var_names) + 1
        var_names.append(f"x@atom:{a}")
    for b in program.bodies:
        names.body_var[b] = len(var_names) + 1
        var_names.append(f"x@body:{b.text()}")

    clauses: list[frozenset[int]] = []
    for b in program.bodies:
        lits = [names.atom_var[a] for a in b.pos] + [
            -names.atom_var[a] for a in b.neg
        ]
        clauses.extend(_conj_clauses(names.body_var[b], lits))
    for b in program.rules_for(BOT):
        clauses.append(frozenset([-names.body_var[b]]))
    for h in program.atoms:
        bodies = program.rules_for(h)
        if bodies:
            clauses.extend(
                _disj_clauses(names.atom_var[h], [names.body_var[b] for b in bodies])
            )
        else:
            clauses.append(frozenset([-names.atom_var[h]]))
    return ClauseSet(clauses, num_vars=len(var_names), names=var_names), names


def sat_model_from_stable(
    names: AspNames,
    model: frozenset[str],
    program: Program | None = None,
) -> dict[str, bool]:
    """Read a truth assignment off a stable model of a to_asp program."""
    if program is not None and not is_stable(program, model):
        raise ValueError("not a stable model of the translated program")
    return {x: (a in model) for x, a in names.pos_atom.items()}


def stable_from_sat_model(
    names: CnfNames,
    assignment: dict[int, bool],
    comp: ClauseSet | None = None,
) -> frozenset[str]:
    """Read a stable model off a satisfying assignment of a completion.

    Sound only when the source program is tight.
    """
    if comp is not None and not satisfies(comp.clauses, assignment):
        raise ValueError("assignment does not satisfy the completion")
    return frozenset(a for a, v in names.atom_var.items() if assignment.get(v, False))


def map_models(direction: str, value, names, artifact=None):
    """Dispatch helper for the two model mappings.

    direction "to-sat": value is a stable model of a to_asp output
    (artifact: that program) -> variable assignment keyed by name.
    direction "to-asp": value is an assignment of a to_cnf output
    (artifact: the completion) -> stable model of the source program.
    """
    if direction == "to-sat":
        return sat_model_from_stable(names, frozenset(value), artifact)
    if direction == "to-asp":
        return stable_from_sat_model(names, value, artifact)
    raise ValueError(f"unknown direction {direction!r}")
