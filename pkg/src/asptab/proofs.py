"""Independent proof checkers for tableau and (extended) resolution proofs.

The tableau checker re-derives every entry's justification from scratch
against the calculus semantics; it shares no propagation code with the
engine.  The resolution checker validates each step against the
resolution rule and knows the tree-likeness and extension disciplines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .cnf import ClauseSet
from .engine import TableauProof
from .program import BOT, Body, ExtensionSet, Lit, Program, combine, extend
from .semantics import _strongly_connected_nonzero, dependency_edges


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str = ""
    at: int = -1

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "VALID"
        loc = f" (entry {self.at})" if self.at >= 0 else ""
        return f"INVALID: {self.reason}{loc}"


VALID = CheckResult(True)


def _invalid(reason: str, at: int = -1) -> CheckResult:
    return CheckResult(False, reason, at)


# -- resolution proofs -----------------------------------------------------


class ResStep(NamedTuple):
    """One proof line: an initial clause (p1 == p2 == -1) or a resolvent."""

    clause: frozenset[int]
    p1: int = -1
    p2: int = -1

    @property
    def is_initial(self) -> bool:
        return self.p1 < 0


class ExtensionTriple(NamedTuple):
    """Definition x == l1 & l2 over a fresh variable x."""

    var: int
    l1: int
    l2: int

    @property
    def clauses(self) -> tuple[frozenset[int], ...]:
        return (
            frozenset({self.var, -self.l1, -self.l2}),
            frozenset({-self.var, self.l1}),
            frozenset({-self.var, self.l2}),
        )


@dataclass(frozen=True)
class ResolutionProof:
    steps: tuple[ResStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def final(self) -> frozenset[int]:
        return self.steps[-1].clause if self.steps else frozenset()

    def is_refutation(self) -> bool:
        return bool(self.steps) and not self.steps[-1].clause


def _clause_pool(clauses) -> set[frozenset[int]]:
    if isinstance(clauses, ClauseSet):
        return set(clauses.clauses)
    return {frozenset(c) for c in clauses}


def _check_resolvent(c1, c2, res) -> bool:
    for l in c1:
        if -l in c2 and (c1 | c2) - {l, -l} == res:
            return True
    return False


def check_res_proof(
    clauses, proof: ResolutionProof, require_refutation: bool = False
) -> CheckResult:
    """Validate a resolution derivation step by step."""
    pool = _clause_pool(clauses)
    for i, step in enumerate(proof.steps):
        if step.is_initial:
            if step.clause not in pool:
                return _invalid("initial clause not in the input set", i)
            continue
        if not (0 <= step.p1 < i and 0 <= step.p2 < i):
            return _invalid("parent reference out of range", i)
        c1 = proof.steps[step.p1].clause
        c2 = proof.steps[step.p2].clause
        if not _check_resolvent(c1, c2, step.clause):
            return _invalid("not a resolvent of its parents", i)
    if require_refutation and not proof.is_refutation():
        return _invalid("derivation does not end in the empty clause")
    return VALID


def is_tree_like(proof: ResolutionProof) -> bool:
    """Every derived clause is used as a parent at most once."""
    uses: dict[int, int] = {}
    for step in proof.steps:
        if not step.is_initial:
            uses[step.p1] = uses.get(step.p1, 0) + 1
            uses[step.p2] = uses.get(step.p2, 0) + 1
    return all(
        n <= 1 for idx, n in uses.items() if not proof.steps[idx].is_initial
    )


def check_eres_proof(
    clauses,
    triples: Iterable[ExtensionTriple],
    proof: ResolutionProof,
    require_refutation: bool = False,
) -> CheckResult:
    """Validate an extended-resolution proof: triples first, then steps."""
    if isinstance(clauses, ClauseSet):
        known_vars = set(range(1, clauses.num_vars + 1))
    else:
        known_vars = {abs(l) for c in clauses for l in c}
    pool = _clause_pool(clauses)
    for k, t in enumerate(triples):
        if t.var in known_vars:
            return _invalid(f"extension variable {t.var} is not fresh", k)
        if abs(t.l1) not in known_vars or abs(t.l2) not in known_vars:
            return _invalid(f"extension literals of {t.var} over unknown variables", k)
        if abs(t.l1) == t.var or abs(t.l2) == t.var:
            return _invalid(f"extension variable {t.var} defined circularly", k)
        known_vars.add(t.var)
        pool.update(t.clauses)
    return check_res_proof(pool, proof, require_refutation)


# -- tableau proofs --------------------------------------------------------


class _TableauChecker:
    def __init__(self, program: Program, ext: ExtensionSet, proof: TableauProof):
        self.proof = proof
        self.combined = combine(program, ext)
        self.atoms = set(self.combined.atoms)
        self.bodies = set(self.combined.bodies)
        self.edges = dependency_edges(self.combined)
        self._undo: list[tuple[object, bool | None]] = []

    def run(self) -> CheckResult:
        recs = self.proof.records
        if not recs:
            return _invalid("empty proof")
        kids: dict[int, list[int]] = {}
        for i, r in enumerate(recs):
            if i == 0:
                if r.parent != -1 or r.rule != "root" or r.obj != BOT or r.sign:
                    return _invalid("first record must be the root entry for falsity", 0)
                continue
            if not 0 <= r.parent < i:
                return _invalid("parent reference out of range", i)
            kids.setdefault(r.parent, []).append(i)
        for parent, ch in kids.items():
            cuts = [i for i in ch if recs[i].rule == "cut"]
            if cuts and len(ch) != 2:
                return _invalid("cut must produce exactly two sibling branches", ch[0])
            if len(ch) == 2:
                a, b = (recs[i] for i in ch)
                if not (
                    a.rule == "cut"
                    and b.rule == "cut"
                    and a.obj == b.obj
                    and a.sign != b.sign
                ):
                    return _invalid(
                        "two children must be complementary cut entries", ch[0]
                    )
            elif len(ch) > 2:
                return _invalid("more than two children", ch[0])
        # iterative depth-first walk carrying the branch assignment
        state: dict[object, bool] = {}
        on_branch: set[int] = set()
        stack: list[tuple[int, bool, bool]] = [(0, False, False)]
        while stack:
            rid, contradictory, exiting = stack.pop()
            rec = recs[rid]
            if exiting:
                obj, old = self._undo.pop()
                if old is None:
                    del state[obj]
                else:
                    state[obj] = old
                on_branch.discard(rid)
                continue
            if rid != 0:
                err = self._justify(rid, state, on_branch)
                if err is not None:
                    return err
            prev = state.get(rec.obj)
            if prev is not None and prev != rec.sign:
                contradictory = True
            self._undo.append((rec.obj, prev))
            state[rec.obj] = rec.sign
            on_branch.add(rid)
            stack.append((rid, contradictory, True))
            children = kids.get(rid, ())
            if not children:
                if not contradictory:
                    return _invalid("open leaf: branch is not contradictory", rid)
                continue
            for c in reversed(children):
                stack.append((c, contradictory, False))
        return VALID

    # -- justification checks ---------------------------------------------

    def _entry(self, rid):
        r = self.proof.records[rid]
        return r.obj, r.sign

    def _premise_entries(self, rec, on_branch, rid):
        for p in rec.premises:
            if p not in on_branch:
                return None
        return [self._entry(p) for p in rec.premises]

    def _justify(self, rid, state, on_branch) -> CheckResult | None:
        rec = self.proof.records[rid]
        obj, sign = rec.obj, rec.sign
        if isinstance(obj, Body):
            if obj not in self.bodies:
                return _invalid("entry over a body not in the program", rid)
        elif obj != BOT and obj not in self.atoms:
            return _invalid("entry over an unknown atom", rid)
        prems = self._premise_entries(rec, on_branch, rid)
        if prems is None:
            return _invalid("premise does not precede the entry on its branch", rid)
        rule = rec.rule
        if rule == "root":
            return _invalid("root entry repeated", rid)
        if rule == "cut":
            if obj == BOT:
                return _invalid("cut on the falsity symbol", rid)
            if state.get(obj) is not None:
                return _invalid("cut object already assigned on this branch", rid)
            return None
        check = getattr(self, "_rule_" + rule, None)
        if check is None:
            return _invalid(f"unknown rule id {rule!r}", rid)
        msg = check(obj, sign, prems, rec.witness)
        if msg is not None:
            return _invalid(msg, rid)
        return None

    @staticmethod
    def _covers_literals(body: Body, prems) -> bool:
        """Premises include t(l) for every literal l of the body."""
        have = {(o, s) for o, s in prems if not isinstance(o, Body)}
        return all((l.atom, l.positive) in have for l in body.literals)

    def _rule_b(self, obj, sign, prems, witness):
        if not isinstance(obj, Body) or not sign:
            return "forward-true-body must conclude a true body"
        if not self._covers_literals(obj, prems):
            return "missing a premise for some body literal"
        return None

    def _rule_c(self, obj, sign, prems, witness):
        if isinstance(obj, Body):
            return "backward-false-body must conclude on an atom"
        bodies = [o for o, s in prems if isinstance(o, Body) and not s]
        for b in bodies:
            lit = Lit(obj, not sign)  # concluded f(l): positive literal goes F
            if lit not in b.literals:
                continue
            rest = Body.of(l for l in b.literals if l != lit)
            if self._covers_literals(rest, prems):
                return None
        return "no false-body premise supports this conclusion"

    def _rule_d(self, obj, sign, prems, witness):
        if isinstance(obj, Body) or not sign:
            return "forward-true-atom must conclude a true atom"
        for o, s in prems:
            if isinstance(o, Body) and s and obj in self.combined.heads_of(o):
                return None
        return "no true rule body with this head among the premises"

    def _rule_e(self, obj, sign, prems, witness):
        if not isinstance(obj, Body) or sign:
            return "backward-false-atom must conclude a false body"
        for o, s in prems:
            if not isinstance(o, Body) and not s and o in self.combined.heads_of(obj):
                return None
        return "no false head of this body among the premises"

    def _rule_f(self, obj, sign, prems, witness):
        if not isinstance(obj, Body) or sign:
            return "forward-false-body must conclude a false body"
        for o, s in prems:
            if not isinstance(o, Body) and Lit(o, not s) in obj.literals:
                return None
        return "no falsified literal of this body among the premises"

    def _rule_g(self, obj, sign, prems, witness):
        if isinstance(obj, Body):
            return "backward-true-body must conclude on an atom"
        for o, s in prems:
            if isinstance(o, Body) and s and Lit(obj, sign) in o.literals:
                return None
        return "no true body containing this literal among the premises"

    def _false_premise_bodies(self, prems) -> set[Body]:
        return {o for o, s in prems if isinstance(o, Body) and not s}

    def _rule_hs(self, obj, sign, prems, witness):
        if isinstance(obj, Body) or sign:
            return "forward-false-atom must conclude a false atom"
        fb = self._false_premise_bodies(prems)
        missing = set(self.combined.rules_for(obj)) - fb
        if missing:
            return "not all rule bodies of the head are falsified by premises"
        return None

    def _rule_is(self, obj, sign, prems, witness):
        if not isinstance(obj, Body) or not sign:
            return "backward-true-atom must conclude a true body"
        fb = self._false_premise_bodies(prems)
        for o, s in prems:
            if isinstance(o, Body) or not s:
                continue
            bodies = set(self.combined.rules_for(o))
            if obj in bodies and bodies - {obj} <= fb:
                return None
        return "premises do not isolate this body as the last support"

    def _check_unfounded(self, witness, excluded: set[Body]) -> str | None:
        if not witness:
            return "missing unfounded-set witness"
        u = set(witness)
        if not u <= self.atoms:
            return "witness mentions unknown atoms"
        for r in self.combined:
            if r.head in u and r.body not in excluded:
                if not set(r.body.pos) & u:
                    return "witness set has an external body not excluded by premises"
        return None

    def _rule_hw(self, obj, sign, prems, witness):
        if isinstance(obj, Body) or sign:
            return "well-founded negation must conclude a false atom"
        if witness is None or obj not in witness:
            return "concluded atom not in the unfounded-set witness"
        fb = self._false_premise_bodies(prems)
        return self._check_unfounded(witness, fb)

    def _rule_iw(self, obj, sign, prems, witness):
        if not isinstance(obj, Body) or not sign:
            return "well-founded justification must conclude a true body"
        if witness is None:
            return "missing unfounded-set witness"
        heads = [o for o, s in prems if not isinstance(o, Body) and s]
        if not any(h in witness for h in heads):
            return "no true-atom premise inside the witness set"
        fb = self._false_premise_bodies(prems) | {obj}
        return self._check_unfounded(witness, fb)

    def _loop_ok(self, witness) -> bool:
        if not witness:
            return False
        sub = set(witness)
        if not sub <= self.atoms:
            return False
        return _strongly_connected_nonzero(sub, self.edges)

    def _eb(self, loop: set[str]) -> set[Body]:
        return {
            r.body
            for r in self.combined
            if r.head in loop and not (set(r.body.pos) & loop)
        }

    def _rule_hl(self, obj, sign, prems, witness):
        if isinstance(obj, Body) or sign:
            return "forward-loop must conclude a false atom"
        if witness is None or obj not in witness:
            return "concluded atom not in the loop witness"
        if not self._loop_ok(witness):
            return "witness is not a loop of the program"
        fb = self._false_premise_bodies(prems)
        if self._eb(set(witness)) != fb:
            return "premises are not exactly the external bodies of the loop"
        return None

    def _rule_il(self, obj, sign, prems, witness):
        if not isinstance(obj, Body) or not sign:
            return "backward-loop must conclude a true body"
        if witness is None or not self._loop_ok(witness):
            return "witness is not a loop of the program"
        heads = [o for o, s in prems if not isinstance(o, Body) and s]
        if not any(h in witness for h in heads):
            return "no true-atom premise inside the loop"
        fb = self._false_premise_bodies(prems)
        if self._eb(set(witness)) != fb | {obj}:
            return "premises plus conclusion are not exactly the loop's external bodies"
        return None


def check_tableau_proof(
    program: Program, extension: ExtensionSet | None, proof: TableauProof
) -> CheckResult:
    """Re-validate a tableau proof independently of the engine.

    Checks the extension chain (freshness, known literals), every entry's
    justification against the deduction-rule semantics, the cut pairing,
    and that every leaf branch is contradictory.
    """
    ext = extension if extension is not None else proof.extension
    try:
        extend(program, ExtensionSet(), ext.rules)
    except ValueError as exc:
        return _invalid(f"illegal extension chain: {exc}")
    return _TableauChecker(program, ext, proof).run()
