"""Proof-simulation transpilers between the tableau and resolution systems.

Four directions:

  aspt_to_tres   tableau proof of a tight program  -> tree-like resolution
                 proof of its clausal completion
  tres_to_aspt   tree-like resolution refutation   -> tableau proof of the
                 clause set's program encoding
  easpt_to_eres  extended tableau proof (tight)    -> extended resolution
                 proof of the completion
  eres_to_easpt  extended resolution refutation    -> extended tableau proof
                 of the program encoding

Each output passes the matching independent checker; the constructions
follow the recursive clause/cut correspondences, with lengths linear to
quadratic in the input proof.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .cnf import ClauseSet
from .engine import ProofRecord, TableauProof
from .program import BOT, Body, ExtensionSet, Lit, Program, Rule, combine, extend
from .proofs import (
    CheckResult,
    ExtensionTriple,
    ResolutionProof,
    ResStep,
    check_eres_proof,
    check_res_proof,
    check_tableau_proof,
    is_tree_like,
)
from .semantics import is_tight
from .translate import AspNames, CnfNames, to_asp, to_cnf

_COMPLETION_RULES = {"b", "c", "d", "e", "f", "g", "hs", "is"}


class _ResBuilder:
    """Accumulates resolution steps, deduplicating initial clauses."""

    def __init__(self):
        self.steps: list[ResStep] = []
        self._initial: dict[frozenset[int], int] = {}

    def initial(self, clause: frozenset[int]) -> int:
        if clause not in self._initial:
            self.steps.append(ResStep(clause))
            self._initial[clause] = len(self.steps) - 1
        return self._initial[clause]

    def resolve(self, i: int, j: int) -> int:
        c1, c2 = self.steps[i].clause, self.steps[j].clause
        pivot = None
        for l in c1:
            if -l in c2:
                pivot = l
                break
        if pivot is None:
            raise AssertionError("resolution without a pivot")
        self.steps.append(ResStep((c1 | c2) - {pivot, -pivot}, i, j))
        return len(self.steps) - 1

    def proof(self) -> ResolutionProof:
        return ResolutionProof(tuple(self.steps))


def _litvar(names: CnfNames, lit: Lit) -> int:
    v = names.atom_var[lit.atom]
    return v if lit.positive else -v


class _CompletionClauses:
    """Per-entry deduction clauses of the completion."""

    def __init__(self, program: Program, names: CnfNames):
        self.program = program
        self.names = names

    def body_big(self, b: Body) -> frozenset[int]:
        return frozenset(
            [self.names.body_var[b]] + [-_litvar(self.names, l) for l in b.literals]
        )

    def body_small(self, b: Body, lit: Lit) -> frozenset[int]:
        return frozenset([-self.names.body_var[b], _litvar(self.names, lit)])

    def head_small(self, h: str, b: Body) -> frozenset[int]:
        if h == BOT:
            return frozenset([-self.names.body_var[b]])
        return frozenset([self.names.atom_var[h], -self.names.body_var[b]])

    def head_big(self, h: str) -> frozenset[int]:
        return frozenset(
            [-self.names.atom_var[h]]
            + [self.names.body_var[b] for b in self.program.rules_for(h)]
        )

    def for_record(self, rec: ProofRecord, records) -> frozenset[int]:
        """The completion clause refuted by flipping this deduced entry."""
        rule, obj, sign = rec.rule, rec.obj, rec.sign
        if rule == "b":
            return self.body_big(obj)
        if rule == "c":
            body = next(
                records[p].obj for p in rec.premises if isinstance(records[p].obj, Body)
            )
            return self.body_big(body)
        if rule == "d":
            body = next(
                records[p].obj for p in rec.premises if isinstance(records[p].obj, Body)
            )
            return self.head_small(obj, body)
        if rule == "e":
            head = next(
                records[p].obj
                for p in rec.premises
                if not isinstance(records[p].obj, Body)
            )
            return self.head_small(head, obj)
        if rule == "f":
            p = records[rec.premises[0]]
            return self.body_small(obj, Lit(p.obj, not p.sign))
        if rule == "g":
            body = next(
                records[p].obj for p in rec.premises if isinstance(records[p].obj, Body)
            )
            return self.body_small(body, Lit(obj, sign))
        if rule == "hs":
            return self.head_big(obj)
        if rule == "is":
            head = next(
                records[p].obj
                for p in rec.premises
                if not isinstance(records[p].obj, Body) and records[p].sign
            )
            return self.head_big(head)
        raise ValueError(
            f"rule {rule!r} has no completion counterpart; "
            "only completion-sound tableau rules can be simulated"
        )


def _obj_var(names: CnfNames, obj) -> int | None:
    if isinstance(obj, Body):
        return names.body_var[obj]
    if obj == BOT:
        return None
    return names.atom_var[obj]


def aspt_to_tres(
    program: Program, proof: TableauProof
) -> tuple[ResolutionProof, ClauseSet, CnfNames]:
    """Tableau proof of a tight program -> tree-like refutation of its
    completion.

    Walks the proof bottom-up: each closed leaf contributes the completion
    clause refuted by its final entry; each entry on the way up either
    passes the clause along (when the clause ignores it) or resolves it
    with the deduction clause of the flipped side; real cuts resolve the
    two child clauses on the cut variable.
    """
    if proof.extension.rules:
        raise ValueError("proof uses extension rules; use easpt_to_eres")
    if not is_tight(program):
        raise ValueError("refused: program is not tight")
    chk = check_tableau_proof(program, None, proof)
    if not chk:
        raise ValueError(f"input proof is invalid: {chk}")
    depth = len(proof.records) + 1000
    if sys.getrecursionlimit() < depth:
        sys.setrecursionlimit(depth)
    comp, names = to_cnf(program)
    comp_set = set(comp.clauses)
    ded = _CompletionClauses(program, names)
    records = proof.records
    kids = proof.children()
    builder = _ResBuilder()

    def falsified_lit(rec: ProofRecord) -> int | None:
        # the literal a branch entry falsifies: T obj kills -x, F obj kills x
        v = _obj_var(names, rec.obj)
        if v is None:
            return None
        return -v if rec.sign else v

    def close(rid: int, state: dict) -> int:
        """Returns a builder step whose clause is refuted just above rid."""
        chain: list[int | None] = []
        first_is_cut = records[rid].rule == "cut"
        cur = rid
        clause_step: int | None = None
        while True:
            rec = records[cur]
            prev = state.get(rec.obj)
            if prev is not None:
                if prev != rec.sign:
                    # contradiction: the deduction clause of this entry is
                    # refuted by its premises plus the earlier opposite entry
                    dc = ded.for_record(rec, records)
                    assert dc in comp_set, "deduction clause missing from completion"
                    clause_step = builder.initial(dc)
                    break
                chain.append(None)  # duplicate entry: nothing to unwind
            else:
                state[rec.obj] = rec.sign
                chain.append(cur)
            cur_children = kids.get(cur, ())
            if not cur_children:
                raise AssertionError("open leaf in a valid proof")
            if len(cur_children) == 2:
                a, b = cur_children
                sa = close(a, state)
                if not builder.steps[sa].clause:
                    clause_step = sa  # already the empty clause
                    break
                sb = close(b, state)
                if not builder.steps[sb].clause:
                    clause_step = sb
                    break
                ca = builder.steps[sa].clause
                cb = builder.steps[sb].clause
                la = falsified_lit(records[a])
                if la in ca and -la in cb:
                    clause_step = builder.resolve(sa, sb)
                elif la in ca:
                    clause_step = sb
                else:
                    clause_step = sa
                break
            cur = cur_children[0]
        # unwind the chain, resolving away entries the clause mentions;
        # the first entry of a cut child is resolved at the parent instead
        for pos in range(len(chain) - 1, -1, -1):
            entry = chain[pos]
            if entry is None:
                continue
            rec = records[entry]
            del state[rec.obj]
            if pos == 0 and first_is_cut:
                continue
            lit = falsified_lit(rec)
            clause = builder.steps[clause_step].clause
            if lit is None or lit not in clause:
                continue
            dc = ded.for_record(rec, records)
            assert dc in comp_set, "deduction clause missing from completion"
            other = builder.initial(dc)
            clause_step = builder.resolve(clause_step, other)
        return clause_step

    final = close(0, {})
    steps = builder.steps[: final + 1]
    out = ResolutionProof(tuple(steps))
    assert out.is_refutation(), "simulation did not reach the empty clause"
    return out, comp, names


# -- resolution -> tableau ---------------------------------------------------


@dataclass
class _TabBuilder:
    records: list[ProofRecord] = field(default_factory=list)

    def emit(self, parent, sign, obj, rule, premises=(), witness=None) -> int:
        self.records.append(
            ProofRecord(parent, sign, obj, rule, tuple(premises), witness)
        )
        return len(self.records) - 1


def _pivot_of(steps, i) -> int:
    c1 = steps[steps[i].p1].clause
    c2 = steps[steps[i].p2].clause
    for l in c1:
        if -l in c2 and (c1 | c2) - {l, -l} == steps[i].clause:
            return l
    raise AssertionError("no pivot")


def tres_to_aspt(
    cs: ClauseSet, proof: ResolutionProof
) -> tuple[TableauProof, Program, AspNames]:
    """Tree-like refutation -> tableau proof of the clause set's program.

    Descends the proof from the empty clause: every resolution becomes a
    cut on the pivot's guess atom, routing the positive-pivot parent to
    the false branch; each initial-clause leaf closes by falsifying the
    clause atom's rule bodies and re-deriving the clause atom from its
    integrity constraint.
    """
    res = check_res_proof(cs, proof, require_refutation=True)
    if not res:
        raise ValueError(f"input proof is invalid: {res}")
    if not is_tree_like(proof):
        raise ValueError("refused: proof is not tree-like")
    depth = len(proof.steps) + 1000
    if sys.getrecursionlimit() < depth:
        sys.setrecursionlimit(depth)
    program, names = to_asp(cs)
    clause_atom = {}
    for idx, atom in names.clause_atom.items():
        clause_atom[cs.clauses[idx - 1]] = atom
    builder = _TabBuilder()
    root = builder.emit(-1, False, BOT, "root")

    def close_leaf(step_idx: int, tip: int, assign: dict) -> None:
        clause = proof.steps[step_idx].clause
        catom = clause_atom[clause]
        body_entries = []
        for lit in sorted(clause, key=abs):
            a = names.pos_atom[cs.name_of(abs(lit))]
            body = Body.make(pos=[a]) if lit > 0 else Body.make(neg=[a])
            tip = builder.emit(tip, False, body, "f", (assign[a][1],))
            body_entries.append(tip)
        tip = builder.emit(tip, False, catom, "hs", tuple(body_entries))
        tip = builder.emit(tip, False, Body.make(neg=[catom]), "e", (root,))
        builder.emit(tip, True, catom, "c", (tip,))

    def visit(step_idx: int, tip: int, assign: dict) -> None:
        step = proof.steps[step_idx]
        if step.is_initial:
            close_leaf(step_idx, tip, assign)
            return
        pivot = _pivot_of(proof.steps, step_idx)
        v = abs(pivot)
        pos_parent = step.p1 if pivot > 0 else step.p2
        neg_parent = step.p2 if pivot > 0 else step.p1
        a = names.pos_atom[cs.name_of(v)]
        if a in assign:
            # pivot already decided higher up: follow the falsified side
            sign = assign[a][0]
            visit(neg_parent if sign else pos_parent, tip, assign)
            return
        rid_t = builder.emit(tip, True, a, "cut")
        rid_f = builder.emit(tip, False, a, "cut")
        assign[a] = (False, rid_f)
        visit(pos_parent, rid_f, assign)
        assign[a] = (True, rid_t)
        visit(neg_parent, rid_t, assign)
        del assign[a]

    visit(len(proof.steps) - 1, root, {})
    tproof = TableauProof(tuple(builder.records), ExtensionSet())
    return tproof, program, names


# -- extended variants -------------------------------------------------------


def _elementary_steps(ext: ExtensionSet):
    for step in ext.steps:
        if len(step.bodies) != 1 or not 1 <= len(step.bodies[0]) <= 2:
            raise ValueError(
                "only elementary extensions (one rule, at most two body "
                "literals per fresh head) can be transpiled"
            )
        yield step.head, step.bodies[0]


def easpt_to_eres(
    program: Program, proof: TableauProof, extension: ExtensionSet | None = None
) -> tuple[tuple[ExtensionTriple, ...], ResolutionProof, ClauseSet, CnfNames]:
    """Extended tableau proof (tight program) -> extended resolution proof.

    Replays the extension chain as definitional triples over the base
    completion (one triple for the fresh body variable when the body is
    new, one equating the head with its body), then delegates to the
    plain simulation over the extended program's completion and renames
    variables back into the base numbering.
    """
    ext = extension if extension is not None else proof.extension
    if not is_tight(program):
        raise ValueError("refused: program is not tight")
    full = combine(program, ext)
    comp_base, names_base = to_cnf(program)
    comp_full, names_full = to_cnf(full)

    # variable translation: base objects keep their ids, new ones get
    # fresh ids in extension order
    var_map: dict[int, int] = {}
    for a in program.atoms:
        var_map[names_full.atom_var[a]] = names_base.atom_var[a]
    for b in program.bodies:
        var_map[names_full.body_var[b]] = names_base.body_var[b]
    next_var = comp_base.num_vars
    triples: list[ExtensionTriple] = []

    def fresh(full_id: int) -> int:
        nonlocal next_var
        next_var += 1
        var_map[full_id] = next_var
        return next_var

    for head, body in _elementary_steps(ext):
        body_full = names_full.body_var[body]
        if body_full not in var_map:
            lits = [
                (
                    var_map[names_full.atom_var[l.atom]]
                    * (1 if l.positive else -1)
                )
                for l in body.literals
            ]
            bv = fresh(body_full)
            l1 = lits[0]
            l2 = lits[1] if len(lits) > 1 else lits[0]
            triples.append(ExtensionTriple(bv, l1, l2))
        bv = var_map[body_full]
        hv = fresh(names_full.atom_var[head])
        triples.append(ExtensionTriple(hv, bv, bv))

    inner_proof = TableauProof(proof.records, ExtensionSet())
    res_proof, _, _ = aspt_to_tres(full, inner_proof)

    def remap(cl: frozenset[int]) -> frozenset[int]:
        return frozenset((1 if l > 0 else -1) * var_map[abs(l)] for l in cl)

    steps = tuple(
        ResStep(remap(s.clause), s.p1, s.p2) for s in res_proof.steps
    )
    out = ResolutionProof(steps)
    allowed = set(comp_base.clauses)
    for t in triples:
        allowed.update(t.clauses)
    for s in out.steps:
        if s.is_initial:
            assert s.clause in allowed, "initial clause escaped the completion"
    return tuple(triples), out, comp_base, names_base


def eres_to_easpt(
    cs: ClauseSet,
    triples: tuple[ExtensionTriple, ...],
    proof: ResolutionProof,
) -> tuple[ExtensionSet, TableauProof, Program, AspNames]:
    """Extended resolution refutation -> extended tableau proof of the
    clause set's program encoding.

    Adds, with the extension rule: the definition rules of the triples,
    clause atoms for every proof clause outside the input set, and a
    conjunction chain over the proof; then cuts the chain atoms in order,
    closing each false branch by a case analysis on the step's provenance.
    """
    res = check_eres_proof(cs, triples, proof, require_refutation=True)
    if not res:
        raise ValueError(f"input proof is invalid: {res}")
    program, names = to_asp(cs)
    builder = _ChainTableau(cs, triples, proof, program, names)
    ext, records = builder.build()
    return ext, TableauProof(tuple(records), ext), program, names


class _ChainTableau:
    """Shared builder for chain-style extended tableau proofs.

    Works over the program encoding of a clause set (integrity-constraint
    closure for input clauses) and is reused by the benchmark generators
    with a program-rule closure instead.
    """

    def __init__(self, cs, triples, proof, program, names: AspNames | None):
        self.cs = cs
        self.triples = tuple(triples)
        self.proof = proof
        self.program = program
        self.names = names
        self.taken = set(program.atoms)
        self.builder = _TabBuilder()
        self.triple_clauses: dict[frozenset[int], ExtensionTriple] = {}
        for t in self.triples:
            for c in t.clauses:
                self.triple_clauses.setdefault(c, t)
        self.input_pool = set(cs.clauses)
        # atom name for a variable (input or extension variable)
        self.var_atom: dict[int, str] = {}
        if names is not None:
            for v in range(1, cs.num_vars + 1):
                self.var_atom[v] = names.pos_atom[cs.name_of(v)]
        self._input_atom: dict[frozenset[int], str] = {}
        if names is not None:
            for idx, atom in names.clause_atom.items():
                self._input_atom.setdefault(cs.clauses[idx - 1], atom)

    # -- naming -------------------------------------------------------------

    def _fresh(self, base: str) -> str:
        name = base
        while name in self.taken:
            name += "'"
        self.taken.add(name)
        return name

    def atom_for_var(self, v: int) -> str:
        if v not in self.var_atom:
            self.var_atom[v] = self._fresh(f"a_{v}")
        return self.var_atom[v]

    def lit(self, l: int) -> Lit:
        return Lit(self.atom_for_var(abs(l)), l > 0)

    def lit_body(self, l: int) -> Body:
        return Body.of([self.lit(l)])

    # -- construction ---------------------------------------------------------

    def input_step_atom(self, clause: frozenset[int]) -> str | None:
        """Atom already naming this clause (integrity-constraint encoding)."""
        return self._input_atom.get(clause)

    def build(self) -> tuple[ExtensionSet, list[ProofRecord]]:
        ext_rules: list[Rule] = []
        # (10): definition rules for the extension triples
        for t in self.triples:
            head = self.atom_for_var(t.var)
            body = Body.of([self.lit(t.l1), self.lit(t.l2)])
            ext_rules.append(Rule(head, body))
        # (11): clause atoms for proof steps, shared per distinct clause
        self.step_atom: list[str] = []
        value_atom: dict[frozenset[int], str] = {}
        for i, step in enumerate(self.proof.steps):
            named = self.input_step_atom(step.clause)
            if named is not None:
                self.step_atom.append(named)
                continue
            if step.clause in value_atom:
                self.step_atom.append(value_atom[step.clause])
                continue
            atom = self._fresh(f"d{i + 1}")
            value_atom[step.clause] = atom
            self.step_atom.append(atom)
            for l in sorted(step.clause, key=abs):
                ext_rules.append(Rule(atom, self.lit_body(l)))
        # (12): the conjunction chain
        n = len(self.proof.steps)
        self.chain_atom: list[str | None] = [None] * n
        for i in range(n - 1):
            q = self._fresh(f"q{i + 1}")
            self.chain_atom[i] = q
            if i == 0:
                ext_rules.append(Rule(q, Body.make(pos=[self.step_atom[0]])))
            else:
                ext_rules.append(
                    Rule(q, Body.make(pos=[self.step_atom[i], self.chain_atom[i - 1]]))
                )
        ext = extend(self.program, ExtensionSet(), ext_rules)
        self.full = combine(self.program, ext)
        self._emit_tableau(n)
        return ext, self.builder.records

    # a branch-local map: (object, sign) -> record id
    def _emit_tableau(self, n: int):
        b = self.builder
        root = b.emit(-1, False, BOT, "root")
        tip = root
        env: dict[tuple, int] = {(BOT, False): root}
        for i in range(n - 1):
            q = self.chain_atom[i]
            rid_t = b.emit(tip, True, q, "cut")
            rid_f = b.emit(tip, False, q, "cut")
            fenv = dict(env)
            fenv[(q, False)] = rid_f
            self._close_false_branch(i, rid_f, fenv)
            env[(q, True)] = rid_t
            tip = rid_t
        self._close_final_branch(n - 1, tip, env)

    def _emit(self, env, tip, sign, obj, rule, premises=(), witness=None) -> int:
        rid = self.builder.emit(tip, sign, obj, rule, premises, witness)
        env.setdefault((obj, sign), rid)
        return rid

    def _chain_body(self, i: int) -> Body:
        if i == 0:
            return Body.make(pos=[self.step_atom[0]])
        return Body.make(pos=[self.step_atom[i], self.chain_atom[i - 1]])

    def _close_false_branch(self, i: int, tip: int, env) -> None:
        """The branch with F q_i and T q_j for all j < i."""
        body = self._chain_body(i)
        rid_body = self._emit(
            env, tip, False, body, "e", (env[(self.chain_atom[i], False)],)
        )
        prem = [rid_body]
        if i > 0:
            prem.append(env[(self.chain_atom[i - 1], True)])
        rid_atom = self._emit(env, rid_body, False, self.step_atom[i], "c", tuple(prem))
        self._close_from_false_step(i, rid_atom, env)

    def _derive_true_step_atom(self, j: int, tip: int, env) -> int:
        """From T q_j derive T step_atom_j; returns the new tip."""
        atom = self.step_atom[j]
        if (atom, True) in env:
            return tip
        body = self._chain_body(j)
        rid = self._emit(env, tip, True, body, "is", (env[(self.chain_atom[j], True)],))
        rid = self._emit(env, rid, True, atom, "g", (rid,))
        return rid

    def _derive_pivot_entry(self, j: int, lit: int, tip: int, env) -> int:
        """With T step_atom_j and the other literals of clause j false,
        conclude the pivot literal of clause j via backward true atom."""
        atom = self.step_atom[j]
        clause = self.proof.steps[j].clause
        prem = [env[(atom, True)]]
        for l in sorted(clause, key=abs):
            if l != lit:
                prem.append(env[(self.lit_body(l), False)])
        body = self.lit_body(lit)
        rid = self._emit(env, tip, True, body, "is", tuple(prem))
        wanted = self.lit(lit)
        return self._emit(env, rid, wanted.positive, wanted.atom, "g", (rid,))

    def _falsify_clause_literals(self, i: int, tip: int, env) -> int:
        """From F step_atom_i: falsify every literal body, then the literal."""
        clause = self.proof.steps[i].clause
        rid = tip
        fatom = env[(self.step_atom[i], False)]
        for l in sorted(clause, key=abs):
            body = self.lit_body(l)
            rid = self._emit(env, rid, False, body, "e", (fatom,))
            lit = self.lit(l)
            rid = self._emit(
                env, rid, not lit.positive, lit.atom, "c", (env[(body, False)],)
            )
        return rid

    def _close_from_false_step(self, i: int, tip: int, env) -> None:
        step = self.proof.steps[i]
        if step.is_initial and step.clause in self.input_pool:
            self._close_input_case(i, tip, env)
            return
        if step.is_initial:
            triple = self.triple_clauses.get(step.clause)
            if triple is None:
                raise AssertionError("initial step neither input nor extension clause")
            tip = self._falsify_clause_literals(i, tip, env)
            self._close_triple_case(step.clause, triple, tip, env)
            return
        tip = self._falsify_clause_literals(i, tip, env)
        pivot = _pivot_of(self.proof.steps, i)
        p1, p2 = step.p1, step.p2
        l1 = pivot if pivot in self.proof.steps[p1].clause else -pivot
        for j, lit in ((p1, l1), (p2, -l1)):
            tip = self._derive_true_step_atom(j, tip, env)
            tip = self._derive_pivot_entry(j, lit, tip, env)

    def _close_input_case(self, i: int, tip: int, env) -> None:
        """Integrity-constraint closure: re-derive the clause atom."""
        catom = self.step_atom[i]
        body = Body.make(neg=[catom])
        rid = self._emit(env, tip, False, body, "e", (env[(BOT, False)],))
        self._emit(env, rid, True, catom, "c", (rid,))

    def _close_triple_case(self, clause, t: ExtensionTriple, tip: int, env) -> None:
        xatom = self.atom_for_var(t.var)
        def_body = Body.of([self.lit(t.l1), self.lit(t.l2)])
        if t.var in clause:
            # {x, -l1, -l2}: the body literals hold, so x must be true
            l1, l2 = self.lit(t.l1), self.lit(t.l2)
            prem = [env[(l1.atom, l1.positive)]]
            if l2 != l1:
                prem.append(env[(l2.atom, l2.positive)])
            rid = self._emit(env, tip, True, def_body, "b", tuple(prem))
            self._emit(env, rid, True, xatom, "d", (rid,))
        else:
            # {-x, l}: x holds, so its body holds, so l holds
            rid = self._emit(env, tip, True, def_body, "is", (env[(xatom, True)],))
            surviving = t.l1 if t.l1 in clause else t.l2
            lit = self.lit(surviving)
            self._emit(env, rid, lit.positive, lit.atom, "g", (rid,))

    def _close_final_branch(self, last: int, tip: int, env) -> None:
        """All chain atoms true: the empty clause's parents clash."""
        step = self.proof.steps[last]
        assert not step.clause and not step.is_initial
        pivot = _pivot_of(self.proof.steps, last)
        p1, p2 = step.p1, step.p2
        l1 = pivot if pivot in self.proof.steps[p1].clause else -pivot
        for j, lit in ((p1, l1), (p2, -l1)):
            tip = self._derive_true_step_atom(j, tip, env)
            tip = self._derive_pivot_entry(j, lit, tip, env)
