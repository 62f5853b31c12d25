"""Tableau engine: deduction rules, cut, lookahead, and DPLL-style search.

Entries are signed assignments to atoms and bodies.  The deduction rules:

  b  forward true body      all body literals hold -> body true
  c  backward false body    false body, all but one literal hold -> last fails
  d  forward true atom      true body -> its heads true
  e  backward false atom    false head -> all its rule bodies false
  f  forward false body     a failed literal -> body false
  g  backward true body     true body -> all its literals hold
  hs forward false atom     all rule bodies false -> head false
  is backward true atom     true head, all rule bodies but one false -> it's true
  hw well-founded negation  unfounded under the non-false rules -> atom false
  iw well-founded justific. true atom would become unfounded -> body true
  hl forward loop           all external bodies of a loop false -> member false
  il backward loop          true member, one external body left -> it's true

A solved UNSAT instance yields a machine-checkable proof: a binary tree
of cut entries with per-branch deduced entries, each carrying the rule id
and premise references that an independent checker can re-validate.
"""

from __future__ import annotations

import random
import sys
import time
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable

from .program import BOT, Body, ExtensionSet, Program, combine, natural_key
from .semantics import is_tight

ROOT, CUT = "root", "cut"
RULE_IDS = ("root", "cut", "b", "c", "d", "e", "f", "g", "hs", "is", "hw", "iw", "hl", "il")

_UNSET, _T, _F = 0, 1, 2

RULE_PRESETS = {
    "full": frozenset({"hw", "iw", "hl", "il"}),
    "smodels": frozenset({"hw", "iw", "hl", "il"}),
    "nomore": frozenset({"hw"}),
    "supported": frozenset(),
}


class SolveTimeout(Exception):
    """Raised when the per-instance wall-clock budget runs out."""


@dataclass(frozen=True)
class EngineConfig:
    rules: str = "full"  # full | supported | nomore | smodels
    cut_scope: str = "atoms"  # atoms | atoms+bodies
    heuristic: str = "lex"  # lex | moms | random
    seed: int = 0
    lookahead: bool = False
    record_proof: bool = False
    timeout: float | None = None

    def __post_init__(self):
        if self.rules not in RULE_PRESETS:
            raise ValueError(f"unknown rule preset {self.rules!r}")
        if self.cut_scope not in ("atoms", "atoms+bodies"):
            raise ValueError(f"unknown cut scope {self.cut_scope!r}")
        if self.heuristic not in ("lex", "moms", "random"):
            raise ValueError(f"unknown heuristic {self.heuristic!r}")

    @property
    def effective_scope(self) -> str:
        # the smodels preset pins branching to atoms
        return "atoms" if self.rules == "smodels" else self.cut_scope

    @property
    def semantics(self) -> str:
        return "supported" if self.rules == "supported" else "stable"


@dataclass
class SolveStats:
    decisions: int = 0
    entries: int = 0
    probes: int = 0
    wall_millis: float = 0.0
    proof_length: int | None = None


@dataclass(frozen=True)
class ProofRecord:
    """One tableau entry: a node in the proof tree via its parent id."""

    parent: int
    sign: bool
    obj: object  # atom name (str) or Body
    rule: str
    premises: tuple[int, ...] = ()
    witness: tuple[str, ...] | None = None


@dataclass(frozen=True)
class TableauProof:
    records: tuple[ProofRecord, ...]
    extension: ExtensionSet = field(default_factory=ExtensionSet)

    def children(self) -> dict[int, list[int]]:
        kids: dict[int, list[int]] = {}
        for i, r in enumerate(self.records):
            kids.setdefault(r.parent, []).append(i)
        return kids


def proof_length(proof: TableauProof) -> int:
    """Entries in the tableau plus the number of extending rules."""
    return len(proof.records) + proof.extension.rule_count()


@dataclass(frozen=True)
class SolveResult:
    satisfiable: bool
    model: frozenset[str] | None
    semantics: str
    proof: TableauProof | None
    stats: SolveStats


@dataclass
class BranchState:
    """Outcome of propagating a branch prefix (public wrapper API)."""

    records: tuple[ProofRecord, ...]
    contradictory: bool
    assignment: dict  # (str|Body) -> bool

    def holds(self, obj, sign: bool) -> bool:
        return self.assignment.get(obj) is sign


class _Ground:
    """Integer-indexed view of program + extension for the solver."""

    def __init__(self, program: Program, ext: ExtensionSet):
        self.base_atoms = frozenset(program.atoms)
        full = combine(program, ext)
        self.full = full
        self.atom_names: list[str] = [BOT] + list(full.atoms)
        self.atom_id = {a: i for i, a in enumerate(self.atom_names)}
        a_count = len(self.atom_names)
        self.n_atoms = a_count
        self.bodies: list[Body] = list(full.bodies)
        self.body_obj = {b: a_count + i for i, b in enumerate(self.bodies)}
        self.n_objects = a_count + len(self.bodies)
        self.body_lits: list[list[tuple[int, bool]]] = []
        for b in self.bodies:
            self.body_lits.append(
                [(self.atom_id[a], True) for a in b.pos]
                + [(self.atom_id[a], False) for a in b.neg]
            )
        self.body_len = [len(ls) for ls in self.body_lits]
        self.heads_of_body: list[list[int]] = [
            [self.atom_id[h] for h in full.heads_of(b)] for b in self.bodies
        ]
        self.rules_for_atom: list[list[int]] = [
            [self.body_obj[b] for b in full.rules_for(name)]
            for name in self.atom_names
        ]
        self.occ: list[list[tuple[int, bool]]] = [[] for _ in range(a_count)]
        self.pos_occ: list[list[int]] = [[] for _ in range(a_count)]
        for bi, lits in enumerate(self.body_lits):
            for aid, pos in lits:
                self.occ[aid].append((bi, pos))
                if pos:
                    self.pos_occ[aid].append(bi)
        self.tight = is_tight(full)

    def obj_of(self, obj) -> int:
        if isinstance(obj, Body):
            if obj not in self.body_obj:
                raise ValueError(f"unknown body {obj.text()}")
            return self.body_obj[obj]
        if obj not in self.atom_id:
            raise ValueError(f"unknown atom {obj!r}")
        return self.atom_id[obj]

    def name_of(self, oid: int):
        if oid < self.n_atoms:
            return self.atom_names[oid]
        return self.bodies[oid - self.n_atoms]


class _Solver:
    def __init__(self, program: Program, ext: ExtensionSet, cfg: EngineConfig):
        self.g = _Ground(program, ext)
        self.cfg = cfg
        self.enabled = RULE_PRESETS[cfg.rules]
        self.stats = SolveStats()
        g = self.g
        self.val = [_UNSET] * g.n_objects
        self.entry_of = [-1] * g.n_objects
        self.nsat = [0] * len(g.bodies)
        self.nunsat = [0] * len(g.bodies)
        self.nfalse = [0] * g.n_atoms
        self.trail: list[int] = []
        self.queue: deque[int] = deque()
        self.conflict = False
        self.rec = cfg.record_proof
        self.records: list[ProofRecord] = []
        self.tip = -1
        self.rng = random.Random(cfg.seed)
        self.num_assigned = 0
        self.deadline = None if cfg.timeout is None else time.monotonic() + cfg.timeout
        self._ticks = 0
        scope_atoms = list(range(1, g.n_atoms))
        if cfg.effective_scope == "atoms":
            self.scope = scope_atoms
        else:
            self.scope = scope_atoms + list(range(g.n_atoms, g.n_objects))

    # -- bookkeeping ------------------------------------------------------

    def _tick(self):
        self._ticks += 1
        if self.deadline is not None and self._ticks % 512 == 0:
            if time.monotonic() > self.deadline:
                raise SolveTimeout()

    def _record(self, sign, oid, rule, premises, witness):
        rid = len(self.records)
        self.records.append(
            ProofRecord(self.tip, sign, self.g.name_of(oid), rule, premises, witness)
        )
        self.tip = rid
        return rid

    def assign(self, oid, sign, rule, premises=(), witness=None) -> bool:
        """Add an entry; returns False when it contradicts the branch."""
        v = self.val[oid]
        want = _T if sign else _F
        if v == want:
            return True
        self.stats.entries += 1
        if self.rec:
            rid = self._record(sign, oid, rule, premises, witness)
            if v == _UNSET:
                self.entry_of[oid] = rid
        if v != _UNSET:
            self.conflict = True
            return False
        self.val[oid] = want
        self.trail.append(oid)
        self.num_assigned += 1
        g = self.g
        if oid < g.n_atoms:
            for bi, pos in g.occ[oid]:
                if pos is sign:
                    self.nsat[bi] += 1
                else:
                    self.nunsat[bi] += 1
        elif not sign:
            for h in g.heads_of_body[oid - g.n_atoms]:
                self.nfalse[h] += 1
        self.queue.append(oid)
        return True

    def _undo_to(self, mark: int):
        g = self.g
        while len(self.trail) > mark:
            oid = self.trail.pop()
            sign = self.val[oid] == _T
            if oid < g.n_atoms:
                for bi, pos in g.occ[oid]:
                    if pos is sign:
                        self.nsat[bi] -= 1
                    else:
                        self.nunsat[bi] -= 1
            elif not sign:
                for h in g.heads_of_body[oid - g.n_atoms]:
                    self.nfalse[h] -= 1
            self.val[oid] = _UNSET
            self.num_assigned -= 1
        self.queue.clear()

    # -- propagation ------------------------------------------------------

    def init_root(self):
        self.assign(0, False, ROOT)
        g = self.g
        for aid in range(1, g.n_atoms):
            if not g.rules_for_atom[aid]:
                self.assign(aid, False, "hs")
        for bi, n in enumerate(g.body_len):
            if n == 0:
                self.assign(g.n_atoms + bi, True, "b")

    def _lit_entry(self, aid):
        return self.entry_of[aid]

    def _body_premises(self, bi):
        if not self.rec:
            return ()
        return tuple(self.entry_of[aid] for aid, _ in self.g.body_lits[bi])

    def _process(self, oid):
        g = self.g
        val = self.val
        if oid < g.n_atoms:
            s = val[oid] == _T
            for bi, pos in g.occ[oid]:
                bobj = g.n_atoms + bi
                if pos is s:
                    if self.nsat[bi] == g.body_len[bi]:
                        if not self.assign(bobj, True, "b", self._body_premises(bi)):
                            return
                    elif (
                        val[bobj] == _F
                        and self.nunsat[bi] == 0
                        and self.nsat[bi] == g.body_len[bi] - 1
                    ):
                        if not self._backward_false_body(bi):
                            return
                else:
                    prem = (self.entry_of[oid],) if self.rec else ()
                    if not self.assign(bobj, False, "f", prem):
                        return
            if s:
                if not self._check_backward_true_atom(oid):
                    return
            else:
                prem = (self.entry_of[oid],) if self.rec else ()
                for bobj in g.rules_for_atom[oid]:
                    if not self.assign(bobj, False, "e", prem):
                        return
        else:
            bi = oid - g.n_atoms
            if val[oid] == _T:
                prem = (self.entry_of[oid],) if self.rec else ()
                for aid, pos in g.body_lits[bi]:
                    if not self.assign(aid, pos, "g", prem):
                        return
                for h in g.heads_of_body[bi]:
                    if not self.assign(h, True, "d", prem):
                        return
            else:
                for h in g.heads_of_body[bi]:
                    rules = g.rules_for_atom[h]
                    if self.nfalse[h] == len(rules):
                        if not self.assign(
                            h, False, "hs", self._rule_body_premises(h)
                        ):
                            return
                    elif val[h] == _T and self.nfalse[h] == len(rules) - 1:
                        if not self._backward_true_atom_fire(h):
                            return
                if self.nunsat[bi] == 0:
                    n = g.body_len[bi]
                    if self.nsat[bi] == n - 1:
                        if not self._backward_false_body(bi):
                            return
                    elif self.nsat[bi] == n:
                        if not self.assign(oid, True, "b", self._body_premises(bi)):
                            return

    def _backward_false_body(self, bi) -> bool:
        g = self.g
        target = None
        for aid, pos in g.body_lits[bi]:
            if self.val[aid] == _UNSET:
                target = (aid, pos)
                break
        if target is None:
            return True
        aid, pos = target
        prem = ()
        if self.rec:
            prem = (self.entry_of[g.n_atoms + bi],) + tuple(
                self.entry_of[a2] for a2, _ in g.body_lits[bi] if a2 != aid
            )
        # f l: the literal must be false, so a positive atom goes F
        return self.assign(aid, not pos, "c", prem)

    def _rule_body_premises(self, h):
        if not self.rec:
            return ()
        return tuple(self.entry_of[b] for b in self.g.rules_for_atom[h])

    def _check_backward_true_atom(self, h) -> bool:
        g = self.g
        rules = g.rules_for_atom[h]
        nf = self.nfalse[h]
        if nf == len(rules):
            return self.assign(h, False, "hs", self._rule_body_premises(h))
        if nf == len(rules) - 1:
            return self._backward_true_atom_fire(h)
        return True

    def _backward_true_atom_fire(self, h) -> bool:
        g = self.g
        target = None
        for bobj in g.rules_for_atom[h]:
            if self.val[bobj] != _F:
                target = bobj
                break
        if target is None or self.val[target] == _T:
            return True
        prem = ()
        if self.rec:
            prem = (self.entry_of[h],) + tuple(
                self.entry_of[b] for b in g.rules_for_atom[h] if b != target
            )
        return self.assign(target, True, "is", prem)

    def _drain(self) -> bool:
        while self.queue:
            if self.conflict:
                self.queue.clear()
                return False
            self._tick()
            self._process(self.queue.popleft())
        return not self.conflict

    def propagate(self) -> bool:
        """Run all enabled deduction rules to fixpoint; False on conflict."""
        while True:
            if not self._drain():
                return False
            if self.g.tight or not self.enabled:
                return True
            if "hw" in self.enabled and self._well_founded_negation():
                continue
            if "iw" in self.enabled and self._well_founded_justification():
                continue
            if "hl" in self.enabled and self._loop_rules():
                continue
            return True

    # -- well-founded and loop deduction (non-tight programs only) --------

    def _supported_fixpoint(self, excluded: int = -1) -> list[bool]:
        """Atoms with non-circular support among non-false rule bodies."""
        g = self.g
        supported = [False] * g.n_atoms
        pos_need = [0] * len(g.bodies)
        for bi, lits in enumerate(g.body_lits):
            pos_need[bi] = sum(1 for _, pos in lits if pos)
        todo = []
        for bi in range(len(g.bodies)):
            bobj = g.n_atoms + bi
            if self.val[bobj] != _F and bobj != excluded and pos_need[bi] == 0:
                todo.append(bi)
        while todo:
            bi = todo.pop()
            for h in g.heads_of_body[bi]:
                if h == 0 or supported[h]:
                    continue
                supported[h] = True
                for bj in g.pos_occ[h]:
                    bobj = g.n_atoms + bj
                    pos_need[bj] -= 1
                    if (
                        pos_need[bj] == 0
                        and self.val[bobj] != _F
                        and bobj != excluded
                    ):
                        todo.append(bj)
        return supported

    def _gus_premises(self, unfounded_ids):
        if not self.rec:
            return (), None
        uset = set(unfounded_ids)
        prem = []
        for h in sorted(uset):
            for bobj in self.g.rules_for_atom[h]:
                if self.val[bobj] == _F and self.entry_of[bobj] not in prem:
                    prem.append(self.entry_of[bobj])
        witness = tuple(self.g.atom_names[h] for h in sorted(uset))
        return tuple(sorted(prem)), witness

    def _well_founded_negation(self) -> bool:
        supported = self._supported_fixpoint()
        g = self.g
        unfounded = [
            aid
            for aid in range(1, g.n_atoms)
            if not supported[aid] and self.val[aid] != _F
        ]
        if not unfounded:
            return False
        all_unfounded = [a for a in range(1, g.n_atoms) if not supported[a]]
        prem, witness = self._gus_premises(all_unfounded)
        for aid in unfounded:
            if not self.assign(aid, False, "hw", prem, witness):
                return True
        return True

    def _well_founded_justification(self) -> bool:
        g = self.g
        true_atoms = [a for a in range(1, g.n_atoms) if self.val[a] == _T]
        if not true_atoms:
            return False
        for bi in range(len(g.bodies)):
            bobj = g.n_atoms + bi
            if self.val[bobj] != _UNSET:
                continue
            self._tick()
            supported = self._supported_fixpoint(excluded=bobj)
            dropped = [a for a in true_atoms if not supported[a]]
            if not dropped:
                continue
            h = dropped[0]
            prem, witness = (), None
            if self.rec:
                uset = [a for a in range(1, g.n_atoms) if not supported[a]]
                bprem, witness = self._gus_premises(uset)
                bprem = tuple(p for p in bprem if p != self.entry_of[bobj])
                prem = (self.entry_of[h],) + bprem
            self.assign(bobj, True, "iw", prem, witness)
            return True
        return False

    def _loop_rules(self) -> bool:
        """SCC-discovered loops; subsumed by the well-founded pass in the
        full preset but kept to mirror the calculus rule for rule."""
        g = self.g
        comps = self._reduced_sccs()
        fired = False
        for comp in comps:
            if len(comp) == 1:
                a = comp[0]
                if not any(
                    a in (x for x, p in g.body_lits[b - g.n_atoms] if p)
                    for b in g.rules_for_atom[a]
                    if self.val[b] != _F
                ):
                    continue
            eb = []
            cset = set(comp)
            for h in comp:
                for bobj in g.rules_for_atom[h]:
                    lits = g.body_lits[bobj - g.n_atoms]
                    if not any(p and aid in cset for aid, p in lits):
                        if bobj not in eb:
                            eb.append(bobj)
            nonfalse = [b for b in eb if self.val[b] != _F]
            witness = tuple(g.atom_names[a] for a in sorted(comp))
            if not nonfalse:
                prem = (
                    tuple(self.entry_of[b] for b in eb) if self.rec else ()
                )
                for h in comp:
                    if self.val[h] != _F:
                        self.assign(h, False, "hl", prem, witness)
                        fired = True
                        if self.conflict:
                            return True
            elif len(nonfalse) == 1 and self.val[nonfalse[0]] == _UNSET:
                th = next((h for h in comp if self.val[h] == _T), None)
                if th is not None:
                    prem = ()
                    if self.rec:
                        prem = (self.entry_of[th],) + tuple(
                            self.entry_of[b] for b in eb if b != nonfalse[0]
                        )
                    self.assign(nonfalse[0], True, "il", prem, witness)
                    return True
        return fired

    def _reduced_sccs(self) -> list[list[int]]:
        g = self.g
        edges: dict[int, set[int]] = {a: set() for a in range(1, g.n_atoms)}
        for h in range(1, g.n_atoms):
            for bobj in g.rules_for_atom[h]:
                if self.val[bobj] == _F:
                    continue
                for aid, pos in g.body_lits[bobj - g.n_atoms]:
                    if pos:
                        edges[h].add(aid)
        index: dict[int, int] = {}
        low: dict[int, int] = {}
        on: set[int] = set()
        stack: list[int] = []
        out: list[list[int]] = []
        counter = 0
        for root in edges:
            if root in index:
                continue
            work = [(root, iter(sorted(edges[root])))]
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on.add(root)
            while work:
                v, it = work[-1]
                moved = False
                for w in it:
                    if w not in index:
                        index[w] = low[w] = counter
                        counter += 1
                        stack.append(w)
                        on.add(w)
                        work.append((w, iter(sorted(edges[w]))))
                        moved = True
                        break
                    if w in on:
                        low[v] = min(low[v], index[w])
                if moved:
                    continue
                work.pop()
                if work:
                    low[work[-1][0]] = min(low[work[-1][0]], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    out.append(sorted(comp))
        return out

    # -- lookahead ---------------------------------------------------------

    def _probe(self, oid, sign) -> bool:
        """Probe one sign; True if it failed (entries kept as closed child)."""
        self.stats.probes += 1
        mark = len(self.trail)
        rec_mark = len(self.records)
        tip0 = self.tip
        self.assign(oid, sign, CUT)
        self.propagate()
        failed = self.conflict
        self._undo_to(mark)
        self.conflict = False
        if not failed:
            del self.records[rec_mark:]
        self.tip = tip0
        return failed

    def lookahead_fixpoint(self) -> bool:
        """Failed-literal probing over the cut scope; False on contradiction.

        Probes are not decisions.  An asserted literal is a cut whose
        failed side is the recorded closed subtree.
        """
        changed = True
        while changed and not self.conflict:
            changed = False
            for oid in self.scope:
                if self.val[oid] != _UNSET:
                    continue
                if self._probe(oid, True):
                    self.assign(oid, False, CUT)
                    self.propagate()
                    changed = True
                elif self._probe(oid, False):
                    self.assign(oid, True, CUT)
                    self.propagate()
                    changed = True
                if self.conflict:
                    return False
        return not self.conflict

    # -- search ------------------------------------------------------------

    def _pick(self) -> int:
        h = self.cfg.heuristic
        if h == "lex":
            for oid in self.scope:
                if self.val[oid] == _UNSET:
                    return oid
        elif h == "random":
            free = [o for o in self.scope if self.val[o] == _UNSET]
            return self.rng.choice(free)
        else:  # moms
            g = self.g
            best_size = None
            for bi in range(len(g.bodies)):
                if self.val[g.n_atoms + bi] != _UNSET:
                    continue
                room = g.body_len[bi] - self.nsat[bi] - self.nunsat[bi]
                if room > 0 and (best_size is None or room < best_size):
                    best_size = room
            counts: dict[int, int] = {}
            if best_size is not None:
                for bi in range(len(g.bodies)):
                    bobj = g.n_atoms + bi
                    if self.val[bobj] != _UNSET:
                        continue
                    room = g.body_len[bi] - self.nsat[bi] - self.nunsat[bi]
                    if room != best_size:
                        continue
                    counts[bobj] = counts.get(bobj, 0) + 1
                    for aid, _ in g.body_lits[bi]:
                        counts[aid] = counts.get(aid, 0) + 1
            best, best_n = None, -1
            for oid in self.scope:
                if self.val[oid] != _UNSET:
                    continue
                n = counts.get(oid, 0)
                if n > best_n:
                    best, best_n = oid, n
            return best
        raise RuntimeError("no unassigned object to pick")

    def search(self) -> bool:
        if not self.propagate():
            return False
        if self.cfg.lookahead and not self.lookahead_fixpoint():
            return False
        if self.num_assigned == self.g.n_objects:
            return True
        oid = self._pick()
        self.stats.decisions += 1
        tip0 = self.tip
        mark = len(self.trail)
        for sign in (True, False):
            self.tip = tip0
            self.assign(oid, sign, CUT)
            if self.search():
                return True
            self._undo_to(mark)
            self.conflict = False
        self.tip = tip0
        return False

    def model(self) -> frozenset[str]:
        g = self.g
        return frozenset(
            g.atom_names[a]
            for a in range(1, g.n_atoms)
            if self.val[a] == _T and g.atom_names[a] in g.base_atoms
        )


def _prepare(program, ext, config):
    ext = ext if ext is not None else ExtensionSet()
    cfg = config if config is not None else EngineConfig()
    return ext, cfg


def solve(
    program: Program,
    extension: ExtensionSet | None = None,
    config: EngineConfig | None = None,
) -> SolveResult:
    """Decide satisfiability; SAT yields a model, UNSAT optionally a proof.

    With the supported preset the returned model is only guaranteed to be
    a supported model (the result is labeled accordingly).
    """
    extension, cfg = _prepare(program, extension, config)
    solver = _Solver(program, extension, cfg)
    depth_cap = solver.g.n_objects + 1000
    old_limit = sys.getrecursionlimit()
    if old_limit < depth_cap:
        sys.setrecursionlimit(depth_cap)
    t0 = time.perf_counter()
    try:
        solver.init_root()
        sat = solver.search()
    finally:
        if old_limit < depth_cap:
            sys.setrecursionlimit(old_limit)
    solver.stats.wall_millis = (time.perf_counter() - t0) * 1000.0
    if sat:
        return SolveResult(True, solver.model(), cfg.semantics, None, solver.stats)
    proof = None
    if cfg.record_proof:
        proof = TableauProof(tuple(solver.records), extension)
        solver.stats.proof_length = proof_length(proof)
    return SolveResult(False, None, cfg.semantics, proof, solver.stats)


def _replay(solver: _Solver, entries: Iterable[tuple[bool, object]]):
    solver.init_root()
    solver.propagate()
    for sign, obj in entries:
        if solver.conflict:
            break
        oid = solver.g.obj_of(obj)
        solver.assign(oid, sign, CUT)
        solver.propagate()


def _branch_state(solver: _Solver) -> BranchState:
    g = solver.g
    assignment = {}
    for oid in solver.trail:
        assignment[g.name_of(oid)] = solver.val[oid] == _T
    return BranchState(tuple(solver.records), solver.conflict, assignment)


def propagate(
    program: Program,
    extension: ExtensionSet | None,
    branch: Iterable[tuple[bool, object]],
    config: EngineConfig | None = None,
) -> BranchState:
    """Close a branch prefix under the enabled deduction rules.

    ``branch`` lists assumed entries as (sign, atom-or-Body) pairs, applied
    as cuts in order with propagation to fixpoint after each.
    """
    extension, cfg = _prepare(program, extension, config)
    cfg = replace(cfg, record_proof=True)
    solver = _Solver(program, extension, cfg)
    _replay(solver, branch)
    return _branch_state(solver)


def cut(
    program: Program,
    extension: ExtensionSet | None,
    branch: Iterable[tuple[bool, object]],
    obj,
    config: EngineConfig | None = None,
) -> tuple[BranchState, BranchState]:
    """Split a branch on an unassigned atom or body; returns both children."""
    extension, cfg = _prepare(program, extension, config)
    cfg = replace(cfg, record_proof=True)
    branch = list(branch)
    out = []
    for sign in (True, False):
        solver = _Solver(program, extension, cfg)
        _replay(solver, branch)
        oid = solver.g.obj_of(obj)
        if oid == 0:
            raise ValueError("cannot cut on the falsity symbol")
        if oid not in solver.scope:
            raise ValueError(f"cut object {obj!r} outside the configured cut scope")
        if solver.val[oid] != _UNSET:
            raise ValueError(f"cut object {obj!r} already assigned on this branch")
        solver.assign(oid, sign, CUT)
        solver.propagate()
        out.append(_branch_state(solver))
    return out[0], out[1]


def lookahead(
    program: Program,
    extension: ExtensionSet | None,
    branch: Iterable[tuple[bool, object]],
    config: EngineConfig | None = None,
) -> list[tuple[bool, object]]:
    """Entries forced by failed-literal probing from the given prefix."""
    extension, cfg = _prepare(program, extension, config)
    cfg = replace(cfg, lookahead=True, record_proof=False)
    solver = _Solver(program, extension, cfg)
    _replay(solver, branch)
    before = set(solver.trail)
    if not solver.conflict:
        solver.lookahead_fixpoint()
    g = solver.g
    return [
        (solver.val[oid] == _T, g.name_of(oid))
        for oid in solver.trail
        if oid not in before
    ]
