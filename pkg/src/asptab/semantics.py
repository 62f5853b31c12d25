"""Semantic primitives for ground normal logic programs.

Stable models, the Gelfond-Lifschitz reduct, positive-dependency loops,
unfounded sets, and splitting-set decomposition.  Everything here is a
pure function over immutable inputs; the exponential routines are guarded
by explicit atom limits because they exist as test oracles, not solvers.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .program import BOT, Body, Program, Rule, natural_key

Interpretation = frozenset


def _check_atoms(program: Program, m: Iterable[str]) -> frozenset[str]:
    m = frozenset(m)
    unknown = m - set(program.atoms)
    if unknown:
        raise ValueError(f"interpretation mentions unknown atoms: {sorted(unknown)}")
    return m


def body_satisfied(body: Body, m: frozenset[str]) -> bool:
    return set(body.pos) <= m and not (set(body.neg) & m)


def classical_model_check(program: Program, m: Iterable[str]) -> bool:
    """True iff every rule with satisfied body has its head in m (BOT never is)."""
    m = _check_atoms(program, m)
    for r in program:
        if body_satisfied(r.body, m):
            if r.head == BOT or r.head not in m:
                return False
    return True


def gl_reduct(program: Program, m: Iterable[str]) -> Program:
    """Gelfond-Lifschitz reduct: drop rules blocked by m, strip negation."""
    m = _check_atoms(program, m)
    kept = [
        Rule(r.head, Body.make(r.body.pos))
        for r in program
        if not (set(r.body.neg) & m)
    ]
    return Program(kept)


def least_model(program: Program) -> frozenset[str]:
    """Least model of a negation-free program (immediate-consequence fixpoint).

    BOT-headed rules do not derive anything; derive_bot() reports them.
    """
    derived: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in program:
            if r.head != BOT and r.head not in derived and set(r.body.pos) <= derived:
                derived.add(r.head)
                changed = True
    return frozenset(derived)


def _bot_derivable(program: Program, m: frozenset[str]) -> bool:
    return any(
        r.head == BOT and set(r.body.pos) <= m for r in program if not r.body.neg
    )


def is_stable(program: Program, m: Iterable[str]) -> bool:
    """Stable-model test: classical model whose reduct's least model is m.

    BOT-headed reduct rules act as constraints; they never participate in
    minimization but must not fire under m.
    """
    m = _check_atoms(program, m)
    if not classical_model_check(program, m):
        return False
    reduct = gl_reduct(program, m)
    if _bot_derivable(reduct, m):
        return False
    return least_model(reduct) == m


class _Masks:
    """Bitmask encoding of a program for fast subset enumeration."""

    def __init__(self, program: Program):
        self.atoms = program.atoms
        idx = {a: i for i, a in enumerate(self.atoms)}
        self.rules = [
            (
                -1 if r.head == BOT else idx[r.head],
                sum(1 << idx[a] for a in r.body.pos),
                sum(1 << idx[a] for a in r.body.neg),
            )
            for r in program
        ]

    def stable(self, m: int) -> bool:
        for head, pos, neg in self.rules:
            if pos & m == pos and neg & m == 0:
                if head < 0 or not (m >> head) & 1:
                    return False
        derived = 0
        changed = True
        while changed:
            changed = False
            for head, pos, neg in self.rules:
                if head >= 0 and neg & m == 0 and pos & derived == pos:
                    bit = 1 << head
                    if not derived & bit:
                        derived |= bit
                        changed = True
        return derived == m

    def to_set(self, m: int) -> frozenset[str]:
        return frozenset(a for i, a in enumerate(self.atoms) if (m >> i) & 1)


def enumerate_stable(program: Program, atom_limit: int = 20) -> set[frozenset[str]]:
    """All stable models by brute force over subsets of atom(P).

    Exponential by design; refuses programs above the atom limit.
    """
    n = len(program.atoms)
    if n > atom_limit:
        raise ValueError(
            f"program has {n} atoms, above the enumeration limit {atom_limit}"
        )
    masks = _Masks(program)
    return {masks.to_set(m) for m in range(1 << n) if masks.stable(m)}


def dependency_edges(program: Program) -> dict[str, set[str]]:
    """Positive dependency graph: an edge head -> a for each a in body+."""
    edges: dict[str, set[str]] = {a: set() for a in program.atoms}
    for r in program:
        if r.head != BOT:
            for a in r.body.pos:
                edges[r.head].add(a)
    return edges


def _sccs(edges: dict[str, set[str]]) -> list[set[str]]:
    """Strongly connected components (iterative Tarjan)."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    out: list[set[str]] = []
    counter = 0
    for root in edges:
        if root in index:
            continue
        work = [(root, iter(sorted(edges[root], key=natural_key)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(edges[w], key=natural_key))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def _strongly_connected_nonzero(sub: set[str], edges: dict[str, set[str]]) -> bool:
    """Non-zero-length path between every ordered pair inside sub."""
    if not sub:
        return False
    if len(sub) == 1:
        a = next(iter(sub))
        return a in edges.get(a, ())
    start = next(iter(sub))
    for graph in (edges, _reverse(edges, sub)):
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w in graph.get(v, ()):
                if w in sub and w not in seen:
                    seen.add(w)
                    todo.append(w)
        if seen < sub:
            return False
    return True


def _reverse(edges: dict[str, set[str]], sub: set[str]) -> dict[str, set[str]]:
    rev: dict[str, set[str]] = {a: set() for a in sub}
    for v in sub:
        for w in edges.get(v, ()):
            if w in sub:
                rev[w].add(v)
    return rev


def is_tight(program: Program) -> bool:
    """No loops in the positive dependency graph (checked via SCCs)."""
    edges = dependency_edges(program)
    for comp in _sccs(edges):
        if len(comp) > 1:
            return False
        a = next(iter(comp))
        if a in edges[a]:
            return False
    return True


def loops(program: Program, atom_limit: int = 15) -> set[frozenset[str]]:
    """All loops: non-empty atom sets strongly connected by non-zero paths.

    Full enumeration is exponential inside each SCC and guarded by the
    atom limit (tightness alone never needs this; use is_tight).
    """
    if len(program.atoms) > atom_limit:
        raise ValueError(
            f"program has {len(program.atoms)} atoms, above the loop "
            f"enumeration limit {atom_limit}"
        )
    edges = dependency_edges(program)
    found: set[frozenset[str]] = set()
    for comp in _sccs(edges):
        members = sorted(comp, key=natural_key)
        for size in range(1, len(members) + 1):
            for combo in combinations(members, size):
                sub = set(combo)
                if _strongly_connected_nonzero(sub, edges):
                    found.add(frozenset(sub))
    return found


def external_bodies(program: Program, atoms: Iterable[str]) -> set[Body]:
    """eb(A): bodies of rules with head in A whose positive part avoids A."""
    aset = frozenset(atoms)
    return {
        r.body
        for r in program
        if r.head in aset and not (set(r.body.pos) & aset)
    }


def greatest_unfounded(program: Program) -> frozenset[str]:
    """gus(P): union of all unfounded sets.

    Computed as the complement of the fixpoint of "supported by a rule
    whose positive body is already supported".
    """
    supported: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in program:
            if (
                r.head != BOT
                and r.head not in supported
                and set(r.body.pos) <= supported
            ):
                supported.add(r.head)
                changed = True
    return frozenset(program.atoms) - supported


def is_splitting_set(program: Program, u: Iterable[str]) -> bool:
    u = frozenset(u)
    return all(r.body.atoms <= u for r in program if r.head in u)


def split(program: Program, u: Iterable[str]) -> tuple[Program, Program]:
    """Bottom/top split relative to a splitting set u."""
    u = frozenset(u)
    for i, r in enumerate(program):
        if r.head in u and not r.body.atoms <= u:
            raise ValueError(
                f"not a splitting set: rule {i} ({r}) has head in u but "
                f"body atoms {sorted(r.body.atoms - u)} outside"
            )
    def inside(r: Rule) -> bool:
        return (r.body.atoms | ({r.head} - {BOT})) <= u

    bottom = [r for r in program if inside(r)]
    top = [r for r in program if not inside(r)]
    return Program(bottom), Program(top)


def partial_eval(top: Program, u: Iterable[str], x: Iterable[str]) -> Program:
    """Partially evaluate the top program with respect to x subset of u."""
    u = frozenset(u)
    x = frozenset(x)
    out = []
    for r in top:
        if set(r.body.pos) & u <= x and not (set(r.body.neg) & u & x):
            out.append(
                Rule(
                    r.head,
                    Body.make(set(r.body.pos) - u, set(r.body.neg) - u),
                )
            )
    return Program(out)
