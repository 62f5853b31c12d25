import random
from itertools import combinations

import pytest

from asptab.program import BOT, Body, Program, Rule, rule
from asptab.semantics import (
    classical_model_check,
    enumerate_stable,
    external_bodies,
    gl_reduct,
    greatest_unfounded,
    is_splitting_set,
    is_stable,
    is_tight,
    least_model,
    loops,
    partial_eval,
    split,
)
from conftest import random_program

# The two running examples: P0 is unsatisfiable but tight, P1 is
# unsatisfiable because of the positive loop {a, b}.
P0 = Program([rule("a", ["b"], ["a"]), rule("b", ["c"]), rule("c", neg=["b"])])
P1 = Program([rule(BOT, neg=["a"]), rule("a", ["b"]), rule("b", ["a"])])


def all_subsets(atoms):
    for k in range(len(atoms) + 1):
        yield from (frozenset(c) for c in combinations(atoms, k))


def brute_classical(program, m):
    for r in program:
        if set(r.body.pos) <= m and not (set(r.body.neg) & m):
            if r.head == BOT or r.head not in m:
                return False
    return True


def test_classical_model_check_fact():
    assert classical_model_check(Program([rule("a")]), {"a"})


def test_classical_model_check_empty_interpretation():
    p = Program([rule("a", neg=["b"]), rule("b", neg=["a"])])
    # both bodies satisfied under {}, heads absent
    assert not classical_model_check(p, frozenset())


def test_classical_model_check_p0():
    # b <- c forces b whenever c holds, so {c} alone is not a model
    assert not classical_model_check(P0, {"c"})
    assert classical_model_check(P0, {"a", "b", "c"})
    for m in all_subsets(P0.atoms):
        assert classical_model_check(P0, m) == brute_classical(P0, m)


def test_classical_model_check_rejects_unknown_atom():
    with pytest.raises(ValueError):
        classical_model_check(P0, {"zzz"})


def test_gl_reduct_drops_blocked_rules():
    p = Program([rule("a", neg=["b"]), rule("b", neg=["a"])])
    assert gl_reduct(p, {"a"}) == Program([Rule("a", Body.make())])


def test_gl_reduct_positive_program_fixed():
    p = Program([rule("b", ["a"])])
    for m in all_subsets(p.atoms):
        assert gl_reduct(p, m) == p


def test_gl_reduct_p0():
    assert gl_reduct(P0, {"a", "b", "c"}) == Program([rule("b", ["c"])])


def test_gl_reduct_output_negation_free(rng):
    for _ in range(50):
        p = random_program(rng)
        m = frozenset(a for a in p.atoms if rng.random() < 0.5)
        assert all(not r.body.neg for r in gl_reduct(p, m))


def test_is_stable_examples():
    p = Program([rule("a", neg=["b"]), rule("b", neg=["a"])])
    assert is_stable(p, {"a"})
    assert not is_stable(Program([rule("a", ["a"])]), {"a"})
    for m in all_subsets(P0.atoms):
        assert not is_stable(P0, m)


def test_enumerate_stable_examples():
    p = Program([rule("a", neg=["b"]), rule("b", neg=["a"])])
    assert enumerate_stable(p) == {frozenset({"a"}), frozenset({"b"})}
    assert enumerate_stable(Program([rule("a")])) == {frozenset({"a"})}
    assert enumerate_stable(P1) == set()


def test_enumerate_stable_refuses_large():
    p = Program([rule(f"a{i}") for i in range(25)])
    with pytest.raises(ValueError):
        enumerate_stable(p)


def test_enumerate_agrees_with_is_stable(rng):
    for _ in range(60):
        p = random_program(rng)
        models = enumerate_stable(p)
        for m in all_subsets(p.atoms):
            assert (m in models) == is_stable(p, m)


def test_least_model_unique_fixpoint():
    p = Program([rule("a"), rule("b", ["a"]), rule("c", ["b", "d"])])
    assert least_model(p) == {"a", "b"}


def test_loops_and_tightness():
    assert loops(P1) == {frozenset({"a", "b"})}
    assert not is_tight(P1)
    assert loops(P0) == set()
    assert is_tight(P0)
    assert loops(Program([rule("a", ["a"])])) == {frozenset({"a"})}


def test_is_tight_iff_no_loops(rng):
    for _ in range(80):
        p = random_program(rng, max_atoms=6, max_rules=10)
        assert is_tight(p) == (loops(p) == set())


def test_loops_refuses_above_limit():
    p = Program([rule(f"a{i}", [f"a{(i + 1) % 20}"]) for i in range(20)])
    with pytest.raises(ValueError):
        loops(p)
    assert not is_tight(p)


def test_external_bodies():
    assert external_bodies(P1, {"a", "b"}) == set()
    p = Program([rule("a", ["b"]), rule("b", neg=["c"])])
    assert external_bodies(p, {"a", "b"}) == {Body.make(neg=["c"])}
    assert external_bodies(p, set()) == set()


def test_greatest_unfounded():
    assert greatest_unfounded(Program([rule("a", ["b"]), rule("b", ["a"])])) == {
        "a",
        "b",
    }
    assert greatest_unfounded(Program([rule("a")])) == set()
    # c has no rules at all, so eb({c}) is empty and {c} is unfounded
    assert greatest_unfounded(Program([rule("a", ["b"]), rule("b", neg=["c"])])) == {
        "c"
    }


def test_greatest_unfounded_is_union_of_unfounded_sets(rng):
    for _ in range(40):
        p = random_program(rng, max_atoms=6, max_rules=10)
        union = set()
        for u in all_subsets(p.atoms):
            if u and not external_bodies(p, u):
                union |= u
        assert greatest_unfounded(p) == union


def test_split_and_partial_eval():
    p = Program([rule("a"), rule("p", ["a"], ["b"])])
    bottom, top = split(p, {"a", "b"})
    assert bottom == Program([rule("a")])
    assert top == Program([rule("p", ["a"], ["b"])])
    assert partial_eval(top, {"a", "b"}, {"a"}) == Program([rule("p")])


def test_split_whole_atom_set():
    bottom, top = split(P0, set(P0.atoms))
    assert bottom == P0
    assert top == Program([])


def test_split_rejects_non_splitting_set():
    with pytest.raises(ValueError):
        split(P1, {"a"})


def test_splitting_theorem(rng):
    # m stable  <=>  (m & u stable in bottom) and (m - u stable in eval(top))
    checked = 0
    for _ in range(120):
        p = random_program(rng, max_atoms=6, max_rules=8)
        atoms = p.atoms
        for u in all_subsets(atoms):
            if not is_splitting_set(p, u):
                continue
            bottom, top = split(p, u)
            for m in all_subsets(atoms):
                x, y = m & u, m - u
                lhs = is_stable(p, m)
                ev = partial_eval(top, u, x)
                rhs = (
                    x <= frozenset(bottom.atoms)
                    and is_stable(bottom, x)
                    and y <= frozenset(ev.atoms)
                    and is_stable(ev, y)
                )
                assert lhs == rhs, (str(p), sorted(u), sorted(m))
                checked += 1
        if checked > 4000:
            break
    assert checked > 1000
