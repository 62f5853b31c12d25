import random
from itertools import combinations

import pytest

from asptab.cnf import ClauseSet, clause, count_assignments, enumerate_assignments, satisfies
from asptab.program import BOT, Body, Program, rule
from asptab.semantics import enumerate_stable, is_stable, is_tight
from asptab.translate import (
    map_models,
    sat_model_from_stable,
    stable_from_sat_model,
    to_asp,
    to_cnf,
)
from conftest import random_program

C0 = ClauseSet(
    [clause(1, 2), clause(1, -2), clause(-1, 2), clause(-1, -2)],
    num_vars=2,
    names=["x", "y"],
)

P0 = Program([rule("a", ["b"], ["a"]), rule("b", ["c"]), rule("c", neg=["b"])])


def test_to_asp_shape_of_c0():
    prog, names = to_asp(C0)
    assert len(prog) == 16
    assert names.pos_atom == {"x": "a_x", "y": "a_y"}
    assert names.neg_atom == {"x": "a_x'", "y": "a_y'"}
    # the four rule groups, in order
    texts = [str(r) for r in prog]
    assert texts[0] == "a_x :- not a_x'."
    assert texts[1] == "a_x' :- not a_x."
    assert texts[4] == ":- not c1."
    assert "c2 :- not a_y." in texts
    assert "c3 :- not a_x." in texts
    # stable models biject with satisfying assignments: C0 is unsatisfiable
    assert enumerate_stable(prog) == set()


def test_to_asp_single_unit_clause():
    cs = ClauseSet([clause(1)], num_vars=1, names=["x"])
    prog, names = to_asp(cs)
    assert len(prog) == 4
    models = enumerate_stable(prog)
    assert len(models) == 1
    (m,) = models
    assert sat_model_from_stable(names, m, prog) == {"x": True}


def test_to_asp_no_clauses_two_models():
    cs = ClauseSet([], num_vars=1, names=["x"])
    prog, _ = to_asp(cs)
    assert len(prog) == 2
    assert len(enumerate_stable(prog)) == 2


def test_to_asp_empty_clause_is_unsat():
    cs = ClauseSet([clause(1), clause()], num_vars=1, names=["x"])
    prog, _ = to_asp(cs)
    assert enumerate_stable(prog) == set()


def test_to_asp_duplicate_clause_warns():
    cs = ClauseSet([clause(1), clause(1)], num_vars=1, names=["x"])
    with pytest.warns(UserWarning, match="duplicate"):
        prog, _ = to_asp(cs)
    assert len(prog) == 4


def test_to_asp_size_linear():
    rng = random.Random(7)
    for _ in range(20):
        nv = rng.randint(1, 6)
        cls = [
            frozenset(
                rng.choice([v, -v])
                for v in rng.sample(range(1, nv + 1), rng.randint(1, nv))
            )
            for _ in range(rng.randint(0, 8))
        ]
        cls = list(dict.fromkeys(cls))
        cs = ClauseSet(cls, num_vars=nv)
        prog, _ = to_asp(cs)
        assert len(prog) == 2 * nv + len(cls) + sum(len(c) for c in cls)


def test_to_cnf_example_completion():
    comp, names = to_cnf(P0)
    # variables: atoms a,b,c then bodies {b,~a}, {c}, {~b}
    assert names.atom_var == {"a": 1, "b": 2, "c": 3}
    assert names.body_var == {
        Body.make(["b"], ["a"]): 4,
        Body.make(["c"]): 5,
        Body.make(neg=["b"]): 6,
    }
    expected = [
        {4, 1, -2},
        {-4, 2},
        {-4, -1},
        {5, -3},
        {-5, 3},
        {6, 2},
        {-6, -2},
        {1, -4},
        {-1, 4},
        {2, -5},
        {-2, 5},
        {3, -6},
        {-3, 6},
    ]
    assert len(comp.clauses) == 13
    assert {frozenset(c) for c in expected} == set(comp.clauses)


def test_to_cnf_fact_forces_atom():
    comp, names = to_cnf(Program([rule("a")]))
    empty = Body.make()
    # empty body variable is forced true, and x_a == x_{}
    assert frozenset([names.body_var[empty]]) in comp.clauses
    for tau in enumerate_assignments(comp):
        assert tau[names.atom_var["a"]]


def test_to_cnf_headless_atom_forced_false():
    comp, names = to_cnf(Program([rule("b", neg=["c"])]))
    assert frozenset([-names.atom_var["c"]]) in comp.clauses


def test_to_cnf_constraint_body_unit():
    comp, names = to_cnf(Program([rule(BOT, ["a"]), rule("a", neg=["b"])]))
    assert frozenset([-names.body_var[Body.make(["a"])]]) in comp.clauses


def test_to_cnf_rejects_bot_in_body():
    with pytest.raises(ValueError):
        to_cnf(Program([rule("a", [BOT])]))


def test_non_tight_completion_has_extra_model():
    # {a <- a} has no stable model with a, but its completion is satisfied
    # by setting both variables true: the tightness precondition matters.
    p = Program([rule("a", ["a"])])
    comp, names = to_cnf(p)
    taus = enumerate_assignments(comp)
    assert any(t[names.atom_var["a"]] for t in taus)
    assert all("a" not in m for m in enumerate_stable(p))


def _comp_assignments(comp, names):
    """Satisfying assignments of a completion, enumerated over atom
    variables only: body variables are pinned by their definitional
    clauses, so each atom assignment extends in exactly one candidate way."""
    atom_vars = sorted(names.atom_var.values())
    body_items = list(names.body_var.items())
    out = []
    for k in range(len(atom_vars) + 1):
        for combo in combinations(atom_vars, k):
            tau = {v: v in combo for v in atom_vars}
            for b, bv in body_items:
                val = all(tau[names.atom_var[a]] for a in b.pos) and not any(
                    tau[names.atom_var[a]] for a in b.neg
                )
                tau[bv] = val
            if satisfies(comp.clauses, tau):
                out.append(tau)
    return out


def test_random_cnf_translation_bijection(rng):
    for _ in range(40):
        nv = rng.randint(1, 4)
        n_clauses = rng.randint(0, 6)
        cls = []
        for _ in range(n_clauses):
            vs = rng.sample(range(1, nv + 1), rng.randint(1, nv))
            cls.append(frozenset(rng.choice([v, -v]) for v in vs))
        cls = list(dict.fromkeys(cls))
        cs = ClauseSet(cls, num_vars=nv)
        prog, names = to_asp(cs)
        taus = enumerate_assignments(cs)
        models = enumerate_stable(prog)
        assert len(taus) == len(models)
        mapped = {
            frozenset(x for x, v in sat_model_from_stable(names, m).items() if v)
            for m in models
        }
        expected = {
            frozenset(cs.name_of(v) for v, val in t.items() if val) for t in taus
        }
        assert mapped == expected


def test_random_tight_program_completion_bijection(rng):
    for _ in range(40):
        p = random_program(rng, max_atoms=6, max_rules=10, force_tight=True)
        assert is_tight(p)
        comp, names = to_cnf(p)
        taus = _comp_assignments(comp, names)
        stable = enumerate_stable(p)
        projected = {stable_from_sat_model(names, t) for t in taus}
        assert len(taus) == len(stable)
        assert projected == stable


def test_map_models_dispatch():
    cs = ClauseSet([clause(1)], num_vars=1, names=["x"])
    prog, names = to_asp(cs)
    (m,) = enumerate_stable(prog)
    assert map_models("to-sat", m, names, prog) == {"x": True}
    comp, cnames = to_cnf(Program([rule("a")]))
    tau = enumerate_assignments(comp)[0]
    assert map_models("to-asp", tau, cnames, comp) == {"a"}
    with pytest.raises(ValueError):
        map_models("sideways", m, names)


def test_map_models_rejects_non_model():
    cs = ClauseSet([clause(1)], num_vars=1, names=["x"])
    prog, names = to_asp(cs)
    with pytest.raises(ValueError, match="stable"):
        sat_model_from_stable(names, frozenset({"a_x"}), prog)
