import pytest

from asptab.engine import EngineConfig, ProofRecord, TableauProof, proof_length, solve
from asptab.program import BOT, Body, ExtensionSet, Program, extend, rule
from asptab.proofs import (
    ExtensionTriple,
    ResolutionProof,
    ResStep,
    check_eres_proof,
    check_res_proof,
    check_tableau_proof,
    is_tree_like,
)
from conftest import random_program

P0 = Program([rule("a", ["b"], ["a"]), rule("b", ["c"]), rule("c", neg=["b"])])
P1 = Program([rule(BOT, neg=["a"]), rule("a", ["b"]), rule("b", ["a"])])

B_A = Body.make(["b"], ["a"])  # {b, not a}
B_C = Body.make(["c"])
B_NB = Body.make(neg=["b"])

FULL = EngineConfig(record_proof=True)

# The two-branch tableau proof of P0 exactly as the worked example draws
# it: cut on a; the true branch derives the body of a's rule and refutes
# a backward; the false branch walks b and c forward.
FIG2 = TableauProof(
    (
        ProofRecord(-1, False, BOT, "root"),
        ProofRecord(0, True, "a", "cut"),
        ProofRecord(1, True, B_A, "is", (1,)),
        ProofRecord(2, True, "b", "g", (2,)),
        ProofRecord(3, False, "a", "g", (2,)),
        ProofRecord(0, False, "a", "cut"),
        ProofRecord(5, False, B_A, "e", (5,)),
        ProofRecord(6, False, "b", "c", (6, 5)),
        ProofRecord(7, True, B_NB, "b", (7,)),
        ProofRecord(8, True, "c", "d", (8,)),
        ProofRecord(9, True, B_C, "b", (9,)),
        ProofRecord(10, True, "b", "d", (10,)),
    )
)

C0_STEPS = (
    ResStep(frozenset({1, 2})),
    ResStep(frozenset({1, -2})),
    ResStep(frozenset({-1, 2})),
    ResStep(frozenset({-1, -2})),
    ResStep(frozenset({2}), 0, 2),
    ResStep(frozenset({-2}), 1, 3),
    ResStep(frozenset(), 4, 5),
)
C0_CLAUSES = [frozenset({1, 2}), frozenset({1, -2}), frozenset({-1, 2}), frozenset({-1, -2})]


def test_figure2_proof_valid_and_length():
    assert check_tableau_proof(P0, None, FIG2)
    assert proof_length(FIG2) == 12


def test_engine_proof_valid():
    res = solve(P0, config=FULL)
    assert check_tableau_proof(P0, None, res.proof)


def test_engine_proofs_valid_random(rng):
    checked = 0
    for _ in range(120):
        p = random_program(rng, max_atoms=6, max_rules=12)
        res = solve(p, config=FULL)
        if res.satisfiable:
            continue
        assert check_tableau_proof(p, None, res.proof), str(p)
        checked += 1
    assert checked >= 25


def test_engine_lookahead_proofs_valid(rng):
    cfg = EngineConfig(lookahead=True, record_proof=True)
    checked = 0
    for _ in range(60):
        p = random_program(rng, max_atoms=5, max_rules=10)
        res = solve(p, config=cfg)
        if res.satisfiable:
            continue
        assert check_tableau_proof(p, None, res.proof), str(p)
        checked += 1
    assert checked >= 10


def _mutate(records, idx, **changes):
    rec = records[idx]
    fields = {
        "parent": rec.parent,
        "sign": rec.sign,
        "obj": rec.obj,
        "rule": rec.rule,
        "premises": rec.premises,
        "witness": rec.witness,
    }
    fields.update(changes)
    out = list(records)
    out[idx] = ProofRecord(**fields)
    return TableauProof(tuple(out))


def test_mutation_redirected_premise():
    bad = _mutate(FIG2.records, 2, premises=(5,))  # premise from the other branch
    assert not check_tableau_proof(P0, None, bad)


def test_mutation_swapped_rule_id():
    bad = _mutate(FIG2.records, 2, rule="d")
    assert not check_tableau_proof(P0, None, bad)


def test_mutation_dropped_premise():
    bad = _mutate(FIG2.records, 7, premises=(6,))
    # (c) premises must cover every other body literal
    assert not check_tableau_proof(P0, None, bad)


def test_mutation_open_leaf():
    open_proof = TableauProof(FIG2.records[:-1])
    assert not check_tableau_proof(P0, None, open_proof)


def test_mutation_sign_flip():
    bad = _mutate(FIG2.records, 9, sign=False)
    assert not check_tableau_proof(P0, None, bad)


def test_mutation_unknown_object():
    bad = _mutate(FIG2.records, 3, obj="zz")
    assert not check_tableau_proof(P0, None, bad)


def test_mutation_cut_on_assigned():
    records = FIG2.records + (
        ProofRecord(4, True, "a", "cut"),
        ProofRecord(4, False, "a", "cut"),
    )
    assert not check_tableau_proof(P0, None, TableauProof(records))


def test_mutation_lonely_cut():
    records = FIG2.records[:5]  # keeps only the true cut child
    assert not check_tableau_proof(P0, None, TableauProof(records))


def _p1_wf_proof(witness):
    na = Body.make(neg=["a"])
    ba = Body.make(["b"])
    return TableauProof(
        (
            ProofRecord(-1, False, BOT, "root"),
            ProofRecord(0, False, na, "e", (0,)),
            ProofRecord(1, True, "a", "c", (1,)),
            ProofRecord(2, False, "a", "hw", (1,), witness),
        )
    )


def test_wf_witness_good_and_bad():
    assert check_tableau_proof(P1, None, _p1_wf_proof(("a", "b")))
    # {a} alone is not unfounded: its rule body {b} stays external
    assert not check_tableau_proof(P1, None, _p1_wf_proof(("a",)))


def test_loop_witness_good_and_bad():
    # forward loop: both external bodies of {a,b} are false on the branch
    p = Program(
        [
            rule("a", ["b"]),
            rule("b", ["a"]),
            rule("a", neg=["c"]),
            rule("c"),
            rule(BOT, neg=["a"]),
        ]
    )
    nc = Body.make(neg=["c"])
    na = Body.make(neg=["a"])
    empty = Body.make()
    base = (
        ProofRecord(-1, False, BOT, "root"),
        ProofRecord(0, True, empty, "b"),
        ProofRecord(1, True, "c", "d", (1,)),
        ProofRecord(2, False, nc, "f", (2,)),
        ProofRecord(3, False, na, "e", (0,)),
        ProofRecord(4, True, "a", "c", (4,)),
        ProofRecord(5, False, "a", "hl", (3,), ("a", "b")),
    )
    assert check_tableau_proof(p, None, TableauProof(base))
    bad = base[:-1] + (ProofRecord(5, False, "a", "hl", (3,), ("a", "c")),)
    assert not check_tableau_proof(p, None, TableauProof(bad))


def test_extension_head_not_fresh_rejected():
    ext = ExtensionSet.__new__(ExtensionSet)
    object.__setattr__(ext, "steps", ())
    from asptab.program import ExtensionStep

    bad_ext = ExtensionSet((ExtensionStep("a", (Body.make(["b"]),)),))
    proof = TableauProof(FIG2.records, bad_ext)
    assert not check_tableau_proof(P0, bad_ext, proof)


def test_check_res_proof_example():
    proof = ResolutionProof(C0_STEPS)
    assert check_res_proof(C0_CLAUSES, proof)
    assert is_tree_like(proof)
    assert proof.is_refutation()


def test_res_reuse_not_tree_like():
    steps = C0_STEPS[:5] + (
        ResStep(frozenset({1}), 4, 1),  # reuse derived {2} -> {1}
        ResStep(frozenset({-1}), 4, 3),
    )
    proof = ResolutionProof(steps)
    assert check_res_proof(C0_CLAUSES, proof)
    assert not is_tree_like(proof)


def test_res_no_pivot_invalid():
    proof = ResolutionProof(
        (ResStep(frozenset({1})), ResStep(frozenset({1}), 0, 0))
    )
    assert not check_res_proof([frozenset({1})], proof)


def test_res_foreign_initial_invalid():
    proof = ResolutionProof((ResStep(frozenset({3})),))
    assert not check_res_proof(C0_CLAUSES, proof)


def test_res_wrong_resolvent_invalid():
    steps = C0_STEPS[:4] + (ResStep(frozenset({1, 2}), 0, 2),)
    assert not check_res_proof(C0_CLAUSES, ResolutionProof(steps))


def test_eres_plain_equals_res():
    proof = ResolutionProof(C0_STEPS)
    assert check_eres_proof(C0_CLAUSES, (), proof)


def test_eres_triple_clauses_usable():
    triple = ExtensionTriple(3, 1, 2)
    steps = (
        ResStep(frozenset({-3, 1})),
        ResStep(frozenset({3, -1, -2})),
        ResStep(frozenset({1, -1, -2}), 0, 1),
    )
    assert check_eres_proof(C0_CLAUSES, (triple,), ResolutionProof(steps))


def test_eres_stale_variable_invalid():
    triple = ExtensionTriple(2, 1, 1)  # variable 2 already exists
    proof = ResolutionProof((ResStep(frozenset({1, 2})),))
    assert not check_eres_proof(C0_CLAUSES, (triple,), proof)


def test_eres_unknown_literal_invalid():
    triple = ExtensionTriple(3, 9, 1)
    proof = ResolutionProof((ResStep(frozenset({1, 2})),))
    assert not check_eres_proof(C0_CLAUSES, (triple,), proof)
