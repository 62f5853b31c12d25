import random

import pytest

from asptab.program import BOT, Body, Program, Rule


def random_program(
    rng: random.Random,
    max_atoms: int = 8,
    max_rules: int = 16,
    constraint_prob: float = 0.15,
    force_tight: bool = False,
) -> Program:
    """Small random program for oracle comparisons (mixed tight/non-tight)."""
    n_atoms = rng.randint(1, max_atoms)
    atoms = [f"v{i}" for i in range(1, n_atoms + 1)]
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        if rng.random() < constraint_prob:
            head = BOT
        else:
            head = rng.choice(atoms)
        body_len = rng.randint(0, 3)
        pos, neg = [], []
        for _ in range(body_len):
            a = rng.choice(atoms)
            if force_tight and head != BOT:
                # only allow positive edges toward strictly smaller atoms
                if rng.random() < 0.5 and a < head:
                    pos.append(a)
                else:
                    neg.append(a)
            else:
                (pos if rng.random() < 0.5 else neg).append(a)
        rules.append(Rule(head, Body.make(pos, neg)))
    return Program(rules)


@pytest.fixture
def rng():
    return random.Random(20240811)
