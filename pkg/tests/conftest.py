import random

import pytest

from surfbundle import (CLOSED, ONE_BOUNDARY, HolonomyProblem, TwistWord,
                        evaluate_word)

CURVE_NAMES = {h: [f"a{i}" for i in range(1, h + 1)]
                  + [f"b{i}" for i in range(1, h + 1)]
                  + [f"c{i}" for i in range(1, h)]
               for h in (2, 3, 4)}


def random_twist_word(rng: random.Random, h: int, max_len: int = 8) -> TwistWord:
    length = rng.randint(1, max_len)
    return TwistWord(tuple((rng.choice(CURVE_NAMES[h]), rng.choice((1, -1)))
                           for _ in range(length)))


def random_symplectic(rng: random.Random, h: int, max_len: int = 8):
    return evaluate_word(random_twist_word(rng, h, max_len), h)


def random_closed_problem(rng: random.Random, h: int, g: int) -> HolonomyProblem:
    # commuting pairs (A, A^k) make every commutator trivial, so the closed
    # relator holds by construction
    entries = []
    for _ in range(g):
        a = random_symplectic(rng, h)
        entries.extend([a, a.pow(rng.randint(-2, 3))])
    return HolonomyProblem(h, CLOSED, g, tuple(entries))


def random_bounded_problem(rng: random.Random, h: int, g: int) -> HolonomyProblem:
    return HolonomyProblem(h, ONE_BOUNDARY, g,
                           tuple(random_symplectic(rng, h) for _ in range(2 * g)))


# weighted toward small sizes; a few larger shapes keep the scaling honest
CLOSED_SHAPES = [(2, 1)] * 45 + [(2, 2)] * 25 + [(3, 1)] * 20 + [(3, 2)] * 12 \
    + [(4, 1)] * 5 + [(2, 3)] * 2 + [(4, 2)] * 1
BOUNDED_SHAPES = [(2, 1)] * 40 + [(2, 2)] * 22 + [(3, 1)] * 18 + [(3, 2)] * 12 \
    + [(4, 1)] * 5 + [(2, 3)] * 2 + [(4, 3)] * 1


@pytest.fixture(scope="session")
def closed_corpus():
    rng = random.Random(20260810)
    return [random_closed_problem(rng, h, g) for h, g in CLOSED_SHAPES]


@pytest.fixture(scope="session")
def bounded_corpus():
    rng = random.Random(715)
    return [random_bounded_problem(rng, h, g) for h, g in BOUNDED_SHAPES]
