import itertools
import random

import pytest

from forq.automaton import Alphabet, Buchi
from forq.engine import enumerate_test_set
from forq.membership import PeriodGraph, member, member_bruteforce
from forq.oracle import GenParams, generate, random_pair

from conftest import example_a, example_b, w


def test_example_lassos():
    b = example_b()
    assert not member(b, w("a"), w("a"))
    assert member(b, (), w("b"))
    assert not member_bruteforce(b, w("a"), w("a"))
    assert member(b, w("ab"), w("ba")) is False
    assert member(b, w("ab"), w("b"))


def test_universal_automaton_accepts_every_lasso():
    a = example_a()
    for u in itertools.product(range(2), repeat=2):
        for v in (w("a"), w("b"), w("ab")):
            assert member(a, u, v)


def test_single_accepting_self_loop():
    one = Buchi(1, 0, frozenset({(0, 0, 0)}), frozenset({0}), Alphabet(("a",)))
    assert member(one, (), (0,)) and member_bruteforce(one, (0, 0), (0,))


def test_empty_period_is_rejected():
    with pytest.raises(ValueError):
        member(example_b(), (), ())
    with pytest.raises(ValueError):
        PeriodGraph(example_b(), ())
    with pytest.raises(ValueError):
        member_bruteforce(example_b(), (), ())


def test_period_graph_good_states_example():
    b = example_b()
    # reading b-blocks, q2 loops with an accepting visit and every state reaches it
    assert PeriodGraph(b, w("b")).good == 0b111
    # a-blocks cannot cycle through q2
    assert PeriodGraph(b, w("a")).good == 0


def test_member_agrees_with_bruteforce():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(1, 5)
        b = generate(GenParams(n, 2, rng.choice([1.0, 1.5, 2.0]), rng.choice([0.2, 0.5]),
                               rng.randrange(10**6)))
        u = tuple(rng.randrange(2) for _ in range(rng.randint(0, 4)))
        v = tuple(rng.randrange(2) for _ in range(rng.randint(1, 4)))
        assert member(b, u, v) == member_bruteforce(b, u, v, n * (n + 1))


def test_rotation_and_doubling_preserve_membership():
    rng = random.Random(8)
    for _ in range(300):
        b = generate(GenParams(rng.randint(1, 5), 2, 1.5, 0.4, rng.randrange(10**6)))
        u = tuple(rng.randrange(2) for _ in range(rng.randint(0, 3)))
        v = tuple(rng.randrange(2) for _ in range(rng.randint(1, 3)))
        expected = member(b, u, v)
        assert member(b, u + v, v) == expected
        assert member(b, u, v + v) == expected


def test_test_set_lassos_belong_to_left_language():
    for seed in range(100):
        a, b = random_pair(seed)
        for u, v in enumerate_test_set(a, b):
            assert member(a, u, v)
