import random

import pytest

from countercheck.cca import CCA, CHECK, INC, NO_OP, Transition


def atom_empty(alphabet="ab") -> CCA:
    return CCA(
        states=frozenset({"s0", "s1"}),
        alphabet=frozenset(alphabet),
        initial="s0",
        counters=1,
        transitions=frozenset(),
        final="s1",
    )


def atom_a(alphabet="ab") -> CCA:
    return CCA(
        states=frozenset({"s0", "s1"}),
        alphabet=frozenset(alphabet),
        initial="s0",
        counters=1,
        transitions=frozenset(
            {Transition("s0", "a", "s1", 1, NO_OP), Transition("s1", None, "s1", 1, INC)}
        ),
        final="s1",
    )


def random_general_cca(rng: random.Random, max_states=6, max_counters=2, alphabet=("a", "b")) -> CCA:
    """Arbitrary (usually non-simple) automaton for normalization tests."""
    n = rng.randint(2, max_states)
    counters = rng.randint(1, max_counters)
    names = [f"r{i}" for i in range(n)]
    transitions = set()
    for _ in range(rng.randint(1, 2 * n)):
        label = rng.choice(alphabet) if rng.random() < 0.5 else None
        op = rng.choice((NO_OP, INC, CHECK))
        counter = 1 if op == NO_OP else rng.randint(1, counters)
        transitions.add(Transition(rng.choice(names), label, rng.choice(names), counter, op))
    return CCA(
        states=frozenset(names),
        alphabet=frozenset(alphabet),
        initial=names[0],
        counters=counters,
        transitions=frozenset(transitions),
    )


@pytest.fixture
def rng():
    return random.Random(20240817)
