import random

import pytest

from omegasynth.automata import NFA
from omegasynth.decompose import build_nfa
from omegasynth.elimination import EliminationOrder, Gnfa, nfa_to_regex, to_gnfa, useful_states
from omegasynth.expr.syntax import to_text
from omegasynth.expr.tree import EMPTY, EPSILON, sym
from omegasynth.oracle import regex_matches, words


@pytest.mark.parametrize(
    "i, j, kind, text",
    [(0, 1, "all", "a+ba*b"), (1, 1, "rej", "c"), (1, 1, "acc", "da*b"), (0, 2, "all", "b+ac*d")],
)
def test_b1_triplet_strings(b1, i, j, kind, text):
    assert to_text(nfa_to_regex(build_nfa(b1, i, j, kind).nfa)) == text


@pytest.mark.parametrize("order", list(EliminationOrder))
def test_b1_acc_language(b1, order):
    nfa = build_nfa(b1, 1, 1, "acc").nfa
    r = nfa_to_regex(nfa, order)
    for w in words(b1.alphabet, 5):
        assert regex_matches(r, w) == nfa.accepts(w)


def test_no_transitions_gives_empty():
    assert nfa_to_regex(NFA(2, ("a",), [], {0}, {1})) == EMPTY


def test_initial_accepting_gives_epsilon():
    assert nfa_to_regex(NFA(1, ("a",), [], {0}, {0})) == EPSILON


def test_useless_states_are_pruned():
    nfa = NFA(4, ("a", "b"), [(0, 0, 1), (0, 1, 2), (3, 0, 1)], {0}, {1})
    assert useful_states(nfa) == {0, 1}
    assert to_text(nfa_to_regex(nfa)) == "a"


def test_gnfa_merges_parallel_edges():
    nfa = NFA(2, ("a", "b"), [(0, 0, 1), (0, 1, 1)], {0}, {1})
    g = to_gnfa(nfa)
    assert to_text(g.out[0][1]) == "a+b"
    assert g.paths_through(0) == 1 and g.paths_through(1) == 1


def test_gnfa_eliminate_self_loop():
    g = Gnfa()
    for q in (0, 1):
        g.add_state(q)
    g.add_edge(-1, 0, EPSILON)
    g.add_edge(0, 0, sym("a"))
    g.add_edge(0, 1, sym("b"))
    g.add_edge(1, -2, EPSILON)
    g.eliminate(0)
    g.eliminate(1)
    assert to_text(g.result()) == "a*b"


def test_fewest_paths_picks_cheapest_state():
    # state 1 is a hub (3 in, 3 out); fewest-paths leaves it for last
    edges = [(0, 0, 1), (2, 0, 1), (3, 0, 1), (1, 0, 4), (1, 1, 5), (1, 0, 6)]
    edges += [(0, 1, 2), (0, 1, 3)]
    edges += [(4, 0, 7), (5, 0, 7), (6, 0, 7)]
    nfa = NFA(8, ("a", "b"), edges, {0}, {7})
    g = to_gnfa(nfa)
    assert g.paths_through(1) == 9
    for order in EliminationOrder:
        r = nfa_to_regex(nfa, order)
        for w in words(nfa.alphabet, 5):
            assert regex_matches(r, w) == nfa.accepts(w)


def _random_nfa(rng, n, k):
    trans = {(rng.randrange(n), rng.randrange(k), rng.randrange(n)) for _ in range(rng.randint(0, 3 * n))}
    initial = set(rng.sample(range(n), rng.randint(1, min(2, n))))
    accepting = set(rng.sample(range(n), rng.randint(0, n)))
    return NFA(n, tuple("abc"[:k]), sorted(trans), initial, accepting)


def test_random_nfas_language_preserved():
    rng = random.Random(1234)
    for _ in range(300):
        nfa = _random_nfa(rng, rng.randint(1, 4), rng.randint(1, 2))
        for order in EliminationOrder:
            r = nfa_to_regex(nfa, order)
            for w in words(nfa.alphabet, 5):
                assert regex_matches(r, w) == nfa.accepts(w), (nfa, order, w)


def test_deterministic():
    rng = random.Random(99)
    for _ in range(20):
        nfa = _random_nfa(rng, 4, 2)
        for order in EliminationOrder:
            assert to_text(nfa_to_regex(nfa, order)) == to_text(nfa_to_regex(nfa, order))


def test_order_from_string(b1):
    nfa = build_nfa(b1, 0, 1).nfa
    assert nfa_to_regex(nfa, "fewest") == nfa_to_regex(nfa, EliminationOrder.FEWEST_PATHS_FIRST)
    with pytest.raises(ValueError):
        nfa_to_regex(nfa, "random")
