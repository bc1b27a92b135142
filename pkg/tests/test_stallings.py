"""Folded subgroup graphs: membership vs brute force, fold confluence,
expression round trips, and Euler-characteristic rank."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loctower.stallings import (
    ExpressionSearchExhausted,
    SubgroupGraph,
    build_graph,
    contains,
    express,
    express_in_basis,
    graph_edge_lines,
    rank,
    trace,
)
from loctower.words import IDENTITY, Word, commutator, invert, multiply, substitute, word

from conftest import random_nonempty_word, random_word, words_strategy


def brute_force_member(generators, target, max_factors=4):
    """Try every product of at most `max_factors` generators or inverses."""
    if not target:
        return True
    moves = [g for g in generators] + [invert(g) for g in generators]
    frontier = [IDENTITY]
    for _ in range(max_factors):
        frontier = [multiply(w, m) for w in frontier for m in moves]
        if any(w == target for w in frontier):
            return True
    return False


class TestBuildGraph:
    def test_single_loop(self):
        g = build_graph([word(1)])
        assert g.num_vertices == 1
        assert g.edges == ((0, 0, 1),)

    def test_commutator_is_a_square(self):
        g = build_graph([commutator(word(1), word(2))])
        assert g.num_vertices == 4
        assert len(g.edges) == 4
        assert {abs(l) for _, _, l in g.edges} == {1, 2}

    def test_powers_fold_to_full_cyclic_group(self):
        # <x1^2, x1^3> = <x1>
        g = build_graph([word(1, 1), word(1, 1, 1)])
        assert contains(g, word(1))

    def test_identity_generators_rejected_gracefully(self):
        g = build_graph([IDENTITY, word(1)])
        assert contains(g, word(1))

    def test_empty_generator_list_rejected(self):
        with pytest.raises(ValueError):
            build_graph([])

    def test_graph_edge_lines(self):
        g = build_graph([word(1)])
        assert graph_edge_lines(g) == ["0 0 1"]

    def test_deterministic(self):
        gens = [word(1, 2, -1), word(2, 2), word(1, -3, 1)]
        assert build_graph(gens) == build_graph(gens)


class TestFoldConfluence:
    def test_random_schedules_agree(self):
        rng = random.Random(20240817)
        for trial in range(100):
            gens = [
                random_nonempty_word(rng, 6, [1, 2, 3])
                for _ in range(rng.randint(1, 4))
            ]
            reference = build_graph(gens)
            for seed in range(3):
                shuffled = build_graph(gens, fold_seed=rng.randint(0, 10**9))
                assert shuffled == reference, (trial, gens)


class TestMembership:
    def test_examples(self):
        g = build_graph([word(1, 1), word(2)])
        assert contains(g, word(1, 1, 2))
        assert contains(g, word(2, -1, -1))
        assert not contains(g, word(1))
        assert contains(g, IDENTITY)

    def test_commutator_subgroup_misses_generators(self):
        g = build_graph([commutator(word(1), word(2))])
        assert not contains(g, word(1))
        assert not contains(g, word(2))

    def test_matches_brute_force(self):
        rng = random.Random(95014)
        checked_positive = 0
        for trial in range(120):
            gens = [
                random_nonempty_word(rng, 5, [1, 2, 3])
                for _ in range(rng.randint(1, 3))
            ]
            g = build_graph(gens)
            target = random_word(rng, 6, [1, 2, 3])
            if brute_force_member(gens, target):
                assert contains(g, target), (gens, target)
                checked_positive += 1
            # graph positives are verified by the express() round trip;
            # the bounded search may give up, but never answers wrongly
            try:
                witness = express(g, target)
            except ExpressionSearchExhausted:
                continue
            if witness is not None:
                assert substitute(witness, gens) == target
            else:
                assert not contains(g, target)
        assert checked_positive >= 20

    @given(words_strategy(rank=3, max_len=8))
    @settings(max_examples=100)
    def test_subgroup_closure(self, w):
        gens = [word(1, 1), word(2, 1), word(3)]
        g = build_graph(gens)
        # products of generators and their inverses are always members
        assert contains(g, substitute(w, gens))


class TestExpress:
    def test_examples(self):
        g = build_graph([word(1, 1)])
        assert express(g, word(1, 1, 1, 1)) == word(1, 1)
        assert express(g, word(1)) is None

        c12 = commutator(word(1), word(2))
        c34 = commutator(word(3), word(4))
        g = build_graph([c12, c34])
        assert express(g, multiply(c34, c12)) == word(2, 1)

    def test_basis_expression_round_trip(self):
        gens = [word(1, 2), word(2, 2), word(3, 1)]
        g = build_graph(gens)
        rng = random.Random(7)
        for _ in range(60):
            recipe = random_word(rng, 6, [1, 2, 3])
            target = substitute(recipe, gens)
            witness = express(g, target)
            assert witness is not None
            assert substitute(witness, gens) == target

    def test_search_fallback(self):
        # generators that do not read as single basis letters
        gens = [word(1, 1), word(1, 1, 1)]
        g = build_graph(gens)
        witness = express(g, word(1))
        assert witness is not None
        assert substitute(witness, gens) == word(1)

    def test_express_in_basis_rejects_nonmembers(self):
        g = build_graph([word(1, 1)])
        with pytest.raises(ValueError):
            express_in_basis(g, word(1))


class TestRank:
    def test_examples(self):
        assert rank(build_graph([word(1), word(2)])) == 2
        assert rank(build_graph([word(1, 1), word(1, 1, 1)])) == 1
        assert rank(build_graph([commutator(word(1), word(2))])) == 1

    def test_commutator_family_rank(self):
        for n in range(1, 5):
            gens = [
                commutator(word(2 * i), word(2 * i + 1)) for i in range(1, n + 1)
            ]
            assert rank(build_graph(gens)) == n

    def test_free_generating_sets(self):
        rng = random.Random(31)
        for _ in range(40):
            gens = [random_nonempty_word(rng, 6, [1, 2, 3]) for _ in range(2)]
            g = build_graph(gens)
            assert 1 <= rank(g) <= len(gens)


class TestTrace:
    def test_paths(self):
        g = build_graph([word(1, 2)])
        assert trace(g, word(1)) is not None
        assert trace(g, word(2)) is None
        assert trace(g, word(1, 2)) == 0
