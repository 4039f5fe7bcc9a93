from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from builders import K, empty_graph, path3, random_colouring, small_graphs
from oracles import is_delta, naive_is_k_delta, naive_maximal_delta_systems
from rrlab.colourings import (
    Colouring,
    is_delta_system,
    is_k_bounded,
    is_k_delta,
    maximal_delta_systems,
    plan_reduction,
    rainbow_copy_search,
    reduce_colouring,
)
from rrlab.structures import complete, enumerate_copies, generate_random, graph

GRAPHS = small_graphs(5)


def colouring(host, pattern, colours):
    return Colouring.of(enumerate_copies(host, pattern), colours)


class TestColouring:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            Colouring((("a",),), (0, 1))

    def test_negative_colour(self):
        with pytest.raises(ValueError):
            Colouring((("a",),), (-1,))

    def test_mapping_constructor(self):
        c = Colouring.of([("a",), ("b",)], {("a",): 3, ("b",): 1})
        assert c.colours == (3, 1) and c.colour_of[("b",)] == 1


class TestBounded:
    def test_counts(self):
        c = Colouring.of([("a",), ("b",), ("c",)], [0, 0, 1])
        assert is_k_bounded(c, 2)
        assert not is_k_bounded(c, 1)

    def test_empty(self):
        assert is_k_bounded(Colouring((), ()), 1)


class TestDeltaSystems:
    def test_triangle_edges(self):
        systems = maximal_delta_systems(enumerate_copies(K(3), K(2)))
        assert [s.kernel for s in systems] == [("0",), ("1",), ("2",)]
        assert all(len(s.members) == 2 for s in systems)

    def test_vertices_form_one_system(self):
        systems = maximal_delta_systems(enumerate_copies(K(4), K(1)))
        assert len(systems) == 1 and systems[0].kernel == () and len(systems[0].members) == 4

    def test_single_copy(self):
        assert maximal_delta_systems(enumerate_copies(K(2), K(2))) == []

    def test_direct_definition(self):
        assert is_delta_system([("a", "b"), ("a", "c")])
        assert not is_delta_system([("a", "b"), ("a", "b")])
        assert not is_delta_system([("a", "b"), ("c", "d")])
        assert not is_delta_system([("a", "b")])

    @pytest.mark.parametrize("pattern", [K(1), K(2), empty_graph(2), K(3), path3()])
    def test_against_subfamily_scan(self, pattern):
        for host in GRAPHS:
            copies = enumerate_copies(host, pattern).copies
            if len(copies) > 7:
                continue
            ours = {frozenset(s.members) for s in maximal_delta_systems(copies)}
            assert ours == naive_maximal_delta_systems(copies)
            for s in maximal_delta_systems(copies):
                assert is_delta(s.members)
                assert frozenset.intersection(*map(frozenset, s.members)) == frozenset(s.kernel)


class TestKDelta:
    def test_triangle_monochromatic(self):
        c = colouring(K(3), K(2), [0, 0, 0])
        res = is_k_delta(c, 1)
        assert not res and set(res.witness.members) == {("0", "1"), ("0", "2")}
        assert is_k_delta(c, 2)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 3), st.integers(1, 3))
    def test_matches_subfamily_scan(self, seed, k, ncol):
        rng = random.Random(seed)
        host = generate_random(2, 2, rng.randint(0, 6), seed)
        pattern = K(rng.randint(1, 2))
        copies = enumerate_copies(host, pattern).copies
        if len(copies) > 9:
            return
        colours = [rng.randrange(ncol) for _ in copies]
        c = Colouring(copies, tuple(colours))
        assert bool(is_k_delta(c, k)) == naive_is_k_delta(dict(zip(copies, colours)), copies, k)

    def test_bounded_implies_delta(self):
        rng = random.Random(1)
        for _ in range(100):
            host = GRAPHS[rng.randrange(len(GRAPHS))]
            copies = enumerate_copies(host, K(2)).copies
            k = rng.randint(1, 3)
            c = Colouring.of(copies, random_colouring(copies, k, rng))
            assert is_k_bounded(c, k) and is_k_delta(c, k)


class TestRainbow:
    def test_picks_the_first_rainbow_triangle(self):
        host = complete(4, names="abcd")
        c = Colouring.of(enumerate_copies(host, complete(1)), [0, 0, 1, 2])
        assert rainbow_copy_search(host, complete(3), complete(1), c) == ("a", "c", "d")

    def test_absence(self):
        c = colouring(K(2), K(1), [0, 0])
        assert rainbow_copy_search(K(2), K(2), K(1), c) is None

    def test_injective_colouring(self):
        host = generate_random(2, 2, 5, 4)
        copies = enumerate_copies(host, K(2)).copies
        c = Colouring(copies, tuple(range(len(copies))))
        assert rainbow_copy_search(host, host, K(2), c) == host.vertices


class TestReduction:
    def test_three_vertices_one_colour(self):
        c = colouring(K(3), K(1), [0, 0, 0])
        out = reduce_colouring(c, 2)
        assert out.colours == (1, 0, 0)
        assert is_k_delta(out, 2)

    def test_already_k_delta_is_unchanged(self):
        c = colouring(K(3), K(1), [0, 0, 1])
        assert reduce_colouring(c, 2) == c

    def test_overlapping_kernels_reuse_the_chosen_copy(self):
        host = graph("0123", [("0", "1"), ("0", "2"), ("0", "3"), ("1", "2"), ("1", "3")])
        c = colouring(host, K(2), [0] * 5)
        state = plan_reduction(c, 2)
        assert state.steps[0] == {0: "new"} and state.steps[1] == {0: "reuse"}
        assert len(state.recoloured) == 1
        out = reduce_colouring(c, 2)
        assert len(set(out.colours)) == 2 and is_k_delta(out, 2)

    def test_a_system_can_hold_several_chosen_copies(self):
        c = colouring(K(4), K(2), [0] * 6)
        state = plan_reduction(c, 2)
        first = state.systems[0]
        chosen = [c.copies[n] for n in state.recoloured]
        assert sum(1 for x in first.members if x in chosen) == 3
        assert is_k_delta(reduce_colouring(c, 2), 2)

    def test_every_crowded_system_gets_a_chosen_copy(self):
        rng = random.Random(2)
        for _ in range(200):
            host = GRAPHS[rng.randrange(len(GRAPHS))]
            copies = enumerate_copies(host, K(rng.randint(1, 2))).copies
            k = rng.randint(2, 3)
            c = Colouring(copies, tuple(rng.randrange(2) for _ in copies))
            if not is_k_delta(c, k + 1):
                continue
            state = plan_reduction(c, k)
            for system in state.systems:
                idx = [copies.index(x) for x in system.members]
                for col in set(c.colours[i] for i in idx):
                    same = [i for i in idx if c.colours[i] == col]
                    if len(same) > k:
                        assert set(same) & set(state.chosen[col])
            assert is_k_delta(reduce_colouring(c, k), k)

    def test_preconditions(self):
        c = colouring(K(4), K(1), [0, 0, 0, 0])
        with pytest.raises(ValueError):
            reduce_colouring(c, 2)
        with pytest.raises(ValueError):
            reduce_colouring(c, 1)

    def test_fresh_colours_are_unused(self):
        c = colouring(K(3), K(1), [5, 5, 5])
        out = reduce_colouring(c, 2)
        assert out.colours == (6, 5, 5)
