from __future__ import annotations

import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from builders import random_seqset, random_strongly_diagonal, similar_copy
from oracles import lcp, naive_props, naive_strong_similarities, naive_strongly_diagonal
from rrlab.sequences import (
    SeqSet,
    check_map_property,
    classify_set,
    closure,
    degrees,
    full_tree,
    is_strong_subtree,
    meet,
    passing_number,
    prec,
    seq_key,
    strong_similarity_map,
    strongly_similar_subsets,
)

seqs = st.lists(st.integers(0, 2), max_size=6).map(tuple)


class TestBasics:
    def test_meet(self):
        assert meet((0, 1, 1), (0, 1, 0)) == (0, 1)
        assert meet((0, 1), (0, 1)) == (0, 1)
        assert meet((1,), (0, 1)) == ()

    @given(seqs, seqs)
    def test_meet_is_common_prefix(self, x, y):
        w = meet(x, y)
        assert w == lcp(x, y) == meet(y, x)
        assert x[: len(w)] == w == y[: len(w)]

    def test_passing_number(self):
        assert passing_number((0, 1, 0), (1,)) == 1
        assert passing_number((2, 0), ()) == 2
        with pytest.raises(ValueError):
            passing_number((0,), (1,))

    def test_prec(self):
        assert prec((0, 1), (1,))
        assert prec((1, 0), (1, 1, 0))
        assert not prec((1,), (0, 1))
        with pytest.raises(ValueError):
            prec((0,), (0, 1))

    @given(seqs, seqs)
    def test_prec_is_antisymmetric(self, x, y):
        if x[: len(y)] == y or y[: len(x)] == x:
            return
        assert prec(x, y) != prec(y, x)

    def test_seqset_rejects_foreign_digits(self):
        with pytest.raises(ValueError):
            SeqSet.of(2, [(0, 2)])
        with pytest.raises(ValueError):
            SeqSet.of(1, [()])


class TestClassify:
    def test_strongly_diagonal_pair(self):
        r = classify_set(SeqSet.of(2, [(0, 1), (1, 0, 0)]))
        assert r.antichain and r.closure_transversal and r.strongly_diagonal
        assert r.closure == {(), (0, 1), (1, 0, 0)}

    def test_prefix_pair_is_not_antichain(self):
        assert not classify_set([(0,), (0, 1)]).antichain

    def test_same_length_is_not_diagonal(self):
        r = classify_set([(0, 1), (1, 1)])
        assert not r.diagonal and not r.transversal

    def test_wide_branching_is_not_diagonal(self):
        assert not classify_set([(0,), (1, 0), (2, 0, 0)]).diagonal

    def test_branch_digit_two_is_diagonal_but_not_strongly(self):
        r = classify_set(SeqSet.of(3, [(0,), (2, 0)]))
        assert r.diagonal and not r.strongly_diagonal

    def test_foreign_meet_level_needs_zero(self):
        # meet of the last two sits at level 2; the first passes it with digit 1
        S = [(0, 0, 1), (1, 0, 0, 0), (1, 0, 1, 0, 0)]
        assert classify_set(S).diagonal and not classify_set(S).strongly_diagonal
        assert classify_set([(0, 0, 0), (1, 0, 0, 0), (1, 0, 1, 0, 0)]).strongly_diagonal

    @settings(max_examples=200, deadline=None)
    @given(st.integers(2, 3), st.lists(st.lists(st.integers(0, 2), max_size=5).map(tuple), max_size=5, unique=True))
    def test_strongly_diagonal_matches_definition(self, d, S):
        S = [tuple(min(c, d - 1) for c in x) for x in S]
        S = list(dict.fromkeys(S))
        assert classify_set(S).strongly_diagonal == naive_strongly_diagonal(S)

    def test_generated_sets_are_strongly_diagonal(self):
        rng = random.Random(3)
        for _ in range(100):
            S = random_strongly_diagonal(rng.randint(1, 6), rng.choice([2, 3, 4]), rng)
            assert classify_set(S).strongly_diagonal

    def test_subsets_inherit_strong_diagonality(self):
        rng = random.Random(4)
        S = random_strongly_diagonal(6, 2, rng)
        for r in range(len(S) + 1):
            for sub in combinations(S, r):
                assert classify_set(sub).strongly_diagonal


class TestMapProperties:
    def test_identity_satisfies_everything(self):
        R = full_tree(2, 2).sorted()
        f = {x: x for x in R}
        for prop in ("Order", "Level", "Level-imp", "Pnp", "Pnp-strong", "Lexico"):
            assert check_map_property(f, R, prop)

    def test_appending_zero_breaks_pnp(self):
        R = [(0,), (0, 1)]
        f = {x: x + (0,) for x in R}
        res = check_map_property(f, R, "Pnp")
        assert not res and res.witness == ((0,), (0, 1))

    def test_single_element_lexico(self):
        assert check_map_property({(1,): (0, 0)}, [(1,)], "Lexico")

    def test_lexico_reversal_fails(self):
        f = {(0,): (1,), (1,): (0,)}
        assert not check_map_property(f, f, "Lexico")

    def test_unknown_property_and_domain(self):
        with pytest.raises(ValueError):
            check_map_property({(): ()}, [()], "Shape")
        with pytest.raises(KeyError):
            check_map_property({}, [()], "Pnp")

    @settings(max_examples=100, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_grouped_checks_match_quadruple_loops(self, rnd):
        d = 2
        R = random_seqset(d, 3, rnd.randint(1, 4), rnd)
        pool = [x for l in range(4) for x in product(range(d), repeat=l)]
        f = dict(zip(R, rnd.sample(pool, len(R))))
        for prop, expect in naive_props(f, R).items():
            assert bool(check_map_property(f, R, prop)) == expect, prop


class TestSimilarity:
    def test_stretched_pair(self):
        R = [(0, 1), (1, 0, 0)]
        S = [(0, 0, 1), (1, 0, 0, 0)]
        assert strong_similarity_map(R, S) == {(0, 1): (0, 0, 1), (1, 0, 0): (1, 0, 0, 0)}

    def test_root_passing_numbers_differ(self):
        assert strong_similarity_map([(0, 1), (1, 0, 0)], [(1, 0), (0, 0, 0)]) is None

    def test_identity(self):
        R = [(0,), (1, 1), (1, 0, 1)]
        assert strong_similarity_map(R, R) == {x: x for x in R}

    def test_alphabet_mismatch(self):
        assert strong_similarity_map(SeqSet.of(2, [(0,)]), SeqSet.of(3, [(0,)])) is None

    def test_random_images_are_recovered(self):
        rng = random.Random(11)
        for _ in range(150):
            d = rng.choice([2, 3, 4])
            R = random_seqset(d, 3, rng.randint(1, 4), rng)
            f = similar_copy(R, d, 6, rng)
            assert strong_similarity_map(R, list(f.values())) == f
            assert naive_strong_similarities(R, list(f.values())) == [f]

    @settings(max_examples=150, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_matches_exhaustive_bijection_search(self, rnd):
        R = random_seqset(2, 3, rnd.randint(1, 4), rnd)
        S = random_seqset(2, 4, len(R), rnd)
        found = naive_strong_similarities(R, S)
        assert len(found) <= 1
        assert strong_similarity_map(R, S) == (found[0] if found else None)

    def test_subset_enumeration_matches_brute_force(self):
        rng = random.Random(5)
        for _ in range(25):
            T = random_seqset(2, 3, 9, rng)
            F = random_seqset(2, 2, rng.randint(1, 3), rng)
            brute = sorted(
                (tuple(sorted(c, key=seq_key)) for c in combinations(T, len(F))
                 if naive_strong_similarities(F, c)),
                key=lambda c: [seq_key(x) for x in c],
            )
            assert strongly_similar_subsets(F, T) == brute

    def test_full_tree_inside_itself(self):
        T = full_tree(2, 2)
        found = strongly_similar_subsets(full_tree(2, 1), T)
        brute = [c for c in combinations(T.sorted(), 3) if naive_strong_similarities(full_tree(2, 1), c)]
        assert ((), (0,), (1,)) in found and len(found) == len(brute) == 7


def naive_strong_subtree(S, T, n):
    S, T = set(S), set(T)

    def meet_closed(A):
        return all(lcp(x, y) in A for x in A for y in A)

    def by_levels(A):
        lv = {len(x) for x in A}
        return all(x[:l] in A for x in A for l in lv if l <= len(x))

    def degree(A, x):
        succ = [y for y in A if len(y) > len(x) and y[: len(x)] == x]
        return sum(1 for y in succ if not any(len(x) < len(z) < len(y) and y[: len(z)] == z for z in succ))

    return (S <= T and len({len(x) for x in S}) == n and meet_closed(S) and by_levels(S)
            and all(degree(S, s) in (0, degree(T, s)) for s in S))


class TestStrongSubtree:
    T = full_tree(2, 3)

    def test_two_levels(self):
        assert is_strong_subtree([(), (0,), (1,)], self.T, 2)

    def test_four_grandchildren_are_not_meet_closed(self):
        S = [(), (0, 0), (0, 1), (1, 0), (1, 1)]
        assert degrees(S)[()] == 4
        assert not is_strong_subtree(S, self.T, 2)

    def test_single_branch(self):
        assert not is_strong_subtree([(), (0, 0)], self.T, 2)

    def test_bad_ambient(self):
        with pytest.raises(ValueError):
            is_strong_subtree([()], [(0,), (1,)], 1)

    def test_all_subsets_of_small_tree(self):
        T = full_tree(2, 2)
        elems = T.sorted()
        for mask in range(1 << len(elems)):
            S = [x for i, x in enumerate(elems) if mask >> i & 1]
            for n in range(4):
                assert is_strong_subtree(S, T, n) == naive_strong_subtree(S, T, n)


def test_closure_contains_pairwise_meets():
    rng = random.Random(2)
    for _ in range(50):
        S = random_seqset(3, 4, 5, rng)
        assert closure(S) == {lcp(x, y) for x in S for y in S}
