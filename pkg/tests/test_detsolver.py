import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cutcolor.detsolver import (PartialColoringSet, dedup_rows, degree_caps, extend_table,
                                field_prime, index_size, lh_matrix, reduce, solve_cutwidth_det)
from cutcolor.graph import Graph, LinearLayout, all_cuts, make_cut
from cutcolor.layout import greedy_layout
from cutcolor.oracle import count_proper_colorings, rank_of_Mprime, represents

from conftest import random_graph


def complete(n):
    return Graph(n, tuple(itertools.combinations(range(1, n + 1), 2)))


def identity(g):
    return LinearLayout(tuple(range(1, g.n + 1)))


def test_field_prime():
    assert [field_prime(q) for q in (1, 2, 3, 4, 8, 11)] == [2, 2, 3, 5, 11, 11]


def test_small_examples():
    assert not solve_cutwidth_det(complete(4), identity(complete(4)), 3)
    assert solve_cutwidth_det(complete(4), identity(complete(4)), 4)
    c5 = Graph(5, ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5)))
    assert not solve_cutwidth_det(c5, identity(c5), 2)
    assert solve_cutwidth_det(c5, identity(c5), 3)
    assert solve_cutwidth_det(Graph(0, ()), LinearLayout(()), 1)
    assert not solve_cutwidth_det(Graph(2, ((1, 2),)), LinearLayout((1, 2)), 1)
    with pytest.raises(ValueError):
        solve_cutwidth_det(c5, identity(c5), 0)


def test_dedup_order():
    rows = np.array([[1, 2], [2, 1], [1, 2], [3, 3], [2, 1]], dtype=np.int16)
    assert dedup_rows(rows).tolist() == [[1, 2], [2, 1], [3, 3]]


def test_lh_shape_and_rank_bound(rng):
    for _ in range(20):
        edges = {(int(a), int(b)) for a, b in zip(rng.integers(1, 4, 4), rng.integers(4, 7, 4))}
        cut = make_cut(1, sorted(edges))
        q, p = 3, 3
        caps = degree_caps(cut)
        xs = np.array(list(itertools.product(range(1, q + 1), repeat=len(cut.X))))
        L = lh_matrix(xs, caps, p)
        assert L.shape == (len(xs), index_size(caps))
        assert rank_of_Mprime(cut, q, p) <= index_size(caps) <= 2 ** len(cut.edges)


def test_reduce_represents(rng):
    for _ in range(25):
        nx, ny = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        pairs = [(a, nx + b) for a in range(1, nx + 1) for b in range(1, ny + 1) if rng.random() < 0.6]
        if not pairs:
            continue
        cut = make_cut(1, pairs)
        q = int(rng.integers(2, 4))
        p = field_prime(q)
        allx = list(itertools.product(range(1, q + 1), repeat=len(cut.X)))
        pick = [x for x in allx if rng.random() < 0.5] or allx[:1]
        S = PartialColoringSet.from_rows(cut.X, pick)
        R = reduce(cut, S, p)
        assert set(R.as_tuples()) <= set(S.as_tuples())
        assert len(R) <= index_size(degree_caps(cut))
        assert represents(cut, R.as_tuples(), S.as_tuples(), q)


def test_reduce_domain_check():
    cut = make_cut(1, [(1, 2)])
    with pytest.raises(ValueError):
        reduce(cut, PartialColoringSet.from_rows((5,), [(1,)]), 3)


def test_extend_table_filters_neighbours():
    g = Graph(3, ((1, 2), (2, 3)))
    cuts = all_cuts(g, identity(g))
    t0 = PartialColoringSet((), np.zeros((1, 0)))
    t1 = extend_table(t0, 1, g, cuts[0], cuts[1], 2)
    assert sorted(t1.as_tuples()) == [(1,), (2,)]
    t2 = extend_table(t1, 2, g, cuts[1], cuts[2], 2)
    assert sorted(t2.as_tuples()) == [(1,), (2,)]


@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.booleans(), st.booleans())
def test_matches_oracle(seed, q, skip_small, symmetry):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, 8, 16)
    lay = greedy_layout(g) if seed % 2 else identity(g)
    stats = {}
    got = solve_cutwidth_det(g, lay, q, skip_small=skip_small, symmetry=symmetry, stats=stats)
    assert got == (count_proper_colorings(g, q) > 0)
    assert stats["prime"] == field_prime(q)


def test_table_size_bound(rng):
    for _ in range(15):
        g = random_graph(rng, 9, 18)
        stats = {}
        solve_cutwidth_det(g, identity(g), 3, stats=stats)
        cuts = all_cuts(g, identity(g))
        for (before, after, D), cut in zip(stats["steps"], cuts[1:]):
            assert after <= D <= 2 ** len(cut.edges)
