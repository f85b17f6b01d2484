import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cutcolor.graph import Graph, LinearLayout, layout_to_nice_decomposition, make_cut
from cutcolor.oracle import (BudgetExceeded, PG_all_bruteforce, count_proper_colorings,
                             eval_Mprime, eval_PGz_bruteforce, eval_table_entry_bruteforce,
                             eval_table_entry_literal, pathdp_colorable, rank_of_Mprime,
                             represents, table_bruteforce)
from cutcolor.randsolver import sample_weights

from conftest import random_graph

K3 = Graph(3, ((1, 2), (1, 3), (2, 3)))
EDGE = Graph(2, ((1, 2),))


def test_counts():
    assert count_proper_colorings(K3, 3) == 6
    assert count_proper_colorings(K3, 2) == 0
    assert count_proper_colorings(Graph(3, ((1, 2), (2, 3))), 2) == 2
    assert count_proper_colorings(EDGE, 3, lists={1: {1}, 2: {1, 2}}) == 1
    with pytest.raises(BudgetExceeded):
        count_proper_colorings(Graph(30, ()), 3, budget=1000)


def test_mprime_examples():
    cut = make_cut(1, [(1, 2)])
    assert eval_Mprime(cut, {1: 1}, {2: 1}, 5, 3) == 0
    assert eval_Mprime(cut, {1: 1}, {2: 2}, 5, 3) == 4
    support = [[int(eval_Mprime(cut, {1: a}, {2: b}, 5, 3) != 0) for b in (1, 2, 3)]
               for a in (1, 2, 3)]
    assert support == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    with pytest.raises(ValueError):
        eval_Mprime(cut, {1: 1}, {2: 2}, 2, 3)


def test_rank_examples():
    assert rank_of_Mprime(make_cut(1, [(1, 2)]), 3, 5) == 2
    assert rank_of_Mprime(make_cut(0, []), 3, 5) == 1
    assert rank_of_Mprime(make_cut(1, [(1, 2), (1, 3)]), 3, 5) <= 3


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(4, 6)), min_size=1, max_size=5,
                unique=True),
       st.integers(2, 4), st.data())
def test_mprime_support(edges, q, data):
    cut = make_cut(1, edges)
    x = {v: data.draw(st.integers(1, q)) for v in cut.X}
    y = {w: data.draw(st.integers(1, q)) for w in cut.Y}
    proper = all(x[v] != y[w] for v, w in cut.edges)
    assert (eval_Mprime(cut, x, y, 5, q) != 0) == proper


def test_pg_examples():
    w = np.zeros((3, 2), dtype=np.int64)
    w[1] = (1, 5)
    w[2] = (7, 2)
    assert eval_PGz_bruteforce(EDGE, 2, w, 3) == -1
    ones = np.ones((3, 2), dtype=np.int64)
    assert eval_PGz_bruteforce(EDGE, 2, ones, 2) == 0
    assert PG_all_bruteforce(Graph(0, ()), 3, np.zeros((1, 3))) == {0: 1}


def test_pg_vanishes_on_uncolorable(rng):
    for _ in range(20):
        g = random_graph(rng, 7, 15)
        q = int(rng.integers(2, 4))
        if count_proper_colorings(g, q) == 0:
            assert PG_all_bruteforce(g, q, sample_weights(g, q, rng)) == {}


def test_table_entry_examples(rng):
    g = Graph(3, ((1, 2), (2, 3)))
    npd = layout_to_nice_decomposition(g, LinearLayout((1, 2, 3)))
    w = sample_weights(g, 2, rng)
    assert eval_table_entry_bruteforce(g, npd, 0, {}, {}, 0, 2, w) == 1
    assert eval_table_entry_bruteforce(g, npd, 1, {1: 0}, {}, 0, 2, w) == 1
    pg = PG_all_bruteforce(g, 2, w, order=(1, 2, 3))
    for z in range(0, int(w.sum()) + 1):
        assert eval_table_entry_bruteforce(g, npd, len(npd), {}, {}, z, 2, w) == pg.get(z, 0)


def test_table_oracles_agree(rng):
    for _ in range(6):
        g = random_graph(rng, 4, 5, n_min=2)
        if g.isolated():
            continue
        q = 2
        npd = layout_to_nice_decomposition(g, LinearLayout(tuple(range(1, g.n + 1))))
        w = sample_weights(g, q, rng)
        for i in range(len(npd) + 1):
            allv = table_bruteforce(g, npd, i, q, w)
            for (z, d, e), val in list(allv.items())[:5]:
                assert eval_table_entry_bruteforce(g, npd, i, dict(d), dict(e), z, q, w) == val
                assert eval_table_entry_literal(g, npd, i, dict(d), dict(e), z, q, w) == val


def test_represents():
    cut = make_cut(1, [(1, 3), (2, 3)])
    rows = [(1, 2), (2, 1), (1, 1)]
    assert represents(cut, rows, rows, 3)
    assert represents(cut, [(1, 1)], rows, 3)
    assert not represents(cut, [(1, 2)], rows, 3)


def test_pathdp(rng):
    for _ in range(20):
        g = random_graph(rng, 8, 14, n_min=2)
        if g.isolated():
            continue
        npd = layout_to_nice_decomposition(g, LinearLayout(tuple(range(1, g.n + 1))))
        for q in (2, 3):
            assert pathdp_colorable(g, npd, q) == (count_proper_colorings(g, q) > 0)
    k5 = Graph(5, tuple(itertools.combinations(range(1, 6), 2)))
    with pytest.raises(BudgetExceeded):
        pathdp_colorable(k5, layout_to_nice_decomposition(k5, LinearLayout((1, 2, 3, 4, 5))), 8,
                         budget=100)
