"""Brute-force reference computations.

Everything here is deliberately naive and exact: results are Python integers
and are never reduced modulo a prime, so that field-arithmetic bugs in the
fast solvers show up as mismatches.
"""
from __future__ import annotations

import itertools
import os
from typing import Mapping, Optional, Sequence

import numpy as np

from .graph import Cut, Graph, NicePathDecomposition

DEFAULT_BUDGET = int(os.environ.get("CUTCOLOR_BUDGET", 2 ** 24))


class BudgetExceeded(RuntimeError):
    pass


def _check_budget(points, budget):
    budget = DEFAULT_BUDGET if budget is None else budget
    if points > budget:
        raise BudgetExceeded(f"enumeration of {points} points exceeds budget {budget}")


def _lists_for(graph, q, lists):
    if lists is None:
        return [None] + [tuple(range(1, q + 1))] * graph.n
    out = [None]
    for v in range(1, graph.n + 1):
        if v not in lists:
            raise ValueError(f"no list given for vertex {v}")
        out.append(tuple(sorted(c for c in lists[v] if 1 <= c <= q)))
    return out


def count_proper_colorings(graph: Graph, q: int, lists: Optional[Mapping] = None,
                           budget: Optional[int] = None, stop_at: Optional[int] = None) -> int:
    """Number of proper (list-)colorings, by backtracking in vertex-id order.

    With stop_at set, counting stops once that many colorings are found
    (useful as a decision procedure).
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    L = _lists_for(graph, q, lists)
    space = 1
    for v in range(1, graph.n + 1):
        space *= max(len(L[v]), 1)
    _check_budget(space, budget)
    n = graph.n
    earlier = [[w for w in graph.adj[v] if w < v] for v in range(n + 1)]
    color = [0] * (n + 1)
    count = 0

    def rec(v):
        nonlocal count
        if v > n:
            count += 1
            return stop_at is not None and count >= stop_at
        for c in L[v]:
            if all(color[w] != c for w in earlier[v]):
                color[v] = c
                if rec(v + 1):
                    return True
        color[v] = 0
        return False

    rec(1)
    return count


def is_colorable(graph: Graph, q: int, lists: Optional[Mapping] = None,
                 budget: Optional[int] = None) -> bool:
    return count_proper_colorings(graph, q, lists, budget, stop_at=1) > 0


def eval_Mprime(cut: Cut, x: Mapping, y: Mapping, p: int, q: int) -> int:
    """prod over cut edges (v, w) of (x_v - y_w), reduced into [0, p)."""
    if p < q:
        raise ValueError(f"field prime {p} smaller than q={q}")
    val = 1
    for v, w in cut.edges:
        val = val * (x[v] - y[w]) % p
    return val


def _rank_mod_p(rows, p):
    """Plain Gaussian elimination over GF(p) on a list of integer rows."""
    mat = [[int(a) % p for a in r] for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [a * inv % p for a in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def rank_of_Mprime(cut: Cut, q: int, p: int, budget: Optional[int] = None) -> int:
    """Materialise M'_H over all colorings of X and Y and return its rank."""
    if p < q:
        raise ValueError(f"field prime {p} smaller than q={q}")
    _check_budget(q ** len(cut.X) * q ** len(cut.Y), budget)
    rows = []
    for xs in itertools.product(range(1, q + 1), repeat=len(cut.X)):
        x = dict(zip(cut.X, xs))
        row = []
        for ys in itertools.product(range(1, q + 1), repeat=len(cut.Y)):
            y = dict(zip(cut.Y, ys))
            row.append(eval_Mprime(cut, x, y, p, q))
        rows.append(row)
    return _rank_mod_p(rows, p)


def represents(cut: Cut, S_small, S_big, q: int) -> bool:
    """True iff for every coloring y of Y, some row of S_big is compatible
    with y exactly when some row of S_small is.  Rows are tuples over cut.X.
    Exhaustive over [q]^Y, vectorised over the colorings."""
    idx = {v: k for k, v in enumerate(cut.X)}
    yidx = {w: k for k, w in enumerate(cut.Y)}
    a = np.array([idx[v] for v, _ in cut.edges], dtype=np.intp)
    b = np.array([yidx[w] for _, w in cut.edges], dtype=np.intp)
    ys = np.array(list(itertools.product(range(1, q + 1), repeat=len(cut.Y))),
                  dtype=np.int64).reshape(-1, len(cut.Y))

    def covered(rows):
        hit = np.zeros(len(ys), dtype=bool)
        for r in rows:
            r = np.asarray(r, dtype=np.int64)
            hit |= np.all(r[a][None, :] != ys[:, b], axis=1)
        return hit

    return bool(np.array_equal(covered(S_small), covered(S_big)))


def _weight(weights, v, c):
    return int(weights[v][c - 1])


def PG_all_bruteforce(graph: Graph, q: int, weights, order: Optional[Sequence[int]] = None,
                      budget: Optional[int] = None) -> dict:
    """All nonzero values P_G(z) as a dict z -> integer.

    Edges are directed from the endpoint that comes first in `order`
    (default: vertex id order).  Improper colorings contribute zero, so only
    proper colorings are enumerated.
    """
    _check_budget(q ** graph.n, budget)
    n = graph.n
    rank = {v: k for k, v in enumerate(order)} if order is not None else {v: v for v in range(1, n + 1)}
    earlier = [[w for w in graph.adj[v] if w < v] for v in range(n + 1)]
    # sign of (x_v - x_w) for w < v depends on which endpoint is the tail
    tail_is_w = [[rank[w] < rank[v] for w in earlier[v]] for v in range(n + 1)]
    color = [0] * (n + 1)
    out = {}

    def rec(v, prod, z):
        if v > n:
            out[z] = out.get(z, 0) + prod
            return
        for c in range(1, q + 1):
            f = prod
            for w, tw in zip(earlier[v], tail_is_w[v]):
                diff = color[w] - c
                if diff == 0:
                    f = 0
                    break
                f *= diff if tw else -diff
            if f:
                color[v] = c
                rec(v + 1, f, z + _weight(weights, v, c))
        color[v] = 0

    rec(1, 1, 0)
    return {z: val for z, val in out.items() if val}


def eval_PGz_bruteforce(graph: Graph, q: int, weights, z: int,
                        order: Optional[Sequence[int]] = None, budget: Optional[int] = None) -> int:
    return PG_all_bruteforce(graph, q, weights, order, budget).get(z, 0)


# ------------------------------------------------------------ table entries

def bag_state(graph: Graph, npd: NicePathDecomposition, i: int):
    """State after the first i events: (bag in introduction order, introduced
    vertices in order, introduced edges oriented by introduction order,
    per-vertex introduced-edge counts)."""
    bag = {}
    seen = []
    rank = {}
    edges = []
    dE = {}
    for ev in npd.events[:i]:
        if ev.kind == "IV":
            bag[ev.u] = None
            rank[ev.u] = len(seen)
            seen.append(ev.u)
            dE[ev.u] = 0
        elif ev.kind == "FV":
            bag.pop(ev.u)
        else:
            a, b = ev.u, ev.v
            if rank[a] > rank[b]:
                a, b = b, a
            edges.append((a, b))
            dE[a] += 1
            dE[b] += 1
    return list(bag), seen, edges, dE


def split_lists(graph: Graph, bag, dE):
    """L = bag vertices with at most half their edges introduced."""
    L = [v for v in bag if 2 * dE[v] <= graph.degree(v)]
    R = [v for v in bag if 2 * dE[v] > graph.degree(v)]
    return L, R


def _poly_mul_linear(poly, a_coef, a_var, b_coef, b_var):
    """Multiply a sparse polynomial by (alpha_a - alpha_b).

    alpha is either a number (var None) or a formal variable index."""
    out = {}
    for mono, c in poly.items():
        for coef, var, sign in ((a_coef, a_var, 1), (b_coef, b_var, -1)):
            if var is None:
                val = sign * coef * c
                if val:
                    out[mono] = out.get(mono, 0) + val
            else:
                m2 = list(mono)
                m2[var] += 1
                m2 = tuple(m2)
                out[m2] = out.get(m2, 0) + sign * c
    return {m: c for m, c in out.items() if c}


def eval_table_entry_bruteforce(graph: Graph, npd: NicePathDecomposition, i: int,
                                d: Mapping, e: Mapping, z: int, q: int, weights,
                                budget: Optional[int] = None) -> int:
    """Table entry after the first i events, straight from its definition.

    d maps each L vertex of the bag to its prescribed out-degree, e maps each
    R vertex to its exponent.  The orientation sum is expanded per coloring as
    a product of per-edge factors (alpha_tail_fwd - alpha_tail_rev), where
    alpha is the coloring value for vertices outside L and a formal variable
    for vertices in L; the coefficient of prod y_u^{d_u} is then read off.
    """
    bag, seen, edges, dE = bag_state(graph, npd, i)
    L, R = split_lists(graph, bag, dE)
    if set(d) != set(L) or set(e) != set(R):
        raise ValueError("index vectors do not match the bag split")
    free = [v for v in seen if v not in set(L)]
    _check_budget(q ** len(free) * max(1, len(edges)), budget)
    lpos = {v: k for k, v in enumerate(L)}
    target = tuple(d[v] for v in L)
    total = 0
    for xs in itertools.product(range(1, q + 1), repeat=len(free)):
        x = dict(zip(free, xs))
        if sum(_weight(weights, v, x[v]) for v in free) != z:
            continue
        poly = {tuple([0] * len(L)): 1}
        for a, b in edges:
            poly = _poly_mul_linear(poly, x.get(a, 0), lpos.get(a), x.get(b, 0), lpos.get(b))
            if not poly:
                break
        c = poly.get(target, 0)
        if c:
            for v in R:
                c *= x[v] ** e[v]
            total += c
    return total


def table_bruteforce(graph: Graph, npd: NicePathDecomposition, i: int, q: int,
                     weights) -> dict:
    """Every nonzero table entry after the first i events, keyed like
    TableDP.entries(): (z, sorted d items, sorted e items).  One pass over
    the colorings of the introduced vertices outside L, expanding the same
    per-edge products as eval_table_entry_bruteforce."""
    bag, seen, edges, dE = bag_state(graph, npd, i)
    L, R = split_lists(graph, bag, dE)
    Lset = set(L)
    free = [v for v in seen if v not in Lset]
    lpos = {v: k for k, v in enumerate(L)}
    ranges = [range(graph.degree(v) - dE[v] + 1) for v in R]
    out = {}
    for xs in itertools.product(range(1, q + 1), repeat=len(free)):
        x = dict(zip(free, xs))
        z = sum(_weight(weights, v, x[v]) for v in free)
        poly = {tuple([0] * len(L)): 1}
        for a, b in edges:
            poly = _poly_mul_linear(poly, x.get(a, 0), lpos.get(a), x.get(b, 0), lpos.get(b))
            if not poly:
                break
        for mono, c in poly.items():
            d = tuple(sorted(zip(L, mono)))
            for es in itertools.product(*ranges):
                val = c
                for v, ev in zip(R, es):
                    val *= x[v] ** ev
                key = (z, d, tuple(sorted(zip(R, es))))
                out[key] = out.get(key, 0) + val
    return {k: v for k, v in out.items() if v}


def eval_table_entry_literal(graph: Graph, npd: NicePathDecomposition, i: int,
                             d: Mapping, e: Mapping, z: int, q: int, weights) -> int:
    """Same quantity by enumerating every orientation; only for tiny inputs."""
    bag, seen, edges, dE = bag_state(graph, npd, i)
    L, R = split_lists(graph, bag, dE)
    Lset = set(L)
    free = [v for v in seen if v not in Lset]
    total = 0
    for xs in itertools.product(range(1, q + 1), repeat=len(free)):
        x = dict(zip(free, xs))
        if sum(_weight(weights, v, x[v]) for v in free) != z:
            continue
        for flips in itertools.product((0, 1), repeat=len(edges)):
            out = {v: 0 for v in seen}
            for (a, b), f in zip(edges, flips):
                out[b if f else a] += 1
            if any(out[v] != d[v] for v in L):
                continue
            term = (-1) ** sum(flips)
            for v in free:
                term *= x[v] ** out[v]
            for v in R:
                term *= x[v] ** e[v]
            total += term
    return total


# ------------------------------------------------------- standard path DP

def pathdp_cost(npd: NicePathDecomposition, q: int) -> int:
    """Points a q^bag dynamic program would touch in the worst case."""
    total = 0
    size = 0
    for ev in npd.events:
        size += 1 if ev.kind == "IV" else (-1 if ev.kind == "FV" else 0)
        total += q ** size
    return total


def pathdp_colorable(graph: Graph, npd: NicePathDecomposition, q: int,
                     lists: Optional[Mapping] = None, budget: Optional[int] = None) -> bool:
    """Classical dynamic program over a nice path decomposition that keeps
    every proper coloring of the current bag."""
    _check_budget(pathdp_cost(npd, q), budget)
    L = _lists_for(graph, q, lists)
    bag = []
    rows = np.zeros((1, 0), dtype=np.int8)
    for ev in npd.events:
        if ev.kind == "IV":
            cols = np.array(L[ev.u], dtype=np.int8)
            k = rows.shape[0]
            rows = np.concatenate([np.repeat(rows, len(cols), axis=0),
                                   np.tile(cols, k)[:, None]], axis=1)
            bag.append(ev.u)
        elif ev.kind == "IE":
            a, b = bag.index(ev.u), bag.index(ev.v)
            rows = rows[rows[:, a] != rows[:, b]]
        else:
            k = bag.index(ev.u)
            rows = np.delete(rows, k, axis=1)
            del bag[k]
            if rows.shape[1]:
                rows = np.unique(rows, axis=0)
            else:
                rows = rows[:1]
        if rows.shape[0] == 0:
            return False
    return rows.shape[0] > 0
