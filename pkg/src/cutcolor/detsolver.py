"""Deterministic q-coloring over a linear layout.

The table after position i holds colorings of the left endpoints X_i of the
i-th cut.  After every extension it is pruned to the rows whose L_H vectors
form a greedy row basis over GF(p); that keeps it H-representative while its
size stays below prod_{v in X_i} (deg_C(v) + 1) <= 2^{|C_i|}.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import sympy

from . import kernels
from .graph import Cut, Graph, LinearLayout, all_cuts
from .linalg import row_basis_modp

BLOCK_ROWS = 32
MAX_BASIS_ENTRIES = 2 ** 25


def field_prime(q: int) -> int:
    """Smallest prime >= q (2 for q <= 2)."""
    return int(sympy.nextprime(max(q, 1) - 1))


@dataclass(frozen=True)
class PartialColoringSet:
    domain: tuple
    rows: np.ndarray = field(repr=False)

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.int16)
        if rows.ndim != 2:
            rows = rows.reshape(-1, len(self.domain))
        if rows.shape[1] != len(self.domain):
            raise ValueError("row width does not match the domain")
        object.__setattr__(self, "rows", rows)

    def __len__(self):
        return self.rows.shape[0]

    def as_tuples(self) -> list:
        return [tuple(int(c) for c in r) for r in self.rows]

    @classmethod
    def from_rows(cls, domain, rows):
        rows = np.asarray(rows, dtype=np.int16)
        if rows.ndim != 2:
            rows = rows.reshape(-1, len(domain))
        return cls(tuple(domain), dedup_rows(rows))


def dedup_rows(rows: np.ndarray) -> np.ndarray:
    """Remove duplicate rows, keeping first occurrences in their original order."""
    k, w = rows.shape
    if k <= 1:
        return rows
    if w == 0:
        return rows[:1]
    # pack each row into a few int64 keys, then one stable lexsort
    bits = max(1, int(rows.max()).bit_length())
    per = 63 // bits
    keys = []
    for s in range(0, w, per):
        blk = rows[:, s:s + per].astype(np.int64)
        keys.append((blk << (np.arange(blk.shape[1], dtype=np.int64) * bits)).sum(axis=1))
    if len(keys) == 1:
        _, first = np.unique(keys[0], return_index=True)
    else:
        order = np.lexsort(keys[::-1])
        K = np.stack(keys, axis=1)[order]
        new = np.ones(k, dtype=bool)
        new[1:] = np.any(K[1:] != K[:-1], axis=1)
        first = order[new]
    return rows[np.sort(first)]


def twin_classes(cut: Cut) -> list:
    """Groups (as column indices into cut.X) of left endpoints with the same
    right neighbourhood in the cut graph; only groups of size >= 2."""
    nbrs = {v: [] for v in cut.X}
    for u, w in cut.edges:
        nbrs[u].append(w)
    groups = {}
    for col, v in enumerate(cut.X):
        groups.setdefault(tuple(nbrs[v]), []).append(col)
    return [g for g in groups.values() if len(g) > 1]


def canonical_rows(rows: np.ndarray, twins, q: int, impl=None) -> np.ndarray:
    """Representatives modulo colour permutations and colour swaps between
    twins.  Such rows are compatible with the same right-side colourings up
    to one global permutation, so the decision answer is unchanged."""
    impl = impl or kernels.backend()
    rows = np.ascontiguousarray(rows, dtype=np.int16).copy()
    cols = np.array([c for g in twins for c in g], dtype=np.intp)
    starts = np.cumsum([0] + [len(g) for g in twins]).astype(np.intp)
    impl.canonical_rows(rows, cols, starts, q)
    return rows


def degree_caps(cut: Cut) -> list:
    """Caps b_v = deg_C(v) for v in X, in id order."""
    deg = cut.left_degree()
    return [deg[v] for v in cut.X]


def index_size(caps) -> int:
    size = 1
    for b in caps:
        size *= b + 1
    return size


def lh_matrix(rows: np.ndarray, caps, p: int) -> np.ndarray:
    """Rows of L_H: entry s is prod_v x_v^{s_v} mod p, with s in lexicographic
    order and the first vertex most significant."""
    k = rows.shape[0]
    out = np.ones((k, 1), dtype=np.int64)
    for col, b in enumerate(caps):
        x = rows[:, col].astype(np.int64) % p
        pw = np.ones((k, b + 1), dtype=np.int64)
        for s in range(1, b + 1):
            pw[:, s] = pw[:, s - 1] * x % p
        out = (out[:, :, None] * pw[:, None, :]).reshape(k, -1) % p
    return out


def lh_row(x, caps, p: int) -> np.ndarray:
    return lh_matrix(np.asarray([list(x)], dtype=np.int64).reshape(1, len(caps)), caps, p)[0]


def reduce(cut: Cut, S: PartialColoringSet, p: int, skip_small: bool = False,
           impl=None) -> PartialColoringSet:
    """Subset of S whose L_H rows are a greedy row basis of L_H[S, .]."""
    if tuple(S.domain) != tuple(cut.X):
        raise ValueError("table domain does not match the cut's left endpoints")
    caps = degree_caps(cut)
    D = index_size(caps)
    k = len(S)
    if k <= 1 or (skip_small and k <= D):
        return S
    if min(k, D) * D > MAX_BASIS_ENTRIES:
        raise MemoryError(
            f"basis of {min(k, D)} x {D} entries is too large; enable the skip_small threshold")
    blocks = (lh_matrix(S.rows[s:s + BLOCK_ROWS], caps, p) for s in range(0, k, BLOCK_ROWS))
    keep = row_basis_modp(blocks, D, p, impl)
    return PartialColoringSet(S.domain, S.rows[np.sort(keep)])


def extend_table(prev: PartialColoringSet, v: int, graph: Graph, cut_prev: Cut,
                 cut_next: Cut, q: int, symmetry: bool = False,
                 impl=None) -> PartialColoringSet:
    """Add v with every color that avoids its neighbours in X_{i-1}, then
    project to X_i and deduplicate (first occurrence order).  With symmetry
    the rows are first mapped to canonical representatives."""
    dom = list(prev.domain)
    pos = {w: k for k, w in enumerate(dom)}
    nb = [pos[w] for w in graph.adj[v] if w in pos]
    k = len(prev)
    colors = np.arange(1, q + 1, dtype=np.int16)
    ext = np.empty((k * q, len(dom) + 1), dtype=np.int16)
    ext[:, :-1] = np.repeat(prev.rows, q, axis=0)
    ext[:, -1] = np.tile(colors, k)
    if nb:
        ok = np.all(ext[:, nb] != ext[:, -1:], axis=1)
        ext = ext[ok]
    pos[v] = len(dom)
    cols = [pos[w] for w in cut_next.X]
    ext = np.ascontiguousarray(ext[:, cols])
    if symmetry:
        ext = canonical_rows(ext, twin_classes(cut_next), q, impl)
    return PartialColoringSet(tuple(cut_next.X), dedup_rows(ext))


def solve_cutwidth_det(graph: Graph, layout: LinearLayout, q: int, skip_small: bool = False,
                       stats: dict | None = None, impl=None, symmetry: bool = False) -> bool:
    """Decide q-colorability exactly by the rank-pruned table dynamic program.

    symmetry=True keeps one representative per orbit of colour permutations
    and twin swaps; tables then represent T[i] only up to those symmetries,
    which leaves the answer unchanged."""
    if q < 1:
        raise ValueError("q must be at least 1")
    layout.validate(graph)
    p = field_prime(q)
    cuts = all_cuts(graph, layout)
    table = PartialColoringSet((), np.zeros((1, 0), dtype=np.int16))
    sizes = []
    for i, v in enumerate(layout.order, start=1):
        table = extend_table(table, v, graph, cuts[i - 1], cuts[i], q, symmetry, impl)
        before = len(table)
        if before:
            table = reduce(cuts[i], table, p, skip_small, impl)
        sizes.append((before, len(table), index_size(degree_caps(cuts[i]))))
        if not len(table):
            break
    if stats is not None:
        stats["prime"] = p
        stats["steps"] = sizes
        stats["max_table"] = max((s[1] for s in sizes), default=1)
        stats["max_extended"] = max((s[0] for s in sizes), default=1)
        stats["kernel_backend"] = kernels.BACKEND if impl is None else impl.__name__.rsplit(".", 1)[-1]
    return len(table) > 0
