"""Randomized q-coloring over a nice path decomposition.

For random weights omega on (vertex, color) pairs, P_G(z) sums the graph
polynomial over all colorings of weight z; it vanishes identically on
uncolorable graphs and is nonzero for the minimum weight of the isolated
coloring otherwise.  The table after event i is indexed by out-degrees d
for the bag vertices with at most half of their edges introduced (L) and by
monomial exponents e for the others (R).

Storage is one dense array per table, shape (index, lane, z).  The index is
mixed radix over the bag in introduction order, first vertex most
significant; lanes are independent trials with their own weights and prime.
In "full" mode the last axis runs over every reachable weight z.  In "eval"
mode z is folded into a random field point t, so each lane stores
sum_z T^z t^z; a nonzero final value still certifies colorability and a
vanishing polynomial still gives zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import sympy

from . import kernels
from .graph import (Graph, LinearLayout, NicePathDecomposition, layout_to_nice_decomposition,
                    relabel_layout, strip_isolated)

PRIME_LO = 2 ** 30
PRIME_HI = 2 ** 31
FULL_MODE_LIMIT = 2 ** 22


def sample_weights(graph: Graph, q: int, seed) -> np.ndarray:
    """w[v, c-1] uniform in [1, 2nq]; row 0 is unused."""
    if q < 1:
        raise ValueError("q must be at least 1")
    rng = np.random.default_rng(seed)
    top = 2 * max(graph.n, 1) * q
    w = rng.integers(1, top + 1, size=(graph.n + 1, q), dtype=np.int64)
    w[0] = 0
    return w


def random_prime(rng: np.random.Generator) -> int:
    """Uniform prime in [2^30, 2^31) by rejection sampling."""
    while True:
        c = int(rng.integers(PRIME_LO, PRIME_HI))
        if sympy.isprime(c):
            return c


def powmod(base: np.ndarray, exp: np.ndarray, mod: np.ndarray) -> np.ndarray:
    """base**exp % mod elementwise, broadcasting over the last axis; moduli
    below 2^31 keep every product inside int64."""
    base = np.broadcast_to(np.asarray(base, dtype=np.int64) % mod, exp.shape).copy()
    exp = np.array(exp, dtype=np.int64)
    out = np.ones(exp.shape, dtype=np.int64)
    while exp.any():
        odd = (exp & 1).astype(bool)
        out[odd] = (out * base % mod)[odd]
        base = base * base % mod
        exp >>= 1
    return out


@dataclass(frozen=True)
class SplitInfo:
    i: int
    L: tuple
    R: tuple
    l: dict
    r: dict


def split_bag(graph: Graph, npd: NicePathDecomposition, i: int) -> SplitInfo:
    """Split of the bag after the first i events, recomputed from scratch."""
    bag = {}
    dE = {}
    for ev in npd.events[:i]:
        if ev.kind == "IV":
            bag[ev.u] = None
            dE[ev.u] = 0
        elif ev.kind == "FV":
            bag.pop(ev.u)
        else:
            dE[ev.u] += 1
            dE[ev.v] += 1
    L = tuple(v for v in bag if 2 * dE[v] <= graph.degree(v))
    R = tuple(v for v in bag if 2 * dE[v] > graph.degree(v))
    return SplitInfo(i, L, R, {v: dE[v] for v in L}, {v: graph.degree(v) - dE[v] for v in R})


def table_profile(graph: Graph, npd: NicePathDecomposition) -> list:
    """Index-set size after every event: prod over the bag of
    min(d_E(v), d(v) - d_E(v)) + 1."""
    dE = {}
    bag = set()
    sizes = []
    for ev in npd.events:
        if ev.kind == "IV":
            bag.add(ev.u)
            dE[ev.u] = 0
        elif ev.kind == "FV":
            bag.discard(ev.u)
        else:
            dE[ev.u] += 1
            dE[ev.v] += 1
        s = 1
        for v in bag:
            s *= min(dE[v], graph.degree(v) - dE[v]) + 1
        sizes.append(s)
    return sizes


class TableDP:
    """Runs the table recurrences event by event for a batch of lanes."""

    def __init__(self, graph: Graph, q: int, weights: np.ndarray, primes, mode: str = "full",
                 points=None, impl=None):
        self.graph = graph
        self.q = q
        self.w = np.asarray(weights, dtype=np.int64)
        if self.w.ndim == 2:
            self.w = self.w[None]
        self.primes = np.asarray(primes, dtype=np.int64).reshape(-1)
        self.lanes = len(self.primes)
        if self.w.shape[0] != self.lanes:
            raise ValueError("one weight function per lane is required")
        self.mode = mode
        self.impl = impl or kernels.backend()
        if mode == "full":
            self.zlen = int(self.w[:, 1:, :].max(axis=2).sum(axis=1).max()) + 1 if graph.n else 1
        elif mode == "eval":
            self.zlen = 1
            self.points = np.asarray(points, dtype=np.int64).reshape(-1)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        self.bag = []
        self.sizes = []
        self.dE = {}
        self.rank = {}
        self.vals = np.zeros((1, self.lanes, self.zlen), dtype=np.int64)
        self.vals[0, :, 0] = 1
        self.pmax = max(self.graph.max_degree() + 3, 2)
        self.powtab = np.ones((self.lanes, q, self.pmax), dtype=np.int64)
        for c in range(1, q + 1):
            for k in range(1, self.pmax):
                self.powtab[:, c - 1, k] = self.powtab[:, c - 1, k - 1] * c % self.primes

    # -- helpers -----------------------------------------------------------
    def is_left(self, v, dE=None):
        dE = self.dE[v] if dE is None else dE
        return 2 * dE <= self.graph.degree(v)

    def split(self):
        L = tuple(v for v in self.bag if self.is_left(v))
        R = tuple(v for v in self.bag if not self.is_left(v))
        return L, R

    def _flip_params(self, u):
        wu = np.ascontiguousarray(self.w[:, u, :].T)  # (q, lanes)
        if self.mode == "full":
            return np.ascontiguousarray(wu), np.ones_like(wu)
        return np.zeros_like(wu), powmod(self.points, wu, self.primes)

    def _apply(self, vals, sizes, k, u, kind, tail, newsize):
        A = int(np.prod(sizes[:k], dtype=np.int64))
        n = sizes[k]
        B = int(np.prod(sizes[k + 1:], dtype=np.int64))
        Z = self.zlen
        src = vals.reshape(A, n, B * self.lanes * Z)
        if kind == "LL":
            out = np.zeros((A, newsize, src.shape[2]), dtype=np.int64)
            if tail:
                out[:, 1:n + 1] = src
            else:
                out[:, :n] = src
        elif kind == "RR":
            out = np.ascontiguousarray(src[:, 1:] if tail else src[:, :n - 1])
        else:
            shifts, coefs = self._flip_params(u)
            out = np.zeros((A, newsize, B, self.lanes, Z), dtype=np.int64)
            self.impl.flip_accumulate(np.ascontiguousarray(src.reshape(A, n, B, self.lanes, Z)),
                                      out, self.primes, shifts, coefs, self.powtab, int(tail))
        return out.reshape(-1, self.lanes, Z)

    # -- events ------------------------------------------------------------
    def introduce(self, v):
        self.bag.append(v)
        self.sizes.append(1)
        self.dE[v] = 0
        self.rank[v] = len(self.rank)

    def forget(self, v):
        k = self.bag.index(v)
        if self.is_left(v):
            # only an isolated vertex can leave from the L side; color it first
            self.vals = self._apply(self.vals, self.sizes, k, v, "LR", False, 1)
        elif self.sizes[k] != 1:
            raise ValueError(f"vertex {v} forgotten before all its edges were introduced")
        del self.bag[k]
        del self.sizes[k]

    def edge(self, a, b):
        if self.rank[a] > self.rank[b]:
            a, b = b, a
        ka, kb = self.bag.index(a), self.bag.index(b)
        plan = []
        for u in (a, b):
            old = self.dE[u]
            deg = self.graph.degree(u)
            if self.is_left(u, old):
                kind = "LL" if self.is_left(u, old + 1) else "LR"
            else:
                kind = "RR"
            newsize = old + 2 if kind == "LL" else deg - old
            plan.append((kind, newsize))
        results = []
        for tail_is_a in (True, False):
            sizes = list(self.sizes)
            vals = self.vals
            for k, u, (kind, newsize), tail in ((ka, a, plan[0], tail_is_a),
                                                (kb, b, plan[1], not tail_is_a)):
                vals = self._apply(vals, sizes, k, u, kind, tail, newsize)
                sizes[k] = newsize
            results.append(vals)
        P = self.primes[None, :, None]
        self.vals = np.mod(results[0] - results[1], P)
        self.sizes[ka] = plan[0][1]
        self.sizes[kb] = plan[1][1]
        self.dE[a] += 1
        self.dE[b] += 1

    def step(self, ev):
        if ev.kind == "IV":
            self.introduce(ev.u)
        elif ev.kind == "FV":
            self.forget(ev.u)
        else:
            self.edge(ev.u, ev.v)

    def entries(self, lane: int = 0) -> dict:
        """Nonzero entries as {(z, d, e): value} with d, e dicts over L and R."""
        L, R = self.split()
        out = {}
        idx = np.argwhere(self.vals[:, lane, :] != 0)
        for flat, z in idx:
            digits = np.unravel_index(int(flat), self.sizes) if self.sizes else ()
            d = {v: int(digits[k]) for k, v in enumerate(self.bag) if v in L}
            e = {v: int(digits[k]) for k, v in enumerate(self.bag) if v in R}
            key = (int(z), tuple(sorted(d.items())), tuple(sorted(e.items())))
            out[key] = int(self.vals[flat, lane, z])
        return out


def iter_tables(graph: Graph, npd: NicePathDecomposition, q: int, weights, p: int, impl=None):
    """Yield (event index, dp) after every event, full mode, one lane."""
    dp = TableDP(graph, q, weights, [p], "full", impl=impl)
    yield 0, dp
    for i, ev in enumerate(npd.events, start=1):
        dp.step(ev)
        yield i, dp


def compute_PG_all(graph: Graph, npd: NicePathDecomposition, q: int, weights, p: int,
                   impl=None) -> np.ndarray:
    """Array of P_G(z) mod p for z = 0 .. 2 n^2 q."""
    dp = TableDP(graph, q, weights, [p], "full", impl=impl)
    for ev in npd.events:
        dp.step(ev)
    if dp.bag:
        raise ValueError("decomposition does not end with an empty bag")
    zmax = 2 * graph.n * graph.n * q
    out = np.zeros(max(zmax + 1, dp.zlen), dtype=np.int64)
    out[:dp.zlen] = dp.vals[0, 0, :]
    return out[:zmax + 1] if graph.n else out[:1]


def _trial_material(graph, q, seed, trials):
    """Per-trial weights, prime and evaluation point from spawned seeds."""
    out = []
    for ss in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.default_rng(ss)
        w = sample_weights(graph, q, rng)
        p = random_prime(rng)
        t = int(rng.integers(2, p - 1))
        out.append((w, p, t))
    return out


def choose_mode(graph: Graph, npd: NicePathDecomposition, q: int) -> str:
    zlen = 2 * graph.n * graph.n * q + 1
    biggest = max(table_profile(graph, npd), default=1)
    return "full" if biggest * zlen <= FULL_MODE_LIMIT else "eval"


def solve_pathwidth_rand(graph: Graph, npd: NicePathDecomposition, q: int, trials: int = 64,
                         seed=0, mode: str = "auto", batch: int = 16,
                         stats: Optional[dict] = None, impl=None) -> bool:
    """Yes iff some trial finds a nonzero P_G value; never yes on an
    uncolorable graph.  Trials run in batches and stop after the first yes."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if q < 1:
        raise ValueError("q must be at least 1")
    if mode == "auto":
        mode = choose_mode(graph, npd, q)
    material = _trial_material(graph, q, seed, trials)
    width = batch if mode == "eval" else 1
    answer = False
    used = 0
    witness = None
    for s in range(0, trials, width):
        chunk = material[s:s + width]
        dp = TableDP(graph, q, np.stack([m[0] for m in chunk]), [m[1] for m in chunk], mode,
                     points=[m[2] for m in chunk], impl=impl)
        for ev in npd.events:
            dp.step(ev)
        used += len(chunk)
        hits = np.flatnonzero(dp.vals.any(axis=(0, 2)))
        if hits.size:
            answer = True
            witness = s + int(hits[0])
            break
    if stats is not None:
        stats.update({"mode": mode, "trials_run": used, "first_success": witness,
                      "max_table": max(table_profile(graph, npd), default=1),
                      "kernel_backend": kernels.BACKEND if impl is None else impl.__name__.rsplit(".", 1)[-1]})
    return answer


def solve_cutwidth_rand(graph: Graph, layout: LinearLayout, q: int, trials: int = 64, seed=0,
                        mode: str = "auto", stats: Optional[dict] = None, impl=None) -> bool:
    """Layout -> nice decomposition (isolated vertices stripped), then the
    path decomposition algorithm."""
    layout.validate(graph)
    g, kept, isolated = strip_isolated(graph)
    if q < 1:
        raise ValueError("q must be at least 1")
    if g.n == 0:
        return True
    lay = relabel_layout(layout, kept)
    npd = layout_to_nice_decomposition(g, lay)
    if stats is not None:
        stats["isolated_stripped"] = isolated
    return solve_pathwidth_rand(g, npd, q, trials, seed, mode, stats=stats, impl=impl)
