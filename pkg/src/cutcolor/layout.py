"""Finding linear layouts with small cutwidth."""
from __future__ import annotations

from .graph import Graph, LinearLayout, cutwidth_of


def greedy_layout(graph: Graph) -> LinearLayout:
    """Append the vertex that minimises the next cut; ties go to the smaller id."""
    n = graph.n
    placed = [False] * (n + 1)
    # gain[v] = change of the cut size if v is appended now
    gain = [len(graph.adj[v]) for v in range(n + 1)]
    order = []
    cur = 0
    for _ in range(n):
        best = None
        for v in range(1, n + 1):
            if not placed[v] and (best is None or gain[v] < gain[best]):
                best = v
        placed[best] = True
        order.append(best)
        cur += gain[best]
        for w in graph.adj[best]:
            gain[w] -= 2
    return LinearLayout(tuple(order))


def exact_layout(graph: Graph, budget: int = 2_000_000) -> LinearLayout:
    """Branch and bound over prefixes; memoises the best max-cut per prefix set."""
    n = graph.n
    if n > 20:
        raise ValueError("exact layout search is limited to n <= 20")
    if n == 0:
        return LinearLayout(())
    nbmask = [0] * (n + 1)
    for u, v in graph.edges:
        nbmask[u] |= 1 << (v - 1)
        nbmask[v] |= 1 << (u - 1)
    deg = [len(a) for a in graph.adj]

    start = greedy_layout(graph)
    best = [cutwidth_of(graph, start) if n > 1 else 0, list(start.order)]
    seen = {}
    nodes = [0]
    full = (1 << n) - 1

    def rec(mask, cut, worst, prefix):
        if mask == full:
            if worst < best[0]:
                best[0] = worst
                best[1] = list(prefix)
            return
        nodes[0] += 1
        if nodes[0] > budget:
            raise RuntimeError("exact layout search exceeded its node budget")
        prev = seen.get(mask)
        if prev is not None and prev <= worst:
            return
        seen[mask] = worst
        cands = []
        for v in range(1, n + 1):
            bit = 1 << (v - 1)
            if mask & bit:
                continue
            inside = bin(nbmask[v] & mask).count("1")
            c = cut + deg[v] - 2 * inside
            cands.append((c, v))
        cands.sort()
        last = len(prefix) == n - 1
        for c, v in cands:
            w = worst if last else max(worst, c)
            if w >= best[0]:
                continue
            prefix.append(v)
            rec(mask | (1 << (v - 1)), c, w, prefix)
            prefix.pop()

    rec(0, 0, 0, [])
    return LinearLayout(tuple(best[1]))


def find_layout(graph: Graph, strategy: str = "greedy", budget: int = 2_000_000) -> LinearLayout:
    if strategy == "greedy":
        return greedy_layout(graph)
    if strategy == "exact":
        return exact_layout(graph, budget)
    raise ValueError(f"unknown layout strategy {strategy!r}")
