"""Graphs, linear layouts, cuts and nice path decompositions.

Vertices are the integers 1..n.  Edges are stored with the smaller id first
and kept sorted, so two graphs with the same edge set compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = []
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [1, {self.n}]")
            canon.append((u, v) if u < v else (v, u))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple:
        """adj[v] is the sorted tuple of neighbours of v (index 0 unused)."""
        nb = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    def neighbors(self, v: int) -> tuple:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj[1:]), default=0)

    def isolated(self) -> list:
        return [v for v in range(1, self.n + 1) if not self.adj[v]]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]


def strip_isolated(graph: Graph):
    """Drop isolated vertices and relabel the rest in increasing id order.

    Returns (new_graph, kept, isolated) where kept[k-1] is the old id of new
    vertex k.
    """
    isolated = graph.isolated()
    if not isolated:
        return graph, list(range(1, graph.n + 1)), []
    kept = [v for v in range(1, graph.n + 1) if graph.adj[v]]
    new_id = {v: k + 1 for k, v in enumerate(kept)}
    edges = [(new_id[u], new_id[v]) for u, v in graph.edges]
    return Graph(len(kept), tuple(edges)), kept, isolated


def relabel_layout(layout: "LinearLayout", kept: Sequence[int]) -> "LinearLayout":
    """Restrict a layout to the kept vertices and renumber them."""
    new_id = {v: k + 1 for k, v in enumerate(kept)}
    return LinearLayout(tuple(new_id[v] for v in layout.order if v in new_id))


def relabel_decomposition(npd: "NicePathDecomposition", kept: Sequence[int]):
    new_id = {v: k + 1 for k, v in enumerate(kept)}
    events = []
    for ev in npd.events:
        if ev.kind == "IE":
            events.append(Event("IE", new_id[ev.u], new_id[ev.v]))
        elif ev.u in new_id:
            events.append(Event(ev.kind, new_id[ev.u]))
    return NicePathDecomposition(tuple(events))


@dataclass(frozen=True)
class LinearLayout:
    order: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(v) for v in self.order))

    @cached_property
    def position(self) -> dict:
        """1-based position of every vertex."""
        return {v: i + 1 for i, v in enumerate(self.order)}

    def validate(self, graph: Graph) -> None:
        if len(self.order) != graph.n or sorted(self.order) != list(range(1, graph.n + 1)):
            raise ValueError("layout is not a permutation of the graph's vertices")


@dataclass(frozen=True)
class Cut:
    i: int
    edges: tuple   # (left, right) pairs, sorted
    X: tuple       # left endpoints, sorted by id
    Y: tuple       # right endpoints, sorted by id

    def left_degree(self) -> dict:
        deg = {v: 0 for v in self.X}
        for u, _ in self.edges:
            deg[u] += 1
        return deg


def make_cut(i, pairs):
    pairs = tuple(sorted(pairs))
    X = tuple(sorted({u for u, _ in pairs}))
    Y = tuple(sorted({w for _, w in pairs}))
    return Cut(i, pairs, X, Y)


def cut_at(graph: Graph, layout: LinearLayout, i: int) -> Cut:
    """The i-th cut: edges from the first i vertices to the rest."""
    if not 0 <= i <= graph.n:
        raise ValueError(f"cut position {i} outside [0, {graph.n}]")
    pos = layout.position
    pairs = []
    for u, v in graph.edges:
        pu, pv = pos[u], pos[v]
        if pu > pv:
            u, v, pu, pv = v, u, pv, pu
        if pu <= i < pv:
            pairs.append((u, v))
    return make_cut(i, pairs)


def all_cuts(graph: Graph, layout: LinearLayout) -> list:
    """Cuts 0..n computed incrementally."""
    layout.validate(graph)
    pos = layout.position
    live = set()
    cuts = [make_cut(0, ())]
    for i, v in enumerate(layout.order, start=1):
        for w in graph.adj[v]:
            if pos[w] < i:
                live.discard((w, v))
            else:
                live.add((v, w))
        cuts.append(make_cut(i, live))
    return cuts


def cut_sizes(graph: Graph, layout: LinearLayout) -> list:
    """|C_i| for i = 0..n without building the cut objects."""
    layout.validate(graph)
    pos = layout.position
    sizes = [0]
    cur = 0
    for i, v in enumerate(layout.order, start=1):
        for w in graph.adj[v]:
            cur += -1 if pos[w] < i else 1
        sizes.append(cur)
    return sizes


def cutwidth_of(graph: Graph, layout: LinearLayout) -> int:
    sizes = cut_sizes(graph, layout)
    return max(sizes[1:graph.n], default=0)


class Event(NamedTuple):
    kind: str          # "IV", "IE" or "FV"
    u: int
    v: int = 0         # second endpoint for IE

    def __str__(self):
        return f"IE {self.u} {self.v}" if self.kind == "IE" else f"{self.kind} {self.u}"


@dataclass(frozen=True)
class NicePathDecomposition:
    events: tuple

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(Event(*e) for e in self.events))

    def __len__(self):
        return len(self.events)

    def bags(self) -> Iterator[tuple]:
        """Yield (event, bag after the event) with the bag as a tuple in
        introduction order."""
        bag = {}
        for ev in self.events:
            if ev.kind == "IV":
                bag[ev.u] = None
            elif ev.kind == "FV":
                bag.pop(ev.u, None)
            yield ev, tuple(bag)


class DecompositionBuilder:
    """Emit events and forget vertices as soon as their last edge is in."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.events = []
        self.remaining = [len(a) for a in graph.adj]
        self.bag = set()
        self.seen = set()

    def introduce(self, v: int) -> None:
        """Introduce v unless it was introduced before."""
        if v in self.seen:
            return
        self.events.append(Event("IV", v))
        self.bag.add(v)
        self.seen.add(v)
        if self.remaining[v] == 0:
            self.forget(v)

    def edge(self, u: int, v: int) -> None:
        self.introduce(u)
        self.introduce(v)
        self.events.append(Event("IE", u, v))
        for w in (u, v):
            self.remaining[w] -= 1
        for w in (u, v):
            if self.remaining[w] == 0:
                self.forget(w)

    def forget(self, v: int) -> None:
        self.events.append(Event("FV", v))
        self.bag.discard(v)

    def result(self) -> NicePathDecomposition:
        return NicePathDecomposition(tuple(self.events))


def layout_to_nice_decomposition(graph: Graph, layout: LinearLayout) -> NicePathDecomposition:
    """Introduce vertices in layout order, each followed by its edges to
    earlier vertices; a vertex is forgotten right after its last edge."""
    layout.validate(graph)
    iso = graph.isolated()
    if iso:
        raise ValueError(f"isolated vertices present: {iso[:10]}")
    pos = layout.position
    events = []
    remaining = [len(a) for a in graph.adj]
    for i, v in enumerate(layout.order, start=1):
        events.append(Event("IV", v))
        for w in sorted((w for w in graph.adj[v] if pos[w] < i), key=pos.__getitem__):
            events.append(Event("IE", w, v))
            remaining[w] -= 1
            remaining[v] -= 1
            if remaining[w] == 0:
                events.append(Event("FV", w))
        if remaining[v] == 0:
            events.append(Event("FV", v))
    return NicePathDecomposition(tuple(events))


def validate_decomposition(graph: Graph, npd: NicePathDecomposition) -> list:
    """Return every violated invariant as a message; empty list means valid."""
    problems = []
    state = {}            # vertex -> "in" | "out"
    seen_edges = set()
    edge_set = set(graph.edges)
    for k, ev in enumerate(npd.events):
        if ev.kind == "IV":
            if not 1 <= ev.u <= graph.n:
                problems.append(f"event {k}: vertex {ev.u} not in graph")
            elif ev.u in state:
                problems.append(f"event {k}: vertex {ev.u} introduced twice")
            else:
                state[ev.u] = "in"
        elif ev.kind == "FV":
            if state.get(ev.u) != "in":
                problems.append(f"event {k}: forget of {ev.u} which is not in bag")
            else:
                state[ev.u] = "out"
        elif ev.kind == "IE":
            e = (min(ev.u, ev.v), max(ev.u, ev.v))
            if e not in edge_set:
                problems.append(f"event {k}: edge {e} not in graph")
                continue
            if e in seen_edges:
                problems.append(f"event {k}: edge {e} introduced twice")
            seen_edges.add(e)
            for w in e:
                if state.get(w) != "in":
                    problems.append(f"event {k}: edge {e} endpoint not in bag ({w})")
        else:
            problems.append(f"event {k}: unknown kind {ev.kind!r}")
    for v in range(1, graph.n + 1):
        if v not in state:
            problems.append(f"vertex {v} never introduced")
        elif state[v] == "in":
            problems.append(f"vertex {v} never forgotten")
    for e in graph.edges:
        if e not in seen_edges:
            problems.append(f"edge {e} never introduced")
    return problems


def pathwidth_of(npd: NicePathDecomposition) -> int:
    """Largest bag minus one; 0 for the empty decomposition."""
    best = 0
    size = 0
    for ev in npd.events:
        if ev.kind == "IV":
            size += 1
            best = max(best, size)
        elif ev.kind == "FV":
            size -= 1
    return max(best - 1, 0)


def width_report(npd: NicePathDecomposition) -> dict:
    return {"pathwidth": pathwidth_of(npd), "empty": len(npd.events) == 0}


# ---------------------------------------------------------------- file formats

def parse_graph(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) < 4 or parts[1] not in ("edge", "col"):
                raise ValueError(f"line {lineno}: bad header {raw!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before header")
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"line {lineno}: unexpected line {raw!r}")
    if n is None:
        raise ValueError("missing 'p edge' header")
    return Graph(n, tuple(edges))


def format_graph(graph: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {graph.n} {graph.m}")
    lines.extend(f"e {u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def parse_layout(text: str) -> LinearLayout:
    tokens = text.split()
    if len(tokens) < 2 or tokens[0] != "layout":
        raise ValueError("layout file must start with 'layout <n>'")
    n = int(tokens[1])
    order = [int(t) for t in tokens[2:]]
    if len(order) != n:
        raise ValueError(f"layout declares {n} vertices but lists {len(order)}")
    return LinearLayout(tuple(order))


def format_layout(layout: LinearLayout) -> str:
    return f"layout {len(layout.order)}\n" + " ".join(map(str, layout.order)) + "\n"


def parse_decomposition(text: str) -> NicePathDecomposition:
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        kind = parts[0]
        if kind in ("IV", "FV") and len(parts) == 2:
            events.append(Event(kind, int(parts[1])))
        elif kind == "IE" and len(parts) == 3:
            events.append(Event(kind, int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"line {lineno}: bad event {raw!r}")
    return NicePathDecomposition(tuple(events))


def format_decomposition(npd: NicePathDecomposition) -> str:
    return "".join(f"{ev}\n" for ev in npd.events)


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def read_layout(path) -> LinearLayout:
    with open(path) as fh:
        return parse_layout(fh.read())


def read_decomposition(path) -> NicePathDecomposition:
    with open(path) as fh:
        return parse_decomposition(fh.read())
