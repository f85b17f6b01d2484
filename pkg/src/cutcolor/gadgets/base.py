"""Containers shared by the generators."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Union

from ..graph import (Graph, LinearLayout, NicePathDecomposition, cutwidth_of, pathwidth_of,
                     validate_decomposition)


@dataclass(frozen=True)
class ListColoringInstance:
    """A graph with a color list per vertex (colors are 1..q) and a role tag
    per vertex, e.g. ("T", i, j) or ("a", j, k)."""
    graph: Graph
    q: int
    lists: dict
    tags: dict = field(default_factory=dict)

    def __post_init__(self):
        for v in range(1, self.graph.n + 1):
            L = self.lists.get(v)
            if not L:
                raise ValueError(f"vertex {v} has an empty list")
            if any(c < 1 or c > self.q for c in L):
                raise ValueError(f"vertex {v} has a color outside 1..{self.q}")
        if self.tags and set(self.tags) != set(range(1, self.graph.n + 1)):
            raise ValueError("tags must cover every vertex")

    @cached_property
    def index(self) -> dict:
        return {t: v for v, t in self.tags.items()}

    def vertex(self, *tag) -> int:
        return self.index[tuple(tag)]


@dataclass(frozen=True)
class GadgetInstance:
    """A generated coloring instance with its width certificate.

    provenance maps each vertex to a tag whose first entry names the gadget
    that produced it; meta holds measured quantities and parameters."""
    graph: Graph
    q: int
    certificate: Union[LinearLayout, NicePathDecomposition]
    provenance: dict
    formula: Optional[object] = None
    meta: dict = field(default_factory=dict)
    drawing: Optional[object] = None

    def validate(self) -> list:
        if isinstance(self.certificate, LinearLayout):
            try:
                self.certificate.validate(self.graph)
            except ValueError as exc:
                return [str(exc)]
            return []
        return validate_decomposition(self.graph, self.certificate)

    def width(self) -> int:
        if isinstance(self.certificate, LinearLayout):
            return cutwidth_of(self.graph, self.certificate)
        return pathwidth_of(self.certificate)

    def provenance_counts(self) -> dict:
        counts = {}
        for tag in self.provenance.values():
            counts[tag[0]] = counts.get(tag[0], 0) + 1
        return dict(sorted(counts.items()))


class GraphBuilder:
    """Accumulates tagged vertices and edges, then freezes into a Graph."""

    def __init__(self):
        self.tags = {}
        self.index = {}
        self.edges = set()

    @property
    def n(self) -> int:
        return len(self.tags)

    def add(self, tag) -> int:
        tag = tuple(tag)
        if tag in self.index:
            raise ValueError(f"duplicate vertex tag {tag}")
        v = len(self.tags) + 1
        self.tags[v] = tag
        self.index[tag] = v
        return v

    def __getitem__(self, tag) -> int:
        return self.index[tuple(tag)]

    def edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("self-loop")
        self.edges.add((min(u, v), max(u, v)))

    def graph(self) -> Graph:
        return Graph(self.n, tuple(sorted(self.edges)))
