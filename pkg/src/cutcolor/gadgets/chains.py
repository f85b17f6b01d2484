"""Chains of cliques: t disjoint q-cliques Z_1..Z_t where terminal z_{i+1}
is joined to the q-1 non-terminals of Z_i.  Every proper q-coloring gives
all terminals the same color."""
from __future__ import annotations

from .base import GraphBuilder


def add_chain(builder: GraphBuilder, t: int, q: int, name) -> list:
    """Append a t-chain of q-cliques to builder; vertex tags are
    (*name, i, 0) for terminals and (*name, i, r) for non-terminals, r >= 1.
    Returns the terminal ids z_1..z_t."""
    if t < 1 or q < 2:
        raise ValueError("need t >= 1 and q >= 2")
    name = tuple(name)
    terms, prev = [], None
    for i in range(1, t + 1):
        z = builder.add(name + (i, 0))
        others = [builder.add(name + (i, r)) for r in range(1, q)]
        clique = [z] + others
        for a in range(q):
            for b in range(a + 1, q):
                builder.edge(clique[a], clique[b])
        if prev is not None:
            for w in prev:
                builder.edge(z, w)
        terms.append(z)
        prev = others
    return terms


def chain_of_cliques(t: int, q: int):
    """(graph, terminals) for a standalone t-chain of q-cliques."""
    b = GraphBuilder()
    terms = add_chain(b, t, q, ("Z",))
    return b.graph(), terms
