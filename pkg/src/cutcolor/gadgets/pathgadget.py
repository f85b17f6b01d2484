"""Path gadgets that forbid one color tuple on their partners.

For c in [q]^m the gadget is a list-colored path with distinguished
vertices pi_1..pi_m such that the path can be list colored with
pi_i avoiding d_i for all i exactly when d != c.

The path carries a two-color frame (U, V).  A state vertex with list {U, V}
is colored U while every block so far had pi_i = c_i forced, and may be
colored V once some block could avoid it.  Block i is pi_i with list
{c_i, U, V} followed by a state vertex; it needs c_i outside the frame.
A relay vertex with list {U, W} moves the frame to (W, U).  The first state
is pinned to U and the last to V.
"""
from __future__ import annotations

from ..graph import Graph
from .base import ListColoringInstance


def _smallest_not_in(q, banned):
    return next(c for c in range(1, q + 1) if c not in banned)


def path_gadget(c, q: int):
    """(instance, distinguished) where distinguished[i-1] is pi_i and the
    path visits vertices 1, 2, ..., |P| in order."""
    c = tuple(int(x) for x in c)
    if q < 3:
        raise ValueError("path gadgets need q >= 3")
    if not c:
        raise ValueError("need at least one distinguished vertex")
    if any(x < 1 or x > q for x in c):
        raise ValueError(f"colors must lie in 1..{q}")
    lists, tags = [], []
    pis = []
    if len(c) == 1:
        lists.append((c[0],))
        tags.append(("pi", 1))
        pis.append(1)
    else:
        U = _smallest_not_in(q, {c[0]})
        V = _smallest_not_in(q, {c[0], U})
        lists.append((U,))
        tags.append(("state", 0))
        for i, ci in enumerate(c, start=1):
            if i > 1:
                k = 0
                if ci == U:
                    # swap relay: frame (U, V) -> (V, U)
                    lists.append((U, V))
                    tags.append(("relay", i, k))
                    k += 1
                    U, V = V, U
                if ci == V:
                    W = _smallest_not_in(q, {U, V})
                    lists.append((U, W))
                    tags.append(("relay", i, k))
                    U, V = W, U
            lists.append((ci, U, V))
            tags.append(("pi", i))
            pis.append(len(lists))
            lists.append((V,) if i == len(c) else (U, V))
            tags.append(("state", i))
    n = len(lists)
    graph = Graph(n, tuple((v, v + 1) for v in range(1, n)))
    inst = ListColoringInstance(
        graph, q, {v: tuple(sorted(L)) for v, L in enumerate(lists, start=1)},
        {v: t for v, t in enumerate(tags, start=1)})
    return inst, pis


def max_gadget_size(m: int) -> int:
    """Upper bound on the number of path vertices for an m-tuple."""
    return 1 if m == 1 else 4 * m - 1
