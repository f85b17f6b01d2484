"""CNF formula to a list 3-coloring instance of small cutwidth.

Variable path X_i: T_{i,1}, F_{i,1}, ..., T_{i,m}, F_{i,m}, all with list
{2, 3}; color 2 on the T vertices means x_i is true.  Clause path D_j:
a_{j,1}, b_{j,1}, ..., a_{j,k}, b_{j,k} with a-lists {1,2,3} ({2,3} for the
first) and b-lists {1,2} ({2} for the last), so some a-vertex must take 3.
a_{j,k} is joined to T_{i,j} (positive literal) or F_{i,j} (negative), where
x_i is the k-th variable of C_j in index order.
"""
from __future__ import annotations

from .base import GraphBuilder, ListColoringInstance
from .cnf import CnfFormula


def cnf_to_list3col(phi: CnfFormula) -> ListColoringInstance:
    if phi.m == 0:
        raise ValueError("formula has no clauses")
    b = GraphBuilder()
    lists = {}
    n, m = phi.n, phi.m
    for i in range(1, n + 1):
        prev = None
        for j in range(1, m + 1):
            for kind in ("T", "F"):
                v = b.add((kind, i, j))
                lists[v] = (2, 3)
                if prev is not None:
                    b.edge(prev, v)
                prev = v
    for j in range(1, m + 1):
        clause = phi.sorted_clause(j)
        size = len(clause)
        prev = None
        for k, lit in enumerate(clause, start=1):
            a = b.add(("a", j, k))
            lists[a] = (2, 3) if k == 1 else (1, 2, 3)
            bb = b.add(("b", j, k))
            lists[bb] = (2,) if k == size else (1, 2)
            if prev is not None:
                b.edge(prev, a)
            b.edge(a, bb)
            prev = bb
            b.edge(a, b[("T" if lit > 0 else "F", abs(lit), j)])
    return ListColoringInstance(b.graph(), 3, lists, dict(b.tags))


def literal_variable(inst: ListColoringInstance, j: int, k: int) -> int:
    """Index i of the variable whose T/F vertex is the special neighbor of a_{j,k}."""
    a = inst.vertex("a", j, k)
    for w in inst.graph.adj[a]:
        t = inst.tags[w]
        if t[0] in ("T", "F"):
            return t[1]
    raise ValueError(f"a_({j},{k}) has no literal neighbor")
