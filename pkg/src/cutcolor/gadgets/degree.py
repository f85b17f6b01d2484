"""q-coloring instances of bounded degree and small pathwidth from CNF formulas.

For odd d >= 5 and q = d // 2 + 1 the variables are split into groups of
at most beta = floor(p log2 q) variables.  Group i owns p chains of q-cliques
whose first terminals encode a group assignment through an injection into
[q]^p.  q color chains start from a palette clique and carry one color
each.  For every clause and every coloring tuple of its groups that is not
an assignment or does not satisfy the clause, a path gadget blocking that
tuple is wired to fresh terminals of the variable chains, and its list
constraints are realised by edges to fresh terminals of the color chains.

Index rules: the r-th bad tuple of clause j uses variable-chain terminal
(j-1) q^{ps} + r and, for path vertex l, color-chain terminal
(j-1) q^{ps} N + N (r-1) + l.  Chains have M = m q^{ps} and N M cliques.
"""
from __future__ import annotations

import itertools

from ..graph import DecompositionBuilder, NicePathDecomposition, pathwidth_of
from .base import GadgetInstance, GraphBuilder
from .chains import add_chain
from .cnf import CnfFormula
from .pathgadget import max_gadget_size, path_gadget

# excess width over p t + q_d, in units of q_d^s, accepted by the tests
WIDTH_CONSTANT = 2


def group_size(q: int, p: int) -> int:
    """beta = floor(p log2 q), computed exactly."""
    beta = 0
    while 2 ** (beta + 1) <= q ** p:
        beta += 1
    return beta


def variable_groups(n: int, beta: int) -> list:
    """Consecutive groups F_1..F_t of variable indices."""
    return [tuple(range(s, min(s + beta, n + 1))) for s in range(1, n + 1, beta)]


def encode_assignment(bits, q: int, p: int) -> tuple:
    """Injection g from group assignments (tuple of bools, first variable
    least significant) into colorings [q]^p (first chain most significant)."""
    a = sum(1 << k for k, b in enumerate(bits) if b)
    digits = []
    for _ in range(p):
        a, r = divmod(a, q)
        digits.append(r + 1)
    if a:
        raise ValueError("group too large for p chains")
    return tuple(reversed(digits))


def bad_tuples(clause, groups, q: int, p: int) -> tuple:
    """(involved group indices, bad colorings) for one clause in lexicographic
    order; a coloring concatenates one [q]^p block per involved group."""
    lits = {abs(l): l > 0 for l in clause}
    involved = sorted({gi for gi, g in enumerate(groups, start=1) if lits.keys() & set(g)})
    decode = []
    for gi in involved:
        g = groups[gi - 1]
        table = {}
        for bits in itertools.product((False, True), repeat=len(g)):
            sat = any(v in lits and lits[v] == b for v, b in zip(g, bits))
            table[encode_assignment(bits, q, p)] = sat
        decode.append(table)
    bad = []
    for col in itertools.product(range(1, q + 1), repeat=p * len(involved)):
        blocks = [col[k * p:(k + 1) * p] for k in range(len(involved))]
        if any(blk not in table for blk, table in zip(blocks, decode)):
            bad.append(col)
        elif not any(table[blk] for blk, table in zip(blocks, decode)):
            bad.append(col)
    return involved, bad


def sat_to_degree_coloring(phi: CnfFormula, d: int = 5, p: int = 1,
                           trim: bool = False) -> GadgetInstance:
    """Graph of maximum degree <= d that is q_d-colorable iff phi is
    satisfiable, with a nice path decomposition from the cleaning strategy.

    trim=True (for tests) shortens every chain to the last terminal that
    received an edge; the wiring indices are unchanged."""
    if d < 5 or d % 2 == 0:
        raise ValueError("d must be an odd integer >= 5")
    if p < 1:
        raise ValueError("p must be at least 1")
    if phi.m == 0:
        raise ValueError("formula has no clauses")
    if phi.unused_variables():
        raise ValueError(f"variables {phi.unused_variables()} occur in no clause")
    q = d // 2 + 1
    s = phi.max_clause
    beta = group_size(q, p)
    groups = variable_groups(phi.n, beta)
    t = len(groups)
    stride = q ** (p * s)
    N = max_gadget_size(p * s)
    M = phi.m * stride

    # gadgets first, so that trimming knows the last used terminals
    gadgets = []
    for j, clause in enumerate(phi.clauses, start=1):
        involved, bad = bad_tuples(clause, groups, q, p)
        for r, col in enumerate(bad, start=1):
            inst, pis = path_gadget(col, q)
            if inst.graph.n > N:
                raise AssertionError("path gadget larger than N")
            gadgets.append((j, r, involved, inst, pis))
    if trim:
        z_len = max(1, max((j - 1) * stride + r for j, r, *_ in gadgets))
        y_len = max(1, max((j - 1) * stride * N + N * (r - 1) + inst.graph.n
                           for j, r, _, inst, _ in gadgets))
    else:
        z_len, y_len = M, N * M

    b = GraphBuilder()
    zchains = {(i, k): add_chain(b, z_len, q, ("Z", i, k))
               for i in range(1, t + 1) for k in range(1, p + 1)}
    ychains = {c: add_chain(b, y_len, q, ("Y", c)) for c in range(1, q + 1)}
    for c1 in range(1, q + 1):
        for c2 in range(c1 + 1, q + 1):
            b.edge(ychains[c1][0], ychains[c2][0])
    wiring = []
    for j, r, involved, inst, pis in gadgets:
        ids = [b.add(("P", j, r, l)) for l in range(1, inst.graph.n + 1)]
        for u, v in inst.graph.edges:
            b.edge(ids[u - 1], ids[v - 1])
        zi = (j - 1) * stride + r
        partners = [(gi, k) for gi in involved for k in range(1, p + 1)]
        for (gi, k), pv in zip(partners, pis):
            b.edge(ids[pv - 1], zchains[(gi, k)][zi - 1])
        yi0 = (j - 1) * stride * N + N * (r - 1)
        for l, v in enumerate(ids, start=1):
            for c in range(1, q + 1):
                if c not in inst.lists[l]:
                    b.edge(v, ychains[c][yi0 + l - 1])
        wiring.append((zi, yi0, ids, partners, pis))
    graph = b.graph()
    npd = _cleaning_decomposition(b, graph, q, zchains, ychains, wiring)
    provenance = {}
    for v, tag in b.tags.items():
        kind = {"Z": "variable-chain", "Y": "color-chain", "P": "path-gadget"}[tag[0]]
        provenance[v] = (kind,) + tag[1:]
    pw = pathwidth_of(npd)
    maxdeg = max(len(a) for a in graph.adj[1:])
    meta = {"family": "degree", "d": d, "q": q, "p": p, "s": s, "beta": beta, "t": t,
            "n": phi.n, "m": phi.m, "M": M, "N": N, "trim": trim,
            "variable_chain_length": z_len, "color_chain_length": y_len,
            "gadgets": len(gadgets), "pathwidth": pw, "max_degree": maxdeg,
            "width_constant": (pw - p * t - q) / q ** s, "formula_sha256": phi.digest()}
    return GadgetInstance(graph, q, npd, provenance, phi, meta)


def _cleaning_decomposition(b, graph, q, zchains, ychains, wiring) -> NicePathDecomposition:
    """Chains advance one clique at a time only when a gadget needs their
    next terminal; every gadget is swept vertex by vertex."""
    db = DecompositionBuilder(graph)
    pos = {}

    def clique(chain, idx):
        name = b.tags[chain[idx - 1]][:-2]
        return [chain[idx - 1]] + [b[name + (idx, r)] for r in range(1, q)]

    def advance(key, chain, target):
        cur = pos.get(key, 1)
        while cur < target:
            cl = clique(chain, cur)
            for u, v in itertools.combinations(cl, 2):
                db.edge(u, v)
            for w in cl[1:]:
                db.edge(w, chain[cur])
            cur += 1
        pos[key] = cur

    def finish(key, chain):
        advance(key, chain, len(chain))
        for u, v in itertools.combinations(clique(chain, len(chain)), 2):
            db.edge(u, v)

    ys = [ychains[c][0] for c in range(1, q + 1)]
    for u, v in itertools.combinations(ys, 2):
        db.edge(u, v)
    for key, chain in zchains.items():
        db.introduce(chain[0])
    for zi, yi0, ids, partners, pis in wiring:
        for key in partners:
            advance(("Z",) + key, zchains[key], zi)
        partner_of = {ids[pv - 1]: key for key, pv in zip(partners, pis)}
        for l, v in enumerate(ids, start=1):
            for c in range(1, q + 1):
                if ychains[c][yi0 + l - 1] in graph.adj[v]:
                    advance(("Y", c), ychains[c], yi0 + l)
                    db.edge(ychains[c][yi0 + l - 1], v)
            if l > 1:
                db.edge(ids[l - 2], v)
            if v in partner_of:
                db.edge(zchains[partner_of[v]][zi - 1], v)
            db.introduce(v)
    for key, chain in zchains.items():
        finish(("Z",) + key, chain)
    for c, chain in ychains.items():
        finish(("Y", c), chain)
    return db.result()


def width_bound(meta: dict, c: float = WIDTH_CONSTANT) -> float:
    """p t + q_d + c q_d^s."""
    return meta["p"] * meta["t"] + meta["q"] + c * meta["q"] ** meta["s"]


def chain_attachment_degree(q: int) -> int:
    """Largest degree a chain vertex can have: 2(q-1) inside the chain plus
    one gadget edge."""
    return 2 * (q - 1) + 1


__all__ = ["sat_to_degree_coloring", "bad_tuples", "encode_assignment", "group_size",
           "variable_groups", "width_bound", "chain_attachment_degree", "WIDTH_CONSTANT"]
