"""Planar 3-coloring instances of cutwidth n + O(1) from CNF formulas.

Pipeline: list 3-coloring instance -> plain 3-coloring graph G_2 with three
chains of triangles enforcing the lists -> planar G_3 obtained by replacing
every crossing of a drawing of G_2 with a crossover gadget.

The drawing of G_2 is explicit: integer coordinates for the vertices and a
polyline per edge.  Column j spans x in [x0_j, x0_j + WIDTH] and the variable
path X_i runs along y = -ROW * i.  Cell A_{i,j} is the strip
-ROW*(i+1) < y <= -ROW*i of column j, so X_i lies in A_{i,j}; everything
above X_1 belongs to row 1 and everything below X_{n+1}'s line to row n+1.

Chains 1 and 3 run down the left side of a column (one triangle just above
each X_i), turn inside row n, run up the right side and arch over to the
next column above X_1.  Chain 2 only meets the palette, so it is stacked
above X_1 in the first column.  Clause vertices a_{j,k}, b_{j,k} sit on the
column's centre line just above the variable path of their literal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..graph import Graph, LinearLayout, cutwidth_of
from .base import GadgetInstance, GraphBuilder, ListColoringInstance
from .chains import add_chain
from .cnf import CnfFormula
from .hcol import HCOL_EDGES, HCOL_TERMINALS
from .list3col import cnf_to_list3col, literal_variable

WIDTH = 60
GAP = 20
ROW = 40
MID = WIDTH // 2
OFFSET = {1: 4, 2: 8, 3: 12}

# heights above the variable line of the cell
A_Y, B_Y = 28, 16
LANE_A1, LANE_BLAST = 24, 20
ARCH_Y = 32
CHAIN2_Y = 60

# crossings allowed by the construction, as unordered pairs of edge kinds
ALLOWED_CROSSINGS = {
    frozenset(("clause", "variable")),
    frozenset(("connector", "variable")),
    frozenset(("literal", "connector")),
    frozenset(("list", "connector")),
}
# edge kinds in crossing-enumeration priority: the first gets terminals u, u'
KIND_PRIORITY = {"clause": 0, "literal": 1, "list": 2, "variable": 3, "connector": 4}


class DrawingError(ValueError):
    pass


@dataclass
class CellDrawing:
    """Coordinates, edge routes and cells of a drawing of a graph.

    routes[(u, v)] with u < v is the polyline from u to v, endpoints included.
    cells[v] = (i, j) names cell A_{i,j}."""
    n_rows: int
    n_cols: int
    coords: dict
    routes: dict
    kinds: dict
    cells: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.cells:
            self.cells = {v: cell_of_point(p, self.n_rows) for v, p in self.coords.items()}

    def edge_cell_class(self, u: int, v: int) -> str:
        """'same', 'vertical' (A_{i,j}, A_{i+-1,j}), 'horizontal'
        (A_{i,j}, A_{i,j+-1}) or 'far'."""
        (i1, j1), (i2, j2) = self.cells[u], self.cells[v]
        if (i1, j1) == (i2, j2):
            return "same"
        if j1 == j2 and abs(i1 - i2) == 1:
            return "vertical"
        if i1 == i2 and abs(j1 - j2) == 1:
            return "horizontal"
        return "far"

    def check_cells(self, graph: Graph) -> list:
        """Violations of the cell structure: far edges, and for 1 < i <= n
        more than one edge between A_{i,j} and A_{i,j+1}."""
        problems = []
        between = {}
        for u, v in graph.edges:
            cls = self.edge_cell_class(u, v)
            if cls == "far":
                problems.append(f"edge ({u}, {v}) joins non-adjacent cells "
                                f"{self.cells[u]} and {self.cells[v]}")
            elif cls == "horizontal":
                i = self.cells[u][0]
                j = min(self.cells[u][1], self.cells[v][1])
                between.setdefault((i, j), []).append((u, v))
        for (i, j), es in sorted(between.items()):
            if 1 < i <= self.n_rows and len(es) != 1:
                problems.append(f"{len(es)} edges join A_({i},{j}) and A_({i},{j + 1})")
        return problems


def column_x0(j: int) -> int:
    return (j - 1) * (WIDTH + GAP)


def row_y(i: int) -> int:
    return -ROW * i


def cell_of_point(p, n_rows: int) -> tuple:
    x, y = p
    j = math.floor(Fraction(x) / (WIDTH + GAP)) + 1
    i = max(1, min(n_rows + 1, math.floor(-Fraction(y) / ROW)))
    return i, j


# ---------------------------------------------------------------- step (II)

def _instance_shape(inst: ListColoringInstance):
    n = max(t[1] for t in inst.tags.values() if t[0] == "T")
    m = max(t[2] for t in inst.tags.values() if t[0] == "T")
    sizes = {}
    for t in inst.tags.values():
        if t[0] == "a":
            sizes[t[1]] = max(sizes.get(t[1], 0), t[2])
    return n, m, [sizes[j] for j in range(1, m + 1)]


def list3col_to_3col(inst: ListColoringInstance) -> GadgetInstance:
    """Plain 3-coloring graph G_2 with its drawing and column-major layout."""
    if inst.q != 3:
        raise ValueError("expected a list 3-coloring instance")
    n, m, sizes = _instance_shape(inst)
    b = GraphBuilder()
    for v in range(1, inst.graph.n + 1):
        b.add(inst.tags[v])
    for u, v in inst.graph.edges:
        b.edge(u, v)
    L = 2 * n * m
    chains = {c: add_chain(b, L, 3, ("Z", c)) for c in (1, 2, 3)}

    def z(c, s):
        return chains[c][s - 1]

    b.edge(z(1, 1), z(2, 1))
    b.edge(z(2, 1), z(3, 1))
    b.edge(z(1, 1), z(3, 1))
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            for c in (1, 2, 3):
                if c not in inst.lists[inst.vertex("T", i, j)]:
                    b.edge(inst.vertex("T", i, j), z(c, i + (j - 1) * 2 * n))
                if c not in inst.lists[inst.vertex("F", i, j)]:
                    b.edge(inst.vertex("F", i, j), z(c, (2 * n + 1 - i) + (j - 1) * 2 * n))
    literal_row = {}
    for j in range(1, m + 1):
        for k in range(1, sizes[j - 1] + 1):
            # the attachment index uses the row i of the k-th literal's variable
            i = literal_variable(inst, j, k)
            literal_row[(j, k)] = i
            for name in ("a", "b"):
                w = inst.vertex(name, j, k)
                for c in (1, 2, 3):
                    if c not in inst.lists[w]:
                        b.edge(w, z(c, i + (j - 1) * 2 * n))
    graph = b.graph()
    drawing = _draw_g2(b, graph, n, m, sizes, literal_row)
    layout = column_major_layout(graph, drawing)
    provenance = {}
    for v, t in b.tags.items():
        kind = {"T": "variable-path", "F": "variable-path", "a": "clause-path",
                "b": "clause-path", "Z": "triangle-chain"}[t[0]]
        provenance[v] = (kind,) + t
    return GadgetInstance(graph, 3, layout, provenance, None,
                          {"family": "list3col-to-3col", "n": n, "m": m}, drawing)


def _draw_g2(b: GraphBuilder, graph: Graph, n: int, m: int, sizes, literal_row) -> CellDrawing:
    coords, routes, kinds = {}, {}, {}

    def put(tag, x, y):
        coords[b[tag]] = (x, y)

    def route(u, v, pts, kind):
        key = (min(u, v), max(u, v))
        if key in routes:
            raise DrawingError(f"edge {key} routed twice")
        pts = [coords[u]] + [tuple(p) for p in pts] + [coords[v]]
        if u > v:
            pts.reverse()
        routes[key] = tuple(pts)
        kinds[key] = kind

    def tri(c, s):
        """(terminal, left non-terminal, right non-terminal) of triangle s."""
        return b[("Z", c, s, 0)], b[("Z", c, s, 1)], b[("Z", c, s, 2)]

    # vertices
    for j in range(1, m + 1):
        x0 = column_x0(j)
        for i in range(1, n + 1):
            y = row_y(i)
            put(("T", i, j), x0, y)
            put(("F", i, j), x0 + WIDTH, y)
            base = (j - 1) * 2 * n
            for c in (1, 3):
                xd = x0 + OFFSET[c]
                zt, zl, zr = tri(c, base + i)
                coords[zt], coords[zl], coords[zr] = (xd, y + 12), (xd - 1, y + 8), (xd + 1, y + 8)
                xu = x0 + WIDTH - OFFSET[c]
                zt, zl, zr = tri(c, base + 2 * n + 1 - i)
                coords[zt], coords[zl], coords[zr] = (xu, y + 8), (xu - 1, y + 12), (xu + 1, y + 12)
        for k in range(1, sizes[j - 1] + 1):
            y = row_y(literal_row[(j, k)])
            put(("a", j, k), x0 + MID, y + A_Y)
            put(("b", j, k), x0 + MID, y + B_Y)
    # chain 2 carries no attachments besides the palette: it rises from the
    # palette and stacks up inside cell A_{1,1}
    L = 2 * n * m
    for s in range(1, L + 1):
        zt, zl, zr = tri(2, s)
        y = row_y(1) + 12 if s == 1 else CHAIN2_Y + 10 * (s - 2)
        coords[zt], coords[zl], coords[zr] = (OFFSET[2], y), (OFFSET[2] - 1, y + 4), (OFFSET[2] + 1, y + 4)

    def straight(u, v, kind):
        route(u, v, [], kind)

    # variable paths
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            straight(b[("T", i, j)], b[("F", i, j)], "variable")
            if j < m:
                straight(b[("F", i, j)], b[("T", i, j + 1)], "link")
    # triangles and connectors
    for c in (1, 2, 3):
        for s in range(1, L + 1):
            zt, zl, zr = tri(c, s)
            straight(zt, zl, "triangle")
            straight(zt, zr, "triangle")
            straight(zl, zr, "triangle")
        for s in range(1, L):
            _, zl, zr = tri(c, s)
            nz = tri(c, s + 1)[0]
            j = (s - 1) // (2 * n) + 1
            r = s - (j - 1) * 2 * n
            x0 = column_x0(j)
            if c == 2 or r < n or (n < r < 2 * n):
                straight(zl, nz, "connector")
                straight(zr, nz, "connector")
            elif r == n:
                # U-turn inside cell n, chain 1 outside chain 3
                y = row_y(n)
                xu = coords[nz][0]
                dl, dr = y + 2 * c - 1, y + 2 * c
                xl, xr = coords[zl][0], coords[zr][0]
                route(zl, nz, [(xl, dl), (xu + 1, dl)], "connector")
                route(zr, nz, [(xr, dr), (xu - 1, dr)], "connector")
            else:
                # arch over to the next column inside cell 1
                y = row_y(1)
                xz = coords[nz][0]
                hr, hl = y + ARCH_Y + 4 * (c - 1), y + ARCH_Y + 4 * (c - 1) + 2
                xl, xr = coords[zl][0], coords[zr][0]
                route(zl, nz, [(xl, hl), (xz + 1, hl)], "arch")
                route(zr, nz, [(xr, hr), (xz - 1, hr)], "arch")
    # palette
    z1, z2, z3 = (tri(c, 1)[0] for c in (1, 2, 3))
    straight(z1, z2, "palette")
    straight(z2, z3, "palette")
    (x1, y1), (x3, _) = coords[z1], coords[z3]
    route(z1, z3, [(x1 + 2, y1 - 1), (x3 - 2, y1 - 1)], "palette")
    # list attachments of T and F vertices, and of clause vertices
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            for name in ("T", "F"):
                v = b[(name, i, j)]
                for w in graph.adj[v]:
                    if b.tags[w][0] == "Z":
                        straight(v, w, "attach")
    for j in range(1, m + 1):
        x0 = column_x0(j)
        for k in range(1, sizes[j - 1] + 1):
            y = row_y(literal_row[(j, k)])
            a, bb = b[("a", j, k)], b[("b", j, k)]
            straight(a, bb, "clause")
            if k < sizes[j - 1]:
                straight(bb, b[("a", j, k + 1)], "clause")
            for w in graph.adj[a]:
                t = b.tags[w]
                if t[0] == "T":
                    route(a, w, [(x0 + 1, y + A_Y)], "literal")
                elif t[0] == "F":
                    route(a, w, [(x0 + WIDTH - 1, y + A_Y)], "literal")
                elif t[0] == "Z":
                    if t[1] != 1:
                        raise DrawingError("a-vertices only attach to chain 1")
                    xz = coords[w][0]
                    route(a, w, [(x0 + MID - 2, y + LANE_A1), (xz + 2, y + LANE_A1)], "list")
            for w in graph.adj[bb]:
                t = b.tags[w]
                if t[0] != "Z":
                    continue
                xz = coords[w][0]
                if t[1] == 3:
                    route(bb, w, [(xz + 2, y + B_Y)], "list")
                elif t[1] == 1:
                    route(bb, w, [(x0 + MID - 2, y + LANE_BLAST), (xz + 4, y + LANE_BLAST)], "list")
                else:
                    raise DrawingError("b-vertices never attach to chain 2")
    missing = set(graph.edges) - set(routes)
    if missing:
        raise DrawingError(f"edges without a route: {sorted(missing)[:5]}")
    return CellDrawing(n, m, coords, routes, kinds)


# ------------------------------------------------------------ crossings

def _orient(a, b, c):
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a, b, p):
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


@dataclass(frozen=True)
class Crossing:
    e1: tuple
    e2: tuple
    point: tuple
    pos1: tuple  # (segment index, parameter) along e1's route
    pos2: tuple
    dir1: tuple
    dir2: tuple


def find_crossings(drawing: CellDrawing) -> list:
    """All crossings between edge routes, checked against the drawing rules:
    no vertex inside a route, no touching or overlapping routes, at most one
    crossing per pair of edges.  Raises DrawingError on violations."""
    segs = []
    for e, pts in drawing.routes.items():
        for k in range(len(pts) - 1):
            segs.append((e, k, pts[k], pts[k + 1]))
    if not segs:
        return []
    box = np.array([[min(p[0], q[0]), min(p[1], q[1]), max(p[0], q[0]), max(p[1], q[1])]
                    for _, _, p, q in segs], dtype=float)
    order = np.argsort(box[:, 0], kind="stable")
    out = {}
    vertex_points = {}
    for v, p in drawing.coords.items():
        vertex_points.setdefault(tuple(p), []).append(v)
    for v_list in vertex_points.values():
        if len(v_list) > 1:
            raise DrawingError(f"vertices {v_list} share a point")
    xmin_sorted = box[order, 0]
    for a_pos, a in enumerate(order):
        hi = np.searchsorted(xmin_sorted, box[a, 2], side="right")
        cand = order[a_pos + 1:hi]
        if not len(cand):
            continue
        ok = (box[cand, 1] <= box[a, 3]) & (box[cand, 3] >= box[a, 1])
        for b_idx in cand[ok]:
            ea, ka, p1, p2 = segs[a]
            eb, kb, p3, p4 = segs[b_idx]
            if ea == eb:
                continue
            _segment_pair(ea, ka, p1, p2, eb, kb, p3, p4, drawing, out)
    # vertices lying inside routes
    for e, pts in drawing.routes.items():
        for k in range(len(pts) - 1):
            p, q = pts[k], pts[k + 1]
            for pt, vs in vertex_points.items():
                if pt in (pts[0], pts[-1]):
                    continue
                if _orient(p, q, pt) == 0 and _on_segment(p, q, pt):
                    raise DrawingError(f"vertex {vs[0]} lies on edge {e}")
    crossings = []
    for (e1, e2), found in sorted(out.items()):
        if len(found) > 1:
            raise DrawingError(f"edges {e1} and {e2} cross {len(found)} times")
        crossings.append(found[0])
    points = {}
    for c in crossings:
        if c.point in points:
            raise DrawingError(f"three routes meet at {c.point}")
        points[c.point] = c
    return crossings


def _segment_pair(ea, ka, p1, p2, eb, kb, p3, p4, drawing, out):
    d1, d2 = _orient(p3, p4, p1), _orient(p3, p4, p2)
    d3, d4 = _orient(p1, p2, p3), _orient(p1, p2, p4)
    if d1 * d2 < 0 and d3 * d4 < 0:
        rx, ry = p2[0] - p1[0], p2[1] - p1[1]
        sx, sy = p4[0] - p3[0], p4[1] - p3[1]
        den = rx * sy - ry * sx
        t = Fraction((p3[0] - p1[0]) * sy - (p3[1] - p1[1]) * sx, den)
        u = Fraction((p3[0] - p1[0]) * ry - (p3[1] - p1[1]) * rx, den)
        pt = (p1[0] + t * rx, p1[1] + t * ry)
        if ea < eb:
            c = Crossing(ea, eb, pt, (ka, t), (kb, u), (rx, ry), (sx, sy))
        else:
            c = Crossing(eb, ea, pt, (kb, u), (ka, t), (sx, sy), (rx, ry))
        out.setdefault((c.e1, c.e2), []).append(c)
        return
    touching = {p for p, d, s, e in ((p1, d1, p3, p4), (p2, d2, p3, p4),
                                     (p3, d3, p1, p2), (p4, d4, p1, p2))
                if d == 0 and _on_segment(s, e, p)}
    if not touching:
        return
    if len(touching) > 1:
        raise DrawingError(f"edges {ea} and {eb} overlap")
    p = touching.pop()
    ends_a = (drawing.routes[ea][0], drawing.routes[ea][-1])
    ends_b = (drawing.routes[eb][0], drawing.routes[eb][-1])
    is_shared_vertex = any(drawing.coords[v] == p for v in set(ea) & set(eb))
    if not (is_shared_vertex and p in ends_a and p in ends_b):
        raise DrawingError(f"edges {ea} and {eb} touch at {p}")


def _crossing_kind(kind: str) -> str:
    # arches are connectors whose crossings must stay inside a column
    return "connector" if kind == "arch" else kind


def check_crossing_discipline(drawing: CellDrawing, crossings) -> list:
    """Crossings must pair allowed edge kinds and lie inside a column, so
    edges joining consecutive columns stay uncrossed."""
    problems = []
    for c in crossings:
        k1, k2 = drawing.kinds[c.e1], drawing.kinds[c.e2]
        if frozenset((_crossing_kind(k1), _crossing_kind(k2))) not in ALLOWED_CROSSINGS:
            problems.append(f"{k1} edge {c.e1} crosses {k2} edge {c.e2}")
        if c.point[0] % (WIDTH + GAP) > WIDTH:
            problems.append(f"edges {c.e1} and {c.e2} cross between columns")
    return problems


# ------------------------------------------------------------ step (III)

def _point_along(pts, pos):
    k, t = pos
    p, q = pts[k], pts[k + 1]
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def _between(pts, pos_a, pos_b):
    """A point strictly between two positions along a polyline."""
    if pos_a[0] == pos_b[0]:
        k = pos_a[0]
        return _point_along(pts, (k, (pos_a[1] + pos_b[1]) / 2))
    return _point_along(pts, (pos_a[0], (pos_a[1] + 1) / 2))


def _cell_key(cell):
    i, j = cell
    return j, i


def _distinguish_far_end(drawing: CellDrawing, e, items) -> bool:
    """True when the larger endpoint should be the distinguished one: the
    smaller endpoint is preferred unless it lies in a cell that comes after
    its nearest crossing's cell in column-major order while the larger
    endpoint does not."""
    x, y = e
    first = cell_of_point(items[0][1].point, drawing.n_rows)
    last = cell_of_point(items[-1][1].point, drawing.n_rows)
    return (_cell_key(drawing.cells[x]) > _cell_key(first)
            and _cell_key(drawing.cells[y]) <= _cell_key(last))


def planarize_3col(inst: GadgetInstance) -> GadgetInstance:
    """Replace every crossing of the drawing with a crossover gadget.

    Each crossed edge {x, y} with distinguished endpoint x becomes
    x - H - s_1 - H - ... - s_k - y; at each crossing the gadget's u, u'
    sit on the curve whose kind has priority and v, v' on the other one,
    placed to match the orientation of the crossing."""
    drawing = inst.drawing
    if drawing is None:
        raise ValueError("instance carries no drawing")
    crossings = find_crossings(drawing)
    problems = check_crossing_discipline(drawing, crossings)
    if problems:
        raise DrawingError("; ".join(problems[:5]))
    g2 = inst.graph
    b = GraphBuilder()
    for v in range(1, g2.n + 1):
        b.add(inst.provenance[v])
    coords = dict(drawing.coords)
    per_edge = {}
    for c in crossings:
        per_edge.setdefault(c.e1, []).append((c.pos1, c))
        per_edge.setdefault(c.e2, []).append((c.pos2, c))
    # subdivision vertices along each crossed edge, listed from the
    # distinguished endpoint; chain[0] is that endpoint itself
    along = {}
    new_cells = {}
    for e in sorted(per_edge):
        items = sorted(per_edge[e], key=lambda it: it[0])
        pts = drawing.routes[e]
        stops = [(0, Fraction(0))] + [pos for pos, _ in items] + [(len(pts) - 2, Fraction(1))]
        flip = _distinguish_far_end(drawing, e, items)
        if flip:
            items.reverse()
            stops.reverse()
        x, y = (e[1], e[0]) if flip else e
        chain = [x]
        for t in range(1, len(items) + 1):
            v = b.add(("subdivision", e[0], e[1], t))
            lo, hi = sorted((stops[t], stops[t + 1]))
            coords[v] = _between(pts, lo, hi)
            # a subdivision vertex between two gadgets joins the earlier
            # (column-major) of their cells, so the gadget in the later cell
            # finds it already placed; the last one stays with its gadget
            here = cell_of_point(items[t - 1][1].point, drawing.n_rows)
            if t < len(items):
                there = cell_of_point(items[t][1].point, drawing.n_rows)
                here = min(here, there, key=_cell_key)
            new_cells[v] = here
            chain.append(v)
        b.edge(chain[-1], y)
        along[e] = {id(c): t for t, (_, c) in enumerate(items)}, chain, flip
    for e in g2.edges:
        if e not in per_edge:
            b.edge(*e)

    def ends(e, c):
        idx, chain, _ = along[e]
        t = idx[id(c)]
        return chain[t], chain[t + 1]

    def direction(e, d):
        return (-d[0], -d[1]) if along[e][2] else d

    def prio(e):
        return KIND_PRIORITY[_crossing_kind(drawing.kinds[e])]

    ordered = sorted(crossings, key=lambda c: (min(prio(c.e1), prio(c.e2)),
                                               max(prio(c.e1), prio(c.e2)), c.e1, c.e2))
    for num, c in enumerate(ordered, start=1):
        first, second = c.e1, c.e2
        d1, d2 = c.dir1, c.dir2
        if prio(c.e2) < prio(c.e1):
            first, second, d1, d2 = second, first, d2, d1
        d1, d2 = direction(first, d1), direction(second, d2)
        u, u2 = ends(first, c)
        before, after = ends(second, c)
        if d1[0] * d2[1] - d1[1] * d2[0] > 0:
            v, v2 = after, before
        else:
            v, v2 = before, after
        ids = {HCOL_TERMINALS["u"]: u, HCOL_TERMINALS["u'"]: u2,
               HCOL_TERMINALS["v"]: v, HCOL_TERMINALS["v'"]: v2}
        for h in range(1, 14):
            if h not in ids:
                ids[h] = b.add(("crossover", num, h))
                coords[ids[h]] = c.point
                new_cells[ids[h]] = cell_of_point(c.point, drawing.n_rows)
        for x, y in HCOL_EDGES:
            b.edge(ids[x], ids[y])
    g3 = b.graph()
    cells = dict(drawing.cells)
    cells.update(new_cells)
    d3 = CellDrawing(drawing.n_rows, drawing.n_cols, coords, {}, {}, cells)
    units = {v: t[:2] for v, t in b.tags.items() if t[0] == "crossover"}
    layout = column_major_layout(g3, d3, units)
    provenance = {v: (t if t[0] in ("subdivision", "crossover") else inst.provenance[v])
                  for v, t in b.tags.items()}
    meta = dict(inst.meta)
    meta.update(family="planar3col", crossings=len(crossings))
    return GadgetInstance(g3, 3, layout, provenance, inst.formula, meta, d3)


# ------------------------------------------------------------ layouts

SWEEPS = ((0, -1), (0, 1), (1, 0), (-1, 0), (1, -1), (-1, -1), (1, 1), (-1, 1))


def column_major_layout(graph: Graph, drawing: CellDrawing, units=None) -> LinearLayout:
    """Cells in column-major order.

    Inside a cell, vertices are grouped into units (each crossover gadget is
    one unit, every other vertex its own) and the units are placed greedily,
    keeping the number of placed vertices with unplaced neighbours small and
    breaking ties along one of a few sweep directions; the sweep with the
    smallest peak cut inside the cell wins."""
    units = units or {}
    by_cell = {}
    for v in range(1, graph.n + 1):
        by_cell.setdefault(drawing.cells[v], {}).setdefault(units.get(v, ("v", v)), []).append(v)
    placed = set()
    order = []
    cut = 0
    for cell in sorted(by_cell, key=_cell_key):
        groups = list(by_cell[cell].values())
        best = None
        for sweep in SWEEPS:
            seq, peak, end = _sweep_cell(graph, drawing, groups, sweep, placed, cut)
            if best is None or peak < best[0]:
                best = (peak, seq, end)
        _, seq, cut = best
        order.extend(seq)
        placed.update(seq)
    return LinearLayout(tuple(order))


def _sweep_cell(graph, drawing, groups, sweep, placed, cut):
    """Greedy order of one cell: keep the number of placed vertices with
    unplaced neighbours small, then finish units already started, then keep
    the cut small, then follow the sweep."""
    dx, dy = sweep
    done = set(placed)
    unit_of = {v: k for k, g in enumerate(groups) for v in g}
    started = set()
    seq = []
    peak = cut
    rest = set(unit_of)
    proj = {}
    for v in rest:
        x, y = (float(t) for t in drawing.coords[v])
        proj[v] = (dx * x + dy * y, dy * x - dx * y)

    left = {}
    for v in rest:
        for w in (v, *graph.adj[v]):
            if w not in left:
                left[w] = sum(1 for x in graph.adj[w] if x not in done)

    def score(v):
        unplaced = left[v]
        closes = sum(1 for w in graph.adj[v] if w in done and left[w] == 1)
        return ((unplaced > 0) - closes, unit_of[v] not in started,
                2 * unplaced - len(graph.adj[v])) + proj[v] + (v,)

    while rest:
        v = min(rest, key=score)
        rest.remove(v)
        started.add(unit_of[v])
        cut += left[v] - (len(graph.adj[v]) - left[v])
        for w in graph.adj[v]:
            left[w] -= 1
        done.add(v)
        seq.append(v)
        peak = max(peak, cut)
    return seq, peak, cut


def cnf_to_planar3col(phi: CnfFormula) -> GadgetInstance:
    """Formula -> planar graph G_3 with a column-major linear layout."""
    g2 = list3col_to_3col(cnf_to_list3col(phi))
    g2 = GadgetInstance(g2.graph, 3, g2.certificate, g2.provenance, phi, g2.meta, g2.drawing)
    g3 = planarize_3col(g2)
    ctw = cutwidth_of(g3.graph, g3.certificate)
    meta = dict(g3.meta)
    meta.update(n=phi.n, m=phi.m, cutwidth=ctw, additive_constant=ctw - phi.n,
                cutwidth_g2=cutwidth_of(g2.graph, g2.certificate), formula_sha256=phi.digest())
    return GadgetInstance(g3.graph, 3, g3.certificate, g3.provenance, phi, meta, g3.drawing)
