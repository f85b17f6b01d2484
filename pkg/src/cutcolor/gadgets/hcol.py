"""The planar crossover gadget for 3-coloring.

Layout of the drawing used here: a wheel with centre 1 and rim N, E, S, W
(2, 3, 4, 5), four corner vertices NE, SE, SW, NW (6..9) and four boundary
terminals N, E, S, W (10..13).  Walking the outer face clockwise meets the
terminals in the order u (W), v (N), u' (E), v' (S).
"""
from __future__ import annotations

from ..graph import Graph

HCOL_EDGES = (
    (1, 2), (1, 3), (1, 4), (1, 5),
    (2, 3), (3, 4), (4, 5), (5, 2),
    (6, 3), (6, 10), (6, 11), (7, 4), (7, 11), (7, 12),
    (8, 5), (8, 12), (8, 13), (9, 2), (9, 10), (9, 13),
    (10, 2), (11, 3), (12, 4), (13, 5),
)
HCOL_TERMINALS = {"u": 13, "v": 10, "u'": 11, "v'": 12}
# outer face, clockwise
HCOL_OUTER = (10, 6, 11, 7, 12, 8, 13, 9)
# a straight-line planar embedding (y grows upwards)
HCOL_COORDS = {
    1: (0, 0), 2: (0, 2), 3: (2, 0), 4: (0, -2), 5: (-2, 0),
    6: (2, 2), 7: (2, -2), 8: (-2, -2), 9: (-2, 2),
    10: (0, 4), 11: (4, 0), 12: (0, -4), 13: (-4, 0),
}


def build_hcol():
    """(graph, terminals) with terminals keyed "u", "u'", "v", "v'"."""
    return Graph(13, HCOL_EDGES), dict(HCOL_TERMINALS)
