"""Exact graph coloring over small edge separators."""
from .graph import (Cut, Event, Graph, LinearLayout, NicePathDecomposition, all_cuts,
                    cut_at, cutwidth_of, layout_to_nice_decomposition, pathwidth_of,
                    validate_decomposition)
from .kernels import BACKEND

__all__ = [
    "BACKEND", "Cut", "Event", "Graph", "LinearLayout", "NicePathDecomposition",
    "all_cuts", "cut_at", "cutwidth_of", "layout_to_nice_decomposition",
    "pathwidth_of", "validate_decomposition",
]
