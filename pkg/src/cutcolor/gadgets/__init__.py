"""Instance generators: CNF formulas compiled into coloring instances with
width certificates."""
from .base import GadgetInstance, GraphBuilder, ListColoringInstance
from .chains import add_chain, chain_of_cliques
from .cnf import CnfFormula, format_cnf, is_satisfiable, parse_cnf, read_cnf
from .degree import sat_to_degree_coloring
from .hcol import build_hcol
from .list3col import cnf_to_list3col
from .pathgadget import path_gadget
from .planar import cnf_to_planar3col, list3col_to_3col, planarize_3col

__all__ = [
    "CnfFormula", "GadgetInstance", "GraphBuilder", "ListColoringInstance", "add_chain",
    "build_hcol", "chain_of_cliques", "cnf_to_list3col", "cnf_to_planar3col", "format_cnf",
    "is_satisfiable", "list3col_to_3col", "parse_cnf", "path_gadget", "planarize_3col",
    "read_cnf", "sat_to_degree_coloring",
]
