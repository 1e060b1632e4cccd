"""Distance-r (sigma, rho) domination and LCVP problems solved by dynamic
programming over decomposition trees, with mim-width tooling, brute-force
oracles and certified instance generators."""
from .decomposition import (DecompositionTree, caterpillar_from_order, cut_mim,
                            interval_decomposition, mimw_of_dec, random_decomposition)
from .graph import Graph, graph_power, parse_graph, write_graph
from .problems import ConstraintMatrix, Problem, SetSpec, catalog_lookup, parse_set_spec
from .solver import Solution, build_plan, solve_distance_r, solve_lcvp, solve_sigma_rho, verify_witness

__version__ = "0.1.0"

__all__ = [
    "ConstraintMatrix", "DecompositionTree", "Graph", "Problem", "SetSpec", "Solution",
    "build_plan", "caterpillar_from_order", "catalog_lookup", "cut_mim", "graph_power",
    "interval_decomposition", "mimw_of_dec", "parse_graph", "parse_set_spec",
    "random_decomposition", "solve_distance_r", "solve_lcvp", "solve_sigma_rho",
    "verify_witness", "write_graph",
]
