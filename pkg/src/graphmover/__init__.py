"""Distances between ordered geometric graphs.

The fast distance solves a transportation problem over vertex-to-vertex
ground costs; the exact distance enumerates inexact matchings and is only
feasible for small graphs, where it doubles as an oracle.
"""

from .geometry import (CostParams, GeometricGraph, adjacency_lengths,
                       hausdorff_vertices, perturb, translate, validate_graph)
from .ggd import (InexactMatching, InstanceTooLargeError, enumerate_matchings,
                  ggd_exact, matching_cost)
from .gmd import GmdResult, gmd, gmd_bruteforce
from .ground_cost import GroundCostMatrix, deletion_cost, ground_cost_matrix
from .transport import (Flow, InfeasibleInstanceError, TransportInstance,
                        check_flow, solve_transport)

__all__ = [
    "CostParams",
    "Flow",
    "GeometricGraph",
    "GmdResult",
    "GroundCostMatrix",
    "InexactMatching",
    "InfeasibleInstanceError",
    "InstanceTooLargeError",
    "TransportInstance",
    "adjacency_lengths",
    "check_flow",
    "deletion_cost",
    "enumerate_matchings",
    "ggd_exact",
    "gmd",
    "gmd_bruteforce",
    "ground_cost_matrix",
    "hausdorff_vertices",
    "matching_cost",
    "perturb",
    "solve_transport",
    "translate",
    "validate_graph",
]

__version__ = "0.1.0"
