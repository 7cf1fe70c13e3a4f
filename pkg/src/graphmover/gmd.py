"""Graph mover's distance: optimal transport between two ordered geometric graphs.

Every real vertex supplies (or demands) one unit; a dummy supplier and a dummy
consumer absorb deletions, weighted so the instance balances at m + n units.
The distance is the optimal transportation objective under the ground cost
matrix, computable in O(n^3) time, which makes it a tractable stand-in for the
exact geometric graph distance.

Deletions are priced per vertex: routing a vertex to the dummy pays the total
length of its incident edges, so an edge whose endpoints are both deleted is
charged once per endpoint. The exact distance charges such an edge only once,
which is one of the ways the two distances differ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import CostParams, GeometricGraph
from .ggd import InstanceTooLargeError, enumerate_matchings
from .ground_cost import GroundCostMatrix, ground_cost_matrix
from .transport import Flow, TransportInstance, solve_transport

BRUTEFORCE_MAX_VERTICES = 6


@dataclass(frozen=True, eq=False)
class GmdResult:
    value: float
    flow: Flow
    matrix: GroundCostMatrix


def gmd(g: GeometricGraph, h: GeometricGraph, params: CostParams) -> GmdResult:
    """Graph mover's distance with the optimal flow and cost matrix behind it."""
    matrix = ground_cost_matrix(g, h, params)
    m, n = matrix.m, matrix.n
    supplies = np.ones(m + 1)
    supplies[m] = n
    demands = np.ones(n + 1)
    demands[n] = m
    flow = solve_transport(TransportInstance(supplies, demands, matrix.entries))
    return GmdResult(flow.objective, flow, matrix)


def gmd_bruteforce(g: GeometricGraph, h: GeometricGraph, params: CostParams) -> float:
    """Independent small-instance oracle for the graph mover's distance.

    Integral optimal flows route each real vertex either to one partner or to
    the dummy, so the optimum is the best partial injection between the vertex
    index sets: matched pairs pay their ground cost, unmatched vertices pay
    their deletion column/row entry.
    """
    m, n = g.n_vertices, h.n_vertices
    if m > BRUTEFORCE_MAX_VERTICES or n > BRUTEFORCE_MAX_VERTICES:
        raise InstanceTooLargeError(
            f"brute force is capped at {BRUTEFORCE_MAX_VERTICES} vertices per graph, "
            f"got {m} and {n}")
    costs = ground_cost_matrix(g, h, params).entries
    best = np.inf
    for pi in enumerate_matchings(g, h):
        value = 0.0
        for i, j in pi.matched:
            value += costs[i, j]
        for i in pi.deleted_left:
            value += costs[i, n]
        for j in pi.deleted_right:
            value += costs[m, j]
        if value < best:
            best = value
    return float(best)
