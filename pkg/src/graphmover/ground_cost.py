"""Ground cost matrix for moving supply between two ordered geometric graphs.

The (m+1) x (n+1) matrix prices moving one unit from vertex i of the first
graph to vertex j of the second: a vertex-displacement term plus the L1
difference of the two adjacency length vectors truncated to the first
p = min(m, n) entries. The extra row and column price vertex deletion: a
vertex routed to the dummy pays `edge_cost` times the total length of its
incident edges, and the dummy-to-dummy corner is free.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .geometry import CostParams, GeometricGraph


@dataclass(frozen=True, eq=False)
class GroundCostMatrix:
    entries: np.ndarray  # shape (m+1, n+1), read-only
    m: int
    n: int


def ground_cost_matrix(g: GeometricGraph, h: GeometricGraph,
                       params: CostParams) -> GroundCostMatrix:
    """Pairwise unit-transport costs between the vertices of g and h plus dummies."""
    if g.dim != h.dim:
        raise ValueError(f"dimension mismatch: {g.dim} vs {h.dim}")
    m, n = g.n_vertices, h.n_vertices
    p = min(m, n)
    eg = g.adjacency_length_matrix
    eh = h.adjacency_length_matrix
    out = np.zeros((m + 1, n + 1))
    if m and n:
        diff = g.coords[:, None, :] - h.coords[None, :, :]
        pos = np.sqrt((diff * diff).sum(axis=-1))
        adj = np.abs(eg[:, None, :p] - eh[None, :, :p]).sum(axis=-1)
        out[:m, :n] = params.vertex_cost * pos + params.edge_cost * adj
    if n:
        out[m, :n] = params.edge_cost * eh.sum(axis=1)
    if m:
        out[:m, n] = params.edge_cost * eg.sum(axis=1)
    out.flags.writeable = False
    return GroundCostMatrix(out, m, n)


def deletion_cost(vec: np.ndarray, params: CostParams) -> float:
    """Cost of deleting a vertex with the given incident-edge length vector."""
    return params.edge_cost * float(np.abs(np.asarray(vec, dtype=float)).sum())


def ground_cost_csv(matrix: GroundCostMatrix, params: CostParams) -> str:
    """Debug dump: one header line with m, n and the cost coefficients, then
    the matrix in row-major order."""
    buf = io.StringIO()
    buf.write("m,n,vertex_cost,edge_cost\n")
    buf.write(f"{matrix.m},{matrix.n},{params.vertex_cost!r},{params.edge_cost!r}\n")
    for row in matrix.entries:
        buf.write(",".join(repr(float(x)) for x in row) + "\n")
    return buf.getvalue()
