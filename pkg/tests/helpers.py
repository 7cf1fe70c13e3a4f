"""Independent oracles and generators shared across test modules.

Everything here recomputes expected values from first principles (explicit
loops, exhaustive enumeration, dense sampling) so the tests stay independent
of the library's vectorized implementations.
"""

from __future__ import annotations

import math

import numpy as np

from graphmover.geometry import CostParams, GeometricGraph


def naive_ground_cost(g: GeometricGraph, h: GeometricGraph, params: CostParams) -> np.ndarray:
    """Ground cost matrix computed entry by entry with plain Python loops."""
    m, n = g.n_vertices, h.n_vertices
    p = min(m, n)

    def lengths(graph, i):
        row = [0.0] * graph.n_vertices
        for a, b in graph.edges:
            if a == i:
                row[b] = math.dist(graph.vertices[a], graph.vertices[b])
            elif b == i:
                row[a] = math.dist(graph.vertices[a], graph.vertices[b])
        return row

    out = np.zeros((m + 1, n + 1))
    for i in range(m):
        gi = lengths(g, i)
        out[i, n] = params.edge_cost * sum(gi)
        for j in range(n):
            hj = lengths(h, j)
            pos = math.dist(g.vertices[i], h.vertices[j])
            adj = sum(abs(gi[k] - hj[k]) for k in range(p))
            out[i, j] = params.vertex_cost * pos + params.edge_cost * adj
    for j in range(n):
        out[m, j] = params.edge_cost * sum(lengths(h, j))
    return out


def enumerate_integral_flows(supplies, demands):
    """Every non-negative integer matrix with the given row and column sums."""
    supplies = tuple(int(s) for s in supplies)
    demands = tuple(int(d) for d in demands)
    if not supplies:
        if all(d == 0 for d in demands):
            yield ()
        return
    first, rest = supplies[0], supplies[1:]

    def rows(idx, remaining, acc):
        if idx == len(demands) - 1:
            if remaining <= demands[idx]:
                yield acc + (remaining,)
            return
        for take in range(min(remaining, demands[idx]) + 1):
            yield from rows(idx + 1, remaining - take, acc + (take,))

    if not demands:
        if first == 0:
            yield from ((() ,) + tail for tail in enumerate_integral_flows(rest, demands))
        return
    for row in rows(0, first, ()):
        reduced = tuple(d - r for d, r in zip(demands, row))
        for tail in enumerate_integral_flows(rest, reduced):
            yield (row,) + tail


def min_integral_flow_cost(supplies, demands, costs) -> float:
    costs = np.asarray(costs, dtype=float)
    best = math.inf
    for flow in enumerate_integral_flows(supplies, demands):
        value = float((np.asarray(flow, dtype=float) * costs).sum())
        best = min(best, value)
    return best


def sample_realization(g: GeometricGraph, per_unit: int = 64) -> np.ndarray:
    """Dense point sample of the drawn graph (vertices plus edge interiors)."""
    points = [np.asarray(v, dtype=float) for v in g.vertices]
    for i, j in g.edges:
        a, b = points[i], points[j]
        steps = max(2, int(per_unit * math.dist(g.vertices[i], g.vertices[j])))
        for t in range(1, steps):
            points.append(a + (t / steps) * (b - a))
    return np.vstack(points)


def hausdorff_point_sets(a: np.ndarray, b: np.ndarray) -> float:
    diff = a[:, None, :] - b[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=-1))
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


def random_integer_transport(rng, max_side=4, max_weight=3):
    """Random balanced integer instance with small sides and weights."""
    m = int(rng.integers(1, max_side + 1))
    n = int(rng.integers(1, max_side + 1))
    supplies = rng.integers(0, max_weight + 1, size=m)
    demands = np.zeros(n, dtype=int)
    for _ in range(int(supplies.sum())):
        demands[rng.integers(n)] += 1
    if demands.max(initial=0) > max_weight:
        return random_integer_transport(rng, max_side, max_weight)
    costs = rng.integers(0, 10, size=(m, n)).astype(float)
    return supplies.astype(float), demands.astype(float), costs


def grid_points(rng, n, spread=10.0):
    return rng.uniform(0.0, spread, size=(n, 2))


def random_graph_pair(rng, max_vertices=5, box=10.0):
    from graphmover.experiments import random_graph

    g = random_graph(rng, int(rng.integers(1, max_vertices + 1)), box=box)
    h = random_graph(rng, int(rng.integers(1, max_vertices + 1)), box=box)
    return g, h
