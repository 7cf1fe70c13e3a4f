"""Geometric graphs: ordered vertex sequences in R^d with straight-line edges.

The vertex order is significant: the graph mover's distance compares vertices
by index, so loaders and transforms must preserve the order in which vertices
were given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

Point = tuple[float, ...]


@dataclass(frozen=True)
class CostParams:
    """Positive coefficients weighting vertex displacement and edge length terms."""

    vertex_cost: float = 4.5
    edge_cost: float = 1.0

    def __post_init__(self):
        for name in ("vertex_cost", "edge_cost"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class GeometricGraph:
    """Ordered geometric graph: vertices are points of R^dim, edges index pairs.

    Edges are stored normalized (i < j where possible) and lexicographically
    sorted; duplicates and self-loops are kept so that `validate_graph` can
    report them. Instances are immutable and hashable.
    """

    dim: int
    vertices: tuple[Point, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        verts = []
        for v in self.vertices:
            p = tuple(float(x) for x in v)
            if len(p) != self.dim:
                raise ValueError(f"vertex {v!r} does not have dimension {self.dim}")
            if not all(math.isfinite(x) for x in p):
                raise ValueError(f"vertex {v!r} has a non-finite coordinate")
            verts.append(p)
        pairs = []
        for e in self.edges:
            i, j = e
            i, j = int(i), int(j)
            pairs.append((i, j) if i <= j else (j, i))
        pairs.sort()
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "edges", tuple(pairs))

    @classmethod
    def build(cls, points: Iterable[Sequence[float]], edges: Iterable[Sequence[int]],
              dim: Optional[int] = None) -> "GeometricGraph":
        pts = [tuple(float(x) for x in p) for p in points]
        if dim is None:
            if not pts:
                raise ValueError("dim is required for a graph with no vertices")
            dim = len(pts[0])
        return cls(dim, tuple(pts), tuple((int(i), int(j)) for i, j in edges))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def coords(self) -> np.ndarray:
        a = np.asarray(self.vertices, dtype=float).reshape(len(self.vertices), self.dim)
        a.flags.writeable = False
        return a

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def adjacency_length_matrix(self) -> np.ndarray:
        """Symmetric matrix whose (i, k) entry is the length of edge (i, k), else 0."""
        n = self.n_vertices
        mat = np.zeros((n, n))
        for i, j in self.edges:
            if i == j:
                continue
            length = float(np.linalg.norm(self.coords[i] - self.coords[j]))
            mat[i, j] = length
            mat[j, i] = length
        mat.flags.writeable = False
        return mat

    def edge_length(self, edge: tuple[int, int]) -> float:
        i, j = edge
        return float(np.linalg.norm(self.coords[i] - self.coords[j]))

    def total_edge_length(self) -> float:
        return sum(self.edge_length(e) for e in self.edges)


def adjacency_lengths(g: GeometricGraph, i: int) -> np.ndarray:
    """Length vector of the edges incident to vertex i, indexed by neighbor.

    Entry k is the Euclidean length of edge (i, k) when that edge exists and 0
    otherwise; the vector has one entry per vertex of `g`.
    """
    if not 0 <= i < g.n_vertices:
        raise IndexError(f"vertex index {i} out of range for graph with {g.n_vertices} vertices")
    return g.adjacency_length_matrix[i].copy()


def validate_graph(g: GeometricGraph, check_embedding: bool = False,
                   eps: float = 1e-9) -> list[str]:
    """Report structural violations; an empty list means the graph is valid.

    Checks edge index range, self-loops and duplicate edges. With
    `check_embedding` (2D only) also reports edge pairs whose closed segments
    meet anywhere other than a shared endpoint, within tolerance `eps`.
    """
    problems = []
    n = g.n_vertices
    seen: set[tuple[int, int]] = set()
    clean = []
    for e in g.edges:
        i, j = e
        if not (0 <= i < n and 0 <= j < n):
            problems.append(f"edge {e}: index out of range for {n} vertices")
            continue
        if i == j:
            problems.append(f"edge {e}: self-loop")
            continue
        if e in seen:
            problems.append(f"edge {e}: duplicate edge")
            continue
        seen.add(e)
        clean.append(e)
    if check_embedding and g.dim == 2:
        problems.extend(_embedding_violations(g, clean, eps))
    return problems


def _embedding_violations(g: GeometricGraph, edges: list[tuple[int, int]],
                          eps: float) -> list[str]:
    problems = []
    pts = g.coords
    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            e1, e2 = edges[a], edges[b]
            kind, point, _, _ = segment_intersection(
                pts[e1[0]], pts[e1[1]], pts[e2[0]], pts[e2[1]], eps=eps)
            if kind == "overlap":
                problems.append(f"edges {e1} and {e2}: collinear overlap")
            elif kind == "point":
                at1 = _endpoint_near(pts, e1, point, eps)
                at2 = _endpoint_near(pts, e2, point, eps)
                x, y = point
                if at1 is None and at2 is None:
                    problems.append(
                        f"edges {e1} and {e2}: interior crossing at ({x:.9g}, {y:.9g})")
                elif at1 is None or at2 is None:
                    problems.append(
                        f"edges {e1} and {e2}: endpoint touches edge interior "
                        f"at ({x:.9g}, {y:.9g})")
    return problems


def _endpoint_near(pts: np.ndarray, edge: tuple[int, int], point: Sequence[float],
                   eps: float) -> Optional[int]:
    """Index of the endpoint of `edge` within eps of `point`, or None."""
    best = None
    best_d = eps
    for k in edge:
        d = math.hypot(pts[k][0] - point[0], pts[k][1] - point[1])
        if d <= best_d:
            best, best_d = k, d
    return best


def segment_intersection(a, b, c, d, eps: float = 1e-9):
    """Intersection of the closed 2D segments ab and cd.

    Returns (kind, point, t, u) where kind is "none", "point" or "overlap".
    For "point", `point` is the location and t, u are the parameters along ab
    and cd in [0, 1]. "overlap" means the segments are collinear and share a
    stretch longer than eps.
    """
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    cx, cy = float(c[0]), float(c[1])
    dx, dy = float(d[0]), float(d[1])
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    len_r = math.hypot(rx, ry)
    len_s = math.hypot(sx, sy)
    if len_r <= eps or len_s <= eps:
        return "none", None, None, None
    denom = rx * sy - ry * sx
    acx, acy = cx - ax, cy - ay
    if abs(denom) <= 1e-12 * len_r * len_s:
        # parallel: intersect only if collinear
        if abs(acx * ry - acy * rx) / len_r > eps:
            return "none", None, None, None
        if abs((dx - ax) * ry - (dy - ay) * rx) / len_r > eps:
            return "none", None, None, None
        t_c = (acx * rx + acy * ry) / (len_r * len_r)
        t_d = ((dx - ax) * rx + (dy - ay) * ry) / (len_r * len_r)
        lo = max(0.0, min(t_c, t_d))
        hi = min(1.0, max(t_c, t_d))
        if (hi - lo) * len_r > eps:
            return "overlap", None, None, None
        if hi < lo - eps / len_r:
            return "none", None, None, None
        t = 0.5 * (lo + hi)
        px, py = ax + t * rx, ay + t * ry
        u = ((px - cx) * sx + (py - cy) * sy) / (len_s * len_s)
        return "point", (px, py), t, min(1.0, max(0.0, u))
    t = (acx * sy - acy * sx) / denom
    u = (acx * ry - acy * rx) / denom
    if -eps / len_r <= t <= 1 + eps / len_r and -eps / len_s <= u <= 1 + eps / len_s:
        t = min(1.0, max(0.0, t))
        u = min(1.0, max(0.0, u))
        return "point", (ax + t * rx, ay + t * ry), t, u
    return "none", None, None, None


def hausdorff_vertices(a: GeometricGraph, b: GeometricGraph) -> float:
    """Symmetric Hausdorff distance between the two vertex point sets."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.n_vertices == 0 or b.n_vertices == 0:
        raise ValueError("Hausdorff distance needs non-empty vertex sets")
    diff = a.coords[:, None, :] - b.coords[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=-1))
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


def translate(g: GeometricGraph, t: Sequence[float]) -> GeometricGraph:
    """Shift every vertex by t, keeping edges (and hence all edge lengths)."""
    shift = tuple(float(x) for x in t)
    if len(shift) != g.dim:
        raise ValueError(f"dimension mismatch: translation has {len(shift)} "
                         f"coordinates, graph has dim {g.dim}")
    if not all(math.isfinite(x) for x in shift):
        raise ValueError("translation has a non-finite coordinate")
    moved = tuple(tuple(x + s for x, s in zip(v, shift)) for v in g.vertices)
    return GeometricGraph(g.dim, moved, g.edges)


def perturb(g: GeometricGraph, delta: float, seed: int) -> GeometricGraph:
    """Displace each vertex independently by a uniform random vector of norm <= delta.

    The combinatorial structure is unchanged and the output is deterministic
    for a fixed seed.
    """
    if delta < 0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    rng = np.random.default_rng(seed)
    moved = []
    for v in g.vertices:
        direction = rng.standard_normal(g.dim)
        norm = float(np.linalg.norm(direction))
        if norm == 0.0:
            direction = np.zeros(g.dim)
            direction[0] = 1.0
            norm = 1.0
        radius = delta * rng.uniform() ** (1.0 / g.dim)
        step = direction * (radius / norm)
        moved.append(tuple(x + float(s) for x, s in zip(v, step)))
    return GeometricGraph(g.dim, tuple(moved), g.edges)
