"""Experiment harnesses: prototype retrieval, stability trials, benchmarks.

All harnesses are deterministic for a fixed seed and emit CSV so repeated runs
can be diffed byte for byte.
"""

from __future__ import annotations

import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from statistics import median
from typing import Iterable, Optional, Sequence

import numpy as np

from .dataset import LETTER_LABELS, LetterRecord
from .geometry import CostParams, GeometricGraph, perturb, translate
from .ggd import ggd_exact
from .gmd import gmd

# ---------------------------------------------------------------------------
# prototype retrieval


@dataclass(frozen=True, eq=False)
class RetrievalReport:
    distortion: str
    ks: tuple[int, ...]
    accuracy: dict[int, float]
    confusion: np.ndarray  # rows: true letter, cols: top-1 prediction
    params: CostParams
    n_tests: int
    runtime_seconds: float


_POOL_STATE: dict = {}


def _pool_init(proto_graphs, params):
    _POOL_STATE["protos"] = proto_graphs
    _POOL_STATE["params"] = params


def _rank_letters(graph: GeometricGraph, proto_graphs, params) -> list[int]:
    distances = [gmd(graph, proto, params).value for proto in proto_graphs]
    # ties broken by alphabetical letter order: proto_graphs is label-ordered
    return sorted(range(len(proto_graphs)), key=lambda a: (distances[a], a))


def _pool_rank(graph: GeometricGraph) -> list[int]:
    return _rank_letters(graph, _POOL_STATE["protos"], _POOL_STATE["params"])


def classify_topk(tests: Sequence[LetterRecord], prototypes: dict[str, GeometricGraph],
                  params: CostParams, ks: Iterable[int] = (1, 3, 5),
                  jobs: Optional[int] = None) -> RetrievalReport:
    """Rank the 15 prototypes by distance for each test drawing.

    A test counts as a hit at k when its true letter is among the k closest
    prototypes. `jobs` controls the size of the scoring worker pool (default:
    all processors; 1 runs in-process).
    """
    ks = tuple(sorted(set(int(k) for k in ks)))
    if any(k < 1 for k in ks):
        raise ValueError("every k must be >= 1")
    if set(prototypes) != set(LETTER_LABELS):
        raise ValueError(f"prototypes must cover exactly the letters {LETTER_LABELS}")
    proto_graphs = tuple(prototypes[label] for label in LETTER_LABELS)
    dims = {g.dim for g in proto_graphs} | {r.graph.dim for r in tests}
    if len(dims) > 1:
        raise ValueError(f"mixed dimensions in tests/prototypes: {sorted(dims)}")
    levels = {r.distortion for r in tests}
    distortion = levels.pop() if len(levels) == 1 else "MIXED"

    start = time.perf_counter()
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1 and len(tests) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_pool_init,
                                 initargs=(proto_graphs, params)) as pool:
            chunk = max(1, len(tests) // (8 * jobs))
            orders = list(pool.map(_pool_rank, [r.graph for r in tests], chunksize=chunk))
    else:
        orders = [_rank_letters(r.graph, proto_graphs, params) for r in tests]

    hits = {k: 0 for k in ks}
    confusion = np.zeros((len(LETTER_LABELS), len(LETTER_LABELS)), dtype=int)
    for record, order in zip(tests, orders):
        true_idx = LETTER_LABELS.index(record.label)
        rank = order.index(true_idx)
        for k in ks:
            if rank < k:
                hits[k] += 1
        confusion[true_idx, order[0]] += 1
    n = len(tests)
    accuracy = {k: (hits[k] / n if n else 0.0) for k in ks}
    return RetrievalReport(distortion, ks, accuracy, confusion, params, n,
                           time.perf_counter() - start)


def retrieval_csv(reports: Sequence[RetrievalReport]) -> str:
    buf = io.StringIO()
    buf.write("distortion,k,accuracy\n")
    for report in reports:
        for k in report.ks:
            buf.write(f"{report.distortion},{k},{report.accuracy[k]:.9f}\n")
    return buf.getvalue()


def confusion_csv(report: RetrievalReport) -> str:
    buf = io.StringIO()
    buf.write("true/predicted," + ",".join(LETTER_LABELS) + "\n")
    for i, label in enumerate(LETTER_LABELS):
        buf.write(label + "," + ",".join(str(int(c)) for c in report.confusion[i]) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# random graphs for trials and benchmarks


def random_graph(rng: np.random.Generator, n_vertices: int, dim: int = 2,
                 box: float = 10.0, mean_degree: float = 2.0) -> GeometricGraph:
    """Random ordered graph: uniform vertices in a box, random distinct edges."""
    pts = rng.uniform(0.0, box, size=(n_vertices, dim))
    pairs = list(combinations(range(n_vertices), 2))
    n_edges = min(len(pairs), round(mean_degree * n_vertices / 2))
    edges = []
    if n_edges:
        chosen = rng.choice(len(pairs), size=n_edges, replace=False)
        edges = [pairs[i] for i in sorted(chosen)]
    return GeometricGraph.build(pts, edges, dim=dim)


# ---------------------------------------------------------------------------
# stability trials


@dataclass(frozen=True, eq=False)
class StabilityReport:
    bound: str
    trials: int
    violations: int
    max_ratio: float  # largest observed distance / bound (0 if no positive bound)


def gmd_translation_trial(g: GeometricGraph, t: Sequence[float],
                          params: CostParams) -> tuple[float, float]:
    """(distance, bound) for a rigid shift: bound = vertex_cost * |V| * |t|."""
    value = gmd(g, translate(g, t), params).value
    bound = params.vertex_cost * g.n_vertices * float(np.linalg.norm(np.asarray(t, float)))
    return value, bound


def ggd_translation_trial(g: GeometricGraph, t: Sequence[float],
                          params: CostParams) -> tuple[float, float]:
    """(distance, bound) for the exact distance under a rigid shift.

    A shift preserves every edge length, so matching vertices by index costs
    only the displacement term and the bound vertex_cost * |V| * |t| holds.
    """
    value, _ = ggd_exact(g, translate(g, t), params)
    bound = params.vertex_cost * g.n_vertices * float(np.linalg.norm(np.asarray(t, float)))
    return value, bound


def ggd_perturbation_trial(g: GeometricGraph, delta: float, seed: int,
                           params: CostParams) -> tuple[float, float]:
    """(distance, bound) for an arbitrary per-vertex displacement of size <= delta.

    Each edge length changes by at most 2*delta, so the identity matching
    certifies distance <= vertex_cost*|V|*delta + 2*edge_cost*|E|*delta.
    """
    value, _ = ggd_exact(g, perturb(g, delta, seed), params)
    bound = (params.vertex_cost * g.n_vertices * delta
             + 2.0 * params.edge_cost * g.n_edges * delta)
    return value, bound


def _run_suite(name: str, trial_values: list[tuple[float, float]],
               tol: float = 1e-9) -> StabilityReport:
    violations = 0
    max_ratio = 0.0
    for value, bound in trial_values:
        if value > bound + tol:
            violations += 1
        if bound > tol:
            max_ratio = max(max_ratio, value / bound)
    return StabilityReport(name, len(trial_values), violations, max_ratio)


def run_gmd_translation_suite(trials: int = 100, seed: int = 0,
                              params: CostParams = CostParams(1.0, 1.0),
                              max_vertices: int = 8) -> StabilityReport:
    rng = np.random.default_rng(seed)
    results = []
    for _ in range(trials):
        g = random_graph(rng, int(rng.integers(1, max_vertices + 1)))
        t = rng.uniform(-5.0, 5.0, size=2)
        results.append(gmd_translation_trial(g, t, params))
    return _run_suite("gmd-translation", results)


def run_ggd_translation_suite(trials: int = 100, seed: int = 0,
                              params: CostParams = CostParams(1.0, 1.0),
                              max_vertices: int = 5) -> StabilityReport:
    rng = np.random.default_rng(seed)
    results = []
    for _ in range(trials):
        g = random_graph(rng, int(rng.integers(1, max_vertices + 1)))
        t = rng.uniform(-5.0, 5.0, size=2)
        results.append(ggd_translation_trial(g, t, params))
    return _run_suite("ggd-translation-literal", results)


def run_ggd_perturbation_suite(trials: int = 100, seed: int = 0,
                               params: CostParams = CostParams(1.0, 1.0),
                               max_vertices: int = 5,
                               max_delta: float = 1.0) -> StabilityReport:
    rng = np.random.default_rng(seed)
    results = []
    for trial in range(trials):
        g = random_graph(rng, int(rng.integers(1, max_vertices + 1)))
        delta = float(rng.uniform(0.0, max_delta))
        results.append(ggd_perturbation_trial(g, delta, seed * 100003 + trial, params))
    return _run_suite("ggd-perturbation-corrected", results)


def stability_csv(reports: Sequence[StabilityReport]) -> str:
    buf = io.StringIO()
    buf.write("bound,trials,violations,max_ratio\n")
    for r in reports:
        buf.write(f"{r.bound},{r.trials},{r.violations},{r.max_ratio:.9f}\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# metric-property survey


@dataclass(frozen=True, eq=False)
class TriangleReport:
    trials: int
    violations: int
    worst_excess: float  # max of d(a,c) - d(a,b) - d(b,c) over the trials


def triangle_inequality_survey(trials: int = 100, seed: int = 0,
                               params: CostParams = CostParams(1.0, 1.0),
                               max_vertices: int = 6, tol: float = 1e-9) -> TriangleReport:
    """Empirical check of d(a,c) <= d(a,b) + d(b,c) on random graph triples.

    The survey reports violations instead of asserting: with graphs of
    different sizes, the adjacency vectors are truncated differently per pair,
    so the claimed inequality is not obviously inherited from the cost matrix.
    """
    rng = np.random.default_rng(seed)
    violations = 0
    worst = -np.inf
    for _ in range(trials):
        a, b, c = (random_graph(rng, int(rng.integers(1, max_vertices + 1)))
                   for _ in range(3))
        d_ab = gmd(a, b, params).value
        d_bc = gmd(b, c, params).value
        d_ac = gmd(a, c, params).value
        excess = d_ac - d_ab - d_bc
        worst = max(worst, excess)
        if excess > tol:
            violations += 1
    return TriangleReport(trials, violations, float(worst))


# ---------------------------------------------------------------------------
# scaling benchmark


@dataclass(frozen=True, eq=False)
class BenchRow:
    n_vertices: int
    median_seconds: float


def _timed_gmd(task: tuple[GeometricGraph, GeometricGraph, CostParams]) -> float:
    g, h, params = task
    start = time.perf_counter()
    gmd(g, h, params)
    return time.perf_counter() - start


def scaling_benchmark(sizes: Sequence[int] = (50, 100, 200), trials: int = 3,
                      seed: int = 0, params: CostParams = CostParams(1.0, 1.0),
                      jobs: Optional[int] = None) -> list[BenchRow]:
    """Median wall time of the distance on random graph pairs per size.

    Each call is timed individually, so with `jobs` > 1 the trials of a size
    run concurrently but the medians still measure single solves.
    """
    rng = np.random.default_rng(seed)
    warm = random_graph(rng, 8)
    gmd(warm, warm, params)
    rows = []
    for n in sizes:
        tasks = [(random_graph(rng, n), random_graph(rng, n), params)
                 for _ in range(trials)]
        if jobs is not None and jobs > 1 and trials > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                times = list(pool.map(_timed_gmd, tasks))
        else:
            times = [_timed_gmd(task) for task in tasks]
        rows.append(BenchRow(int(n), float(median(times))))
    return rows


def bench_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    buf.write("n_vertices,median_seconds\n")
    for row in rows:
        buf.write(f"{row.n_vertices},{row.median_seconds:.9f}\n")
    return buf.getvalue()
