"""Command-line interface: pairwise distances, dataset prep, experiments.

All numeric results print with fixed 9-decimal formatting so golden files are
exact, and every command is deterministic for fixed inputs, flags and seeds.
Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import experiments
from .dataset import (DISTORTION_LEVELS, GraphFormatError, load_letter_directory,
                      load_prototypes, planarize, read_gxl_letter, read_json_graph,
                      write_json_graph)
from .geometry import CostParams, GeometricGraph
from .ggd import MAX_EXACT_VERTICES, ggd_exact
from .gmd import gmd


def _load_graph(path: str) -> GeometricGraph:
    data = Path(path).read_bytes()
    if path.lower().endswith(".gxl"):
        return read_gxl_letter(data)
    return read_json_graph(data)


def _cost_params(args) -> CostParams:
    return CostParams(vertex_cost=args.cv, edge_cost=args.ce)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_cost_flags(parser, cv_default=4.5, ce_default=1.0):
    parser.add_argument("--cv", type=float, default=cv_default,
                        help="vertex displacement cost coefficient")
    parser.add_argument("--ce", type=float, default=ce_default,
                        help="edge length cost coefficient")


def _parse_k_list(text: str) -> tuple[int, ...]:
    try:
        ks = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k list {text!r}, expected e.g. 1,3,5")
    if not ks or any(k < 1 for k in ks):
        raise argparse.ArgumentTypeError("every k must be a positive integer")
    return ks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphmover",
        description="Distances between ordered geometric graphs, and the harnesses around them.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gmd = sub.add_parser("gmd", help="graph mover's distance between two graph files")
    p_gmd.add_argument("first")
    p_gmd.add_argument("second")
    _add_cost_flags(p_gmd)

    p_ggd = sub.add_parser("ggd", help="exact geometric graph distance (small graphs only)")
    p_ggd.add_argument("first")
    p_ggd.add_argument("second")
    _add_cost_flags(p_ggd)

    p_plan = sub.add_parser("planarize", help="insert vertices at edge crossings")
    p_plan.add_argument("input")
    p_plan.add_argument("--out", help="output path (default: stdout)")
    p_plan.add_argument("--eps", type=float, default=1e-9)

    p_conv = sub.add_parser("convert", help="convert GXL or native JSON to native JSON")
    p_conv.add_argument("input")
    p_conv.add_argument("--out", help="output path (default: stdout)")

    p_cls = sub.add_parser("classify", help="rank prototypes for every test drawing")
    p_cls.add_argument("--dataset", required=True,
                       help="directory with one subdirectory per distortion level")
    p_cls.add_argument("--distortion", nargs="+", choices=DISTORTION_LEVELS,
                       default=None, help="levels to run (default: all present)")
    p_cls.add_argument("--prototypes", default=None,
                       help="directory of <LETTER>.json prototypes (default: built-in)")
    _add_cost_flags(p_cls)
    p_cls.add_argument("--k", type=_parse_k_list, default=(1, 3, 5),
                       help="comma-separated list of cutoffs, default 1,3,5")
    p_cls.add_argument("--jobs", type=int, default=os.cpu_count(),
                       help="worker pool size")
    p_cls.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_cls.add_argument("--out", help="write the report here instead of stdout")
    p_cls.add_argument("--confusion-out",
                       help="directory for per-level confusion matrix CSVs")

    p_stab = sub.add_parser("stability", help="distance-vs-perturbation bound trials")
    p_stab.add_argument("--trials", type=int, default=100)
    p_stab.add_argument("--seed", type=int, default=0)
    _add_cost_flags(p_stab, cv_default=1.0, ce_default=1.0)
    p_stab.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_stab.add_argument("--out")

    p_bench = sub.add_parser("bench", help="median distance runtime per graph size")
    p_bench.add_argument("--sizes", default="50,100,200",
                         help="comma-separated vertex counts")
    p_bench.add_argument("--trials", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=0)
    _add_cost_flags(p_bench, cv_default=1.0, ce_default=1.0)
    p_bench.add_argument("--jobs", type=int, default=os.cpu_count())
    p_bench.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_bench.add_argument("--out")
    return parser


def _run_pair_distance(args, exact: bool) -> int:
    g = _load_graph(args.first)
    h = _load_graph(args.second)
    params = _cost_params(args)
    if exact:
        for name, graph in (("first", g), ("second", h)):
            if graph.n_vertices > MAX_EXACT_VERTICES:
                print(f"error: {name} graph has {graph.n_vertices} vertices; the exact "
                      f"solver enumerates matchings and is capped at "
                      f"{MAX_EXACT_VERTICES} vertices per graph", file=sys.stderr)
                return 1
        value, _ = ggd_exact(g, h, params)
    else:
        value = gmd(g, h, params).value
    print(f"{value:.9f}")
    return 0


def _run_classify(args) -> int:
    root = Path(args.dataset)
    levels = args.distortion or [lv for lv in DISTORTION_LEVELS if (root / lv).is_dir()]
    if not levels:
        print(f"error: no distortion directories under {root}", file=sys.stderr)
        return 1
    protos = load_prototypes(args.prototypes)
    params = _cost_params(args)
    reports = []
    for level in levels:
        records = load_letter_directory(root / level, level)
        reports.append(experiments.classify_topk(records, protos, params,
                                                 ks=args.k, jobs=args.jobs))
    if args.confusion_out:
        conf_dir = Path(args.confusion_out)
        conf_dir.mkdir(parents=True, exist_ok=True)
        for report in reports:
            (conf_dir / f"confusion_{report.distortion}.csv").write_text(
                experiments.confusion_csv(report))
    if args.format == "csv":
        _emit(experiments.retrieval_csv(reports), args.out)
    elif args.format == "json":
        payload = [{"distortion": r.distortion, "n_tests": r.n_tests,
                    "accuracy": {str(k): r.accuracy[k] for k in r.ks}}
                   for r in reports]
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = ["distortion  " + "  ".join(f"k={k:<3d}" for k in reports[0].ks)]
        for r in reports:
            lines.append(f"{r.distortion:<10s}  "
                         + "  ".join(f"{r.accuracy[k]:.4f}" for k in r.ks)
                         + f"  ({r.n_tests} tests, {r.runtime_seconds:.1f}s)")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _run_stability(args) -> int:
    params = _cost_params(args)
    reports = [
        experiments.run_gmd_translation_suite(args.trials, args.seed, params),
        experiments.run_ggd_translation_suite(args.trials, args.seed, params),
        experiments.run_ggd_perturbation_suite(args.trials, args.seed, params),
    ]
    triangle = experiments.triangle_inequality_survey(args.trials, args.seed, params)
    if args.format == "csv":
        _emit(experiments.stability_csv(reports), args.out)
    elif args.format == "json":
        payload = {"bounds": [{"bound": r.bound, "trials": r.trials,
                               "violations": r.violations, "max_ratio": r.max_ratio}
                              for r in reports],
                   "triangle": {"trials": triangle.trials,
                                "violations": triangle.violations,
                                "worst_excess": triangle.worst_excess}}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"{r.bound}: {r.violations}/{r.trials} violations, "
                 f"max distance/bound ratio {r.max_ratio:.9f}" for r in reports]
        lines.append(f"triangle inequality: {triangle.violations}/{triangle.trials} "
                     f"violations, worst excess {triangle.worst_excess:.9f}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _run_bench(args) -> int:
    try:
        sizes = [int(part) for part in args.sizes.split(",")]
    except ValueError:
        print(f"error: bad --sizes {args.sizes!r}", file=sys.stderr)
        return 2
    rows = experiments.scaling_benchmark(sizes, trials=args.trials, seed=args.seed,
                                         params=_cost_params(args), jobs=args.jobs)
    if args.format == "csv":
        _emit(experiments.bench_csv(rows), args.out)
    elif args.format == "json":
        _emit(json.dumps([{"n_vertices": r.n_vertices,
                           "median_seconds": r.median_seconds} for r in rows],
                         indent=2) + "\n", args.out)
    else:
        _emit("\n".join(f"n={r.n_vertices}: median {r.median_seconds:.6f}s"
                        for r in rows) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gmd":
            return _run_pair_distance(args, exact=False)
        if args.command == "ggd":
            return _run_pair_distance(args, exact=True)
        if args.command == "planarize":
            out = write_json_graph(planarize(_load_graph(args.input), args.eps))
            _emit(out + "\n", args.out)
            return 0
        if args.command == "convert":
            _emit(write_json_graph(_load_graph(args.input)) + "\n", args.out)
            return 0
        if args.command == "classify":
            return _run_classify(args)
        if args.command == "stability":
            return _run_stability(args)
        if args.command == "bench":
            return _run_bench(args)
    except (GraphFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
