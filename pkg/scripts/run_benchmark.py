#!/usr/bin/env python3
"""Benchmark the distance runtime across graph sizes and write a CSV."""

import argparse
from pathlib import Path

from graphmover.experiments import bench_csv, scaling_benchmark
from graphmover.geometry import CostParams


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="50,100,200")
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="bench.csv")
    args = parser.parse_args()

    sizes = [int(x) for x in args.sizes.split(",")]
    rows = scaling_benchmark(sizes, trials=args.trials, seed=args.seed,
                             params=CostParams(1.0, 1.0))
    for row in rows:
        print(f"n={row.n_vertices}: median {row.median_seconds:.6f}s")
    Path(args.out).write_text(bench_csv(rows))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
