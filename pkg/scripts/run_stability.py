#!/usr/bin/env python3
"""Run the stability trial suites and the triangle-inequality survey."""

import argparse
from pathlib import Path

from graphmover.experiments import (run_ggd_perturbation_suite, run_ggd_translation_suite,
                                    run_gmd_translation_suite, stability_csv,
                                    triangle_inequality_survey)
from graphmover.geometry import CostParams


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--cv", type=float, default=1.0)
    parser.add_argument("--ce", type=float, default=1.0)
    parser.add_argument("--out", default="stability.csv")
    args = parser.parse_args()

    params = CostParams(args.cv, args.ce)
    reports = [
        run_gmd_translation_suite(args.trials, args.seed, params),
        run_ggd_translation_suite(args.trials, args.seed, params),
        run_ggd_perturbation_suite(args.trials, args.seed, params),
    ]
    for r in reports:
        print(f"{r.bound}: {r.violations}/{r.trials} violations, "
              f"max distance/bound ratio {r.max_ratio:.6f}")
    tri = triangle_inequality_survey(args.trials, args.seed, params)
    print(f"triangle inequality: {tri.violations}/{tri.trials} violations, "
          f"worst excess {tri.worst_excess:.9f}")
    Path(args.out).write_text(stability_csv(reports))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
