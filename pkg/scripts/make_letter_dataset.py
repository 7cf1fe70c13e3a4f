#!/usr/bin/env python3
"""Write a synthetic letter dataset distorted from the built-in prototypes.

Creates one directory per distortion level (LOW, MED, HIGH) with native-format
graph files and a labels.json, plus a prototypes/ directory, mirroring the
layout the classifier harness consumes.
"""

import argparse

from graphmover.letters import write_letter_dataset


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="dataset root directory")
    parser.add_argument("--per-letter", type=int, default=150,
                        help="drawings per letter and level (150 -> 2250 per level)")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    write_letter_dataset(args.out, per_letter=args.per_letter, seed=args.seed)
    print(f"wrote dataset under {args.out}")


if __name__ == "__main__":
    main()
