#!/usr/bin/env python3
"""Emit a synthetic collection file for benchmarks and manual poking.

    python3 scripts/make_dataset.py --seed 7 > /tmp/collection.json
    dlgen validate /tmp/collection.json
"""
import argparse
import json
import random
import sys

from dlgen.datagen import generate_dataset


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--small", action="store_true",
                        help="cap the collection at a handful of documents")
    args = parser.parse_args()
    raw = generate_dataset(random.Random(args.seed), small=args.small)
    json.dump(raw, sys.stdout, indent=2)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
