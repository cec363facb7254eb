#!/usr/bin/env python3
"""Write a synthetic census-like categorical CSV for the histogram experiment.

Usage: python scripts/make_synthetic_census.py --rows 5000 --seed 0 --out synth.csv
"""

import argparse

from gaussdp.mech import synthetic_census_rows, write_categorical_csv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="synth.csv")
    args = parser.parse_args()
    header, rows = synthetic_census_rows(args.rows, args.seed)
    write_categorical_csv(args.out, header, rows)
    print(f"wrote {len(rows)} records x {len(header)} columns to {args.out}")


if __name__ == "__main__":
    main()
