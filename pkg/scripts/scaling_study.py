"""Sweep exact vs asymptotic one-point moments along rays k = c N^(2/3).

Writes one CSV with a row per (ray, N). The relative error column should
shrink down each ray; the ray constant controls how deep into the edge
regime the comparison sits.

    python3 scripts/scaling_study.py --rays 0.5,1.0,2.0 --N-list 27,64,125,216
"""

import argparse
import csv
import sys

from guevertex.asymptotics import compare_scaling_ray


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rays", default="0.5,1.0,2.0")
    parser.add_argument("--N-list", dest="n_list", default="27,64,125,216,343")
    parser.add_argument("--out", default=None, help="CSV path (default stdout)")
    args = parser.parse_args()

    rays = [float(r) for r in args.rays.split(",")]
    n_list = [int(n) for n in args.n_list.split(",")]

    handle = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(handle)
    writer.writerow(["ray", "k", "N", "exact", "asymptotic", "rel_err"])
    for c in rays:
        print(f"ray c = {c}", file=sys.stderr)
        for row in compare_scaling_ray(c, n_list):
            writer.writerow(
                [c, row.k, row.N, f"{row.exact_value:.12e}",
                 f"{row.asymptotic_value:.12e}", f"{row.relative_error:.6e}"]
            )
    if args.out:
        handle.close()
        print(f"wrote {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
