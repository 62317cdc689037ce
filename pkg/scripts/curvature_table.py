#!/usr/bin/env python3
"""Relative curvature defect (4 lam^2 - Laplacian log lam) / lam^2 of the dominating radial metrics."""

import argparse
import csv
import sys

from coeflab.metrics import RadialMetricSample, max_relative_defect


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ms", type=int, nargs="+", default=[1, 2, 3, 4, 5, 8])
    ap.add_argument("--c", type=float, default=1.0)
    ap.add_argument("--points", type=int, nargs="+", default=[128, 256, 512, 1024])
    args = ap.parse_args(argv)

    w = csv.writer(sys.stdout)
    w.writerow(["m", "c", "points", "max_relative_defect"])
    for m in args.ms:
        for n in args.points:
            d = max_relative_defect(RadialMetricSample.dominating(m, args.c, 0.1, 0.9, n))
            w.writerow([m, args.c, n, f"{d:.3e}"])


if __name__ == "__main__":
    main()
