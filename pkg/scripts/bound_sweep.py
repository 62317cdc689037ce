#!/usr/bin/env python3
"""Sweep n and record the multistart maximum of |c_n(kappa o fhat)| against 2/e.

    python3 scripts/bound_sweep.py --nmax 6 --starts 100 --out bound_sweep.csv
"""

import argparse
import csv
import math
import sys
import time

from coeflab import FunctionalSpec, optimize


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("--starts", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(out)
    w.writerow(["n", "degree", "best", "gap_to_2_over_e", "lift_distance", "evaluations", "seconds"])
    for n in range(1, args.nmax + 1):
        t0 = time.perf_counter()
        res = optimize(FunctionalSpec(n), degree=n + 2, starts=args.starts, seed=args.seed + n)
        w.writerow([n, n + 2, f"{res.best:.15f}", f"{2 / math.e - res.best:.3e}",
                    f"{res.monomial_distance(n):.3e}", res.evaluations, f"{time.perf_counter() - t0:.1f}"])
        out.flush()
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
