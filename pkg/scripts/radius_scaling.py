#!/usr/bin/env python3
"""Maximum of |c_n| over covers with sup |fhat| <= r, compared with the linear law 2r/e."""

import argparse
import json
import math

import numpy as np

from coeflab import FunctionalSpec, optimize


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--radii", type=float, nargs="+", default=list(np.round(np.linspace(0.1, 1.0, 10), 2)))
    ap.add_argument("--starts", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rows = []
    for r in args.radii:
        res = optimize(FunctionalSpec(args.n), degree=args.n + 2, radius=r, starts=args.starts, seed=args.seed)
        rows.append({"radius": r, "best": res.best, "linear_law": 2 * r / math.e,
                     "ratio": res.best / (2 * r / math.e)})
    print(json.dumps({"n": args.n, "starts": args.starts, "seed": args.seed, "rows": rows}, indent=2))


if __name__ == "__main__":
    main()
