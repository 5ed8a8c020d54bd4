#!/usr/bin/env python3
"""Time the quadratic engine across line counts and fit the scaling exponent.

Example:
    python scripts/bench_scaling.py --sizes 25,50,100,200,400 --gates 2000
"""

import argparse
import json
import sys
import time

import numpy as np

from mgsim import circuits, sampling
from mgsim.engine_quadratic import simulate


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="25,50,100,200", help="comma-separated n values")
    ap.add_argument("--gates", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    rows = []
    for n in (int(tok) for tok in args.sizes.split(",")):
        circ = sampling.random_circuit(n, args.gates, rng, classes=("gvw", "diag", "exp"))
        gates = circuits.compile(circ)
        state = circ.input_state()
        best = np.inf
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            res = simulate(gates, state, circ.k, unitary=True)
            best = min(best, time.perf_counter() - t0)
        rows.append({"n": n, "seconds": best, "gates_per_sec": args.gates / best})
        print(f"n={n:5d}  {best * 1e3:8.1f} ms  {args.gates / best:10.0f} gates/s  "
              f"p0={res.p0:.4f}", file=sys.stderr)

    logn = np.log([r["n"] for r in rows])
    logt = np.log([r["seconds"] for r in rows])
    slope = float(np.polyfit(logn, logt, 1)[0])
    print(f"fitted time ~ n^{slope:.2f}", file=sys.stderr)
    json.dump({"runs": rows, "fitted_exponent": slope}, sys.stdout, indent=2)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
