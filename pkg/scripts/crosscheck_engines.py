#!/usr/bin/env python3
"""Stress the three simulation paths against each other on random circuits.

Runs batches of random circuits (all gate classes, unitary and non-unitary)
and reports the worst pairwise deviation between the quadratic engine, the
Lie-algebra engine, and (at small n) the dense oracle.
"""

import argparse
import sys

import numpy as np

from mgsim import circuits, sampling
from mgsim.engine_lie import simulate as simulate_lie
from mgsim.engine_quadratic import simulate as simulate_quadratic
from mgsim.oracle import MAX_LINES, expectation_heisenberg


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--circuits", type=int, default=100)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--max-depth", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=float, default=1e-8)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    worst_qo = worst_lq = 0.0
    for i in range(args.circuits):
        n = int(rng.integers(1, args.max_n + 1))
        depth = int(rng.integers(1, args.max_depth + 1))
        circ = sampling.random_circuit(n, depth, rng, unitary=bool(rng.integers(0, 2)))
        gates = circuits.compile(circ)
        state = circ.input_state()
        q = simulate_quadratic(gates, state, circ.k).expectation
        l = simulate_lie(gates, state, circ.k).expectation
        worst_lq = max(worst_lq, abs(l - q))
        if n <= MAX_LINES:
            o = expectation_heisenberg(gates, state, circ.k)
            worst_qo = max(worst_qo, abs(q - o))
        if (i + 1) % 25 == 0:
            print(f"{i + 1}/{args.circuits}: worst quad-oracle {worst_qo:.2e}, "
                  f"worst lie-quad {worst_lq:.2e}", file=sys.stderr)

    ok = worst_qo <= args.tol and worst_lq <= args.tol
    print(f"quad vs oracle: {worst_qo:.3e}\nlie vs quad:   {worst_lq:.3e}\n"
          f"{'OK' if ok else 'DEVIATION ABOVE TOL'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
