"""Command-line interface: run, verify-matchgate, classify, compare, bench.

All results go to stdout as a single JSON object carrying "schema": 1;
diagnostics go to stderr.  Complex values are encoded as [re, im] pairs.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import circuits, engine_lie, engine_quadratic, matchgate, oracle, sampling
from .errors import MgsimError
from .jw import C0_MODES, PARITY

SCHEMA = 1

ENGINES = ("quadratic", "lie", "dense")


def _c2j(val: complex):
    return [float(val.real), float(val.imag)]


def _emit(payload: dict) -> int:
    payload = {"schema": SCHEMA, **payload}
    json.dump(payload, sys.stdout)
    sys.stdout.write("\n")
    return 0


def _load_matrix(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("matrix", data.get("B"))
    if data is None:
        raise MgsimError(f"{path}: expected a matrix or an object with a 'matrix' key")

    def entry(e):
        if isinstance(e, (list, tuple)):
            if len(e) != 2:
                raise MgsimError(f"{path}: complex entries must be [re, im] pairs")
            return complex(e[0], e[1])
        return complex(e)

    return np.array([[entry(e) for e in row] for row in data], dtype=complex)


def _result_payload(res) -> dict:
    return {
        "expectation": _c2j(res.expectation),
        "p0": res.p0,
        "p1": res.p1,
        "engine": res.engine,
        "gates": res.gates,
        "ms": res.ms,
    }


def _run_engine(engine: str, circ, gates, args):
    state = circ.input_state()
    if engine == "quadratic":
        return engine_quadratic.simulate(gates, state, circ.k, c0_mode=args.c0_mode,
                                         unitary=circ.unitary, tol=args.tol)
    if engine == "lie":
        return engine_lie.simulate(gates, state, circ.k, unitary=circ.unitary, tol=args.tol)
    t0 = time.perf_counter()
    value = oracle.expectation_heisenberg(gates, state, circ.k, mode=args.heisenberg_mode)
    ms = (time.perf_counter() - t0) * 1e3
    p0 = p1 = None
    if abs(value.imag) <= args.tol * max(1.0, abs(value)):
        p0, p1 = (1 + value.real) / 2, (1 - value.real) / 2
    return engine_quadratic.SimResult(value, p0, p1, "dense", len(gates), ms)


def _check_heisenberg_mode(args, circ, engine: str):
    if args.heisenberg_mode == oracle.ADJOINT and engine != "dense" and not circ.unitary:
        raise MgsimError(
            "--heisenberg-mode adjoint on a non-unitary circuit requires --engine dense"
        )


def cmd_run(args) -> int:
    with open(args.circuit, encoding="utf-8") as fh:
        circ = circuits.parse(fh.read(), tol=args.tol)
    _check_heisenberg_mode(args, circ, args.engine)
    gates = circuits.compile(circ, tol=args.tol)
    res = _run_engine(args.engine, circ, gates, args)
    return _emit({**_result_payload(res), "n": circ.n, "k": circ.k, "unitary": circ.unitary})


def cmd_verify_matchgate(args) -> int:
    B = _load_matrix(args.matrix)
    if B.shape != (4, 4):
        raise MgsimError(f"expected a 4x4 matrix, got {B.shape}")
    if args.physical:
        B = matchgate.swap_convention(B)
    vals = matchgate.identities(B)
    return _emit({
        "is_matchgate": matchgate.is_matchgate(B, tol=args.tol),
        "identities": [_c2j(v) for v in vals],
        "eigenvector_predicate": matchgate.eigenvector_predicate(B, tol=args.tol),
    })


def cmd_classify(args) -> int:
    B = _load_matrix(args.matrix)
    return _emit({"classes": circuits.classify(B)})


def cmd_compare(args) -> int:
    with open(args.circuit, encoding="utf-8") as fh:
        circ = circuits.parse(fh.read(), tol=args.tol)
    gates = circuits.compile(circ, tol=args.tol)
    engines = ["quadratic", "lie"]
    if circ.n <= oracle.MAX_LINES:
        engines.append("dense")
    results = {}
    for eng in engines:
        _check_heisenberg_mode(args, circ, eng)
        results[eng] = _run_engine(eng, circ, gates, args)
    values = [r.expectation for r in results.values()]
    dev = max(abs(u - v) for u in values for v in values)
    return _emit({
        "engines": {name: _result_payload(r) for name, r in results.items()},
        "max_deviation": dev,
        "agree": bool(dev <= max(args.tol, 1e-9) * max(1.0, max(abs(v) for v in values))),
    })


def cmd_bench(args) -> int:
    sizes = [int(tok) for tok in args.n.split(",")]
    rng = np.random.default_rng(args.seed)
    rows = []
    for n in sizes:
        circ = sampling.random_circuit(n, args.gates, rng, classes=("gvw", "diag", "exp"))
        gates = circuits.compile(circ, tol=args.tol)
        t0 = time.perf_counter()
        res = engine_quadratic.simulate(gates, circ.input_state(), circ.k,
                                        unitary=True, tol=args.tol)
        dt = time.perf_counter() - t0
        rows.append({"n": n, "gates": args.gates, "seconds": dt,
                     "gates_per_sec": args.gates / dt, "p0": res.p0})
        print(f"n={n}: {dt:.3f} s, {args.gates / dt:.0f} gates/s", file=sys.stderr)
    exponent = None
    if len(sizes) >= 2:
        logn = np.log([r["n"] for r in rows])
        logt = np.log([max(r["seconds"], 1e-9) for r in rows])
        exponent = float(np.polyfit(logn, logt, 1)[0])
        print(f"fitted time ~ n^{exponent:.2f}", file=sys.stderr)
    return _emit({"engine": "quadratic", "runs": rows, "fitted_exponent": exponent})


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="mgsim",
                                  description="Matchgate circuit simulator and verifier")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--c0-mode", choices=sorted(C0_MODES), default=PARITY,
                       dest="c0_mode")
        p.add_argument("--heisenberg-mode", choices=(oracle.INVERSE, oracle.ADJOINT),
                       default=oracle.INVERSE, dest="heisenberg_mode")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("run", help="simulate a circuit file")
    p.add_argument("circuit")
    p.add_argument("--engine", choices=ENGINES, default="quadratic")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify-matchgate", help="check the ten identities on a JSON matrix")
    p.add_argument("matrix")
    p.add_argument("--physical", action="store_true",
                   help="relabel basis 1,2,3,4 -> 1,3,2,4 before checking")
    common(p)
    p.set_defaults(func=cmd_verify_matchgate)

    p = sub.add_parser("classify", help="report which gate classes a JSON matrix fits")
    p.add_argument("matrix")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compare", help="run all engines on a circuit and compare")
    p.add_argument("circuit")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="time the quadratic engine on random circuits")
    p.add_argument("--n", default="50,100,200", help="comma-separated line counts")
    p.add_argument("--gates", type=int, default=1000)
    p.add_argument("--engine", choices=("quadratic",), default="quadratic")
    common(p)
    p.set_defaults(func=cmd_bench)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MgsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
