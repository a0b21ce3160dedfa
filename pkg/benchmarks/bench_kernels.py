#!/usr/bin/env python3
"""Benchmark the numba gate kernels against the pure-numpy fallback.

Times the basis-permutation kernels (generalized CNOT, single-wire digit
permutation, swap) on dense states of growing size, plus the BLAS-backed
Fourier gate for context (identical in both lanes).

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --cases 2:20 3:12 --repeats 20
    python benchmarks/bench_kernels.py --output results.json
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from quditgraph import kernels
from quditgraph.gf import Field
from quditgraph.simulator import Gate, StateVector, apply_gate

DEFAULT_CASES = ["2:16", "2:20", "3:10", "3:13", "4:8", "5:7"]


def warmup_jit(field: Field) -> None:
    if kernels.numba is None:
        return
    d = field.d
    amps = np.zeros(d * d, dtype=np.complex128)
    amps[0] = 1.0
    out = np.empty_like(amps)
    kernels.cnot_numba(amps, out, d, d, 1, field.mul_table[1], field.sub_table)
    kernels.axis_perm_numba(amps, out, d, d, field.sub_table[:, 0])
    kernels.swap_numba(amps, out, d, d, 1)


def bench_case(d: int, n: int, repeats: int) -> dict:
    field = _field_for(d)
    size = d ** n
    rng = np.random.default_rng(0)
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    amps /= np.linalg.norm(amps)
    out = np.empty_like(amps)
    sc, st = d ** (n - 1), d ** (n - 2)
    mul_row = field.mul_table[min(2, d - 1)]
    sub_table = field.sub_table
    shift = field.sub_table[:, 1]

    results = {"d": d, "n": n, "size": size}
    pairs = [
        ("cnot", lambda f: f(amps, out, d, sc, st, mul_row, sub_table),
         kernels.cnot_numba, kernels.cnot_numpy),
        ("axis_perm", lambda f: f(amps, out, d, sc, shift),
         kernels.axis_perm_numba, kernels.axis_perm_numpy),
        ("swap", lambda f: f(amps, out, d, sc, st),
         kernels.swap_numba, kernels.swap_numpy),
    ]
    for name, call, fn_numba, fn_numpy in pairs:
        t_numpy = _time(lambda: call(fn_numpy), repeats)
        t_numba = _time(lambda: call(fn_numba), repeats) if fn_numba is not None else float("inf")
        results[name] = {
            "numpy_ms": t_numpy * 1e3,
            "numba_ms": t_numba * 1e3,
            "speedup": t_numpy / t_numba if t_numba > 0 else 0.0,
        }

    # Fourier gate for context (tensordot/BLAS in both lanes)
    state = StateVector(field, n, amps)
    t_fourier = _time(lambda: apply_gate(state, Gate("H", (1,))), max(1, repeats // 4))
    results["fourier_ms"] = t_fourier * 1e3
    return results


_FIELD_CACHE: dict[int, Field] = {}


def _field_for(d: int) -> Field:
    if d not in _FIELD_CACHE:
        for p in range(2, d + 1):
            if d % p == 0:
                n = 0
                m = d
                while m % p == 0:
                    m //= p
                    n += 1
                _FIELD_CACHE[d] = Field(p, n)
                break
    return _FIELD_CACHE[d]


def _time(fn, repeats: int) -> float:
    fn()  # one untimed call
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def main() -> None:
    parser = argparse.ArgumentParser(description="Benchmark numba vs numpy kernels")
    parser.add_argument("--cases", nargs="+", default=DEFAULT_CASES,
                        help="d:n pairs, e.g. 2:20 3:12")
    parser.add_argument("--repeats", type=int, default=10)
    parser.add_argument("--output", help="write results to this JSON file")
    args = parser.parse_args()

    print(f"kernel backend selected at import: {kernels.BACKEND}")
    if kernels.numba is None:
        print("numba not installed; only the numpy lane will be timed")
    else:
        print("warming up JIT...")
        warmup_jit(_field_for(2))

    header = f"{'d':>3} {'n':>3} {'amps':>10} | {'cnot np':>9} {'cnot nb':>9} {'x':>6} | {'perm np':>9} {'perm nb':>9} {'x':>6}"
    print(header)
    print("-" * len(header))
    all_results = []
    for case in args.cases:
        d_str, n_str = case.split(":")
        res = bench_case(int(d_str), int(n_str), args.repeats)
        all_results.append(res)
        print(
            f"{res['d']:>3} {res['n']:>3} {res['size']:>10} | "
            f"{res['cnot']['numpy_ms']:>7.2f}ms {res['cnot']['numba_ms']:>7.2f}ms {res['cnot']['speedup']:>5.1f}x | "
            f"{res['axis_perm']['numpy_ms']:>7.2f}ms {res['axis_perm']['numba_ms']:>7.2f}ms {res['axis_perm']['speedup']:>5.1f}x"
        )

    if args.output:
        with open(args.output, "w") as fh:
            json.dump(all_results, fh, indent=2)
        print(f"results written to {args.output}")


if __name__ == "__main__":
    main()
