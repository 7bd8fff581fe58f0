"""Benchmark the hot kernels on both backends.

Runs the discord oracle and the Jacobi eigensolver over a deterministic
corpus twice, in subprocesses: once with numba enabled (default) and once
with XSTATES_DISABLE_NUMBA=1 (pure numpy/Python path), then prints a
side-by-side table.

Usage: python benchmarks/bench_oracle.py [--n 200] [--grid 64]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def worker(n: int, grid: int) -> dict:
    import numpy as np

    import xstates as xs

    states = [xs.random_xstate(1, i) for i in range(n)]
    # warm-up triggers JIT compilation on the numba path
    xs.discord_oracle(states[0], grid=grid)
    started = time.perf_counter()
    total = 0.0
    for x in states:
        total += xs.discord_oracle(x, grid=grid).q_min
    oracle_s = time.perf_counter() - started

    rng = np.random.default_rng(0)
    mats = []
    for _ in range(n):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        mats.append(0.5 * (g + g.conj().T))
    xs.hermitian_eigen(mats[0])
    started = time.perf_counter()
    checksum = 0.0
    for m in mats:
        checksum += float(xs.hermitian_eigen(m)[0][0])
    jacobi_s = time.perf_counter() - started

    return {
        "backend": xs.backend(),
        "n": n,
        "grid": grid,
        "oracle_s": oracle_s,
        "oracle_ms_per_state": 1e3 * oracle_s / n,
        "jacobi_us_per_matrix": 1e6 * jacobi_s / n,
        "q_checksum": total,
        "eig_checksum": checksum,
    }


def run_backend(disable_numba: bool, n: int, grid: int) -> dict:
    env = dict(os.environ)
    env["XSTATES_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker",
         "--n", str(n), "--grid", str(grid)],
        capture_output=True, text=True, env=env, check=True,
    )
    return json.loads(out.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200, help="states per backend")
    parser.add_argument("--grid", type=int, default=64)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        print(json.dumps(worker(args.n, args.grid)))
        return 0

    results = [run_backend(False, args.n, args.grid), run_backend(True, args.n, args.grid)]
    drift = abs(results[0]["q_checksum"] - results[1]["q_checksum"])
    print(f"\ndiscord oracle + Jacobi, n = {args.n}, grid = {args.grid}")
    print(f"{'backend':<8} {'oracle ms/state':>16} {'jacobi us/matrix':>18}")
    for r in results:
        print(f"{r['backend']:<8} {r['oracle_ms_per_state']:>16.3f} "
              f"{r['jacobi_us_per_matrix']:>18.1f}")
    speed = results[1]["oracle_ms_per_state"] / results[0]["oracle_ms_per_state"]
    print(f"\noracle speedup (numba over numpy): {speed:.1f}x")
    print(f"q checksum drift between backends: {drift:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
