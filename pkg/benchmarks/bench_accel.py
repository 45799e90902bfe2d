"""Benchmark the numba-accelerated kernels against the pure-numpy fallback.

Runs a fixed workload (shooting eigenvalue search plus classical integration)
twice in subprocesses -- once with numba enabled and once with
NLOSC_DISABLE_NUMBA=1 -- and reports wall times and speedup.  Subprocesses
keep the two configurations isolated, since the dispatch choice is made at
import time.

Usage: python3 benchmarks/bench_accel.py [--repeat N]
"""

import argparse
import os
import subprocess
import sys

_WORKLOAD = """
import time
import nlosc  # import (and JIT warm-up) excluded from the timing below
from nlosc import classical, oracle
from nlosc.params import make_model

# warm-up pass so numba compilation cost is not measured
oracle.shoot_eigenvalue(-1.0, 0, 0, rtol=1e-6)
classical.integrate_1d(0.0, 1.0, make_model(1.0, 2.0, 1.0), 1.0, n_samples=10)

t0 = time.perf_counter()
for k in range(3):
    oracle.shoot_eigenvalue(-1.0, 0, k)
    oracle.shoot_eigenvalue(0.1, 1, k)
classical.integrate_1d(0.0, 1.7320508075688772, make_model(1.0, 2.0, 1.0), 60.0, n_samples=2000)
classical.integrate_planar(1.0, 0.4, 1.3, make_model(1.0, 2.0, 1.0), 40.0, n_samples=2000)
print(time.perf_counter() - t0)
"""


def run_once(disable_numba: bool) -> float:
    env = dict(os.environ, NLOSC_DISABLE_NUMBA="1" if disable_numba else "0")
    proc = subprocess.run(
        [sys.executable, "-c", _WORKLOAD], capture_output=True, text=True, env=env
    )
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr)
    return float(proc.stdout.strip())


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="runs per configuration")
    args = parser.parse_args()

    results = {}
    for label, disable in (("numba", False), ("numpy fallback", True)):
        times = [run_once(disable) for _ in range(args.repeat)]
        results[label] = min(times)
        print(f"{label:>15}: best of {args.repeat} = {results[label]:.3f} s")
    speedup = results["numpy fallback"] / results["numba"]
    print(f"{'speedup':>15}: {speedup:.1f}x")


if __name__ == "__main__":
    main()
