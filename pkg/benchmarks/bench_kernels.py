"""Compare the compiled kernels against the pure-Python fallback.

Runs a fixed workload twice in subprocesses -- once with the default
compiled kernels and once with HYPERBC_NO_NUMBA=1 -- and prints the
per-task timings and speedups.

Usage: python3 benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json
import time

import numpy as np

from hyperbc.hcseries import compute_coeffs
from hyperbc.hyper import bessel_bcn, f_determinant, f_permanent
from hyperbc.rootsystem import MultiplicityBC
from hyperbc.verify import weyl_sum_oracle
from hyperbc._kernels import NUMBA_DISABLED

K1 = MultiplicityBC(k_s=1.0, k_m=1, k_l=0.5, n=3)
K0 = MultiplicityBC(k_s=1.0, k_m=0, k_l=0.5, n=3)
LAM = np.array([4.15, 2.55, 1.07])
T = np.array([1.5, 0.9, 0.4])
TD = np.array([3.3, 2.1, 1.0])


def bench(fn, repeats):
    fn()  # warm up (includes any jit compilation)
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - t0) / repeats


tasks = {
    "determinant n=3 (x200)": (
        lambda: [f_determinant(K1, LAM, T) for _ in range(200)], 5),
    "permanent n=3 (x200)": (
        lambda: [f_permanent(K0, LAM, T) for _ in range(200)], 5),
    "bessel n=3 (x200)": (
        lambda: [bessel_bcn(K1, LAM, T) for _ in range(200)], 5),
    "series coefficients n=3 order=16": (
        lambda: compute_coeffs(K1, LAM, order=16), 3),
    "weyl-sum oracle n=2 order=16": (
        lambda: weyl_sum_oracle(
            MultiplicityBC(1.0, 1, 0.5, 2), [2.55, 1.07], [2.7, 1.2],
            order=16), 3),
}

out = {"numba_disabled": NUMBA_DISABLED, "timings": {}}
for name, (fn, repeats) in tasks.items():
    out["timings"][name] = bench(fn, repeats)
print(json.dumps(out))
"""


def run_variant(disable: bool) -> dict:
    env = dict(os.environ)
    if disable:
        env["HYPERBC_NO_NUMBA"] = "1"
    else:
        env.pop("HYPERBC_NO_NUMBA", None)
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD], env=env,
        capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    print("running compiled-kernel variant ...")
    fast = run_variant(disable=False)
    print("running pure-Python fallback variant (HYPERBC_NO_NUMBA=1) ...")
    slow = run_variant(disable=True)
    assert not fast["numba_disabled"] and slow["numba_disabled"]

    width = max(len(n) for n in fast["timings"])
    print()
    print(f"{'task':<{width}}  {'compiled':>12}  {'fallback':>12}  {'speedup':>8}")
    for name, tf in fast["timings"].items():
        ts = slow["timings"][name]
        print(f"{name:<{width}}  {tf * 1e3:>10.3f}ms  {ts * 1e3:>10.3f}ms  "
              f"{ts / tf:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
