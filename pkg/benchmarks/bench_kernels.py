"""Numba vs numpy Gauss-Kronrod panel kernel, plus an end-to-end profile
evaluation in each backend.

    python benchmarks/bench_kernels.py [--panels N] [--repeat K]

The end-to-end timing runs each backend in a subprocess because the backend
is chosen once at import time (HCMC_DISABLE_NUMBA).
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from hcmc import _kernels

E2E = r"""
import time, numpy as np
from hcmc import rot_profile as rp
p = rp.ProfileParams(3, 2, 0.9, 0.05)
x = np.linspace(0.06, 1.2, 400)
rp.lambda_eval(p, x[:5])  # warm up / jit
t = time.perf_counter()
for _ in range(5):
    v = rp.lambda_eval(p, x)
print(time.perf_counter() - t, float(v[-1]))
"""


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def end_to_end(disable):
    env = dict(os.environ)
    if disable:
        env["HCMC_DISABLE_NUMBA"] = "1"
    else:
        env.pop("HCMC_DISABLE_NUMBA", None)
    out = subprocess.run([sys.executable, "-c", E2E], env=env, capture_output=True, text=True, check=True)
    secs, val = out.stdout.split()
    return float(secs), float(val)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--panels", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    lo = rng.uniform(0.0, 3.0, args.panels)
    hi = lo + rng.uniform(1e-4, 0.5, args.panels)

    print(f"panel kernel, {args.panels} panels, best of {args.repeat}")
    ref_k, ref_e = _kernels.gk15_hyp_numpy(0, 4, 2, lo, hi)
    t_np = best_of(lambda: _kernels.gk15_hyp_numpy(0, 4, 2, lo, hi), args.repeat)
    print(f"  numpy : {t_np * 1e3:9.2f} ms")
    if _kernels.USING_NUMBA:
        _kernels.gk15_hyp(0, 4, 2, lo[:10], hi[:10])  # compile
        k, e = _kernels.gk15_hyp(0, 4, 2, lo, hi)
        t_nb = best_of(lambda: _kernels.gk15_hyp(0, 4, 2, lo, hi), args.repeat)
        print(f"  numba : {t_nb * 1e3:9.2f} ms   speedup {t_np / t_nb:.1f}x")
        print(f"  max |diff| estimate {np.max(np.abs(k - ref_k)):.2e}, error {np.max(np.abs(e - ref_e)):.2e}")
    else:
        print("  numba : unavailable (disabled or not installed)")

    print("lambda_eval at 400 points x 5 (subprocess per backend)")
    t_np, v_np = end_to_end(True)
    print(f"  numpy : {t_np:.3f} s   lambda(1.2) = {v_np!r}")
    t_nb, v_nb = end_to_end(False)
    print(f"  numba : {t_nb:.3f} s   lambda(1.2) = {v_nb!r}   speedup {t_np / t_nb:.1f}x")


if __name__ == "__main__":
    main()
