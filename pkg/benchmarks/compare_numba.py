"""Time the jitted kernels against the pure-Python fallback.

The fallback path is what you get with PWPOLAR_DISABLE_NUMBA=1; this script
measures both in one process by calling the undecorated implementations
directly for the self-contained kernels, and reports blocks/s for the full
simulation pipeline via a subprocess per mode.

Usage: python benchmarks/compare_numba.py [--quick]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from pwpolar import _kernels
from pwpolar._kernels import PY_KERNELS


def _time(fn, *args, repeat):
    fn(*args)  # warm-up / jit compile
    start = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - start) / repeat


def bench_kernels(quick: bool):
    rng = np.random.default_rng(0)
    rows = []

    d = rng.integers(0, 2, 1024, dtype=np.uint8)
    rows.append(
        (
            "butterfly N=1024",
            _time(PY_KERNELS["butterfly_transform"], d, repeat=20),
            _time(_kernels.butterfly_transform, d, repeat=2000),
        )
    )

    msg = rng.integers(0, 2, 200, dtype=np.uint8)
    gen = np.array([1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1], dtype=np.uint8)
    rows.append(
        (
            "crc19 len=200",
            _time(PY_KERNELS["crc_remainder"], msg, gen, repeat=50),
            _time(_kernels.crc_remainder, msg, gen, repeat=5000),
        )
    )

    n = 256
    frozen = np.zeros(n, dtype=np.uint8)
    frozen[: n // 2] = 1
    llr = rng.normal(0, 2, n)
    rows.append(
        (
            "sc_decode N=256",
            _time(PY_KERNELS["sc_decode_kernel"], llr, frozen, repeat=3 if quick else 10),
            _time(_kernels.sc_decode_kernel, llr, frozen, repeat=2000),
        )
    )

    rows.append(
        (
            "scl_decode N=256 L=8",
            _time(PY_KERNELS["scl_decode_kernel"], llr, frozen, 8, repeat=1 if quick else 3),
            _time(_kernels.scl_decode_kernel, llr, frozen, 8, repeat=200),
        )
    )
    return rows


def bench_pipeline(quick: bool):
    """blocks/s for run_point at N=128 under each mode, via subprocesses."""
    blocks = 2000 if quick else 20000
    script = (
        "import time\n"
        "from pwpolar.simulator import SimConfig, run_point\n"
        f"cfg = SimConfig(n=128, k_msg=64, method='pw', decoder='sc', "
        f"min_errors=10**9, max_blocks={blocks}, seed=3)\n"
        "run_point(cfg, 2.0)\n"
        "t = time.perf_counter()\n"
        "p = run_point(cfg, 2.0)\n"
        "print(p.blocks / (time.perf_counter() - t))\n"
    )
    out = {}
    for label, disable in (("numba", "0"), ("python", "1")):
        env = dict(os.environ, PWPOLAR_DISABLE_NUMBA=disable)
        run = subprocess.run(
            [sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True
        )
        out[label] = float(run.stdout.strip())
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="fewer repetitions")
    args = parser.parse_args()

    print(f"{'kernel':<24}{'python':>14}{'numba':>14}{'speedup':>10}")
    for name, t_py, t_jit in bench_kernels(args.quick):
        print(f"{name:<24}{t_py * 1e6:>12.1f}us{t_jit * 1e6:>12.1f}us{t_py / t_jit:>9.1f}x")

    pipe = bench_pipeline(args.quick)
    print(f"\nrun_point N=128 SC pipeline:")
    print(f"  pure python : {pipe['python']:>10.0f} blocks/s")
    print(f"  numba       : {pipe['numba']:>10.0f} blocks/s")
    print(f"  speedup     : {pipe['numba'] / pipe['python']:>10.1f}x")


if __name__ == "__main__":
    main()
