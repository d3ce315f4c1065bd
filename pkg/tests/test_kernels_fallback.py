"""The pure-Python kernel implementations must match the jitted ones exactly,
and the env flag must select them."""

import os
import subprocess
import sys

import numpy as np

from pwpolar import _kernels
from pwpolar._kernels import PY_KERNELS


def test_butterfly_python_matches_jit():
    rng = np.random.default_rng(0)
    for block in (2, 8, 64):
        d = rng.integers(0, 2, block, dtype=np.uint8)
        assert np.array_equal(
            PY_KERNELS["butterfly_transform"](d), _kernels.butterfly_transform(d)
        )


def test_crc_python_matches_jit():
    rng = np.random.default_rng(1)
    gen = np.array([1, 0, 1, 1], dtype=np.uint8)
    for _ in range(50):
        msg = rng.integers(0, 2, int(rng.integers(1, 40)), dtype=np.uint8)
        assert np.array_equal(
            PY_KERNELS["crc_remainder"](msg, gen), _kernels.crc_remainder(msg, gen)
        )


def test_sc_python_matches_jit():
    rng = np.random.default_rng(2)
    frozen = np.array([1, 1, 1, 0, 1, 0, 0, 0], dtype=np.uint8)
    for _ in range(25):
        llr = rng.normal(0, 2, 8)
        u_py, pm_py = PY_KERNELS["sc_decode_kernel"](llr, frozen)
        u_jit, pm_jit = _kernels.sc_decode_kernel(llr, frozen)
        assert np.array_equal(u_py, u_jit) and pm_py == pm_jit


def test_scl_python_matches_jit():
    rng = np.random.default_rng(3)
    frozen = np.array([1, 1, 1, 0, 1, 0, 0, 0], dtype=np.uint8)
    for _ in range(10):
        llr = rng.normal(0, 2, 8)
        c_py, p_py, f_py = PY_KERNELS["scl_decode_kernel"](llr, frozen, 4)
        c_jit, p_jit, f_jit = _kernels.scl_decode_kernel(llr, frozen, 4)
        assert f_py == f_jit
        assert np.array_equal(c_py[:f_py], c_jit[:f_jit])
        assert np.allclose(p_py[:f_py], p_jit[:f_jit])


def test_env_flag_selects_fallback():
    env = dict(os.environ, PWPOLAR_DISABLE_NUMBA="1")
    script = (
        "import pwpolar, numpy as np\n"
        "assert not pwpolar.NUMBA_ENABLED\n"
        "from pwpolar import _kernels\n"
        "assert _kernels.butterfly_transform is _kernels.PY_KERNELS['butterfly_transform']\n"
        "from pwpolar.simulator import run_point, SimConfig\n"
        "p = run_point(SimConfig(n=8, k_msg=4, min_errors=3, max_blocks=50, seed=1), 1.0)\n"
        "print(p.blocks, p.block_errors)\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True
    )
    blocks, errors = map(int, out.stdout.split())
    # same numbers as the jitted path: streams and kernels are equivalent
    from pwpolar.simulator import SimConfig, run_point

    ref = run_point(SimConfig(n=8, k_msg=4, min_errors=3, max_blocks=50, seed=1), 1.0)
    assert (blocks, errors) == (ref.blocks, ref.block_errors)
