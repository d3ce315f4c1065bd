"""Numba acceleration shim.

Hot kernels are decorated with :func:`njit`. When numba is unavailable, or
when the environment variable ``PWPOLAR_DISABLE_NUMBA`` is set to a truthy
value, the decorator degrades to a no-op and the same functions run as plain
Python/NumPy (much slower, identical results). ``benchmarks/compare_numba.py``
measures the gap.
"""

import os
import warnings

_ENV_FLAG = "PWPOLAR_DISABLE_NUMBA"


def _nop_njit(*args, **kwargs):
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def decorator(func):
        return func

    return decorator


def _env_disabled() -> bool:
    return os.environ.get(_ENV_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


if _env_disabled():
    NUMBA_ENABLED = False
    njit = _nop_njit
else:
    try:
        from numba import njit  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - exercised only without numba
        warnings.warn(
            "numba could not be imported; falling back to pure-Python kernels "
            "(correct but much slower)",
            stacklevel=2,
        )
        NUMBA_ENABLED = False
        njit = _nop_njit
