"""Numba switch for the hot kernels.

Set ``FLOWMOTIF_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
The jitted dispatchers keep the original function on ``.py_func``, which the
benchmarks use to time both paths in one process.
"""
import os

_OFF = ("1", "true", "yes", "on")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("FLOWMOTIF_DISABLE_NUMBA", "").lower() not in _OFF


def jit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def py_func(fn):
    """The un-jitted body of a kernel (identity when numba is off)."""
    return getattr(fn, "py_func", fn)
