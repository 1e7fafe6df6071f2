"""Numba switch for the hot kernels.

Set ``NETINDUCE_PURE_NUMPY=1`` to skip numba entirely; every kernel module
then routes through its numpy fallback.  ``NUMBA_DISABLE_JIT=1`` is also
honoured, in which case the numba-decorated functions run as plain Python.
"""

import os

PURE_NUMPY = os.environ.get("NETINDUCE_PURE_NUMPY", "0") == "1"

try:
    if PURE_NUMPY:
        raise ImportError
    from numba import njit, prange

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - depends on env
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f

    prange = range


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"
