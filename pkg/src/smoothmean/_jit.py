"""JIT shim: numba when available, plain Python otherwise.

All numeric kernels are written as scalar Python and compiled with numba
for the simulation sweeps (millions of evaluations per cell). Setting
SMOOTHMEAN_DISABLE_JIT=1 forces the interpreted path; results are
identical either way, only slower.
"""

import os

__all__ = ["jit", "HAVE_NUMBA"]

if os.environ.get("SMOOTHMEAN_DISABLE_JIT", "0") == "1":
    HAVE_NUMBA = False
else:
    try:
        import numba

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False

if HAVE_NUMBA:
    def jit(func):
        return numba.njit(cache=True)(func)
else:  # pragma: no cover
    def jit(func):
        return func
