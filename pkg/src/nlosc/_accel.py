"""Optional numba acceleration for the hot ODE kernels.

Set ``NLOSC_DISABLE_NUMBA=1`` before import to force the pure-Python/numpy
fallback (also used automatically when numba is not installed).  The flag is
read once at import time.
"""

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("NLOSC_DISABLE_NUMBA", "0") != "1"


def maybe_njit(func=None, **kwargs):
    """Apply ``numba.njit`` when acceleration is enabled, else return ``func``.

    Works with and without parentheses, mirroring ``numba.njit`` usage.
    """

    def wrap(f):
        if USE_NUMBA:
            return numba.njit(f, **kwargs)
        return f

    if func is not None:
        return wrap(func)
    return wrap
