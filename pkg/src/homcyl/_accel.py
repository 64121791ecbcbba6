"""Backend selection for the compiled kernels.

``HOMCYL_BACKEND=numpy`` forces the pure Python/numpy path; anything else
(default ``numba``) compiles the kernels with ``numba.njit`` when numba is
importable.
"""

from __future__ import annotations

import os

BACKEND_ENV = "HOMCYL_BACKEND"


def _want_numba() -> bool:
    return os.environ.get(BACKEND_ENV, "numba").strip().lower() != "numpy"


try:
    if not _want_numba():
        raise ImportError
    import numba as _numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    _numba = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def jit(func):
    """``numba.njit(cache=True)`` when the numba backend is active, identity otherwise."""
    if HAVE_NUMBA:
        return _numba.njit(cache=True)(func)
    return func
