"""Kernel backend selection.

Hot kernels are written as plain Python functions over numpy arrays and
compiled with numba unless IONQEC_BACKEND=python is set (or numba is
unavailable). Both backends execute the same source, so results are
bit-identical; the pure-Python path exists for debugging and as a fallback.
"""

from __future__ import annotations

import os

_env = os.environ.get("IONQEC_BACKEND", "numba").strip().lower()
if _env not in ("numba", "python"):
    raise ValueError(f"IONQEC_BACKEND must be 'numba' or 'python', got {_env!r}")

if _env == "numba":
    try:
        import numba as _numba
    except ImportError:  # pragma: no cover - depends on environment
        _numba = None
        _env = "python"
else:
    _numba = None

BACKEND = _env


def jit(func):
    """Compile func with numba in nopython mode, or return it unchanged."""
    if _numba is not None:
        return _numba.njit(func, cache=True)
    return func
