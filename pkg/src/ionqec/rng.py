"""Counter-based randomness: Philox4x32-10.

Each uniform variate is a pure function of (master_seed, shot, site, draw),
so batch results are independent of how shots are split across workers and
of the order in which sites consume randomness within a shot.
"""

from __future__ import annotations

import numpy as np

from .backend import jit

_M32 = np.uint64(0xFFFFFFFF)
_MUL_A = np.uint64(0xD2511F53)
_MUL_B = np.uint64(0xCD9E8D57)
_KEY_A = np.uint64(0x9E3779B9)
_KEY_B = np.uint64(0xBB67AE85)
_INV_2_64 = 2.0**-64


@jit
def _philox4(c0, c1, c2, c3, k0, k1):
    """One Philox4x32-10 block; inputs/outputs are 32-bit values in uint64."""
    for _ in range(10):
        p0 = _MUL_A * c0
        p1 = _MUL_B * c2
        hi0, lo0 = p0 >> np.uint64(32), p0 & _M32
        hi1, lo1 = p1 >> np.uint64(32), p1 & _M32
        c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
        k0 = (k0 + _KEY_A) & _M32
        k1 = (k1 + _KEY_B) & _M32
    return c0, c1, c2, c3


@jit
def uniform(seed, shot, site, draw):
    """Uniform float64 in [0, 1) keyed by (seed, shot, site, draw)."""
    seed = np.uint64(seed)
    c0 = np.uint64(shot) & _M32
    c1 = (np.uint64(shot) >> np.uint64(32)) & _M32
    c2 = np.uint64(site) & _M32
    c3 = np.uint64(draw) & _M32
    k0 = seed & _M32
    k1 = (seed >> np.uint64(32)) & _M32
    x0, x1, _, _ = _philox4(c0, c1, c2, c3, k0, k1)
    return float((x0 << np.uint64(32)) | x1) * _INV_2_64
