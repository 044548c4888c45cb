"""Hot lattice-sum kernels with a numba path and a pure-numpy path.

The numba path is used when numba imports and ``GABORLAB_DISABLE_NUMBA`` is
unset (or ``0``).  Both paths are always importable under explicit names so
they can be compared against each other.

All kernels sum terms in the order given; callers pass terms sorted by
increasing magnitude.
"""
from __future__ import annotations

import os

import numpy as np

__all__ = ["USE_NUMBA", "cos_sum", "sin_sum", "gauss_shift_sum", "backend"]

_CHUNK = 4096
_TWO_PI = 2.0 * np.pi


def _flag_disabled() -> bool:
    return os.environ.get("GABORLAB_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None

HAS_NUMBA = numba is not None
USE_NUMBA = HAS_NUMBA and not _flag_disabled()


# -- numpy ------------------------------------------------------------------

def cos_sum_numpy(freqs, coeffs, z):
    """``sum_j c_j cos(2 pi f_j . z)`` for every row of ``z``."""
    out = np.empty(z.shape[0])
    for s in range(0, z.shape[0], _CHUNK):
        phase = z[s:s + _CHUNK] @ freqs.T
        out[s:s + _CHUNK] = np.cos(_TWO_PI * phase) @ coeffs
    return out


def sin_sum_numpy(freqs, coeffs, z):
    out = np.empty(z.shape[0])
    for s in range(0, z.shape[0], _CHUNK):
        phase = z[s:s + _CHUNK] @ freqs.T
        out[s:s + _CHUNK] = np.sin(_TWO_PI * phase) @ coeffs
    return out


def gauss_shift_sum_numpy(points, z, a):
    """``sum_j exp(-a |p_j + z|^2)`` for every row of ``z``."""
    out = np.empty(z.shape[0])
    for s in range(0, z.shape[0], _CHUNK):
        zz = z[s:s + _CHUNK]
        dx = zz[:, 0:1] + points[:, 0]
        dy = zz[:, 1:2] + points[:, 1]
        out[s:s + _CHUNK] = np.exp(-a * (dx * dx + dy * dy)).sum(axis=1)
    return out


# -- numba ------------------------------------------------------------------

if HAS_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)

    @_jit
    def cos_sum_numba(freqs, coeffs, z):
        k = z.shape[0]
        m = freqs.shape[0]
        out = np.empty(k)
        for i in range(k):
            z0 = z[i, 0]
            z1 = z[i, 1]
            acc = 0.0
            for j in range(m):
                acc += coeffs[j] * np.cos(_TWO_PI * (freqs[j, 0] * z0 + freqs[j, 1] * z1))
            out[i] = acc
        return out

    @_jit
    def sin_sum_numba(freqs, coeffs, z):
        k = z.shape[0]
        m = freqs.shape[0]
        out = np.empty(k)
        for i in range(k):
            z0 = z[i, 0]
            z1 = z[i, 1]
            acc = 0.0
            for j in range(m):
                acc += coeffs[j] * np.sin(_TWO_PI * (freqs[j, 0] * z0 + freqs[j, 1] * z1))
            out[i] = acc
        return out

    @_jit
    def gauss_shift_sum_numba(points, z, a):
        k = z.shape[0]
        m = points.shape[0]
        out = np.empty(k)
        for i in range(k):
            z0 = z[i, 0]
            z1 = z[i, 1]
            acc = 0.0
            for j in range(m):
                dx = points[j, 0] + z0
                dy = points[j, 1] + z1
                acc += np.exp(-a * (dx * dx + dy * dy))
            out[i] = acc
        return out

else:  # pragma: no cover
    cos_sum_numba = sin_sum_numba = gauss_shift_sum_numba = None


def _as2d(z):
    return np.ascontiguousarray(np.atleast_2d(np.asarray(z, dtype=float)))


def cos_sum(freqs, coeffs, z):
    f = cos_sum_numba if USE_NUMBA else cos_sum_numpy
    return f(np.ascontiguousarray(freqs, dtype=float), np.ascontiguousarray(coeffs, dtype=float), _as2d(z))


def sin_sum(freqs, coeffs, z):
    f = sin_sum_numba if USE_NUMBA else sin_sum_numpy
    return f(np.ascontiguousarray(freqs, dtype=float), np.ascontiguousarray(coeffs, dtype=float), _as2d(z))


def gauss_shift_sum(points, z, a):
    f = gauss_shift_sum_numba if USE_NUMBA else gauss_shift_sum_numpy
    return f(np.ascontiguousarray(points, dtype=float), _as2d(z), float(a))


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
