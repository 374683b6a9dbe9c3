"""Row-reduction kernels over F_p.

Two implementations of the same routines live here: a numba-compiled loop
version and a vectorised numpy version. The numba path is used unless the
environment variable ``RESLIE_DISABLE_NUMBA`` is set to a truthy value or
numba is not importable. Both paths return identical results (tested).
"""
from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("RESLIE_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

try:  # pragma: no cover - exercised implicitly
    if _DISABLE:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


# ---------------------------------------------------------------- numpy path

def rref_numpy(A: np.ndarray, p: int, inv: np.ndarray):
    R = np.array(A, dtype=np.int64) % p
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = (R[r] * inv[R[r, c]]) % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r])) % p
        pivots.append(c)
        r += 1
    return R, np.array(pivots, dtype=np.int64)


def det_numpy(A: np.ndarray, p: int, inv: np.ndarray) -> int:
    R = np.array(A, dtype=np.int64) % p
    n = R.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(R[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            R[[c, piv]] = R[[piv, c]]
            det = -det
        det = (det * int(R[c, c])) % p
        below = R[c + 1:, c]
        if np.any(below):
            f = (below * inv[R[c, c]]) % p
            R[c + 1:] = (R[c + 1:] - np.outer(f, R[c])) % p
    return det % p


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _rref_jit(A, p, inv):  # pragma: no cover - compiled
        R = A.copy()
        m, n = R.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if R[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(n):
                    t = R[r, j]
                    R[r, j] = R[piv, j]
                    R[piv, j] = t
            s = inv[R[r, c]]
            for j in range(c, n):
                R[r, j] = (R[r, j] * s) % p
            for i in range(m):
                if i != r:
                    f = R[i, c]
                    if f != 0:
                        for j in range(c, n):
                            R[i, j] = (R[i, j] - f * R[r, j]) % p
            pivots[r] = c
            r += 1
        return R, pivots[:r].copy()

    @njit(cache=True)
    def _det_jit(A, p, inv):  # pragma: no cover - compiled
        R = A.copy()
        n = R.shape[0]
        det = 1
        for c in range(n):
            piv = -1
            for i in range(c, n):
                if R[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                return 0
            if piv != c:
                for j in range(n):
                    t = R[c, j]
                    R[c, j] = R[piv, j]
                    R[piv, j] = t
                det = -det
            det = (det * R[c, c]) % p
            s = inv[R[c, c]]
            for i in range(c + 1, n):
                f = (R[i, c] * s) % p
                if f != 0:
                    for j in range(c, n):
                        R[i, j] = (R[i, j] - f * R[c, j]) % p
        return det % p

    def rref_numba(A: np.ndarray, p: int, inv: np.ndarray):
        R = np.ascontiguousarray(np.asarray(A, dtype=np.int64) % p)
        return _rref_jit(R, np.int64(p), inv)

    def det_numba(A: np.ndarray, p: int, inv: np.ndarray) -> int:
        R = np.ascontiguousarray(np.asarray(A, dtype=np.int64) % p)
        return int(_det_jit(R, np.int64(p), inv))

    rref = rref_numba
    det = det_numba
else:  # pragma: no cover
    rref = rref_numpy
    det = det_numpy
