"""Optional numba acceleration for the integer elimination kernels.

Set ``GAMMABAR_DISABLE_NUMBA=1`` to force the pure-numpy code path.  Both
paths run the same source; the jitted one is only compiled when numba is
importable and the flag is unset.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is optional
    HAVE_NUMBA = False

    def _njit(*args, **kwargs):
        return _noop_jit(*args, **kwargs)


def _noop_jit(*args, **kwargs):
    if args and callable(args[0]):
        return args[0]

    def wrap(fn):
        return fn

    return wrap


def numba_disabled() -> bool:
    return os.environ.get("GAMMABAR_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")


USE_NUMBA = HAVE_NUMBA and not numba_disabled()

# Entries above this magnitude abort the int64 kernel; callers then redo the
# work with Python integers.
OVERFLOW_LIMIT = 1 << 40


def _smith_diagonal_int64(a):
    """Diagonalize ``a`` in place by unimodular row/column operations.

    Returns ``(diag, ok)``.  ``diag`` holds the nonzero invariant factors in
    divisibility order.  ``ok`` is False when an entry exceeded
    ``OVERFLOW_LIMIT``; the contents of ``diag`` are then meaningless.
    """
    m, n = a.shape
    size = min(m, n)
    diag = np.zeros(size, dtype=np.int64)
    t = 0
    while t < size:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                v = abs(a[i, j])
                if v != 0 and (best == 0 or v < best):
                    best = v
                    bi = i
                    bj = j
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            for j in range(n):
                tmp = a[t, j]
                a[t, j] = a[bi, j]
                a[bi, j] = tmp
        if bj != t:
            for i in range(m):
                tmp = a[i, t]
                a[i, t] = a[i, bj]
                a[i, bj] = tmp
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i, t] != 0:
                    q = a[i, t] // a[t, t]
                    for j in range(t, n):
                        a[i, j] -= q * a[t, j]
                        if abs(a[i, j]) > OVERFLOW_LIMIT:
                            return diag[:0], False
                    if a[i, t] != 0:
                        for j in range(n):
                            tmp = a[t, j]
                            a[t, j] = a[i, j]
                            a[i, j] = tmp
                        dirty = True
            for j in range(t + 1, n):
                if a[t, j] != 0:
                    q = a[t, j] // a[t, t]
                    for i in range(t, m):
                        a[i, j] -= q * a[i, t]
                        if abs(a[i, j]) > OVERFLOW_LIMIT:
                            return diag[:0], False
                    if a[t, j] != 0:
                        for i in range(m):
                            tmp = a[i, t]
                            a[i, t] = a[i, j]
                            a[i, j] = tmp
                        dirty = True
            if dirty:
                continue
            # Pivot row and column are clear.  Enforce divisibility of the
            # remaining block by folding an offending row into the pivot row.
            p = a[t, t]
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i, j] % p != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            for j in range(t, n):
                a[t, j] += a[bad, j]
        diag[t] = abs(a[t, t])
        t += 1
    return diag[:t], True


if HAVE_NUMBA:
    _smith_diagonal_jit = _njit(cache=True)(_smith_diagonal_int64)
else:  # pragma: no cover
    _smith_diagonal_jit = _smith_diagonal_int64


def smith_diagonal_numpy(a: np.ndarray):
    return _smith_diagonal_int64(np.array(a, dtype=np.int64, copy=True))


def smith_diagonal_numba(a: np.ndarray):
    return _smith_diagonal_jit(np.array(a, dtype=np.int64, copy=True))


def smith_diagonal(a: np.ndarray):
    """Dispatch to the jitted kernel unless disabled by the env flag."""
    if USE_NUMBA:
        return smith_diagonal_numba(a)
    return smith_diagonal_numpy(a)
