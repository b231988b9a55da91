"""Linear algebra over the two-element field.

The row-reduction kernel has two implementations: a numba-compiled loop and
a vectorised numpy version.  Both produce the same reduced row echelon form;
:func:`nicehf._accel.backend` reports which one is active.
"""
from __future__ import annotations

import numpy as np

from .. import _accel


@_accel.njit
def _rref_loop(m, pivots):
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(cols):
                t = m[p, k]
                m[p, k] = m[r, k]
                m[r, k] = t
        for i in range(rows):
            if i != r and m[i, c]:
                for k in range(c, cols):
                    m[i, k] ^= m[r, k]
        pivots[r] = c
        r += 1
    return r


def _rref_numpy(m, pivots):
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        hit = np.flatnonzero(m[:, c])
        hit = hit[hit != r]
        if hit.size:
            m[hit, c:] ^= m[r, c:]
        pivots[r] = c
        r += 1
    return r


def as_f2(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype != np.uint8:
        arr = (np.asarray(a, dtype=np.int64) & 1).astype(np.uint8)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr


def rref(a, backend=None):
    """Reduced row echelon form over F2; returns ``(R, pivot_columns)``."""
    m = np.ascontiguousarray(as_f2(a).copy())
    if m.ndim != 2:
        raise ValueError("expected a matrix")
    pivots = np.zeros(min(m.shape) if m.size else 0, dtype=np.int64)
    if m.size == 0:
        return m, []
    use = backend or _accel.backend()
    if use == "numba" and _accel.HAVE_NUMBA:
        r = _rref_loop(m, pivots)
    else:
        r = _rref_numpy(m, pivots)
    return m, [int(x) for x in pivots[:r]]


def rank(a, backend=None) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, backend)[1])


def nullspace(a) -> np.ndarray:
    """Rows form a basis of ``{x : a x = 0}``."""
    a = as_f2(a)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.uint8)
    r, piv = rref(a)
    free = [j for j in range(n) if j not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, p in enumerate(piv):
            basis[k, p] = r[i, f]
    return basis


def solve(a, b):
    """One solution of ``a x = b`` over F2, or ``None``."""
    a = as_f2(a)
    b = (np.asarray(b, dtype=np.int64) & 1).astype(np.uint8).reshape(-1, 1)
    rows, n = a.shape
    if rows == 0:
        return np.zeros(n, dtype=np.uint8)
    aug = np.hstack([a, b])
    r, piv = rref(aug)
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.uint8)
    for i, p in enumerate(piv):
        x[p] = r[i, n]
    return x


def in_column_span(a, v) -> bool:
    a = as_f2(a)
    if a.shape[1] == 0:
        return not np.any(np.asarray(v) & 1)
    return solve(a, v) is not None


def matmul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return ((a @ b) & 1).astype(np.uint8)
