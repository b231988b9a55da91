"""Exact integer linear algebra: Smith normal form and lattice solving.

Matrices are plain lists of lists of Python ints, so entries never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence

from ..errors import DimensionMismatch

IntMatrix = List[List[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(m: Sequence[Sequence[int]], cols: Optional[int] = None):
    rows = len(m)
    if rows == 0:
        return 0, (cols or 0)
    width = len(m[0])
    if any(len(r) != width for r in m):
        raise DimensionMismatch("ragged matrix")
    return rows, width


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2 and n and k2:
        raise DimensionMismatch(f"cannot multiply {n}x{k} by {k2}x{m}")
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(r) for r in zip(*a)]


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, src, dst, q):
    # row_dst += q * row_src
    if q:
        rs, rd = m[src], m[dst]
        for k in range(len(rd)):
            rd[k] += q * rs[k]


def _add_col(m, src, dst, q):
    if q:
        for row in m:
            row[dst] += q * row[src]


def smith_normal_form(m: Sequence[Sequence[int]], cols: Optional[int] = None):
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` in Smith normal form.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative
    entries ``d_1 | d_2 | ...``.  ``cols`` is only needed for a 0-row input.
    """
    rows, ncols = shape(m, cols)
    a = [list(map(int, r)) for r in m]
    u = identity(rows)
    v = identity(ncols)
    t = 0
    while t < min(rows, ncols):
        # pivot: smallest non-zero absolute value in the trailing block
        best = None
        for i in range(t, rows):
            ri = a[i]
            for j in range(t, ncols):
                x = ri[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        _swap_rows(a, t, i)
        _swap_rows(u, t, i)
        _swap_cols(a, t, j)
        _swap_cols(v, t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    _add_row(a, t, i, -q)
                    _add_row(u, t, i, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // p
                    _add_col(a, t, j, -q)
                    _add_col(v, t, j, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot exists; move it to (t, t)
                best = None
                for i in range(t, rows):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, t)
                for j in range(t, ncols):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), t, j)
                _, i, j = best
                _swap_rows(a, t, i)
                _swap_rows(u, t, i)
                _swap_cols(a, t, j)
                _swap_cols(v, t, j)
                continue
            # row and column clear: enforce divisibility of the trailing block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, ncols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _add_row(a, bad, t, 1)
            _add_row(u, bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def invariant_factors(m: Sequence[Sequence[int]], cols: Optional[int] = None) -> List[int]:
    """Non-zero diagonal entries of the Smith form, in divisibility order."""
    _, d, _ = smith_normal_form(m, cols)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i]:
            out.append(d[i][i])
    return out


def is_smith_normal_form(d: Sequence[Sequence[int]]) -> bool:
    rows, cols = shape(d)
    diag = []
    for i in range(rows):
        for j in range(cols):
            if i != j and d[i][j]:
                return False
    for i in range(min(rows, cols)):
        diag.append(d[i][i])
    if any(x < 0 for x in diag):
        return False
    nz = [x for x in diag if x]
    if nz != diag[: len(nz)]:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def determinant_is_unit(m: Sequence[Sequence[int]]) -> bool:
    """True when a square integer matrix is unimodular (det = +-1)."""
    n, k = shape(m)
    if n != k:
        return False
    if n == 0:
        return True
    d = invariant_factors(m)
    return len(d) == n and all(x == 1 for x in d)


@dataclass(frozen=True)
class IntegerSolution:
    particular: tuple
    kernel: tuple  # tuple of tuples, a Z-basis of the integer kernel


class IntegerSystem:
    """Solve ``A x = b`` over the integers for many right-hand sides.

    The Smith decomposition of ``A`` is computed once; each solve is then a
    matrix-vector product and a divisibility test.
    """

    def __init__(self, a: Sequence[Sequence[int]], cols: Optional[int] = None):
        self.rows, self.cols = shape(a, cols)
        self.a = [list(map(int, r)) for r in a]
        self.u, self.d, self.v = smith_normal_form(self.a, self.cols)
        diag = [self.d[i][i] for i in range(min(self.rows, self.cols))]
        self.rank = sum(1 for x in diag if x)
        self.diag = diag[: self.rank]
        self.kernel = tuple(
            tuple(self.v[i][j] for i in range(self.cols)) for j in range(self.rank, self.cols)
        )

    def solve(self, b: Sequence[int]) -> Optional[IntegerSolution]:
        if len(b) != self.rows:
            raise DimensionMismatch(f"rhs has length {len(b)}, expected {self.rows}")
        ub = matvec(self.u, b)
        y = [0] * self.cols
        for i in range(self.rank):
            q, r = divmod(ub[i], self.diag[i])
            if r:
                return None
            y[i] = q
        if any(ub[i] for i in range(self.rank, self.rows)):
            return None
        x = tuple(matvec(self.v, y)) if self.cols else ()
        return IntegerSolution(particular=x, kernel=self.kernel)


def solve_integer_system(a: Sequence[Sequence[int]], b: Sequence[int],
                         cols: Optional[int] = None) -> Optional[IntegerSolution]:
    """One integer solution of ``a x = b`` plus a kernel basis, or ``None``."""
    return IntegerSystem(a, cols).solve(b)


def integer_kernel(a: Sequence[Sequence[int]], cols: Optional[int] = None):
    return IntegerSystem(a, cols).kernel


def lattice_gcd(values) -> int:
    g = 0
    for x in values:
        g = gcd(g, int(x))
    return g
