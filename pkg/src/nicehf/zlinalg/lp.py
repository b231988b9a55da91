"""Exact rational linear programming (two-phase simplex, Bland's rule).

Only feasibility is needed here: find ``x >= 0`` with ``A x = b``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence


def _pivot(tab, basis, r, c):
    pr = tab[r]
    pv = pr[c]
    if pv != 1:
        tab[r] = pr = [x / pv for x in pr]
    for i, row in enumerate(tab):
        if i != r:
            f = row[c]
            if f:
                tab[i] = [x - f * y for x, y in zip(row, pr)]
    basis[r] = c


def _simplex(tab, basis, ncols, allowed):
    """Minimise the objective stored in the last row; Bland's anti-cycling rule."""
    obj = tab[-1]
    while True:
        obj = tab[-1]
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return
        best = None
        for i in range(len(tab) - 1):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded; cannot happen for the phase-one objective
            return
        _pivot(tab, basis, best[1], enter)


def feasible_point(a: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """Return a rational ``x >= 0`` with ``a x = b``, or ``None`` if none exists."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    rows = []
    rhs = []
    for row, v in zip(a, b):
        row = [Fraction(x) for x in row]
        v = Fraction(v)
        if v < 0:
            row = [-x for x in row]
            v = -v
        rows.append(row)
        rhs.append(v)
    # tableau columns: n structural, m artificial, rhs
    tab = []
    for i in range(m):
        art = [Fraction(int(i == k)) for k in range(m)]
        tab.append(rows[i] + art + [rhs[i]])
    basis = [n + i for i in range(m)]
    # phase-one objective: minimise the sum of artificials, expressed in non-basic terms
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= tab[i][j]
        obj[-1] -= tab[i][-1]
    tab.append(obj)
    _simplex(tab, basis, n + m, [True] * (n + m))
    if tab[-1][-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i][-1]
    return x
