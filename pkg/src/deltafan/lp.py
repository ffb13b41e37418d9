"""Exact linear feasibility via phase-one simplex with Bland's rule.

Used to certify that two full-dimensional cones have disjoint interiors:
the interiors overlap iff { x : A_1 x >= 1, A_2 x >= 1 } is nonempty.
Problems here are tiny (tens of rows), so an exact dense tableau is fine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactmath import rat_vector


def feasible_geq(rows: Sequence[Sequence], rhs: Sequence) -> bool:
    """Is there a free vector x with <rows[i], x> >= rhs[i] for all i?"""
    a = [rat_vector(r) for r in rows]
    b = list(rat_vector(rhs))
    if not a:
        return True
    m, n = len(a), len(a[0])
    # standard form: x = u - v (u, v >= 0), surplus w >= 0:
    #   A u - A v - w = b, then rows with negative b are negated
    ncols = 2 * n + m
    tab = []
    for i in range(m):
        row = [a[i][j] for j in range(n)] + [-a[i][j] for j in range(n)] + [
            Fraction(-(i == k)) for k in range(m)
        ]
        row.append(b[i])
        if b[i] < 0:
            row = [-x for x in row]
        tab.append(row)
    # artificial variable i is basic in row i, with cost 1; artificial columns
    # are the implicit identity and are never stored, so they cannot re-enter
    basis = [ncols + i for i in range(m)]
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            obj[j] -= tab[i][j]

    limit = 5000 + 50 * (m + ncols)
    for _ in range(limit):
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            break
        ratios = [
            (tab[i][ncols] / tab[i][enter], basis[i], i)
            for i in range(m)
            if tab[i][enter] > 0
        ]
        if not ratios:
            # phase-one objective is bounded below by zero; no ratio means a bug
            raise AssertionError("unbounded phase-one simplex")
        _, _, piv = min(ratios)
        pivval = tab[piv][enter]
        tab[piv] = [x / pivval for x in tab[piv]]
        for i in range(m):
            if i != piv and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[piv])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[piv])]
        basis[piv] = enter
    else:
        raise AssertionError("simplex iteration cap exceeded")
    return obj[ncols] == 0
