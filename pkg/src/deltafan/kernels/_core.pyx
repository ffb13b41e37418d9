# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 enumeration kernels (odometer over the box with
incremental partial dot products). Callers guarantee all intermediate
values fit in int64."""

import numpy as np


cdef inline long long fdiv(long long a, long long b):
    # floor division; C division truncates toward zero
    cdef long long q = a / b
    if a % b != 0 and (a < 0) != (b < 0):
        q -= 1
    return q


cdef inline long long cdiv(long long a, long long b):
    return -fdiv(-a, b)


def count_box(lo_in, hi_in, rows_in, rhs_in, bint strict):
    """Count integer points x in [lo, hi] with rows @ x <= rhs (< when strict).

    The innermost coordinate is handled per segment: each inequality clips x
    to an interval, so a segment costs O(#rows) regardless of its length.
    """
    for l_py, h_py in zip(lo_in, hi_in):
        if l_py > h_py:
            return 0
    lo_arr = np.asarray(lo_in, dtype=np.int64)
    hi_arr = np.asarray(hi_in, dtype=np.int64)
    a_arr = np.ascontiguousarray(
        np.asarray(rows_in, dtype=np.int64).reshape(len(rows_in), len(lo_in))
    )
    rhs_arr = np.asarray(rhs_in, dtype=np.int64)
    cdef long long[:] lo = lo_arr
    cdef long long[:] hi = hi_arr
    cdef long long[:, :] A = a_arr
    cdef long long[:] rhs = rhs_arr
    cdef Py_ssize_t d = lo.shape[0]
    cdef Py_ssize_t nr = A.shape[0]
    part_arr = np.zeros((d, nr), dtype=np.int64)
    cdef long long[:, :] part = part_arr
    x_arr = np.zeros(d, dtype=np.int64)
    cdef long long[:] x = x_arr
    cdef long long total = 0
    cdef Py_ssize_t l, r, lvl
    cdef long long xmin, xmax, q, coef, base
    cdef bint empty

    for l in range(d - 1):
        x[l] = lo[l]
        for r in range(nr):
            part[l + 1, r] = part[l, r] + A[r, l] * lo[l]

    while True:
        xmin = lo[d - 1]
        xmax = hi[d - 1]
        empty = False
        for r in range(nr):
            base = part[d - 1, r]
            coef = A[r, d - 1]
            q = rhs[r] - base
            if strict:
                q -= 1
            if coef == 0:
                if q < 0:
                    empty = True
                    break
            elif coef > 0:
                if fdiv(q, coef) < xmax:
                    xmax = fdiv(q, coef)
            else:
                if cdiv(q, coef) > xmin:
                    xmin = cdiv(q, coef)
            if xmin > xmax:
                empty = True
                break
        if not empty and xmax >= xmin:
            total += xmax - xmin + 1
        lvl = d - 2
        while lvl >= 0 and x[lvl] == hi[lvl]:
            lvl -= 1
        if lvl < 0:
            break
        x[lvl] += 1
        for r in range(nr):
            part[lvl + 1, r] = part[lvl, r] + A[r, lvl] * x[lvl]
        for l in range(lvl + 1, d - 1):
            x[l] = lo[l]
            for r in range(nr):
                part[l + 1, r] = part[l, r] + A[r, l] * lo[l]
    return int(total)


def hist_max(lo_in, hi_in, u_in, long long max_value):
    """Histogram of max_j <u_j, x> over the box; values outside
    [0, max_value] are discarded."""
    for l_py, h_py in zip(lo_in, hi_in):
        if l_py > h_py:
            return np.zeros(max_value + 1, dtype=np.int64)
    lo_arr = np.asarray(lo_in, dtype=np.int64)
    hi_arr = np.asarray(hi_in, dtype=np.int64)
    u_arr = np.ascontiguousarray(np.asarray(u_in, dtype=np.int64))
    cdef long long[:] lo = lo_arr
    cdef long long[:] hi = hi_arr
    cdef long long[:, :] U = u_arr
    cdef Py_ssize_t d = lo.shape[0]
    cdef Py_ssize_t nu = U.shape[0]
    part_arr = np.zeros((d, nu), dtype=np.int64)
    cdef long long[:, :] part = part_arr
    x_arr = np.zeros(d, dtype=np.int64)
    cdef long long[:] x = x_arr
    out_arr = np.zeros(max_value + 1, dtype=np.int64)
    cdef long long[:] out = out_arr
    cdef Py_ssize_t l, j, lvl
    cdef long long xv, v, vj

    for l in range(d - 1):
        x[l] = lo[l]
        for j in range(nu):
            part[l + 1, j] = part[l, j] + U[j, l] * lo[l]

    while True:
        for xv in range(lo[d - 1], hi[d - 1] + 1):
            v = part[d - 1, 0] + U[0, d - 1] * xv
            for j in range(1, nu):
                vj = part[d - 1, j] + U[j, d - 1] * xv
                if vj > v:
                    v = vj
            if 0 <= v <= max_value:
                out[v] += 1
        lvl = d - 2
        while lvl >= 0 and x[lvl] == hi[lvl]:
            lvl -= 1
        if lvl < 0:
            break
        x[lvl] += 1
        for j in range(nu):
            part[lvl + 1, j] = part[lvl, j] + U[j, lvl] * x[lvl]
        for l in range(lvl + 1, d - 1):
            x[l] = lo[l]
            for j in range(nu):
                part[l + 1, j] = part[l, j] + U[j, l] * lo[l]
    return out_arr


def hist_locate(lo_in, hi_in, u_in, cone_rows_in, long long max_value):
    """Histogram of <u_c(x), x> where c(x) is the first cone containing x
    (all its rows nonnegative at x). Raises if some point is in no cone.

    A last-hit cache is tried first; for a valid fan the histogram is
    independent of which containing cone wins."""
    for l_py, h_py in zip(lo_in, hi_in):
        if l_py > h_py:
            return np.zeros(max_value + 1, dtype=np.int64)
    lo_arr = np.asarray(lo_in, dtype=np.int64)
    hi_arr = np.asarray(hi_in, dtype=np.int64)
    u_arr = np.ascontiguousarray(np.asarray(u_in, dtype=np.int64))
    cdef long long[:] lo = lo_arr
    cdef long long[:] hi = hi_arr
    cdef long long[:, :] U = u_arr
    cdef Py_ssize_t d = lo.shape[0]
    cdef Py_ssize_t nc = U.shape[0]

    flat = []
    offs = [0]
    for rows in cone_rows_in:
        for row in rows:
            flat.append(list(row))
        offs.append(len(flat))
    rows_arr = np.ascontiguousarray(np.asarray(flat, dtype=np.int64))
    off_arr = np.asarray(offs, dtype=np.int64)
    cdef long long[:, :] R = rows_arr
    cdef long long[:] off = off_arr
    cdef Py_ssize_t nrows = R.shape[0]

    part_arr = np.zeros((d, nrows), dtype=np.int64)
    upart_arr = np.zeros((d, nc), dtype=np.int64)
    cdef long long[:, :] part = part_arr
    cdef long long[:, :] upart = upart_arr
    x_arr = np.zeros(d, dtype=np.int64)
    cdef long long[:] x = x_arr
    out_arr = np.zeros(max_value + 1, dtype=np.int64)
    cdef long long[:] out = out_arr
    cdef Py_ssize_t l, r, lvl, c, cached, found
    cdef long long xv, v
    cdef bint inside

    for l in range(d - 1):
        x[l] = lo[l]
        for r in range(nrows):
            part[l + 1, r] = part[l, r] + R[r, l] * lo[l]
        for c in range(nc):
            upart[l + 1, c] = upart[l, c] + U[c, l] * lo[l]

    cached = 0
    while True:
        for xv in range(lo[d - 1], hi[d - 1] + 1):
            found = -1
            inside = True
            for r in range(off[cached], off[cached + 1]):
                if part[d - 1, r] + R[r, d - 1] * xv < 0:
                    inside = False
                    break
            if inside:
                found = cached
            else:
                for c in range(nc):
                    if c == cached:
                        continue
                    inside = True
                    for r in range(off[c], off[c + 1]):
                        if part[d - 1, r] + R[r, d - 1] * xv < 0:
                            inside = False
                            break
                    if inside:
                        found = c
                        cached = c
                        break
            if found < 0:
                raise RuntimeError("box point not located in any cone")
            v = upart[d - 1, found] + U[found, d - 1] * xv
            if 0 <= v <= max_value:
                out[v] += 1
        lvl = d - 2
        while lvl >= 0 and x[lvl] == hi[lvl]:
            lvl -= 1
        if lvl < 0:
            break
        x[lvl] += 1
        for r in range(nrows):
            part[lvl + 1, r] = part[lvl, r] + R[r, lvl] * x[lvl]
        for c in range(nc):
            upart[lvl + 1, c] = upart[lvl, c] + U[c, lvl] * x[lvl]
        for l in range(lvl + 1, d - 1):
            x[l] = lo[l]
            for r in range(nrows):
                part[l + 1, r] = part[l, r] + R[r, l] * lo[l]
            for c in range(nc):
                upart[l + 1, c] = upart[l, c] + U[c, l] * lo[l]
    return out_arr
