"""Numpy-based enumeration kernels: int64 fast path and exact object path.

The object path exists for inputs whose intermediate products could exceed
int64; it runs the same algorithms on object-dtype arrays (Python ints), so
it is slow but exact. Chunking enumerates leading coordinates in Python and
vectorizes the trailing ones.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

import numpy as np

from ..errors import InvariantError

_CHUNK_INT = 1 << 19
_CHUNK_OBJ = 1 << 14


def _chunks(lo: Sequence[int], hi: Sequence[int], target: int):
    """Yield (prefix tuple, grid array of trailing coordinates).

    The grid rows enumerate the trailing box coordinates; prefixes cover the
    leading ones. Grid dtype is int64 (box coordinates are always small).
    """
    d = len(lo)
    sizes = [h - l + 1 for l, h in zip(lo, hi)]
    if any(s <= 0 for s in sizes):
        return
    total = 1
    for s in sizes:
        total *= s
    split = 0
    suffix = total
    while suffix > target and split < d - 1:
        suffix //= sizes[split]
        split += 1
    grid = np.indices(sizes[split:], dtype=np.int64).reshape(d - split, -1).T
    grid = grid + np.array(lo[split:], dtype=np.int64)
    prefix_ranges = [range(lo[i], hi[i] + 1) for i in range(split)]
    for prefix in product(*prefix_ranges):
        yield prefix, grid


def _count_box(lo, hi, rows, rhs, strict, dtype, target):
    if not len(rows):
        vol = 1
        for l, h in zip(lo, hi):
            vol *= max(0, h - l + 1)
        return vol
    a = np.array([list(r) for r in rows], dtype=dtype)
    b = np.array([int(x) for x in rhs], dtype=dtype)
    d = len(lo)
    count = 0
    for prefix, grid in _chunks(lo, hi, target):
        s = len(prefix)
        g = grid if dtype is np.int64 else grid.astype(object)
        vals = g.dot(a[:, s:].T)
        if s:
            p = np.array(prefix, dtype=dtype)
            vals = vals + a[:, :s].dot(p)
        ok = (vals < b) if strict else (vals <= b)
        count += int(np.count_nonzero(ok.all(axis=1)))
    return count


def count_box_int64(lo, hi, rows, rhs, strict):
    return _count_box(lo, hi, rows, rhs, strict, np.int64, _CHUNK_INT)


def count_box_object(lo, hi, rows, rhs, strict):
    return _count_box(lo, hi, rows, rhs, strict, object, _CHUNK_OBJ)


def _histogram(lo, hi, max_value, u_rows, cone_rows, dtype, target):
    u = np.array([list(r) for r in u_rows], dtype=dtype)
    cones = None
    if cone_rows is not None:
        cones = [np.array([list(r) for r in rows], dtype=dtype) for rows in cone_rows]
    hist = np.zeros(max_value + 1, dtype=np.int64)
    for prefix, grid in _chunks(lo, hi, target):
        s = len(prefix)
        g = grid if dtype is np.int64 else grid.astype(object)
        p = np.array(prefix, dtype=dtype) if s else None
        if cones is None:
            vals = g.dot(u[:, s:].T)
            if s:
                vals = vals + u[:, :s].dot(p)
            v = vals.max(axis=1)
        else:
            n = g.shape[0]
            v = np.zeros(n, dtype=dtype)
            located = np.zeros(n, dtype=bool)
            for ci, rows in enumerate(cones):
                pending = ~located
                if not pending.any():
                    break
                inside = rows[:, s:].dot(g[pending].T)
                if s:
                    inside = inside + rows[:, :s].dot(p)[:, None]
                mask = (inside >= 0).all(axis=0)
                if not mask.any():
                    continue
                idx = np.flatnonzero(pending)[mask]
                uv = g[idx].dot(u[ci, s:])
                if s:
                    uv = uv + u[ci, :s].dot(p)
                v[idx] = uv
                located[idx] = True
            if not located.all():
                raise InvariantError("box point not located in any cone")
        keep = (v >= 0) & (v <= max_value)
        if keep.any():
            vk = v[keep].astype(np.int64)
            hist += np.bincount(vk, minlength=max_value + 1)
    return hist.tolist()


def histogram_int64(lo, hi, max_value, u_rows, cone_rows):
    return _histogram(lo, hi, max_value, u_rows, cone_rows, np.int64, _CHUNK_INT)


def histogram_object(lo, hi, max_value, u_rows, cone_rows):
    return _histogram(lo, hi, max_value, u_rows, cone_rows, object, _CHUNK_OBJ)
