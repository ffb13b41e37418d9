"""Lattice-point enumeration kernels.

Two operations run hot enough to matter: counting box points subject to
integer inequalities, and histogramming an integer piecewise-linear value
over a box. A Cython extension implements both in int64; a numpy fallback
is selected at import time when the extension is unavailable (or when the
DELTAFAN_PURE environment variable is set). Before dispatching, an exact
worst-case bound over the box is computed in Python integers; inputs that
could overflow int64 are routed to an object-dtype exact path instead.
"""

from __future__ import annotations

import os
from typing import Sequence

from ..errors import InputError, InvariantError
from . import _fallback

try:  # pragma: no cover - exercised implicitly by which backend runs
    from . import _core
except ImportError:
    _core = None

if os.environ.get("DELTAFAN_PURE"):
    _core = None

_INT64_SAFE = 1 << 62


def active_backend() -> str:
    return "compiled" if _core is not None else "numpy"


def _check_box(lo: Sequence[int], hi: Sequence[int]) -> bool:
    if len(lo) != len(hi) or not lo:
        raise InputError("malformed box")
    return all(l <= h for l, h in zip(lo, hi))


def _row_bound(row: Sequence[int], lo: Sequence[int], hi: Sequence[int]) -> int:
    return sum(max(abs(a * l), abs(a * h)) for a, l, h in zip(row, lo, hi))


def count_box(
    lo: Sequence[int],
    hi: Sequence[int],
    rows: Sequence[Sequence[int]],
    rhs: Sequence[int],
    strict: bool = False,
) -> int:
    """Number of integer points x in the box [lo, hi] with rows @ x <= rhs
    (strictly, when `strict`)."""
    if not _check_box(lo, hi):
        return 0
    if len(rows) != len(rhs):
        raise InputError("inequality row/rhs mismatch")
    if not rows:
        n = 1
        for l, h in zip(lo, hi):
            n *= h - l + 1
        return n
    bound = max(
        max(_row_bound(row, lo, hi) for row in rows),
        max(abs(int(b)) for b in rhs),
    )
    if bound >= _INT64_SAFE:
        return _fallback.count_box_object(lo, hi, rows, rhs, strict)
    if _core is not None:
        return _core.count_box(lo, hi, rows, rhs, strict)
    return _fallback.count_box_int64(lo, hi, rows, rhs, strict)


def value_histogram(
    lo: Sequence[int],
    hi: Sequence[int],
    max_value: int,
    u_rows: Sequence[Sequence[int]],
    cone_rows: Sequence[Sequence[Sequence[int]]] | None = None,
) -> list[int]:
    """Histogram of an integer piecewise-linear value over the box.

    With `cone_rows` None the value at x is max_j <u_rows[j], x> (valid when
    the function is convex). Otherwise cone_rows[j] lists inequality rows of
    cone j (<row, x> >= 0 meaning x in cone j); the value at x is <u_j, x>
    for the first cone containing x, and every box point must lie in some
    cone. Values outside [0, max_value] are discarded. Returns a list of
    length max_value + 1.
    """
    if max_value < 0:
        raise InputError("max_value must be nonnegative")
    if not u_rows:
        raise InputError("no value rows")
    if not _check_box(lo, hi):
        return [0] * (max_value + 1)
    all_rows = [list(r) for r in u_rows]
    if cone_rows is not None:
        if len(cone_rows) != len(u_rows):
            raise InputError("cone/value row mismatch")
        for rows in cone_rows:
            all_rows.extend(list(r) for r in rows)
    bound = max(max(_row_bound(row, lo, hi) for row in all_rows), max_value)
    if bound >= _INT64_SAFE:
        hist = _fallback.histogram_object(lo, hi, max_value, u_rows, cone_rows)
    elif _core is not None:
        try:
            if cone_rows is None:
                hist = _core.hist_max(lo, hi, u_rows, max_value)
            else:
                hist = _core.hist_locate(lo, hi, u_rows, cone_rows, max_value)
        except RuntimeError as exc:
            raise InvariantError(str(exc)) from exc
    else:
        hist = _fallback.histogram_int64(lo, hi, max_value, u_rows, cone_rows)
    return [int(x) for x in hist]
