"""Exact rational linear algebra, integer normal forms, polynomials, series.

Everything here runs on Python's arbitrary-precision integers and
`fractions.Fraction`; nothing rounds, ever. Matrices are small (dimension
at most a dozen), so the plain O(n^3) eliminations below are the right tool.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    InconsistentSystemError,
    InputError,
    UnderdeterminedSystemError,
)

Rat = Fraction


def as_rat(x) -> Fraction:
    """Coerce an int, string like "3/4", or Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        raise InputError(f"refusing float {x!r}; use int, Fraction, or 'p/q' string")
    raise InputError(f"cannot interpret {x!r} as a rational number")


def rat_vector(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_rat(x) for x in xs)


class Mat:
    """Immutable rational matrix, stored row-major."""

    __slots__ = ("rows", "cols", "_r")

    def __init__(self, rows: Sequence[Sequence]):
        self._r = tuple(rat_vector(row) for row in rows)
        self.rows = len(self._r)
        self.cols = len(self._r[0]) if self._r else 0
        if any(len(row) != self.cols for row in self._r):
            raise InputError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Mat":
        cols = [rat_vector(c) for c in columns]
        if not cols:
            raise InputError("no columns")
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._r[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._r)

    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._r

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._r[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self._r == other._r

    def __hash__(self) -> int:
        return hash(self._r)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._r)
        return f"Mat[{body}]"

    def transpose(self) -> "Mat":
        return Mat([[self._r[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for row in self._r for x in row)

    def int_entries(self) -> list[list[int]]:
        if not self.is_integer():
            raise InputError("matrix has non-integer entries")
        return [[int(x) for x in row] for row in self._r]

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        oc = other.cols
        return Mat(
            [
                [sum((self._r[i][k] * other._r[k][j] for k in range(self.cols)), Fraction(0)) for j in range(oc)]
                for i in range(self.rows)
            ]
        )

    def __mul__(self, scalar) -> "Mat":
        s = as_rat(scalar)
        return Mat([[x * s for x in row] for row in self._r])

    __rmul__ = __mul__

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("shape mismatch in addition")
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._r, other._r)])

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (other * -1)

    def mul_vector(self, v: Sequence) -> tuple[Fraction, ...]:
        vv = rat_vector(v)
        if len(vv) != self.cols:
            raise InputError("vector length mismatch")
        return tuple(sum((row[k] * vv[k] for k in range(self.cols)), Fraction(0)) for row in self._r)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise InputError("determinant of a non-square matrix")
        m = [list(row) for row in self._r]
        n = self.rows
        sign = 1
        result = Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                sign = -sign
            result *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    for j in range(c, n):
                        m[i][j] -= f * m[c][j]
        return result * sign

    def rank(self) -> int:
        return matrix_rank(self._r)

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise InputError("inverse of a non-square matrix")
        n = self.rows
        m = [list(row) + [Fraction(i == j) for j in range(n)] for i, row in enumerate(self._r)]
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                raise InputError("matrix is singular")
            m[c], m[piv] = m[piv], m[c]
            inv = 1 / m[c][c]
            m[c] = [x * inv for x in m[c]]
            for i in range(n):
                if i != c and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return Mat([row[n:] for row in m])


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix given as a sequence of rows of rationals."""
    # coerce up front: on int rows, 1/x would silently be float division
    m = [[as_rat(x) for x in row] for row in rows]
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    rank = 0
    row = 0
    for c in range(nc):
        piv = next((i for i in range(row, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][c]
        for i in range(row + 1, nr):
            if m[i][c] != 0:
                f = m[i][c] * inv
                for j in range(c, nc):
                    m[i][j] -= f * m[row][j]
        row += 1
        rank += 1
        if row == nr:
            break
    return rank


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf(a: Mat) -> tuple[Mat, Mat]:
    """Column-style Hermite normal form: H = A @ U with U unimodular.

    H is lower staircase with positive pivots; in a pivot's row, entries to
    the left of the pivot are reduced into [0, pivot). This form is the
    canonical representative of the column lattice of A.
    """
    m = a.int_entries()
    nr, nc = a.rows, a.cols
    u = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def colop(j, k, coef):
        # col_j += coef * col_k
        for i in range(nr):
            m[i][j] += coef * m[i][k]
        for i in range(nc):
            u[i][j] += coef * u[i][k]

    def colswap(j, k):
        for i in range(nr):
            m[i][j], m[i][k] = m[i][k], m[i][j]
        for i in range(nc):
            u[i][j], u[i][k] = u[i][k], u[i][j]

    def colneg(j):
        for i in range(nr):
            m[i][j] = -m[i][j]
        for i in range(nc):
            u[i][j] = -u[i][j]

    c = 0
    for i in range(nr):
        if c >= nc:
            break
        if m[i][c] == 0:
            j0 = next((j for j in range(c + 1, nc) if m[i][j] != 0), None)
            if j0 is None:
                continue
            colswap(c, j0)
        for j in range(c + 1, nc):
            if m[i][j] == 0:
                continue
            g, s, t = _xgcd(m[i][c], m[i][j])
            p, q = m[i][c] // g, m[i][j] // g
            # replace (col_c, col_j) by (s*col_c + t*col_j, -q*col_c + p*col_j);
            # the 2x2 block has determinant s*p + t*q = 1
            for rows_mat, height in ((m, nr), (u, nc)):
                for ii in range(height):
                    x, y = rows_mat[ii][c], rows_mat[ii][j]
                    rows_mat[ii][c] = s * x + t * y
                    rows_mat[ii][j] = -q * x + p * y
        if m[i][c] < 0:
            colneg(c)
        piv = m[i][c]
        for j in range(c):
            q = m[i][j] // piv
            if q:
                colop(j, c, -q)
        c += 1
    return Mat(m), Mat(u)


def snf(a: Mat) -> tuple[Mat, Mat, Mat]:
    """Smith normal form: returns (D, U, V) with U @ A @ V = D.

    D is diagonal with nonnegative entries d_1 | d_2 | ..., and U, V are
    unimodular.
    """
    m = a.int_entries()
    nr, nc = a.rows, a.cols
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def rowop(i, k, coef):
        for j in range(nc):
            m[i][j] += coef * m[k][j]
        for j in range(nr):
            u[i][j] += coef * u[k][j]

    def colop(j, k, coef):
        for i in range(nr):
            m[i][j] += coef * m[i][k]
        for i in range(nc):
            v[i][j] += coef * v[i][k]

    def rowswap(i, k):
        m[i], m[k] = m[k], m[i]
        u[i], u[k] = u[k], u[i]

    def colswap(j, k):
        for i in range(nr):
            m[i][j], m[i][k] = m[i][k], m[i][j]
        for i in range(nc):
            v[i][j], v[i][k] = v[i][k], v[i][j]

    for k in range(min(nr, nc)):
        while True:
            entries = [
                (abs(m[i][j]), i, j) for i in range(k, nr) for j in range(k, nc) if m[i][j] != 0
            ]
            if not entries:
                break
            _, pi, pj = min(entries)
            if pi != k:
                rowswap(k, pi)
            if pj != k:
                colswap(k, pj)
            dirty = False
            for i in range(k + 1, nr):
                if m[i][k] != 0:
                    rowop(i, k, -(m[i][k] // m[k][k]))
                    if m[i][k] != 0:
                        dirty = True
            for j in range(k + 1, nc):
                if m[k][j] != 0:
                    colop(j, k, -(m[k][j] // m[k][k]))
                    if m[k][j] != 0:
                        dirty = True
            if dirty:
                continue
            if any(m[i][k] != 0 for i in range(k + 1, nr)) or any(
                m[k][j] != 0 for j in range(k + 1, nc)
            ):
                continue
            # divisibility fix-up: pivot must divide the remaining block
            offender = None
            for i in range(k + 1, nr):
                for j in range(k + 1, nc):
                    if m[i][j] % m[k][k] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            rowop(k, offender, 1)
        if m[k][k] < 0:
            for j in range(nc):
                m[k][j] = -m[k][j]
            for j in range(nr):
                u[k][j] = -u[k][j]
    return Mat(m), Mat(u), Mat(v)


def _rref(aug: list[list[Fraction]], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form on the first `cols` columns; returns pivot columns."""
    aug = [[as_rat(x) for x in row] for row in aug]
    nr = len(aug)
    pivots = []
    row = 0
    for c in range(cols):
        piv = next((i for i in range(row, nr) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][c]
        aug[row] = [x * inv for x in aug[row]]
        for i in range(nr):
            if i != row and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        pivots.append(c)
        row += 1
        if row == nr:
            break
    return aug, pivots


def solve_exact(a: Mat, b: Sequence) -> tuple[Fraction, ...]:
    """Solve A x = b exactly; the solution must be unique.

    Raises InconsistentSystemError when no solution exists and
    UnderdeterminedSystemError when the solution space is positive-dimensional.
    """
    bb = rat_vector(b)
    if len(bb) != a.rows:
        raise InputError("right-hand side length mismatch")
    aug = [list(row) + [bb[i]] for i, row in enumerate(a.entries())]
    aug, pivots = _rref(aug, a.cols)
    for row in aug[len(pivots):]:
        if row[a.cols] != 0:
            raise InconsistentSystemError("A x = b has no solution")
    if len(pivots) < a.cols:
        raise UnderdeterminedSystemError("A x = b has infinitely many solutions")
    x = [Fraction(0)] * a.cols
    for r, c in enumerate(pivots):
        x[c] = aug[r][a.cols]
    return tuple(x)


def nullspace(a: Mat) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0}, one tuple per free column."""
    aug = [list(row) for row in a.entries()]
    aug, pivots = _rref(aug, a.cols)
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * a.cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -aug[r][fc]
        basis.append(tuple(vec))
    return basis


class Poly:
    """Univariate polynomial with exact rational coefficients.

    Coefficients are indexed by degree and never carry trailing zeros; the
    zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([as_rat(c)])

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            [self.coefficient(i) + other.coefficient(i) for i in range(n)]
        )

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise InputError("negative polynomial power")
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        xv = as_rat(x)
        for c in reversed(self.coeffs):
            acc = acc * xv + c
        return acc

    def shifted(self, m: int) -> "Poly":
        """Multiply by t^m."""
        if not self.coeffs:
            return self
        return Poly((Fraction(0),) * m + self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise InputError(f"polynomial has non-integer coefficients: {self.coeffs}")
        return tuple(int(c) for c in self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "Poly(" + " + ".join(terms) + ")"


def one_minus_t_power(k: int) -> Poly:
    """(1 - t)^k as a Poly."""
    return Poly([1, -1]) ** k


def lagrange_interpolate(points: Sequence[tuple]) -> Poly:
    """The unique polynomial of degree < len(points) through the given (x, y) pairs."""
    result = Poly()
    xs = [as_rat(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise InputError("repeated interpolation nodes")
    for i, (_, y) in enumerate(points):
        num = Poly([1])
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * Poly([-xj, 1])
            den *= xs[i] - xj
        result = result + num * (as_rat(y) / den)
    return result


class TruncSeries:
    """Power series truncated at a fixed order: coefficients of t^0 .. t^order.

    Arithmetic requires equal truncation orders; mixing orders raises.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [as_rat(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise InputError("truncation order must be nonnegative")
        if len(cs) < order + 1:
            cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs[: order + 1])
        self.order = order

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "TruncSeries":
        return cls([p.coefficient(i) for i in range(order + 1)], order)

    @classmethod
    def geometric(cls, order: int) -> "TruncSeries":
        """1/(1-t) up to the given order."""
        return cls([1] * (order + 1), order)

    @classmethod
    def inv_one_minus_t_power(cls, k: int, order: int) -> "TruncSeries":
        """1/(1-t)^k up to the given order."""
        return cls([math.comb(m + k - 1, k - 1) for m in range(order + 1)], order)

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i <= self.order:
            return self.coeffs[i]
        raise InputError(f"coefficient {i} beyond truncation order {self.order}")

    def _check(self, other: "TruncSeries"):
        if not isinstance(other, TruncSeries):
            raise InputError("expected a TruncSeries")
        if self.order != other.order:
            raise InputError(f"truncation order mismatch: {self.order} vs {other.order}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            return TruncSeries([c * other for c in self.coeffs], self.order)
        self._check(other)
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncSeries(out, self.order)

    __rmul__ = __mul__

    def mul_poly(self, p: Poly) -> "TruncSeries":
        return self * TruncSeries.from_poly(p, self.order)

    def inverse(self) -> "TruncSeries":
        if self.coeffs[0] == 0:
            raise InputError("series with zero constant term has no inverse")
        inv0 = 1 / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * self.order
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                acc += self.coeffs[k] * out[n - k]
            out[n] = -acc * inv0
        return TruncSeries(out, self.order)

    def first_difference(self, other: "TruncSeries") -> int | None:
        """Index of the first differing coefficient, or None when equal."""
        self._check(other)
        for i, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return i
        return None

    def __repr__(self) -> str:
        return f"TruncSeries({list(self.coeffs)}, order={self.order})"
