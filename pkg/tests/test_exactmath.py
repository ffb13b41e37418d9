"""Exact linear algebra, polynomials, and truncated series."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltafan.errors import (
    InconsistentSystemError,
    InputError,
    UnderdeterminedSystemError,
)
from deltafan.exactmath import (
    Mat,
    Poly,
    TruncSeries,
    as_rat,
    hnf,
    lagrange_interpolate,
    matrix_rank,
    nullspace,
    one_minus_t_power,
    snf,
    solve_exact,
)

from .oracles import oracle_det, oracle_rank, oracle_solve

small_int = st.integers(min_value=-9, max_value=9)


def int_matrix(rows, cols):
    return st.lists(
        st.lists(small_int, min_size=cols, max_size=cols), min_size=rows, max_size=rows
    )


class TestRationalGuard:
    def test_floats_are_rejected(self):
        with pytest.raises(InputError):
            as_rat(0.5)
        with pytest.raises(InputError):
            Mat([[1.0, 2.0]])

    def test_string_fractions_parse(self):
        assert as_rat("3/4") == Fraction(3, 4)
        assert as_rat("-7") == Fraction(-7)


class TestMat:
    def test_matmul_and_inverse(self):
        a = Mat([[2, 1], [1, 1]])
        assert (a @ a.inverse()) == Mat.identity(2)

    def test_det_matches_oracle(self):
        rows = [[3, 1, 2], [0, 2, 5], [1, 1, 1]]
        assert Mat(rows).det() == oracle_det(rows)

    def test_rank_on_integer_rows_is_exact(self):
        # rows orthogonal to (1, 1, 1): rank can be at most 2
        rows = [[1, -1, 0], [0, 1, -1], [1, 0, -1], [2, -1, -1]]
        assert matrix_rank(rows) == 2 == oracle_rank(rows)

    @given(int_matrix(3, 3))
    @settings(max_examples=60, deadline=None)
    def test_rank_and_det_match_oracle(self, rows):
        assert matrix_rank(rows) == oracle_rank(rows)
        assert Mat(rows).det() == oracle_det(rows)

    def test_from_columns_round_trip(self):
        cols = [(1, 2, 3), (0, 1, 4)]
        m = Mat.from_columns(cols)
        assert m.column(0) == (1, 2, 3)
        assert m.column(1) == (0, 1, 4)
        assert (m.rows, m.cols) == (3, 2)


class TestSolve:
    def test_unique_solution(self):
        a = Mat([[1, 1], [1, -1]])
        assert solve_exact(a, [3, 1]) == (Fraction(2), Fraction(1))

    def test_inconsistent(self):
        a = Mat([[1, 1], [2, 2]])
        with pytest.raises(InconsistentSystemError):
            solve_exact(a, [1, 3])

    def test_underdetermined(self):
        a = Mat([[1, 1], [2, 2]])
        with pytest.raises(UnderdeterminedSystemError):
            solve_exact(a, [1, 2])

    @given(int_matrix(3, 3), st.lists(small_int, min_size=3, max_size=3))
    @settings(max_examples=60, deadline=None)
    def test_solutions_verify(self, rows, b):
        a = Mat(rows)
        try:
            x = solve_exact(a, b)
        except (InconsistentSystemError, UnderdeterminedSystemError):
            # cross-check: oracle must agree that the system is degenerate
            assert oracle_rank(rows) < 3 or oracle_solve(rows, b) is None
            return
        assert list(a.mul_vector(x)) == [Fraction(v) for v in b]

    def test_nullspace_is_orthogonal_kernel(self):
        a = Mat([[1, 1, 1]])
        basis = nullspace(a)
        assert len(basis) == 2
        for v in basis:
            assert sum(v) == 0


class TestHNF:
    def test_staircase_shape_and_unimodularity(self):
        a = Mat([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
        h, u = hnf(a)
        assert abs(u.det()) == 1
        assert (a @ u) == h
        # pivots positive, entries left of each pivot reduced into [0, pivot)
        pivot_rows = []
        for j in range(h.cols):
            col = [h[i, j] for i in range(h.rows)]
            nz = [i for i, x in enumerate(col) if x != 0]
            if nz:
                pivot_rows.append(max(nz))
        assert pivot_rows == sorted(pivot_rows)

    @given(int_matrix(3, 3))
    @settings(max_examples=40, deadline=None)
    def test_hnf_preserves_column_span(self, rows):
        a = Mat(rows)
        h, u = hnf(a)
        assert abs(u.det()) == 1
        assert (a @ u) == h

    def test_idempotent_on_hnf_input(self):
        a = Mat([[2, 0, 0], [1, 3, 0], [1, 1, 4]])
        h, _ = hnf(a)
        h2, _ = hnf(h)
        assert h == h2


class TestSNF:
    def test_transforms_multiply_out(self):
        a = Mat([[2, 4], [6, 8]])
        d, u, v = snf(a)
        assert (u @ a @ v) == d
        assert abs(u.det()) == 1 and abs(v.det()) == 1

    def test_divisibility_chain(self):
        a = Mat([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
        d, u, v = snf(a)
        diag = [int(d[i, i]) for i in range(3)]
        assert all(x >= 0 for x in diag)
        for x, y in zip(diag, diag[1:]):
            if y != 0:
                assert y % x == 0

    def test_index_two_sublattice(self):
        # columns span a sublattice of Z^2 of index 2
        a = Mat.from_columns([(1, 1), (1, -1)])
        d, _, _ = snf(a)
        assert [int(d[i, i]) for i in range(2)] == [1, 2]

    @given(int_matrix(3, 3))
    @settings(max_examples=40, deadline=None)
    def test_snf_determinant_invariant(self, rows):
        a = Mat(rows)
        d, u, v = snf(a)
        assert (u @ a @ v) == d
        prod = Fraction(1)
        for i in range(3):
            prod *= d[i, i]
        assert abs(prod) == abs(a.det())


class TestPoly:
    def test_arithmetic_and_eval(self):
        p = Poly([1, 2, 1])  # (1+t)^2
        q = Poly([1, 1])
        assert q * q == p
        assert p(3) == 16
        assert (p - q).coeffs == (0, 1, 1)

    def test_shift_multiplies_by_power(self):
        p = Poly([1, 1])
        assert p.shifted(2).coeffs == (0, 0, 1, 1)

    def test_one_minus_t_power(self):
        assert one_minus_t_power(2).coeffs == (1, -2, 1)
        assert one_minus_t_power(0).coeffs == (1,)

    def test_lagrange_recovers_polynomial(self):
        p = Poly([2, -1, 3])
        pts = [(m, p(m)) for m in range(3)]
        assert lagrange_interpolate(pts) == p

    @given(st.lists(small_int, min_size=1, max_size=5))
    @settings(max_examples=50, deadline=None)
    def test_lagrange_round_trip(self, coeffs):
        p = Poly(coeffs)
        n = max(len(coeffs), 1)
        assert lagrange_interpolate([(m, p(m)) for m in range(n)]) == p


class TestTruncSeries:
    def test_geometric_telescopes(self):
        s = TruncSeries.geometric(6)
        prod = s.mul_poly(Poly([1, -1]))
        assert prod.coeffs == tuple([Fraction(1)] + [Fraction(0)] * 6)

    def test_inverse_of_power(self):
        s = TruncSeries.inv_one_minus_t_power(3, 8)
        back = s.mul_poly(one_minus_t_power(3))
        assert back.coeffs[0] == 1
        assert all(c == 0 for c in back.coeffs[1:])

    def test_order_mismatch_raises(self):
        with pytest.raises(InputError):
            TruncSeries([1, 2], 1) + TruncSeries([1, 2, 3], 2)

    def test_first_difference(self):
        a = TruncSeries([1, 2, 3, 4], 3)
        b = TruncSeries([1, 2, 5, 4], 3)
        assert a.first_difference(b) == 2
        assert a.first_difference(a) is None

    def test_series_inverse(self):
        s = TruncSeries([1, 3, 2, 1], 3)
        inv = s.inverse()
        assert (s * inv).coeffs == (1, 0, 0, 0)
