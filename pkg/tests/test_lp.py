"""Exact feasibility of systems <row, x> >= rhs."""

from fractions import Fraction

from hypothesis import given, strategies as st

from deltafan.lp import feasible_geq


def test_empty_system_is_feasible():
    assert feasible_geq([], [])


def test_single_halfspace():
    assert feasible_geq([[1, 0]], [5])


def test_opposite_halfspaces_strict_gap_infeasible():
    # x >= 1 and -x >= 0 cannot both hold
    assert not feasible_geq([[1], [-1]], [1, 0])


def test_opposite_halfspaces_touching_feasible():
    # x >= 1 and -x >= -1 meet exactly at x = 1
    assert feasible_geq([[1], [-1]], [1, -1])


def test_cone_interior_overlap():
    # first quadrant interior vs the cone over (1, 1) and (0, 1): both contain
    # directions around (1, 2), so the combined system is feasible
    q1 = [[1, 0], [0, 1]]
    q2 = [[1, 0], [-1, 1]]
    assert feasible_geq(q1 + q2, [1] * 4)


def test_disjoint_cone_interiors():
    # first and third quadrant interiors share no point
    q1 = [[1, 0], [0, 1]]
    q3 = [[-1, 0], [0, -1]]
    assert not feasible_geq(q1 + q3, [1] * 4)


def test_rational_data():
    assert feasible_geq([[Fraction(1, 3), Fraction(-1, 2)]], [Fraction(7, 5)])


@given(
    st.lists(
        st.tuples(
            st.lists(st.integers(-4, 4), min_size=2, max_size=2),
            st.integers(-3, 3),
        ),
        min_size=1,
        max_size=5,
    ),
    st.lists(st.integers(-6, 6), min_size=2, max_size=2),
)
def test_witness_implies_feasible(system, point):
    """Any system satisfied by a concrete point must be reported feasible."""
    rows = [row for row, _ in system]
    rhs = [b for _, b in system]
    holds = all(
        sum(a * x for a, x in zip(row, point)) >= b for row, b in zip(rows, rhs)
    )
    if holds:
        assert feasible_geq(rows, rhs)
