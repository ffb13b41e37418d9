"""Counting profiles: delta extraction, degree/dilation duality, reciprocity."""

import pytest

from deltafan.ehrhart import (
    check_symmetry,
    check_unimodality,
    delta_from_counts,
    polytope_profile,
    profile,
    reciprocity_check,
)
from deltafan.errors import EhrhartConsistencyError
from deltafan.lattice import Lattice
from deltafan.polytope import hull

from .oracles import delta_from_counts_oracle


def std_hull(pts):
    return hull(Lattice.standard(len(pts[0])), pts)


class TestDeltaExtraction:
    def test_unit_interval(self):
        # f(m) = m + 1 -> delta (1, 0)
        assert delta_from_counts((1, 2), 1) == (1, 0)

    def test_unit_square(self):
        # f(m) = (m+1)^2 -> delta (1, 1, 0)
        assert delta_from_counts((1, 4, 9), 2) == (1, 1, 0)

    def test_matches_oracle_formula(self):
        counts = (1, 13, 78, 314, 975, 2538, 5814)
        d = 6
        assert list(delta_from_counts(counts, d)) == delta_from_counts_oracle(
            list(counts), d
        )


class TestProfile:
    def test_square_profile(self):
        p = std_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        prof = polytope_profile(p)
        assert prof.delta == (1, 1, 0)
        assert prof.ell == 1
        # no interior points until the second dilate: r = 2, ell = d + 1 - r
        assert prof.r == 2
        assert prof.poly(5) == 36

    def test_reflexive_simplex_profile(self):
        p = std_hull([(1, 0), (0, 1), (-1, -1)])
        prof = polytope_profile(p)
        assert prof.delta == (1, 1, 1)
        assert prof.ell == 2
        assert prof.r == 1

    def test_degree_dilation_duality(self):
        for pts in [
            [(0, 0), (1, 0), (0, 1)],
            [(0, 0), (2, 0), (0, 2)],
            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
            [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
        ]:
            prof = polytope_profile(std_hull(pts))
            assert prof.ell == prof.dim + 1 - prof.r

    def test_bad_counter_rejected(self):
        with pytest.raises(EhrhartConsistencyError):
            profile(lambda m: 2**m, 2)  # f(0)=1 but not a degree-2 polynomial count
        with pytest.raises(EhrhartConsistencyError):
            profile(lambda m: m + 7, 1)  # f(0) != 1


class TestSymmetryUnimodality:
    def test_symmetric_cases(self):
        p = std_hull([(1, 0), (0, 1), (-1, 0), (0, -1)])
        assert check_symmetry(polytope_profile(p))

    def test_asymmetric_case(self):
        p = std_hull([(0, 0), (1, 0), (0, 1)])
        assert not check_symmetry(polytope_profile(p))

    def test_unimodality_detects_valley(self):
        p = std_hull([(1, 0), (0, 1), (-1, 0), (0, -1)])
        rep = check_unimodality(polytope_profile(p))
        assert rep.unimodal
        assert rep.descents == ()
        assert rep.weak_ineq_holds


class TestReciprocity:
    @pytest.mark.parametrize(
        "pts",
        [
            [(0, 0), (1, 0), (0, 1)],
            [(0, 0), (2, 0), (0, 3), (2, 3)],
            [(1, 0), (0, 1), (-1, -1)],
            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
            [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
            [(1, 1), (-1, 1), (1, -1), (-1, -1)],
        ],
    )
    def test_reciprocity(self, pts):
        assert reciprocity_check(std_hull(pts), m_max=3)

    def test_reflexive_specialization(self):
        # for reflexive P: interior of mP equals all of (m-1)P
        p = std_hull([(1, 1), (-1, 1), (1, -1), (-1, -1)])
        assert p.is_reflexive().reflexive
        for m in range(1, 4):
            assert p.count_points(m, interior=True) == p.count_points(m - 1)
