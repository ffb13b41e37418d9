"""Lattice polytopes: counting, reflexivity certificates, polar duality."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltafan.errors import InputError, InvariantError
from deltafan.lattice import Lattice
from deltafan.polytope import hull

from .oracles import brute_count

small_int = st.integers(min_value=-3, max_value=3)


def std_hull(pts):
    return hull(Lattice.standard(len(pts[0])), pts)


class TestCounting:
    def test_unit_square_counts(self):
        p = std_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        assert [p.count_points(m) for m in range(4)] == [1, 4, 9, 16]
        assert p.count_points(3, interior=True) == 4

    def test_counts_match_oracle_small_cases(self):
        cases = [
            [(0, 0), (2, 0), (0, 3)],
            [(-1, -1), (2, 0), (0, 2), (1, 2)],
            [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
            [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
        ]
        for pts in cases:
            p = std_hull(pts)
            for m in range(1, 5):
                assert p.count_points(m) == brute_count(pts, m), (pts, m)
                assert p.count_points(m, interior=True) == brute_count(
                    pts, m, interior=True
                ), (pts, m)

    def test_counting_in_refined_lattice(self):
        # the diamond in the lattice Z^2 + (1/2,1/2) picks up the half-integer center shifts
        lat = Lattice.from_generators([(1, 0), (Fraction(1, 2), Fraction(1, 2))])
        pts = [(1, 0), (0, 1), (-1, 0), (0, -1)]
        p = hull(lat, pts)
        cols = [[1, 0], [Fraction(1, 2), Fraction(1, 2)]]
        for m in range(1, 4):
            assert p.count_points(m) == brute_count(pts, m, basis_columns=cols)

    @given(
        st.lists(st.tuples(small_int, small_int), min_size=3, max_size=6, unique=True),
        st.integers(min_value=1, max_value=3),
    )
    @settings(max_examples=40, deadline=None)
    def test_2d_counts_match_oracle(self, pts, m):
        try:
            p = std_hull(pts)
        except InputError:
            return
        assert p.count_points(m) == brute_count(pts, m)

    def test_unimodular_invariance(self):
        pts = [(0, 0), (2, 0), (0, 2), (3, 3)]
        p = std_hull(pts)
        # apply the unimodular map (x, y) -> (x + 2y, y) and a translation
        moved = [(x + 2 * y + 1, y - 4) for x, y in pts]
        q = std_hull(moved)
        for m in range(4):
            assert p.count_points(m) == q.count_points(m)

    def test_contains(self):
        p = std_hull([(0, 0), (2, 0), (0, 2)])
        assert p.contains((1, 1))
        assert not p.contains((1, 1), strict=True)
        assert p.contains((Fraction(1, 2), Fraction(1, 2)), strict=True)
        assert not p.contains((2, 1))

    def test_lattice_points_listing(self):
        p = std_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        assert sorted(p.lattice_points()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert p.lattice_points(2, interior=True) == [(1, 1)]


class TestFacetNormalization:
    def test_normals_are_primitive_with_distance_rhs(self):
        p = std_hull([(0, 0), (4, 0), (0, 4)])
        for f in p.facets:
            from math import gcd

            g = 0
            for x in f.normal:
                g = gcd(g, abs(x))
            assert g == 1

    def test_vertex_ids_index_vertices(self):
        p = std_hull([(0, 0), (3, 0), (0, 3), (1, 1)])
        assert len(p.vertices) == 3
        for f in p.facets:
            for i in f.vertex_ids:
                assert 0 <= i < len(p.vertices)


class TestReflexivity:
    def test_cross_polytope_reflexive(self):
        p = std_hull([(1, 0), (0, 1), (-1, 0), (0, -1)])
        chk = p.is_reflexive()
        assert chk.reflexive
        assert "distance 1" in chk.certificate

    def test_origin_not_interior(self):
        p = std_hull([(0, 0), (1, 0), (0, 1)])
        chk = p.is_reflexive()
        assert not chk.reflexive
        assert "interior" in chk.certificate

    def test_distance_two_facet_certificate(self):
        p = std_hull([(2, 0), (0, 2), (-2, -2)])
        chk = p.is_reflexive()
        assert not chk.reflexive
        assert chk.lattice_distance == 2
        assert "distance 2" in chk.certificate

    def test_unit_simplex_with_origin_shifted_inside(self):
        # conv(e_1, e_2, -(e_1+e_2)) is reflexive in Z^2
        p = std_hull([(1, 0), (0, 1), (-1, -1)])
        assert p.is_reflexive().reflexive


class TestPolar:
    def test_polar_involution_on_cross(self):
        p = std_hull([(1, 0), (0, 1), (-1, 0), (0, -1)])
        q = p.polar()
        assert {tuple(v.ambient) for v in q.vertices} == {
            (1, 1),
            (1, -1),
            (-1, 1),
            (-1, -1),
        }
        back = q.polar()
        assert {tuple(v.ambient) for v in back.vertices} == {
            tuple(v.ambient) for v in p.vertices
        }

    def test_polar_lattice_is_dual(self):
        lat = Lattice.standard(2)
        p = hull(lat, [(1, 0), (0, 1), (-1, -1)])
        q = p.polar()
        assert q.lattice == lat.dual()
        assert q.is_reflexive().reflexive

    def test_polar_requires_reflexive(self):
        p = std_hull([(2, 0), (0, 2), (-2, -2)])
        with pytest.raises(InputError, match="polar"):
            p.polar()


class TestHullInput:
    def test_duplicates_are_deduped(self):
        p = std_hull([(0, 0), (1, 0), (1, 0), (0, 1)])
        assert len(p.vertices) == 3

    def test_low_dimensional_rejected(self):
        with pytest.raises(InputError):
            std_hull([(0, 0), (1, 1)])
