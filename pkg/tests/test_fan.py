"""Complete fans: validation, support functions, histograms, delta profiles."""

import pytest

from deltafan.errors import (
    FanError,
    InputError,
    InvariantError,
    NotGorensteinError,
)
from deltafan.fan import SupportFunction, build_fan, face_fan
from deltafan.lattice import Lattice
from deltafan.polytope import hull

L2 = Lattice.standard(2)
L3 = Lattice.standard(3)

AXES_2D = [(1, 0), (0, 1), (-1, 0), (0, -1)]
AXES_CONES = [(0, 1), (1, 2), (2, 3), (3, 0)]

# one cone of lattice index two; still Gorenstein, Q is a reflexive quadrilateral
QUAD_RAYS = [(1, 0), (1, 2), (-1, 0), (0, -1)]
QUAD_CONES = [(0, 1), (1, 2), (2, 3), (3, 0)]

# the region of this fan is a non-convex star around the origin
STAR_RAYS = [(1, 0), (3, 1), (0, 1), (-1, 0), (0, -1)]
STAR_CONES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]


def axes_fan():
    return build_fan(L2, AXES_2D, AXES_CONES)


class TestValidation:
    def test_zero_ray(self):
        with pytest.raises(FanError, match="ray 0 is zero"):
            build_fan(L2, [(0, 0), (0, 1), (-1, -1)], [(0, 1)])

    @pytest.mark.filterwarnings("ignore:ray 1 is not primitive")
    def test_duplicate_rays_after_primitivization(self):
        with pytest.raises(FanError, match="coincide after primitivization"):
            build_fan(L2, [(1, 0), (2, 0), (0, 1)], [(0, 2), (1, 2)])

    def test_primitivization_warns(self):
        rays = [(2, 0), (0, 1), (-1, 0), (0, -1)]
        with pytest.warns(UserWarning, match="ray 0 is not primitive"):
            fan = build_fan(L2, rays, AXES_CONES)
        assert fan.rays[0].coords == (1, 0)

    def test_cone_repeats_ray(self):
        with pytest.raises(FanError, match="cone 0 repeats a ray"):
            build_fan(L2, AXES_2D, [(0, 0), (1, 2), (2, 3), (3, 0)])

    def test_cone_references_missing_ray(self):
        with pytest.raises(FanError, match="does not exist"):
            build_fan(L2, AXES_2D, [(0, 9), (1, 2), (2, 3), (3, 0)])

    def test_cone_with_too_few_rays(self):
        with pytest.raises(FanError, match="fewer than 2 rays"):
            build_fan(L2, AXES_2D, [(0,), (1, 2), (2, 3), (3, 0)])

    def test_duplicate_cone(self):
        with pytest.raises(FanError, match="duplicate maximal cone"):
            build_fan(L2, AXES_2D, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 0)])

    def test_not_full_dimensional_cone(self):
        with pytest.raises(FanError, match="not full-dimensional"):
            build_fan(L2, [(1, 0), (-1, 0), (0, 1)], [(0, 1), (1, 2), (2, 0)])

    def test_non_extremal_ray(self):
        # (1, 1) is the midpoint of the segment from (3, -1) to (-1, 3)
        with pytest.raises(FanError, match="ray 1 is not extremal in cone 0"):
            build_fan(L2, [(3, -1), (1, 1), (-1, 3)], [(0, 1, 2)])

    def test_dangling_wall(self):
        with pytest.raises(FanError, match="not complete"):
            build_fan(L2, AXES_2D, [(0, 1), (1, 2), (2, 3)])

    def test_same_side_wall(self):
        # third cone spans from (-1, 1) back to (1, 0), folding over the first two
        with pytest.raises(FanError, match="same side of their shared wall"):
            build_fan(L2, [(1, 0), (0, 1), (-1, 1)], [(0, 1), (1, 2), (2, 0)])

    def test_disconnected_support(self):
        rays = AXES_2D + [(1, 1), (-1, 1), (-1, -1), (1, -1)]
        cones = AXES_CONES + [(4, 5), (5, 6), (6, 7), (7, 4)]
        with pytest.raises(FanError, match="disconnected"):
            build_fan(L2, rays, cones)

    def test_overlapping_interiors(self):
        # five arcs, each shorter than a half turn, winding twice around the
        # origin: every wall is shared consistently, yet cones overlap
        rays = [(1, 0), (-3, 4), (1, -2), (1, 3), (-4, -3)]
        with pytest.raises(FanError, match="overlapping interiors"):
            build_fan(L2, rays, STAR_CONES)


class TestSupportFunction:
    def test_axes_fan(self):
        sf = axes_fan().support_function()
        assert sf.vectors == ((1, 1), (-1, 1), (-1, -1), (1, -1))
        assert sf.convex

    def test_index_two_cone_is_still_gorenstein(self):
        fan = build_fan(L2, QUAD_RAYS, QUAD_CONES)
        sf = fan.support_function()
        assert sf.vectors[0] == (1, 0)
        assert sf.convex

    def test_non_convex_support(self):
        fan = build_fan(L2, STAR_RAYS, STAR_CONES)
        sf = fan.support_function()
        assert sf.vectors == ((1, -2), (0, 1), (-1, 1), (-1, -1), (1, -1))
        assert not sf.convex

    def test_non_integral_support(self):
        fan = build_fan(L2, [(0, 1), (3, -1), (-1, 0), (0, -1)], [(0, 1), (1, 3), (3, 2), (2, 0)])
        with pytest.raises(NotGorensteinError, match=r"non-integral.*cone 0.*2/3, 1"):
            fan.support_function()

    def test_no_support_function(self):
        # heights 1, 1, 1, 2 over the four top rays admit no linear candidate
        rays = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 2), (0, 0, -1)]
        cones = [(0, 1, 2, 3), (0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)]
        fan = build_fan(L3, rays, cones)
        with pytest.raises(NotGorensteinError, match="no support function"):
            fan.support_function()
        try:
            fan.support_function()
        except NotGorensteinError as exc:
            assert exc.reason == "no support function"
            assert exc.cone_index == 0

    def test_value_one_on_rays(self):
        for rays, cones in [(AXES_2D, AXES_CONES), (QUAD_RAYS, QUAD_CONES), (STAR_RAYS, STAR_CONES)]:
            fan = build_fan(L2, rays, cones)
            for r in fan.rays:
                assert fan.support_value(r) == 1

    def test_homogeneity(self):
        fan = build_fan(L2, STAR_RAYS, STAR_CONES)
        for v in [(2, 1), (-1, 3), (4, -5), (-2, -2), (7, 2)]:
            pt = L2.point(v)
            base = fan.support_value(pt)
            for k in (2, 3):
                scaled = L2.point([k * x for x in v])
                assert fan.support_value(scaled) == k * base


class TestLocate:
    def test_locate_agrees_with_membership(self):
        fan = build_fan(L2, STAR_RAYS, STAR_CONES)
        for v in [(5, 2), (1, 1), (-3, 4), (0, -7), (2, 0), (-1, -1)]:
            ci = fan.locate(v)
            assert fan.cone_contains(ci, v)

    def test_boundary_point_is_covered(self):
        fan = axes_fan()
        assert fan.cone_contains(fan.locate((3, 0)), (3, 0))


class TestHistogram:
    def test_cross_fan_histogram(self):
        # Psi = |x| + |y|, so level k holds 4k points for k >= 1
        fan = axes_fan()
        assert fan.psi_histogram(5) == [1, 4, 8, 12, 16, 20]

    def test_square_fan_histogram(self):
        # face fan of the square: Psi = max(|x|, |y|), level k holds 8k points
        p = hull(L2, [(1, 1), (-1, 1), (-1, -1), (1, -1)])
        assert face_fan(p).psi_histogram(4) == [1, 8, 16, 24, 32]

    def test_histogram_cache_prefix(self):
        fan = axes_fan()
        long = fan.psi_histogram(6)
        assert fan.psi_histogram(3) == long[:4]

    def test_override_not_cached(self):
        fan = axes_fan()
        honest = fan.psi_histogram(4)
        corrupt = SupportFunction(vectors=((2, 1), (-1, 1), (-1, -1), (1, -1)), convex=False)
        assert fan.psi_histogram(4, support=corrupt) != honest
        assert fan.psi_histogram(4) == honest

    def test_negative_max_value(self):
        with pytest.raises(InputError):
            axes_fan().psi_histogram(-1)


class TestCounts:
    def test_region_equals_polytope_for_face_fans(self):
        for pts in [
            [(1, 0), (0, 1), (-1, 0), (0, -1)],
            [(1, 1), (-1, 1), (-1, -1), (1, -1)],
            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)],
        ]:
            p = hull(Lattice.standard(len(pts[0])), pts)
            fan = face_fan(p)
            for m in range(4):
                assert fan.count(m) == p.count_points(m)
            for m in range(1, 3):
                assert fan.count(m, interior=True) == p.count_points(m, interior=True)

    def test_count_argument_validation(self):
        fan = axes_fan()
        with pytest.raises(InputError):
            fan.count(-1)
        with pytest.raises(InputError):
            fan.count(0, interior=True)

    def test_face_fan_requires_reflexive(self):
        p = hull(L2, [(0, 0), (1, 0), (0, 1), (1, 1)])
        with pytest.raises(InputError, match="reflexive"):
            face_fan(p)


class TestDeltaProfile:
    def test_non_convex_star_delta(self):
        fan = build_fan(L2, STAR_RAYS, STAR_CONES)
        prof = fan.delta_profile()
        assert prof.delta == (1, 5, 1)

    def test_index_two_quad_delta(self):
        fan = build_fan(L2, QUAD_RAYS, QUAD_CONES)
        assert fan.delta_profile().delta == (1, 4, 1)

    def test_cross_fan_delta(self):
        assert axes_fan().delta_profile().delta == (1, 2, 1)

    def test_delta_is_palindromic(self):
        for rays, cones in [(QUAD_RAYS, QUAD_CONES), (STAR_RAYS, STAR_CONES)]:
            delta = build_fan(L2, rays, cones).delta_profile().delta
            assert list(delta) == list(reversed(delta))

    def test_truncated_generating_identity(self):
        # (1 - t) * sum f(m) t^m must match the histogram series coefficientwise
        fan = build_fan(L2, STAR_RAYS, STAR_CONES)
        hist = fan.psi_histogram(6)
        counts = [fan.count(m) for m in range(7)]
        diffs = [counts[0]] + [counts[m] - counts[m - 1] for m in range(1, 7)]
        assert diffs == hist
