"""Exact incremental convex hull over the rationals (beneath-beyond).

No floating point and no perturbation: a point landing exactly on a facet
hyperplane is absorbed into that facet, so non-simplicial facets come out
as single facets carrying their full point sets. Intended scale is
dimension <= 8 with at most ~100 points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DimensionError, InputError, InvariantError
from .exactmath import Mat, matrix_rank, nullspace, solve_exact

Vec = tuple[Fraction, ...]


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vdot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def affine_dim(points: Sequence[Vec]) -> int:
    """Dimension of the affine span: -1 for no points, 0 for a single point."""
    if not points:
        return -1
    base = points[0]
    return matrix_rank([vsub(p, base) for p in points[1:]])


def affine_basis_indices(points: Sequence[Vec]) -> list[int]:
    """Greedy indices of an affinely independent subset spanning the points."""
    sel: list[int] = []
    rows: list[Vec] = []
    for i, p in enumerate(points):
        if not sel:
            sel.append(i)
            continue
        cand = rows + [vsub(p, points[sel[0]])]
        if matrix_rank(cand) == len(cand):
            sel.append(i)
            rows = cand
    return sel


def _canonical_hyperplane(normal: Sequence[Fraction], rhs: Fraction) -> tuple[tuple[int, ...], int]:
    """Scale (normal, rhs) to coprime integers, preserving orientation."""
    den = 1
    for x in list(normal) + [rhs]:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in normal] + [int(rhs * den)]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise InvariantError("zero hyperplane")
    return tuple(x // g for x in ints[:-1]), ints[-1] // g


def hyperplane_through(points: Sequence[Vec]) -> tuple[tuple[int, ...], int]:
    """The unique hyperplane containing the points (their affine span must
    have dimension d-1). Returned as coprime integers (normal, rhs) for the
    equation <normal, x> = rhs; orientation is arbitrary."""
    d = len(points[0])
    base = points[0]
    diffs = [vsub(p, base) for p in points[1:]]
    if matrix_rank(diffs) != d - 1:
        raise InvariantError("points do not span a hyperplane")
    kernel = nullspace(Mat(diffs)) if diffs else [tuple(Fraction(int(i == 0)) for i in range(d))]
    if len(kernel) != 1:
        raise InvariantError("hyperplane normal is not unique")
    normal = kernel[0]
    return _canonical_hyperplane(normal, vdot(normal, base))


@dataclass(frozen=True)
class HullFacet:
    """A facet <normal, x> <= rhs with coprime integer data, outward normal,
    and the indices of every input point lying on its hyperplane."""

    normal: tuple[int, ...]
    rhs: int
    points: frozenset[int]


@dataclass(frozen=True)
class Hull:
    dim: int
    facets: tuple[HullFacet, ...]
    vertices: tuple[int, ...]  # indices into the input point list, input order


def convex_hull(points: Sequence[Vec]) -> Hull:
    """Facets and vertices of the convex hull of full-dimensional input."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise InputError("no points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise InputError("points of mixed dimension")
    if len(set(pts)) != len(pts):
        raise InputError("duplicate points")

    sel = affine_basis_indices(pts)
    if len(sel) != d + 1:
        raise DimensionError(
            f"points span affine dimension {len(sel) - 1}, expected {d}"
        )
    ref = tuple(sum(pts[i][j] for i in sel) / (d + 1) for j in range(d))

    def orient(normal: tuple[int, ...], rhs: int) -> tuple[tuple[int, ...], int]:
        val = vdot(normal, ref) - rhs
        if val == 0:
            raise InvariantError("reference point on a facet hyperplane")
        if val > 0:
            return tuple(-x for x in normal), -rhs
        return normal, rhs

    # facet store: key (normal, rhs) -> set of on-hyperplane point indices
    facets: dict[tuple[tuple[int, ...], int], set[int]] = {}
    for i in sel:
        others = [pts[j] for j in sel if j != i]
        normal, rhs = orient(*hyperplane_through(others))
        facets[(normal, rhs)] = {j for j in sel if j != i}

    for idx, p in enumerate(pts):
        if idx in sel:
            continue
        beyond = []
        on = []
        live = []
        for key in facets:
            normal, rhs = key
            val = vdot(normal, p) - rhs
            if val > 0:
                beyond.append(key)
            elif val == 0:
                on.append(key)
            else:
                live.append(key)
        if not beyond:
            for key in on:
                facets[key].add(idx)
            continue
        if not live and not on:
            raise InvariantError("point beyond every facet")
        # horizon ridges between a dead facet and a live one get coned over p;
        # ridges bordering an "on" facet need no new facet (that facet absorbs p)
        new_facets: dict[tuple[tuple[int, ...], int], set[int]] = {}
        for dead_key in beyond:
            dead_pts = facets[dead_key]
            for live_key in live:
                ridge = dead_pts & facets[live_key]
                if affine_dim([pts[i] for i in ridge]) != d - 2:
                    continue
                normal, rhs = orient(*hyperplane_through([pts[i] for i in ridge] + [p]))
                key = (normal, rhs)
                if key in facets and key not in beyond:
                    raise InvariantError("new facet collides with a surviving facet")
                new_facets.setdefault(key, set()).update(ridge | {idx})
        for key in beyond:
            del facets[key]
        for key in on:
            facets[key].add(idx)
        if not new_facets and not on:
            raise InvariantError("insertion produced no facets")
        for key, ptset in new_facets.items():
            facets.setdefault(key, set()).update(ptset)

    # final validation: every point satisfies every facet
    for (normal, rhs), ptset in facets.items():
        for i, p in enumerate(pts):
            val = vdot(normal, p) - rhs
            if val > 0:
                raise InvariantError("hull facet violated by an input point")
            if val == 0 and i not in ptset:
                ptset.add(i)
    # facet hyperplane sections must be (d-1)-dimensional
    for (normal, rhs), ptset in facets.items():
        if affine_dim([pts[i] for i in ptset]) != d - 1:
            raise InvariantError("facet point set does not span its hyperplane")

    by_point: dict[int, list[tuple[int, ...]]] = {}
    for (normal, rhs), ptset in facets.items():
        for i in ptset:
            by_point.setdefault(i, []).append(normal)
    vertices = [
        i
        for i in range(len(pts))
        if i in by_point and matrix_rank([[Fraction(x) for x in n] for n in by_point[i]]) == d
    ]
    facet_list = tuple(
        HullFacet(normal, rhs, frozenset(ptset)) for (normal, rhs), ptset in sorted(facets.items())
    )
    return Hull(dim=d, facets=facet_list, vertices=tuple(vertices))
