"""Complete fans with integral support functions, and their regions.

A fan is given by primitive rays and full-dimensional maximal cones. When an
integer vector u_sigma with <u_sigma, ray> = 1 on every ray of sigma exists
for all maximal cones, the piecewise-linear function taking value <u_sigma, .>
on sigma is the fan's support function Psi; the region Q = {Psi <= 1} is the
union of the cells conv(0, rays of sigma), and counting lattice points by
Psi-value yields the region's counting profile.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .ehrhart import EhrhartProfile, check_symmetry, profile
from .errors import (
    DimensionError,
    FanError,
    InputError,
    InvariantError,
    NotGorensteinError,
    UnderdeterminedSystemError,
)
from .exactmath import Mat, matrix_rank, solve_exact
from .errors import InconsistentSystemError
from .kernels import value_histogram
from .lattice import Lattice, LPoint
from .lp import feasible_geq
from .polytope import LatticePolytope, hull


@dataclass(frozen=True)
class SupportFunction:
    """One integer vector per maximal cone, in pairing coordinates.

    `convex` records whether <u_sigma, ray> <= 1 holds for every cone and
    every ray of the fan, which is equivalent to Psi = max_sigma <u_sigma, .>
    (the region Q is then convex).
    """

    vectors: tuple[tuple[int, ...], ...]
    convex: bool


@dataclass(frozen=True)
class QRegion:
    """The region {Psi <= 1} of a fan, as the union of its cells."""

    fan: "Fan"
    cells: tuple[LatticePolytope, ...]


class Fan:
    """A complete fan of strongly convex rational cones; build via build_fan."""

    __slots__ = (
        "lattice",
        "rays",
        "max_cones",
        "cells",
        "_cone_rows",
        "_walls",
        "_support",
        "_hist",
        "_hist_max",
    )

    def __init__(self, lattice, rays, max_cones, cells, cone_rows, walls):
        self.lattice = lattice
        self.rays = rays
        self.max_cones = max_cones
        self.cells = cells
        self._cone_rows = cone_rows
        self._walls = walls
        self._support = None
        self._hist = None
        self._hist_max = -1

    @property
    def dim(self) -> int:
        return self.lattice.dim

    def __repr__(self) -> str:
        return f"Fan(dim={self.dim}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"

    def region(self) -> QRegion:
        return QRegion(fan=self, cells=self.cells)

    def cone_contains(self, cone_index: int, coords: Sequence) -> bool:
        return all(
            sum((Fraction(a) * x for a, x in zip(row, coords)), Fraction(0)) >= 0
            for row in self._cone_rows[cone_index]
        )

    def locate(self, coords: Sequence) -> int:
        """Index of some maximal cone containing the vector (pairing coords)."""
        for i in range(len(self.max_cones)):
            if self.cone_contains(i, coords):
                return i
        raise InvariantError(f"complete fan does not cover {tuple(coords)}")

    def support_function(self) -> SupportFunction:
        """The integral support function; raises NotGorensteinError without one."""
        if self._support is not None:
            return self._support
        vectors = []
        for ci, cone in enumerate(self.max_cones):
            rows = Mat([self.rays[i].coords for i in cone])
            try:
                u = solve_exact(rows, [1] * len(cone))
            except InconsistentSystemError:
                raise NotGorensteinError("no support function", ci) from None
            except UnderdeterminedSystemError as exc:
                raise InvariantError(f"cone {ci} is not full-dimensional") from exc
            if any(x.denominator != 1 for x in u):
                raise NotGorensteinError("non-integral", ci, witness=tuple(u))
            vectors.append(tuple(int(x) for x in u))
        convex = all(
            sum(a * b for a, b in zip(u, ray.coords)) <= 1
            for u in vectors
            for ray in self.rays
        )
        self._support = SupportFunction(vectors=tuple(vectors), convex=convex)
        return self._support

    def support_value(self, v, support: SupportFunction | None = None):
        """Psi at a lattice point (or any rational vector, by cone location)."""
        sf = support if support is not None else self.support_function()
        coords = v.coords if isinstance(v, LPoint) else tuple(v)
        ci = self.locate(coords)
        val = sum((Fraction(a) * x for a, x in zip(sf.vectors[ci], coords)), Fraction(0))
        if all(isinstance(x, int) for x in coords):
            if val.denominator != 1:
                raise InvariantError("integral support function took a fractional value on a lattice point")
            return int(val)
        return val

    def _box(self, m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        d = self.dim
        lo = []
        hi = []
        for j in range(d):
            c = [r.coords[j] for r in self.rays]
            lo.append(m * min(0, min(c)))
            hi.append(m * max(0, max(c)))
        return tuple(lo), tuple(hi)

    def psi_histogram(self, max_value: int, support: SupportFunction | None = None) -> list[int]:
        """Counts of lattice points by Psi-value, 0..max_value.

        Values for the fan's own support function are cached; a supplied
        override (e.g. a corrupted one, for negative testing) is not.
        """
        if max_value < 0:
            raise InputError("max_value must be nonnegative")
        if support is None and self._hist is not None and max_value <= self._hist_max:
            return self._hist[: max_value + 1]
        sf = support if support is not None else self.support_function()
        lo, hi = self._box(max_value if max_value > 0 else 1)
        u_rows = [list(u) for u in sf.vectors]
        cone_rows = None if sf.convex else [list(rows) for rows in self._cone_rows]
        hist = value_histogram(lo, hi, max_value, u_rows, cone_rows)
        if support is None:
            self._hist = hist
            self._hist_max = max_value
        return list(hist)

    def count(self, m: int, interior: bool = False) -> int:
        """Lattice points of m*Q: Psi <= m, or Psi <= m-1 for the interior."""
        if m < 0 or int(m) != m:
            raise InputError("dilation factor must be a nonnegative integer")
        if interior and m < 1:
            raise InputError("interior counts need m >= 1")
        cutoff = m - 1 if interior else m
        if cutoff < 0:
            raise InputError("negative cutoff")
        hist = self.psi_histogram(max(cutoff, 1))
        return sum(hist[: cutoff + 1])

    def delta_profile(self) -> EhrhartProfile:
        """Counting profile of Q by direct enumeration; symmetry is asserted."""
        hist = self.psi_histogram(self.dim)
        if hist[0] != 1:
            raise InvariantError("support function vanishes off the origin")
        prof = profile(
            lambda m: sum(hist[: m + 1]),
            self.dim,
            interior_counter=lambda m: sum(hist[:m]),
        )
        if not check_symmetry(prof):
            raise InvariantError(
                f"delta of a complete Gorenstein region is not palindromic: {prof.delta}"
            )
        return prof


def _cell_for_cone(lattice: Lattice, rays, cone, ci: int) -> LatticePolytope:
    origin = lattice.point_from_coords([0] * lattice.dim)
    try:
        return hull(lattice, [origin] + [rays[i] for i in cone])
    except DimensionError as exc:
        raise FanError(f"cone {ci} is not full-dimensional: {exc}") from exc


def build_fan(lattice: Lattice, rays: Sequence, max_cones: Sequence[Sequence[int]]) -> Fan:
    """Validate rays and maximal cones as a complete fan.

    Rays are auto-primitivized with a warning. Errors report the failing
    condition: non-extremal or duplicated rays, cones that are not strongly
    convex or not full-dimensional, walls not shared by exactly two cones,
    overlapping cone interiors, or a disconnected/incomplete support.
    """
    d = lattice.dim
    ray_pts = []
    seen = {}
    for k, r in enumerate(rays):
        lp = r if isinstance(r, LPoint) else lattice.point(r)
        if all(x == 0 for x in lp.coords):
            raise FanError(f"ray {k} is zero")
        g = 0
        for x in lp.coords:
            g = gcd(g, abs(x))
        if g > 1:
            warnings.warn(f"ray {k} is not primitive; dividing by {g}")
            lp = lattice.point_from_coords([x // g for x in lp.coords])
        if lp.coords in seen:
            raise FanError(f"rays {seen[lp.coords]} and {k} coincide after primitivization")
        seen[lp.coords] = k
        ray_pts.append(lp)
    ray_pts = tuple(ray_pts)

    cones = []
    for ci, cone in enumerate(max_cones):
        idx = tuple(int(i) for i in cone)
        if len(set(idx)) != len(idx):
            raise FanError(f"cone {ci} repeats a ray")
        if any(i < 0 or i >= len(ray_pts) for i in idx):
            raise FanError(f"cone {ci} references a ray that does not exist")
        if len(idx) < d:
            raise FanError(f"cone {ci} has fewer than {d} rays; it cannot be full-dimensional")
        cones.append(idx)
    if len({frozenset(c) for c in cones}) != len(cones):
        raise FanError("duplicate maximal cone")
    cones = tuple(cones)

    cells = []
    cone_rows = []
    wall_map: dict[frozenset[int], list[tuple[int, tuple[int, ...]]]] = {}
    for ci, cone in enumerate(cones):
        cell = _cell_for_cone(lattice, ray_pts, cone, ci)
        cells.append(cell)
        # vertex set of the cell must be the origin plus exactly the listed rays
        cell_coord_set = {v.coords for v in cell.vertices}
        zero = tuple([0] * d)
        if zero not in cell_coord_set:
            raise FanError(f"cone {ci} is not strongly convex (origin is not a vertex of its cell)")
        for i in cone:
            if ray_pts[i].coords not in cell_coord_set:
                raise FanError(f"ray {i} is not extremal in cone {ci}")
        rows = []
        for f in cell.facets:
            if f.rhs < 0:
                raise InvariantError("cell facet with negative distance from the origin")
            if f.rhs == 0:
                rows.append(tuple(-a for a in f.normal))
                # wall key: which of the cone's rays lie on this facet
                on = frozenset(
                    i for i in cone if sum(a * b for a, b in zip(f.normal, ray_pts[i].coords)) == 0
                )
                wall_map.setdefault(on, []).append((ci, f.normal))
        if matrix_rank([[Fraction(x) for x in row] for row in rows]) != d:
            raise FanError(f"cone {ci} is not strongly convex")
        cone_rows.append(tuple(rows))

    walls = []
    for key, members in sorted(wall_map.items(), key=lambda kv: sorted(kv[0])):
        if len(members) == 1:
            ci = members[0][0]
            raise FanError(
                f"fan is not complete: wall {sorted(key)} of cone {ci} is not shared with another cone"
            )
        if len(members) > 2:
            raise FanError(f"wall {sorted(key)} is shared by more than two cones")
        (c1, n1), (c2, n2) = members
        if c1 == c2:
            raise InvariantError(f"cone {c1} meets itself along wall {sorted(key)}")
        if n2 != tuple(-a for a in n1):
            raise FanError(
                f"cones {c1} and {c2} lie on the same side of their shared wall {sorted(key)}"
            )
        walls.append((c1, c2, key))

    # dual graph connectivity
    adj: dict[int, set[int]] = {i: set() for i in range(len(cones))}
    for c1, c2, _ in walls:
        adj[c1].add(c2)
        adj[c2].add(c1)
    seen_c = {0}
    stack = [0]
    while stack:
        c = stack.pop()
        for n in adj[c]:
            if n not in seen_c:
                seen_c.add(n)
                stack.append(n)
    if len(seen_c) != len(cones):
        raise FanError("fan support is disconnected")

    # pairwise interior disjointness (exact LP)
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            rows = [list(r) for r in cone_rows[i]] + [list(r) for r in cone_rows[j]]
            if feasible_geq(rows, [1] * len(rows)):
                raise FanError(f"cones {i} and {j} have overlapping interiors")

    fan = Fan(lattice, ray_pts, cones, tuple(cells), tuple(cone_rows), tuple(walls))

    # seeded spot check of completeness: random integer vectors must be covered
    rng = random.Random(20240301)
    bound = 2 * max(abs(x) for r in ray_pts for x in r.coords) + 1
    for _ in range(64):
        v = tuple(rng.randint(-bound, bound) for _ in range(d))
        try:
            fan.locate(v)
        except InvariantError:
            raise FanError(f"fan is not complete: {v} is not covered by any cone") from None
    return fan


def face_fan(p: LatticePolytope) -> Fan:
    """The face fan of a reflexive polytope: one cone per facet."""
    check = p.is_reflexive()
    if not check.reflexive:
        raise InputError(f"face fan requires a reflexive polytope: {check.certificate}")
    cones = [tuple(sorted(f.vertex_ids)) for f in p.facets]
    return build_fan(p.lattice, list(p.vertices), cones)
