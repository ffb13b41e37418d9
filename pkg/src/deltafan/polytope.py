"""Lattice polytopes: exact hull, facet normalization, counting, polarity.

Facet inequalities live in pairing coordinates: a facet is <normal, c> <= rhs
where c are lattice coordinates of a point. For a full-dimensional lattice
polytope the hull's joint normalization makes every normal primitive (as a
dual-lattice covector) and rhs an integer, so rhs is the lattice distance of
the facet hyperplane from the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import InputError, InvariantError
from .hull import convex_hull
from .kernels import count_box
from .lattice import Lattice, LPoint


@dataclass(frozen=True)
class PolytopeFacet:
    normal: tuple[int, ...]
    rhs: int
    ambient_normal: tuple[Fraction, ...]
    vertex_ids: frozenset[int]  # indices into the polytope's vertex tuple


@dataclass(frozen=True)
class ReflexivityCheck:
    reflexive: bool
    certificate: str
    facet_index: int | None = None
    primitive_normal: tuple[int, ...] | None = None
    lattice_distance: int | None = None


class LatticePolytope:
    """Full-dimensional polytope with vertices in a lattice."""

    __slots__ = ("lattice", "vertices", "facets", "dim", "_lo", "_hi")

    def __init__(self, lattice: Lattice, vertices: tuple[LPoint, ...], facets: tuple[PolytopeFacet, ...]):
        self.lattice = lattice
        self.vertices = vertices
        self.facets = facets
        self.dim = lattice.dim
        coords = [v.coords for v in vertices]
        self._lo = tuple(min(c[j] for c in coords) for j in range(self.dim))
        self._hi = tuple(max(c[j] for c in coords) for j in range(self.dim))

    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    def vertex_index(self, point: LPoint) -> int:
        for i, v in enumerate(self.vertices):
            if v.coords == point.coords:
                return i
        raise InputError(f"{point.ambient} is not a vertex")

    def contains(self, v, strict: bool = False) -> bool:
        """Exact membership for an arbitrary rational ambient vector."""
        c = v.coords if isinstance(v, LPoint) else self.lattice.fractional_coords(v)
        for f in self.facets:
            val = sum((Fraction(a) * x for a, x in zip(f.normal, c)), Fraction(0))
            if val > f.rhs or (strict and val == f.rhs):
                return False
        return True

    def count_points(self, m: int, interior: bool = False) -> int:
        """Number of lattice points of m * P (interior ones, when asked)."""
        if m < 0 or int(m) != m:
            raise InputError("dilation factor must be a nonnegative integer")
        if interior and m < 1:
            raise InputError("interior counts need m >= 1")
        m = int(m)
        lo = tuple(m * a for a in self._lo)
        hi = tuple(m * a for a in self._hi)
        rows = [list(f.normal) for f in self.facets]
        rhs = [m * f.rhs for f in self.facets]
        return count_box(lo, hi, rows, rhs, strict=interior)

    def is_reflexive(self) -> ReflexivityCheck:
        """Origin interior and every facet at lattice distance one."""
        for i, f in enumerate(self.facets):
            if f.rhs <= 0:
                return ReflexivityCheck(
                    False,
                    f"origin is not an interior point: facet {i} has <{f.normal}, x> <= {f.rhs}",
                    facet_index=i,
                    primitive_normal=f.normal,
                    lattice_distance=f.rhs,
                )
        for i, f in enumerate(self.facets):
            if f.rhs != 1:
                return ReflexivityCheck(
                    False,
                    f"facet {i} lies at lattice distance {f.rhs} > 1: "
                    f"the polar vertex {f.normal}/{f.rhs} is not a dual lattice point",
                    facet_index=i,
                    primitive_normal=f.normal,
                    lattice_distance=f.rhs,
                )
        return ReflexivityCheck(True, "all facets lie at lattice distance 1 from the interior origin")

    def polar(self) -> "LatticePolytope":
        """The polar polytope over the dual lattice.

        Requires the origin interior; each facet normal/rhs must give a dual
        lattice point (equivalently, the polytope is reflexive), since the
        polar is returned as a lattice polytope.
        """
        check = self.is_reflexive()
        if not check.reflexive:
            raise InputError(f"polar is not a lattice polytope: {check.certificate}")
        dual = self.lattice.dual()
        verts = [self.lattice.covector_to_ambient(f.normal) for f in self.facets]
        return hull(dual, verts)

    def lattice_points(self, m: int = 1, interior: bool = False) -> list[tuple[int, ...]]:
        """Explicit lattice coordinates of the points of m * P (small cases)."""
        if m < 0:
            raise InputError("dilation factor must be a nonnegative integer")
        from itertools import product

        rows = [f.normal for f in self.facets]
        rhs = [m * f.rhs for f in self.facets]
        ranges = [range(m * lo, m * hi + 1) for lo, hi in zip(self._lo, self._hi)]
        result = []
        for c in product(*ranges):
            ok = True
            for row, b in zip(rows, rhs):
                val = sum(a * x for a, x in zip(row, c))
                if val > b or (interior and val == b):
                    ok = False
                    break
            if ok:
                result.append(c)
        return result


def hull(lattice: Lattice, points: Sequence) -> LatticePolytope:
    """Convex hull of ambient rational vectors that must be lattice points."""
    lpts = []
    seen = set()
    for p in points:
        lp = p if isinstance(p, LPoint) else lattice.point(p)
        if lp.coords not in seen:
            seen.add(lp.coords)
            lpts.append(lp)
    if not lpts:
        raise InputError("no points")
    hull_data = convex_hull([lp.coords for lp in lpts])
    vertex_ids = list(hull_data.vertices)
    vertices = tuple(lpts[i] for i in vertex_ids)
    pos = {orig: new for new, orig in enumerate(vertex_ids)}
    facets = []
    for hf in hull_data.facets:
        g = 0
        for a in hf.normal:
            g = gcd(g, abs(a))
        if g != 1:
            raise InvariantError("facet normal of a lattice polytope is not primitive")
        facets.append(
            PolytopeFacet(
                normal=hf.normal,
                rhs=hf.rhs,
                ambient_normal=lattice.covector_to_ambient(hf.normal),
                vertex_ids=frozenset(pos[i] for i in hf.points if i in pos),
            )
        )
    return LatticePolytope(lattice, vertices, tuple(facets))
