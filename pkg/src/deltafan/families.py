"""Named polytope families, including the non-unimodal reflexive family.

For each m >= 1 the family member lives in dimension d = 2m: inside the
lattice generated by the unit vectors together with f = (e_1+...+e_2m)/m,
it is the convex hull of e_1, ..., e_2m and e_1 - f, ..., e_2m - f. Every
member is reflexive with palindromic delta-vector

    (1, 2m, 2m+2, 2m, 2m+2, ..., 2m, 1),

which fails unimodality for every m >= 3 (the descent 2m+2 -> 2m sits in
the first half). The m = 3 member is the six-dimensional witness that
reflexive delta-vectors need not be unimodal.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InputError
from .fan import Fan, face_fan
from .lattice import Lattice
from .polytope import LatticePolytope, hull


def _unit(d: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(d))


def family_expected_delta(m: int) -> tuple[int, ...]:
    """Closed form for the family's delta-vector."""
    if m < 1:
        raise InputError(f"family index must be >= 1, got {m}")
    d = 2 * m
    inner = [2 * m if i % 2 == 1 else 2 * m + 2 for i in range(1, d)]
    return (1, *inner, 1)


def family_vertices(m: int) -> list[tuple[Fraction, ...]]:
    """Ambient vertices in their natural order: e_1..e_2m, then e_i - f."""
    if m < 1:
        raise InputError(f"family index must be >= 1, got {m}")
    d = 2 * m
    f = tuple(Fraction(1, m) for _ in range(d))
    verts: list[tuple[Fraction, ...]] = [tuple(map(Fraction, _unit(d, i))) for i in range(d)]
    verts.extend(tuple(a - b for a, b in zip(v, f)) for v in list(verts))
    return verts


def hibi_counterexample(m: int) -> tuple[LatticePolytope, tuple[int, ...]]:
    """The m-th family member and its expected delta-vector."""
    d = 2 * m
    verts = family_vertices(m)
    f = tuple(Fraction(1, m) for _ in range(d))
    gens = [tuple(map(Fraction, _unit(d, i))) for i in range(d)] + [f]
    lattice = Lattice.from_generators(gens)
    return hull(lattice, verts), family_expected_delta(m)


def pulling_order_for_family(m: int) -> list[tuple[Fraction, ...]]:
    """Pulling order whose boundary triangulation has 4m^2 - 2m + 2 facets
    and h-vector (1, 2m, ..., 2m, 1): the vertices in their natural order."""
    return family_vertices(m)


def cube(d: int) -> LatticePolytope:
    """The reflexive cube [-1, 1]^d."""
    if d < 1:
        raise InputError("dimension must be positive")
    lattice = Lattice.standard(d)
    verts = [tuple(2 * (mask >> i & 1) - 1 for i in range(d)) for mask in range(1 << d)]
    return hull(lattice, verts)


def cross_polytope(d: int) -> LatticePolytope:
    """The reflexive cross-polytope conv(+-e_1, ..., +-e_d)."""
    if d < 1:
        raise InputError("dimension must be positive")
    lattice = Lattice.standard(d)
    verts = [_unit(d, i) for i in range(d)]
    verts += [tuple(-x for x in v) for v in verts]
    return hull(lattice, verts)


def reflexive_simplex(d: int) -> LatticePolytope:
    """conv(e_1, ..., e_d, -(e_1 + ... + e_d)), reflexive in every dimension."""
    if d < 1:
        raise InputError("dimension must be positive")
    lattice = Lattice.standard(d)
    verts = [_unit(d, i) for i in range(d)] + [tuple(-1 for _ in range(d))]
    return hull(lattice, verts)


def product_polytope(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    """Cartesian product; a product of reflexive polytopes is reflexive."""
    dp, dq = p.lattice.dim, q.lattice.dim
    if p.lattice != Lattice.standard(dp) or q.lattice != Lattice.standard(dq):
        raise InputError("products are supported for standard-lattice polytopes")
    lattice = Lattice.standard(dp + dq)
    verts = [
        tuple(a.coords) + tuple(b.coords) for a in p.vertices for b in q.vertices
    ]
    return hull(lattice, verts)


_CATALOG: dict[int, list[Callable[[], LatticePolytope]]] = {
    2: [lambda: cube(2), lambda: cross_polytope(2), lambda: reflexive_simplex(2)],
    3: [
        lambda: cube(3),
        lambda: cross_polytope(3),
        lambda: reflexive_simplex(3),
        lambda: product_polytope(cube(1), cross_polytope(2)),
    ],
    4: [
        lambda: cross_polytope(4),
        lambda: reflexive_simplex(4),
        lambda: product_polytope(cube(2), cross_polytope(2)),
        lambda: product_polytope(cube(1), reflexive_simplex(3)),
    ],
}


def _random_unimodular(rng: random.Random, d: int, steps: int) -> list[list[int]]:
    u = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i = rng.randrange(d)
        j = rng.randrange(d)
        if kind == 0 and i != j:  # shear: row i += +-1 * row j
            s = rng.choice((1, -1))
            u[i] = [a + s * b for a, b in zip(u[i], u[j])]
        elif kind == 1:  # swap
            u[i], u[j] = u[j], u[i]
        else:  # sign flip
            u[i] = [-a for a in u[i]]
    return u


def random_gorenstein_instance(d: int, seed: int) -> Fan:
    """A complete Gorenstein fan: the face fan of a catalog reflexive
    polytope moved by a seeded gentle unimodular change of coordinates
    (vertex coordinates kept small so exact enumeration stays fast)."""
    if d not in _CATALOG:
        raise InputError(f"no catalog instances in dimension {d} (have {sorted(_CATALOG)})")
    rng = random.Random(seed)
    base = rng.choice(_CATALOG[d])()
    for _ in range(50):
        u = _random_unimodular(rng, d, steps=rng.randrange(1, 4))
        verts = [
            tuple(sum(u[i][j] * int(x) for j, x in enumerate(v.coords)) for i in range(d))
            for v in base.vertices
        ]
        if max(abs(x) for v in verts for x in v) <= 4:
            return face_fan(hull(Lattice.standard(d), verts))
    return face_fan(base)
