"""Full-rank lattices in Q^d and their points.

A lattice is stored by a canonical basis: an integer matrix over a global
denominator, brought to column-style Hermite normal form, so two generator
lists describing the same lattice produce equal objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, InputError, NotInLatticeError
from .exactmath import Mat, hnf, rat_vector


@dataclass(frozen=True)
class LPoint:
    """A lattice point: ambient rational coordinates plus integer coordinates
    in the lattice's canonical basis."""

    ambient: tuple[Fraction, ...]
    coords: tuple[int, ...]

    def __iter__(self):
        return iter(self.ambient)


class Lattice:
    """A rank-d lattice L = B Z^d in Q^d, with B = (integer matrix) / den."""

    __slots__ = ("dim", "_num", "den", "_basis", "_inv", "_dual")

    def __init__(self, num_columns: Sequence[Sequence[int]], den: int):
        # internal constructor; num_columns are the canonical basis vectors * den
        d = len(num_columns)
        self.dim = d
        self._num = tuple(tuple(int(x) for x in col) for col in num_columns)
        self.den = int(den)
        self._basis = Mat.from_columns(
            [[Fraction(x, self.den) for x in col] for col in self._num]
        )
        self._inv = self._basis.inverse()
        self._dual = None

    @classmethod
    def standard(cls, dim: int) -> "Lattice":
        if dim < 1:
            raise DimensionError("lattice dimension must be at least 1")
        return cls([[int(i == j) for i in range(dim)] for j in range(dim)], 1)

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence]) -> "Lattice":
        """Lattice generated by the given rational vectors (must span Q^d)."""
        gens = [rat_vector(g) for g in generators]
        if not gens:
            raise InputError("no generators")
        d = len(gens[0])
        if any(len(g) != d for g in gens):
            raise InputError("generators of mixed dimension")
        if d < 1:
            raise DimensionError("lattice dimension must be at least 1")
        den = 1
        for g in gens:
            for x in g:
                den = den * x.denominator // math.gcd(den, x.denominator)
        cols = [[int(x * den) for x in g] for g in gens]
        h, _ = hnf(Mat.from_columns(cols))
        basis_cols = [h.column(j) for j in range(d)]
        if any(all(x == 0 for x in col) for col in basis_cols) or h.cols < d:
            raise DimensionError("generators do not span the ambient space")
        g = den
        for col in basis_cols:
            for x in col:
                g = math.gcd(g, int(x))
        return cls([[int(x) // g for x in col] for col in basis_cols], den // g)

    @property
    def basis_matrix(self) -> Mat:
        """Columns are the canonical basis vectors (ambient coordinates)."""
        return self._basis

    def basis_vectors(self) -> list[tuple[Fraction, ...]]:
        return [self._basis.column(j) for j in range(self.dim)]

    def covolume(self) -> Fraction:
        """|det B|; the index [L2 <= L1] equals covol(L2)/covol(L1)."""
        return abs(self._basis.det())

    def contains(self, v: Sequence) -> bool:
        c = self._inv.mul_vector(rat_vector(v))
        return all(x.denominator == 1 for x in c)

    def to_lattice_coords(self, v: Sequence) -> tuple[int, ...]:
        c = self._inv.mul_vector(rat_vector(v))
        if any(x.denominator != 1 for x in c):
            raise NotInLatticeError(f"{tuple(rat_vector(v))} is not a lattice point")
        return tuple(int(x) for x in c)

    def from_lattice_coords(self, c: Sequence[int]) -> tuple[Fraction, ...]:
        return self._basis.mul_vector([Fraction(int(x)) for x in c])

    def point(self, v: Sequence) -> LPoint:
        vv = rat_vector(v)
        return LPoint(vv, self.to_lattice_coords(vv))

    def point_from_coords(self, c: Sequence[int]) -> LPoint:
        cc = tuple(int(x) for x in c)
        return LPoint(self.from_lattice_coords(cc), cc)

    def fractional_coords(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of an arbitrary rational vector in the lattice basis."""
        return self._inv.mul_vector(rat_vector(v))

    def covector_to_ambient(self, w: Sequence) -> tuple[Fraction, ...]:
        """Ambient vector u with <u, from_lattice_coords(c)> = <w, c> for all c.

        Covectors in this pairing normalization are exactly what facet normals
        and support vectors are stored as; integrality of w is equivalent to
        the covector lying in the dual lattice.
        """
        return self._inv.transpose().mul_vector(rat_vector(w))

    def dual(self) -> "Lattice":
        """The dual lattice {u : <u, v> in Z for all v in L}."""
        if self._dual is None:
            # rows of B^{-1} pair to delta_ij against the columns of B
            self._dual = Lattice.from_generators(
                [self._inv.row(i) for i in range(self.dim)]
            )
        return self._dual

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.dim == other.dim
            and self.den == other.den
            and self._num == other._num
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.den, self._num))

    def __repr__(self) -> str:
        return f"Lattice(dim={self.dim}, den={self.den})"
