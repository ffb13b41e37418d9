"""Ehrhart counting profiles: delta-vectors, symmetry, unimodality, reciprocity.

The delta-vector is computed from the counts f(0), ..., f(d) by the standard
alternating binomial convolution; a counter whose delta comes out negative or
whose zeroth count is not 1 is rejected as not Ehrhart-consistent.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

from .errors import EhrhartConsistencyError, InvariantError
from .exactmath import Poly, lagrange_interpolate


@dataclass(frozen=True)
class EhrhartProfile:
    dim: int
    counts: tuple[int, ...]
    poly: Poly
    delta: tuple[int, ...]
    ell: int
    r: int | None


@dataclass(frozen=True)
class UnimodalityReport:
    unimodal: bool
    descents: tuple[int, ...]
    weak_ineq_holds: bool


def delta_from_counts(counts, dim: int) -> tuple[int, ...]:
    """delta_i = sum_j (-1)^j C(d+1, j) f(i-j) for i = 0..d."""
    out = []
    for i in range(dim + 1):
        acc = 0
        for j in range(i + 1):
            acc += (-1) ** j * comb(dim + 1, j) * counts[i - j]
        out.append(acc)
    return tuple(out)


def profile(
    counter: Callable[[int], int],
    dim: int,
    interior_counter: Callable[[int], int] | None = None,
) -> EhrhartProfile:
    """Counting profile from a dilation counter f(m) = #(mP).

    `counter` is evaluated at m = 0..dim; `interior_counter`, when given, is
    used to find r, the least dilation with an interior lattice point, and
    the identity ell = dim + 1 - r is enforced.
    """
    counts = []
    for m in range(dim + 1):
        c = counter(m)
        if int(c) != c or c < 0:
            raise EhrhartConsistencyError(f"not Ehrhart-consistent: f({m}) = {c!r}")
        counts.append(int(c))
    if counts[0] != 1:
        raise EhrhartConsistencyError(f"not Ehrhart-consistent: f(0) = {counts[0]} != 1")
    if dim >= 1 and counts[1] < dim + 1:
        raise EhrhartConsistencyError(
            f"not Ehrhart-consistent: f(1) = {counts[1]} < {dim + 1} vertices of a full-dimensional polytope"
        )
    delta = delta_from_counts(counts, dim)
    if any(x < 0 for x in delta):
        raise EhrhartConsistencyError(f"not Ehrhart-consistent: negative delta {delta}")
    poly = lagrange_interpolate([(m, counts[m]) for m in range(dim + 1)])
    for m in range(dim + 1):
        if poly(m) != counts[m]:
            raise InvariantError("interpolation failed to reproduce counts")
    ell = max(i for i in range(dim + 1) if delta[i] != 0)
    r = None
    if interior_counter is not None:
        for m in range(1, dim + 2):
            if interior_counter(m) > 0:
                r = m
                break
        if r is None:
            raise EhrhartConsistencyError(
                f"not Ehrhart-consistent: no interior point up to dilation {dim + 1}"
            )
        if ell != dim + 1 - r:
            raise InvariantError(
                f"degree of delta is {ell} but dim + 1 - r = {dim + 1 - r}"
            )
    return EhrhartProfile(dim=dim, counts=tuple(counts), poly=poly, delta=delta, ell=ell, r=r)


def polytope_profile(p) -> EhrhartProfile:
    """Profile of a LatticePolytope via its exact point counter."""
    return profile(
        p.count_points,
        p.dim,
        interior_counter=lambda m: p.count_points(m, interior=True),
    )


def check_symmetry(prof: EhrhartProfile) -> bool:
    """Is delta palindromic (delta_i = delta_{d-i} for all i)?"""
    d = prof.dim
    return all(prof.delta[i] == prof.delta[d - i] for i in range(d + 1))


def check_unimodality(prof: EhrhartProfile) -> UnimodalityReport:
    """Ascent of the first half of delta, plus the weaker inequality chain.

    descents lists the i <= floor(ell/2) with delta_{i-1} > delta_i; the
    vector is called unimodal here when there are none. The weak chain is
    delta_0 <= delta_1 and delta_1 <= delta_j for 2 <= j <= floor(dim/2).
    """
    delta = prof.delta
    half = prof.ell // 2
    descents = tuple(i for i in range(1, half + 1) if delta[i - 1] > delta[i])
    weak = True
    if prof.dim >= 1:
        if delta[0] > delta[1]:
            weak = False
        for j in range(2, prof.dim // 2 + 1):
            if delta[1] > delta[j]:
                weak = False
    return UnimodalityReport(
        unimodal=not descents, descents=descents, weak_ineq_holds=weak
    )


def reciprocity_check(p, m_max: int) -> bool:
    """Does f(-m) = (-1)^d #interior(mP) hold for m = 1..m_max?

    For reflexive input the specialization f(m-1) = (-1)^d f(-m) is checked
    as well, using honestly enumerated counts on the left.
    """
    prof = polytope_profile(p)
    sign = (-1) ** p.dim
    for m in range(1, m_max + 1):
        if prof.poly(-m) != sign * p.count_points(m, interior=True):
            return False
    if p.is_reflexive().reflexive:
        for m in range(1, m_max + 1):
            if p.count_points(m - 1) != sign * prof.poly(-m):
                return False
    return True
