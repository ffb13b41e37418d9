"""Delta-vectors of Gorenstein fan regions via boundary triangulations.

The region Q of a complete fan with integral support function Psi has a
palindromic delta-vector. It decomposes as the h-vector of any boundary
triangulation T (vertices in the lattice, Psi = 1) plus corrections: for
every nonempty face F of T, each lattice point in the open parallelepiped
spanned by F's vertices ("box point") contributes the star h-vector of F
shifted by the point's Psi-value. Both the decomposition and the lattice-sum
identity behind it are verified exactly, truncated at a configurable order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .ehrhart import check_symmetry, profile as ehrhart_profile
from .errors import EhrhartConsistencyError, InputError, InvariantError
from .exactmath import (
    Mat,
    Poly,
    TruncSeries,
    lagrange_interpolate,
    one_minus_t_power,
    snf,
)
from .fan import Fan, QRegion, SupportFunction
from .hull import affine_basis_indices, affine_dim, convex_hull, vsub
from .lattice import LPoint


@dataclass(frozen=True)
class BoundaryTriangulation:
    """A triangulation of the fan's region boundary.

    Vertices are lattice points with Psi = 1, indexed by their pulling
    priority; facets are (dim-1)-simplices given as sorted vertex-id tuples,
    each recording the maximal cone whose cell it subdivides; faces holds
    every subset of every facet, including the empty face.
    """

    fan: Fan
    vertices: tuple[LPoint, ...]
    facets: tuple[tuple[int, ...], ...]
    facet_cones: tuple[int, ...]
    faces: frozenset[frozenset[int]]


@dataclass(frozen=True)
class BoxPoint:
    """A lattice point interior to the open parallelepiped of a face.

    coefficients are the (0, 1)-open barycentric-style coordinates along the
    face's vertices (aligned with the sorted vertex ids in `face`); their sum
    is the point's Psi-value, the shift it contributes at.
    """

    face: tuple[int, ...]
    point: LPoint
    coefficients: tuple[Fraction, ...]
    shift: int


@dataclass(frozen=True)
class HVector:
    face: tuple[int, ...]
    entries: tuple[int, ...]

    @property
    def poly(self) -> Poly:
        return Poly(self.entries)


def _as_region(obj) -> QRegion:
    if isinstance(obj, QRegion):
        return obj
    if isinstance(obj, Fan):
        return obj.region()
    raise InputError("expected a Fan or QRegion")


def _fmt(point: LPoint) -> str:
    return "(" + ", ".join(str(x) for x in point.ambient) + ")"


def pulling_triangulation(region, vertex_order: Sequence | None = None) -> BoundaryTriangulation:
    """Triangulate the region boundary by pulling vertices in list order.

    The default order is the fan's rays as given. A custom order must consist
    of lattice points with Psi = 1 and contain every ray; additional boundary
    points are allowed (they subdivide the cells whose outer facets contain
    them, or go unused if nothing pulls them). Faces shared by two cells are
    pulled once, so the pieces glue consistently.
    """
    region = _as_region(region)
    fan = region.fan
    sf = fan.support_function()
    d = fan.dim
    lattice = fan.lattice

    if vertex_order is None:
        verts = list(fan.rays)
    else:
        verts = [v if isinstance(v, LPoint) else lattice.point(v) for v in vertex_order]
    seen = {}
    for i, v in enumerate(verts):
        if v.coords in seen:
            raise InputError(f"pulling order repeats vertex {_fmt(v)}")
        seen[v.coords] = i
        val = fan.support_value(v)
        if val != 1:
            raise InputError(f"pulling order vertex {_fmt(v)} has Psi = {val}, not 1")
    for r in fan.rays:
        if r.coords not in seen:
            raise InputError(f"pulling order must contain every ray; missing {_fmt(r)}")

    vcoords = [v.coords for v in verts]
    memo: dict[frozenset[int], tuple[tuple[int, ...], ...]] = {}

    def pull(ids: frozenset[int]) -> tuple[tuple[int, ...], ...]:
        cached = memo.get(ids)
        if cached is not None:
            return cached
        id_list = sorted(ids)
        pts = [vcoords[i] for i in id_list]
        k = affine_dim(pts)
        if len(id_list) == k + 1:
            result = (tuple(id_list),)
        else:
            w = id_list[0]  # smallest id = highest pulling priority
            base = pts[0]
            bi = affine_basis_indices(pts)
            basis = Mat.from_columns([vsub(pts[i], base) for i in bi[1:]])
            chart = (basis.transpose() @ basis).inverse() @ basis.transpose()
            local = []
            for p in pts:
                diff = vsub(p, base)
                a = chart.mul_vector(diff)
                if basis.mul_vector(a) != tuple(Fraction(x) for x in diff):
                    raise InvariantError("face point does not lie in the face's affine span")
                local.append(tuple(a))
            sub = convex_hull(local)
            out = []
            for facet in sub.facets:
                fids = frozenset(id_list[i] for i in facet.points)
                if w in fids:
                    continue
                for s in pull(fids):
                    out.append(tuple(sorted(set(s) | {w})))
            if len(set(out)) != len(out):
                raise InvariantError("pulling produced a duplicate simplex")
            result = tuple(sorted(out))
        memo[ids] = result
        return result

    facet_map: dict[tuple[int, ...], int] = {}
    for ci in range(len(fan.max_cones)):
        u = sf.vectors[ci]
        config = [
            i
            for i in range(len(verts))
            if sum(a * b for a, b in zip(u, vcoords[i])) == 1 and fan.cone_contains(ci, vcoords[i])
        ]
        for ri in fan.max_cones[ci]:
            if seen[fan.rays[ri].coords] not in config:
                raise InvariantError("cone ray missing from its cell configuration")
        for s in pull(frozenset(config)):
            if len(s) != d:
                raise InvariantError("boundary facet simplex of wrong dimension")
            prev = facet_map.get(s)
            if prev is not None and prev != ci:
                raise InvariantError("facet simplex claimed by two cells")
            facet_map[s] = ci

    facets = tuple(sorted(facet_map))
    facet_cones = tuple(facet_map[s] for s in facets)

    # closed-surface check: every (d-2)-face lies in exactly two facets
    ridge_count: dict[frozenset[int], int] = {}
    for s in facets:
        for drop in range(d):
            ridge = frozenset(s[:drop] + s[drop + 1 :])
            ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
    bad = [r for r, c in ridge_count.items() if c != 2]
    if bad:
        raise InvariantError(
            f"triangulation is not a closed boundary: ridge {sorted(bad[0])} lies in {ridge_count[bad[0]]} facets"
        )

    faces = set()
    for s in facets:
        n = len(s)
        for mask in range(1 << n):
            faces.add(frozenset(s[i] for i in range(n) if mask >> i & 1))
    faces.add(frozenset())

    return BoundaryTriangulation(
        fan=fan,
        vertices=tuple(verts),
        facets=facets,
        facet_cones=facet_cones,
        faces=frozenset(faces),
    )


def _face_key(t: BoundaryTriangulation, face) -> frozenset[int]:
    key = frozenset(int(i) for i in face)
    if key not in t.faces:
        raise InputError(f"{sorted(key)} is not a face of the triangulation")
    return key


def star_h_vector(t: BoundaryTriangulation, face) -> HVector:
    """h-vector of the star of a face: sum over faces G containing F of
    t^(|G|-|F|) (1-t)^(d-|G|). The empty face gives the h-vector of T."""
    key = _face_key(t, face)
    d = t.fan.dim
    c0 = len(key)
    h = Poly()
    for g in t.faces:
        if key <= g:
            h = h + one_minus_t_power(d - len(g)).shifted(len(g) - c0)
    entries = h.int_coeffs()
    if len(entries) > d - c0 + 1:
        raise InvariantError("star h-vector exceeds its degree bound")
    if any(x < 0 for x in entries) or not entries or entries[0] != 1:
        raise InvariantError(f"star h-vector is not valid: {entries}")
    entries = entries + (0,) * (d - c0 + 1 - len(entries))
    return HVector(face=tuple(sorted(key)), entries=entries)


def box_points(t: BoundaryTriangulation, face) -> tuple[BoxPoint, ...]:
    """Lattice points in the open parallelepiped spanned by a nonempty face.

    Enumerated through the finite group Z^d / Z(face vertices) via Smith
    normal form; each point's coefficient sum is its Psi-value (the shift),
    checked to be a positive integer strictly below the vertex count.
    """
    key = _face_key(t, face)
    if not key:
        raise InputError("box points are defined for nonempty faces")
    ids = tuple(sorted(key))
    cols = [t.vertices[i].coords for i in ids]
    r = len(cols)
    a_mat = Mat.from_columns(cols)
    dmat, _, v = snf(a_mat)
    diag = [int(dmat[i, i]) for i in range(r)]
    if any(x == 0 for x in diag):
        raise InvariantError("face vertices are linearly dependent")
    out = []
    for combo in product(*[range(x) for x in diag]):
        if all(k == 0 for k in combo):
            continue
        b = [Fraction(k, di) for k, di in zip(combo, diag)]
        coeffs = tuple(x % 1 for x in v.mul_vector(b))
        if any(c == 0 for c in coeffs):
            continue
        shift_f = sum(coeffs, Fraction(0))
        if shift_f.denominator != 1:
            raise InvariantError(f"box point shift {shift_f} is not an integer")
        shift = int(shift_f)
        if not 0 < shift < r:
            raise InvariantError(f"box point shift {shift} outside (0, {r})")
        coords = a_mat.mul_vector(coeffs)
        if any(x.denominator != 1 for x in coords):
            raise InvariantError("box coset produced a non-lattice point")
        pt = t.fan.lattice.point_from_coords([int(x) for x in coords])
        if t.fan.support_value(pt) != shift:
            raise InvariantError("box point shift disagrees with Psi")
        out.append(BoxPoint(face=ids, point=pt, coefficients=coeffs, shift=shift))
    out.sort(key=lambda bp: (bp.shift, bp.point.coords))
    return tuple(out)


def _box_corrected_poly(t: BoundaryTriangulation) -> tuple[Poly, list[BoxPoint]]:
    """h_T plus shifted star h-vectors over all box points, with the points."""
    total = star_h_vector(t, ()).poly
    boxes: list[BoxPoint] = []
    # faces inside a unimodular facet simplex have empty boxes; skip them
    candidates: set[frozenset[int]] = set()
    for s in t.facets:
        det = abs(Mat.from_columns([t.vertices[i].coords for i in s]).det())
        if det == 1:
            continue
        n = len(s)
        for mask in range(1, 1 << n):
            candidates.add(frozenset(s[i] for i in range(n) if mask >> i & 1))
    for key in sorted(candidates, key=lambda f: (len(f), sorted(f))):
        bps = box_points(t, key)
        if not bps:
            continue
        h = star_h_vector(t, key).poly
        for bp in bps:
            total = total + h.shifted(bp.shift)
            boxes.append(bp)
    boxes.sort(key=lambda bp: (bp.face, bp.shift, bp.point.coords))
    return total, boxes


def _finalize_delta(total: Poly, d: int) -> tuple[int, ...]:
    coeffs = total.int_coeffs()
    if len(coeffs) > d + 1:
        raise InvariantError(f"assembled delta has degree {len(coeffs) - 1} > {d}")
    if any(x < 0 for x in coeffs):
        raise InvariantError(f"assembled delta has negative entries: {coeffs}")
    return coeffs + (0,) * (d + 1 - len(coeffs))


def delta_from_triangulation(t: BoundaryTriangulation) -> tuple[int, ...]:
    """The region's delta-vector assembled from the triangulation."""
    total, _ = _box_corrected_poly(t)
    return _finalize_delta(total, t.fan.dim)


@dataclass(frozen=True)
class StringyReport:
    """Full breakdown of the triangulation route to the delta-vector."""

    h_t: tuple[int, ...]
    boxes: tuple[BoxPoint, ...]
    delta: tuple[int, ...]


def stringy_report(t: BoundaryTriangulation) -> StringyReport:
    total, boxes = _box_corrected_poly(t)
    return StringyReport(
        h_t=star_h_vector(t, ()).entries,
        boxes=tuple(boxes),
        delta=_finalize_delta(total, t.fan.dim),
    )


@dataclass(frozen=True)
class IdentityReport:
    truncation: int
    lattice_sum: bool
    second_proof: bool
    enumerative_match: bool
    symmetry: bool
    delta_triangulation: tuple[int, ...]
    delta_enumerative: tuple[int, ...] | None
    detail: str | None

    @property
    def all_pass(self) -> bool:
        return self.lattice_sum and self.second_proof and self.enumerative_match and self.symmetry


def verify_identities(
    region,
    t: BoundaryTriangulation | None = None,
    truncation: int | None = None,
    support: SupportFunction | None = None,
) -> IdentityReport:
    """Check the region's defining identities exactly, modulo t^(M+1).

    (i) lattice sum: (1-t) * F_Q(t) equals sum over lattice points of
    t^Psi(v), where F_Q extends the enumerated counts f(0..d) by the
    interpolating polynomial. (ii) second proof: (1-t)^d times the lattice
    sum equals the box-corrected h-vector sum. (iii) the assembled delta
    matches the enumerated one. (iv) the enumerated delta is palindromic.
    A `support` override replaces the fan's support function everywhere
    (negative testing); the first differing coefficient lands in `detail`.
    """
    region = _as_region(region)
    fan = region.fan
    d = fan.dim
    m_top = truncation if truncation is not None else d + 3
    if m_top < d:
        raise InputError(f"truncation {m_top} is below the dimension {d}")
    if t is None:
        t = pulling_triangulation(region)
    hist = fan.psi_histogram(m_top, support=support)
    s_series = TruncSeries(hist, m_top)

    counts = [sum(hist[: m + 1]) for m in range(d + 1)]
    poly = lagrange_interpolate([(m, c) for m, c in enumerate(counts)])
    f_ext = counts + [poly(m) for m in range(d + 1, m_top + 1)]
    f_series = TruncSeries(f_ext, m_top)

    detail = None
    lhs1 = f_series.mul_poly(Poly([1, -1]))
    idx1 = lhs1.first_difference(s_series)
    lattice_sum_ok = idx1 is None
    if not lattice_sum_ok:
        detail = (
            f"lattice sum fails first at coefficient {idx1}: "
            f"(1-t)F has {lhs1.coefficient(idx1)}, point sum has {s_series.coefficient(idx1)}"
        )

    total, _ = _box_corrected_poly(t)
    lhs2 = s_series.mul_poly(one_minus_t_power(d))
    rhs2 = TruncSeries.from_poly(total, m_top)
    idx2 = lhs2.first_difference(rhs2)
    second_ok = idx2 is None
    if not second_ok and detail is None:
        detail = (
            f"box decomposition fails first at coefficient {idx2}: "
            f"(1-t)^d point sum has {lhs2.coefficient(idx2)}, h-vector sum has {rhs2.coefficient(idx2)}"
        )

    delta_t = delta_from_triangulation(t)
    delta_enum = None
    try:
        prof = ehrhart_profile(
            lambda m: sum(hist[: m + 1]),
            d,
            interior_counter=lambda m: sum(hist[:m]),
        )
        delta_enum = prof.delta
        enum_ok = delta_enum == delta_t
        sym_ok = check_symmetry(prof)
    except (EhrhartConsistencyError, InvariantError) as exc:
        enum_ok = False
        sym_ok = False
        if detail is None:
            detail = f"enumerated counts are not Ehrhart-consistent: {exc}"
    if not enum_ok and detail is None:
        detail = f"enumerated delta {delta_enum} != assembled delta {delta_t}"
    if enum_ok and not sym_ok and detail is None:
        detail = f"delta is not palindromic: {delta_enum}"

    return IdentityReport(
        truncation=m_top,
        lattice_sum=lattice_sum_ok,
        second_proof=second_ok,
        enumerative_match=enum_ok,
        symmetry=sym_ok,
        delta_triangulation=delta_t,
        delta_enumerative=delta_enum,
        detail=detail,
    )


def triangulation_independence_check(region, orders: Sequence[Sequence]) -> bool:
    """Do all pulling orders give the same delta? Vacuously true for fewer
    than two orders."""
    region = _as_region(region)
    if len(orders) < 2:
        return True
    deltas = {
        delta_from_triangulation(pulling_triangulation(region, vertex_order=list(o)))
        for o in orders
    }
    return len(deltas) == 1
