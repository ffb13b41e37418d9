"""Exact Ehrhart delta-vectors of lattice polytopes and Gorenstein fan regions."""

__version__ = "0.1.0"

from .exactmath import Mat, Poly, Rat, TruncSeries, hnf, snf, solve_exact
from .lattice import Lattice, LPoint
from .polytope import LatticePolytope, hull
from .ehrhart import (
    EhrhartProfile,
    check_symmetry,
    check_unimodality,
    polytope_profile,
    profile,
    reciprocity_check,
)
from .fan import Fan, QRegion, SupportFunction, build_fan, face_fan
from .stringy import (
    BoundaryTriangulation,
    BoxPoint,
    IdentityReport,
    StringyReport,
    box_points,
    delta_from_triangulation,
    pulling_triangulation,
    star_h_vector,
    stringy_report,
    triangulation_independence_check,
    verify_identities,
)
from .families import hibi_counterexample, pulling_order_for_family, random_gorenstein_instance

__all__ = [
    "Mat",
    "Poly",
    "Rat",
    "TruncSeries",
    "hnf",
    "snf",
    "solve_exact",
    "Lattice",
    "LPoint",
    "LatticePolytope",
    "hull",
    "EhrhartProfile",
    "profile",
    "polytope_profile",
    "check_symmetry",
    "check_unimodality",
    "reciprocity_check",
    "Fan",
    "QRegion",
    "SupportFunction",
    "build_fan",
    "face_fan",
    "BoundaryTriangulation",
    "BoxPoint",
    "IdentityReport",
    "StringyReport",
    "box_points",
    "delta_from_triangulation",
    "pulling_triangulation",
    "star_h_vector",
    "stringy_report",
    "triangulation_independence_check",
    "verify_identities",
    "hibi_counterexample",
    "pulling_order_for_family",
    "random_gorenstein_instance",
]
