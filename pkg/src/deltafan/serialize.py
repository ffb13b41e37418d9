"""JSON encoding of inputs (lattice, polytope, fan) and computed reports.

Rational numbers travel as integers or "p/q" strings. Input documents are
validated against INPUT_SCHEMA (unknown fields are rejected) before any
geometry is constructed; schema and parse problems raise InputError.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import jsonschema

from .ehrhart import EhrhartProfile, UnimodalityReport
from .errors import InputError
from .fan import Fan, build_fan, face_fan
from .lattice import Lattice
from .polytope import LatticePolytope, ReflexivityCheck, hull
from .stringy import IdentityReport, StringyReport

_COORD = {
    "anyOf": [
        {"type": "integer"},
        {"type": "string", "pattern": "^-?[0-9]+(/[1-9][0-9]*)?$"},
    ]
}
_VECTOR = {"type": "array", "minItems": 1, "items": _COORD}

INPUT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "required": ["lattice"],
    "properties": {
        "lattice": {
            "type": "object",
            "additionalProperties": False,
            "required": ["dim"],
            "properties": {
                "dim": {"type": "integer", "minimum": 1},
                "generators": {"type": "array", "minItems": 1, "items": _VECTOR},
            },
        },
        "polytope": {
            "type": "object",
            "additionalProperties": False,
            "required": ["vertices"],
            "properties": {
                "vertices": {"type": "array", "minItems": 1, "items": _VECTOR},
            },
        },
        "fan": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "rays": {"type": "array", "minItems": 1, "items": _VECTOR},
                "max_cones": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "array",
                        "minItems": 1,
                        "items": {"type": "integer", "minimum": 0},
                    },
                },
                "from_reflexive": {"type": "boolean"},
            },
        },
    },
}


def rat_to_json(x) -> int | str:
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def rat_from_json(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"expected an integer or 'p/q' string, got {x!r}")
    # Fraction() alone would also accept decimal strings like "1.5"
    if isinstance(x, str) and not re.fullmatch(r"-?[0-9]+(/[1-9][0-9]*)?", x):
        raise InputError(f"invalid rational {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid rational {x!r}") from exc


def vector_from_json(v: Sequence) -> tuple[Fraction, ...]:
    return tuple(rat_from_json(x) for x in v)


def vector_to_json(v: Sequence) -> list[int | str]:
    return [rat_to_json(x) for x in v]


def parse_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    return doc


def validate_document(doc: dict) -> None:
    try:
        jsonschema.validate(doc, INPUT_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "(top level)"
        raise InputError(f"input does not match the schema at {path}: {exc.message}") from exc
    fan = doc.get("fan")
    if fan is not None:
        explicit = "rays" in fan or "max_cones" in fan
        if fan.get("from_reflexive"):
            if explicit:
                raise InputError("fan: from_reflexive excludes explicit rays/max_cones")
            if "polytope" not in doc:
                raise InputError("fan: from_reflexive needs a polytope in the document")
        elif not ("rays" in fan and "max_cones" in fan):
            raise InputError("fan needs both rays and max_cones (or from_reflexive: true)")


def lattice_from_json(obj: dict) -> Lattice:
    dim = obj["dim"]
    gens = obj.get("generators")
    if gens is None:
        return Lattice.standard(dim)
    vecs = [vector_from_json(g) for g in gens]
    if any(len(v) != dim for v in vecs):
        raise InputError("lattice generators must have length dim")
    return Lattice.from_generators(vecs)


def lattice_to_json(lattice: Lattice) -> dict:
    return {
        "dim": lattice.dim,
        "generators": [vector_to_json(b) for b in lattice.basis_vectors()],
    }


def polytope_from_json(obj: dict, lattice: Lattice) -> LatticePolytope:
    verts = [vector_from_json(v) for v in obj["vertices"]]
    if any(len(v) != lattice.dim for v in verts):
        raise InputError("polytope vertices must have length dim")
    return hull(lattice, verts)


def polytope_to_json(p: LatticePolytope) -> dict:
    return {"vertices": [vector_to_json(v.ambient) for v in p.vertices]}


@dataclass(frozen=True)
class Instance:
    lattice: Lattice
    polytope: LatticePolytope | None
    fan: Fan | None


def load_instance(doc: dict) -> Instance:
    validate_document(doc)
    lattice = lattice_from_json(doc["lattice"])
    polytope = None
    if "polytope" in doc:
        polytope = polytope_from_json(doc["polytope"], lattice)
    fan = None
    if "fan" in doc:
        fobj = doc["fan"]
        if fobj.get("from_reflexive"):
            fan = face_fan(polytope)
        else:
            rays = [vector_from_json(r) for r in fobj["rays"]]
            if any(len(r) != lattice.dim for r in rays):
                raise InputError("fan rays must have length dim")
            fan = build_fan(lattice, rays, fobj["max_cones"])
    return Instance(lattice=lattice, polytope=polytope, fan=fan)


def load_instance_text(text: str) -> Instance:
    return load_instance(parse_document(text))


def profile_to_json(prof: EhrhartProfile) -> dict:
    return {
        "dim": prof.dim,
        "counts": list(prof.counts),
        "delta": list(prof.delta),
        "ell": prof.ell,
        "r": prof.r,
        "polynomial": vector_to_json(prof.poly.coeffs),
    }


def unimodality_to_json(rep: UnimodalityReport) -> dict:
    return {
        "unimodal": rep.unimodal,
        "descents": list(rep.descents),
        "weak_chain": rep.weak_ineq_holds,
    }


def reflexivity_to_json(chk: ReflexivityCheck) -> dict:
    out: dict[str, Any] = {"reflexive": chk.reflexive, "certificate": chk.certificate}
    if chk.facet_index is not None:
        out["facet_index"] = chk.facet_index
    if chk.primitive_normal is not None:
        out["primitive_normal"] = list(chk.primitive_normal)
        out["lattice_distance"] = chk.lattice_distance
    return out


def stringy_to_json(rep: StringyReport) -> dict:
    return {
        "h_T": list(rep.h_t),
        "delta": list(rep.delta),
        "boxes": [
            {
                "face": list(bp.face),
                "point": vector_to_json(bp.point.ambient),
                "coefficients": vector_to_json(bp.coefficients),
                "shift": bp.shift,
            }
            for bp in rep.boxes
        ],
    }


def identities_to_json(rep: IdentityReport) -> dict:
    out: dict[str, Any] = {
        "truncation": rep.truncation,
        "lattice_sum": rep.lattice_sum,
        "second_proof": rep.second_proof,
        "enumerative_match": rep.enumerative_match,
        "symmetry": rep.symmetry,
        "delta_triangulation": list(rep.delta_triangulation),
        "all_pass": rep.all_pass,
    }
    if rep.delta_enumerative is not None:
        out["delta_enumerative"] = list(rep.delta_enumerative)
    if rep.detail is not None:
        out["detail"] = rep.detail
    return out
