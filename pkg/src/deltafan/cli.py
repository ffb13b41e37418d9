"""Command-line interface.

Every computation command takes one input document (a file path, "-" for
stdin, or an inline JSON object) matching the published schema. Exit codes:
0 on success, 1 when a check command's mathematical verdict is false
(fan-check, verify), 2 for unusable input, 3 for an internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .ehrhart import check_symmetry, check_unimodality, polytope_profile
from .errors import DeltafanError, InputError, InvariantError
from .families import family_expected_delta, hibi_counterexample
from .fan import Fan, face_fan
from .kernels import active_backend
from .serialize import (
    Instance,
    identities_to_json,
    lattice_to_json,
    load_instance,
    parse_document,
    polytope_to_json,
    profile_to_json,
    reflexivity_to_json,
    stringy_to_json,
    unimodality_to_json,
    validate_document,
)
from .stringy import pulling_triangulation, stringy_report, verify_identities


def _read_source(src: str) -> str:
    if src == "-":
        return sys.stdin.read()
    if src.lstrip().startswith("{"):
        return src
    try:
        return Path(src).read_text()
    except OSError as exc:
        raise InputError(f"cannot read input {src!r}: {exc}") from exc


def _load(args) -> Instance:
    doc = parse_document(_read_source(args.input))
    return load_instance(doc)


def _require_polytope(inst: Instance):
    if inst.polytope is None:
        raise InputError("this command needs a polytope in the input document")
    return inst.polytope


def _fan_of(inst: Instance) -> Fan:
    if inst.fan is not None:
        return inst.fan
    if inst.polytope is not None:
        return face_fan(inst.polytope)
    raise InputError("this command needs a fan (or a reflexive polytope) in the input document")


def _note(args, message: str) -> None:
    if args.verbose:
        print(f"[deltafan] {message}", file=sys.stderr)


def _emit(args, payload: dict, lines: list[str]) -> None:
    text = json.dumps(payload, indent=2)
    if args.json_path:
        Path(args.json_path).write_text(text + "\n")
    if args.format == "json":
        print(text)
    else:
        for line in lines:
            print(line)


def _vec(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


def _parse_order(fan: Fan, spec: str | None):
    if spec is None:
        return None
    try:
        idxs = [int(x) for x in spec.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"--order must be a list of ray indices: {spec!r}") from exc
    n = len(fan.rays)
    if sorted(idxs) != list(range(n)):
        raise InputError(f"--order must be a permutation of 0..{n - 1}")
    return [fan.rays[i] for i in idxs]


def _cmd_count(args) -> int:
    inst = _load(args)
    if inst.polytope is not None:
        kind = "polytope"
        n = inst.polytope.count_points(args.m, interior=args.interior)
    else:
        kind = "fan region"
        n = _fan_of(inst).count(args.m, interior=args.interior)
    _note(args, f"counted in the {kind} at dilation {args.m} (backend: {active_backend()})")
    which = "interior lattice points" if args.interior else "lattice points"
    _emit(args, {"m": args.m, "interior": args.interior, "count": n}, [f"{which} of {args.m}*P: {n}"])
    return 0


def _profile_of(inst: Instance):
    if inst.polytope is not None:
        return polytope_profile(inst.polytope)
    return _fan_of(inst).delta_profile()


def _cmd_ehrhart(args) -> int:
    inst = _load(args)
    prof = _profile_of(inst)
    payload = profile_to_json(prof)
    lines = [
        f"dim: {prof.dim}",
        f"counts f(0..{prof.dim}): {_vec(prof.counts)}",
        f"polynomial coefficients (1, m, m^2, ...): {_vec(payload['polynomial'])}",
        f"delta: {_vec(prof.delta)}  (degree {prof.ell}, min interior dilation r = {prof.r})",
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_delta(args) -> int:
    inst = _load(args)
    prof = _profile_of(inst)
    uni = check_unimodality(prof)
    sym = check_symmetry(prof)
    payload = profile_to_json(prof) | {"symmetric": sym} | unimodality_to_json(uni)
    lines = [
        f"delta: {_vec(prof.delta)}",
        f"degree: {prof.ell}   min interior dilation r: {prof.r}",
        f"palindromic: {sym}",
        f"unimodal: {uni.unimodal}"
        + (f"   (descents at {list(uni.descents)})" if uni.descents else ""),
        f"weak inequality chain: {uni.weak_ineq_holds}",
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_reflexive(args) -> int:
    inst = _load(args)
    chk = _require_polytope(inst).is_reflexive()
    _emit(
        args,
        reflexivity_to_json(chk),
        [f"reflexive: {chk.reflexive}", f"certificate: {chk.certificate}"],
    )
    return 0


def _cmd_polar(args) -> int:
    inst = _load(args)
    q = _require_polytope(inst).polar()
    payload = {"lattice": lattice_to_json(q.lattice), "polytope": polytope_to_json(q)}
    lines = ["polar polytope vertices:"] + [
        f"  {_vec(v.ambient)}" for v in q.vertices
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_fan_check(args) -> int:
    doc = parse_document(_read_source(args.input))
    validate_document(doc)
    try:
        inst = load_instance(doc)
        fan = _fan_of(inst)
        sf = fan.support_function()
    except DeltafanError as exc:
        _emit(
            args,
            {"valid": False, "reason": str(exc)},
            [f"not a complete Gorenstein fan: {exc}"],
        )
        return 1
    payload = {
        "valid": True,
        "rays": len(fan.rays),
        "max_cones": len(fan.max_cones),
        "convex_support": sf.convex,
        "support_vectors": [list(u) for u in sf.vectors],
    }
    lines = [
        f"complete Gorenstein fan: {len(fan.rays)} rays, {len(fan.max_cones)} maximal cones",
        f"support function is a global max formula (convex region): {sf.convex}",
    ]
    if args.verbose:
        lines += [f"  u[{i}] = {_vec(u)}" for i, u in enumerate(sf.vectors)]
    _emit(args, payload, lines)
    return 0


def _cmd_delta_stringy(args) -> int:
    inst = _load(args)
    fan = _fan_of(inst)
    order = _parse_order(fan, args.order)
    t = pulling_triangulation(fan, vertex_order=order)
    rep = stringy_report(t)
    payload = stringy_to_json(rep) | {"facets": len(t.facets)}
    lines = [
        f"boundary triangulation: {len(t.facets)} facets on {len(t.vertices)} vertices",
        f"h_T: {_vec(rep.h_t)}",
        f"box points: {len(rep.boxes)}",
    ]
    for bp in rep.boxes:
        lines.append(
            f"  face {list(bp.face)}: point {_vec(bp.point.ambient)} at shift {bp.shift}"
        )
    lines.append(f"delta: {_vec(rep.delta)}")
    _emit(args, payload, lines)
    return 0


def _cmd_verify(args) -> int:
    inst = _load(args)
    fan = _fan_of(inst)
    order = _parse_order(fan, args.order)
    t = pulling_triangulation(fan, vertex_order=order)
    rep = verify_identities(fan, t=t, truncation=args.truncation)
    payload = identities_to_json(rep)
    mark = lambda ok: "pass" if ok else "FAIL"  # noqa: E731
    lines = [
        f"truncation order: t^{rep.truncation}",
        f"(i)   lattice sum (1-t) F_Q = sum t^Psi(v): {mark(rep.lattice_sum)}",
        f"(ii)  box decomposition (1-t)^d sum t^Psi(v) = h-vector sum: {mark(rep.second_proof)}",
        f"(iii) triangulation delta equals enumerated delta: {mark(rep.enumerative_match)}",
        f"(iv)  delta is palindromic: {mark(rep.symmetry)}",
    ]
    if rep.detail:
        lines.append(f"detail: {rep.detail}")
    _emit(args, payload, lines)
    return 0 if rep.all_pass else 1


def _cmd_family(args) -> int:
    p, expected = hibi_counterexample(args.m)
    doc = {
        "lattice": lattice_to_json(p.lattice),
        "polytope": polytope_to_json(p),
        "fan": {"from_reflexive": True},
    }
    if args.expected:
        payload = {"document": doc, "expected_delta": list(expected)}
        lines = [json.dumps(doc), f"expected delta: {_vec(expected)}"]
    else:
        payload = doc
        lines = [json.dumps(doc)]
    _emit(args, payload, lines)
    return 0


def _cmd_hibi_scan(args) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        raise InputError(f"{args.directory!r} is not a directory")
    files = sorted(root.glob("*.json"))
    if not files:
        raise InputError(f"no *.json files in {args.directory!r}")
    rows = []
    flagged = []
    for path in files:
        try:
            inst = load_instance(parse_document(path.read_text()))
            p = _require_polytope(inst)
            chk = p.is_reflexive()
            prof = polytope_profile(p)
            uni = check_unimodality(prof)
            sym = check_symmetry(prof)
            hit = chk.reflexive and sym and uni.weak_ineq_holds and not uni.unimodal
            rows.append(
                {
                    "file": path.name,
                    "dim": prof.dim,
                    "reflexive": chk.reflexive,
                    "delta": list(prof.delta),
                    "symmetric": sym,
                    "unimodal": uni.unimodal,
                    "descents": list(uni.descents),
                    "weak_chain": uni.weak_ineq_holds,
                    "flagged": hit,
                }
            )
            if hit:
                flagged.append(path.name)
        except DeltafanError as exc:
            rows.append({"file": path.name, "error": str(exc)})
    lines = []
    for row in rows:
        if "error" in row:
            lines.append(f"{row['file']}: error: {row['error']}")
            continue
        tag = "FLAGGED" if row["flagged"] else "ok"
        lines.append(
            f"{row['file']}: d={row['dim']} reflexive={row['reflexive']} "
            f"unimodal={row['unimodal']} delta={tuple(row['delta'])} [{tag}]"
        )
    lines.append(
        f"flagged {len(flagged)} of {len(files)}: {', '.join(flagged) if flagged else '(none)'}"
    )
    _emit(args, {"results": rows, "flagged": flagged}, lines)
    return 0


def _add_common(sp) -> None:
    sp.add_argument(
        "--format", choices=("table", "json"), default="table", help="output style"
    )
    sp.add_argument(
        "--json", dest="json_path", metavar="PATH", help="also write the JSON payload to a file"
    )
    sp.add_argument("--verbose", action="store_true", help="diagnostics on stderr")


def _add_input(sp) -> None:
    sp.add_argument("input", help="input document: a path, '-' for stdin, or inline JSON")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="deltafan",
        description="Exact Ehrhart delta-vectors of lattice polytopes and Gorenstein fan regions.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", help="lattice points of a dilate")
    _add_input(sp)
    sp.add_argument("--m", type=int, required=True, help="dilation factor")
    sp.add_argument("--interior", action="store_true", help="count interior points")
    _add_common(sp)
    sp.set_defaults(func=_cmd_count)

    sp = sub.add_parser("ehrhart", help="counting polynomial and delta-vector")
    _add_input(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_ehrhart)

    sp = sub.add_parser("delta", help="delta-vector with symmetry/unimodality report")
    _add_input(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_delta)

    sp = sub.add_parser("reflexive", help="reflexivity certificate of a polytope")
    _add_input(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_reflexive)

    sp = sub.add_parser("polar", help="polar of a reflexive polytope")
    _add_input(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_polar)

    sp = sub.add_parser("fan-check", help="is the input a complete Gorenstein fan? (exit 1 if not)")
    _add_input(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_fan_check)

    sp = sub.add_parser("delta-stringy", help="delta via a boundary triangulation and box points")
    _add_input(sp)
    sp.add_argument("--order", help="pulling order as a permutation of ray indices, e.g. '2,0,1'")
    _add_common(sp)
    sp.set_defaults(func=_cmd_delta_stringy)

    sp = sub.add_parser("verify", help="check the defining identities (exit 1 on failure)")
    _add_input(sp)
    sp.add_argument("--order", help="pulling order as a permutation of ray indices")
    sp.add_argument("--truncation", type=int, help="series truncation order (default dim+3)")
    _add_common(sp)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("family", help="emit a member of the non-unimodal reflexive family")
    sp.add_argument("--m", type=int, required=True, help="family index (dimension 2m)")
    sp.add_argument("--expected", action="store_true", help="include the closed-form delta")
    _add_common(sp)
    sp.set_defaults(func=_cmd_family)

    sp = sub.add_parser("hibi-scan", help="scan a directory of polytopes for non-unimodal deltas")
    sp.add_argument("directory", help="directory containing *.json input documents")
    _add_common(sp)
    sp.set_defaults(func=_cmd_hibi_scan)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 3
    except DeltafanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
