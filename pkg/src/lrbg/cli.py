"""Command-line front end: build, verify, compute, compare, export.

Every subcommand prints JSON (pretty by default) and exits 0 exactly when
all requested verifications pass; failures and guard violations exit
nonzero with a machine-readable error object.  All scalars are rendered
exactly, never as decimals.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import AlgebraVector, verify_csopoi
from .csopoi import lrbg_csopoi
from .groups import BUILTIN_GROUPS, builtin_group
from .hsiao import DEFAULT_MAX_ELEMENTS, HsiaoAlgebra, build_hsiao
from .mr import MRAlgebra, vazirani_idempotents
from .presheaf import (
    GroupPresheaf,
    roundtrip_table_matches,
    semigroup_from_presheaf,
    strictify,
)
from .saliola import (
    HomogeneousSection,
    SupportStructure,
    saliola_idempotents,
    section_from_json,
)
from .semigroup import AXIOM_KINDS, FiniteSemigroup, SemigroupError, check_axioms


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def max_elements() -> int:
    value = os.environ.get("LRBG_MAX_ELEMENTS")
    return int(value) if value else DEFAULT_MAX_ELEMENTS


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {path}: {exc}")


def load_semigroup(path: str) -> FiniteSemigroup:
    data = load_json(path)
    try:
        return FiniteSemigroup.from_json(data, name=os.path.basename(path))
    except (KeyError, SemigroupError) as exc:
        raise CliError(f"bad semigroup file {path}: {exc}")


def load_group(spec: str) -> FiniteSemigroup:
    if spec in BUILTIN_GROUPS:
        return builtin_group(spec)
    return load_semigroup(spec)


def emit(payload, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def vectors_payload(S: FiniteSemigroup, vectors: dict[str, AlgebraVector]) -> dict:
    return {
        "semigroup": S.name or "semigroup",
        "vectors": {key: vec.to_json() for key, vec in vectors.items()},
    }


# -- subcommands -------------------------------------------------------------


def cmd_check(args) -> int:
    S = load_semigroup(args.semigroup)
    report = check_axioms(S, args.kind)
    emit(
        {
            "kind": args.kind,
            "ok": report.ok,
            "witness": list(report.witness) if report.witness else None,
            "reason": report.reason,
        },
        args.out,
    )
    return 0 if report.ok else 1


def _load_section(S: FiniteSemigroup, spec: str) -> HomogeneousSection:
    structure = SupportStructure.of(S)
    if spec == "uniform":
        return HomogeneousSection.uniform(structure)
    return section_from_json(structure, load_json(spec))


def cmd_saliola(args) -> int:
    S = load_semigroup(args.semigroup)
    section = _load_section(S, args.section)
    e = saliola_idempotents(section)
    lattice = section.structure.lattice
    vectors = {lattice.labels[X]: vec for X, vec in sorted(e.items())}
    report = verify_csopoi(list(e.values()), check_primitivity=args.verify)
    payload = vectors_payload(S, vectors)
    payload["verification"] = report.summary()
    emit(payload, args.out)
    return 0 if report.ok else 1


def cmd_csopoi(args) -> int:
    S = load_semigroup(args.semigroup)
    section = _load_section(S, args.section)
    try:
        system = lrbg_csopoi(S, section)
    except SemigroupError as exc:
        raise CliError(f"unsupported: {exc}", code=3)
    payload = vectors_payload(S, system)
    status = 0
    if args.verify:
        report = verify_csopoi(list(system.values()))
        payload["verification"] = report.summary()
        status = 0 if report.ok else 1
    emit(payload, args.out)
    return status


def cmd_hsiao(args) -> int:
    G = load_group(args.group)
    if args.emit == "semigroup":
        S = build_hsiao(args.n, G, max_elements())
        emit(S.to_json(), args.out)
        return 0
    A = HsiaoAlgebra(args.n, G, max_elements())
    if args.emit == "idempotents":
        section = (
            HomogeneousSection.uniform(A.structure)
            if args.section == "uniform"
            else section_from_json(A.structure, load_json(args.section))
        )
        system = lrbg_csopoi(A.semigroup, section, order=A.order)
        payload = vectors_payload(A.semigroup, system)
        status = 0
        if args.check:
            report = verify_csopoi(list(system.values()))
            payload["verification"] = report.summary()
            status = 0 if report.ok else 1
        emit(payload, args.out)
        return status
    # bases of the invariant subalgebra
    bases = A.invariant_bases()
    payload = {
        "semigroup": A.semigroup.name,
        "bases": {
            name: {key: vec.to_json() for key, vec in basis.items()}
            for name, basis in bases.items()
        },
    }
    status = 0
    if args.check and "e" in bases:
        report = verify_csopoi(
            list(bases["e"].values()), subalgebra=A.invariant_basis_vectors()
        )
        payload["verification"] = report.summary()
        status = 0 if report.ok else 1
    emit(payload, args.out)
    return status


def cmd_mr(args) -> int:
    G = load_group(args.group)
    mr = MRAlgebra(args.n, G, max_elements())
    status = 0
    if args.emit == "x-basis":
        vectors = {mr.x_label(p): mr.x_vector_direct(p) for p in mr.gamma()}
        payload = vectors_payload(mr.wreath, vectors)
        if args.check:
            ok = all(mr.x_vector(p) == mr.x_vector_direct(p) for p in mr.gamma())
            payload["verification"] = "x-from-y: " + ("pass" if ok else "FAIL")
            status = 0 if ok else 1
    elif args.emit == "idempotents":
        system = mr.mr_csopoi()
        payload = vectors_payload(mr.wreath, system)
        if args.check:
            report = verify_csopoi(list(system.values()), check_primitivity=False)
            payload["verification"] = report.summary()
            status = 0 if report.ok else 1
    else:  # vazirani
        system = vazirani_idempotents(mr)
        payload = vectors_payload(mr.wreath, system)
        if args.check:
            closed = mr.mr_csopoi()
            same = set(system) == set(closed) and all(
                system[k] == closed[k] for k in system
            )
            report = verify_csopoi(list(system.values()), check_primitivity=False)
            payload["verification"] = (
                report.summary() + f"  matches-closed-form: {'pass' if same else 'FAIL'}"
            )
            status = 0 if (report.ok and same) else 1
    emit(payload, args.out)
    return status


def cmd_presheaf(args) -> int:
    if args.strictify:
        S = load_semigroup(args.strictify)
        emit(strictify(S).to_json(), args.out)
        return 0
    P = GroupPresheaf.from_json(load_json(args.file))
    S = semigroup_from_presheaf(P)
    payload = S.to_json()
    status = 0
    if args.roundtrip:
        ok = roundtrip_table_matches(S)
        payload = {"semigroup": payload, "roundtrip": "pass" if ok else "FAIL"}
        status = 0 if ok else 1
    emit(payload, args.out)
    return status


def cmd_verify_csopoi(args) -> int:
    S = load_semigroup(args.semigroup)
    data = load_json(args.vectors)
    try:
        system = [
            AlgebraVector.from_json(S, vec_json)
            for vec_json in data.get("vectors", {}).values()
        ]
    except KeyError as exc:
        raise CliError(f"vector file references an unknown element label: {exc}")
    if not system:
        raise CliError("vector file contains no vectors")
    try:
        report = verify_csopoi(system, check_primitivity=not args.no_primitivity)
    except SemigroupError as exc:
        raise CliError(f"unsupported: {exc}", code=3)
    emit(
        {
            "idempotent": report.idempotent,
            "orthogonal": report.orthogonal,
            "complete": report.complete,
            "primitive": report.primitive,
            "witnesses": {k: str(v) for k, v in report.witnesses.items()},
            "summary": report.summary(),
        },
        args.out,
    )
    return 0 if report.ok else 1


def cmd_compare(args) -> int:
    a = load_json(args.path_a)
    b = load_json(args.path_b)
    if a.get("semigroup") != b.get("semigroup"):
        raise CliError(
            f"vector lists over different semigroups: "
            f"{a.get('semigroup')!r} vs {b.get('semigroup')!r}"
        )
    from .scalars import Cyclo

    va, vb = a.get("vectors", {}), b.get("vectors", {})
    difference = None
    for key in sorted(set(va) | set(vb)):
        if key not in va or key not in vb:
            difference = {"vector": key, "missing_from": "A" if key not in va else "B"}
            break
        ca, cb = va[key]["coeffs"], vb[key]["coeffs"]
        for label in sorted(set(ca) | set(cb)):
            za = Cyclo.from_json(ca[label]) if label in ca else None
            zb = Cyclo.from_json(cb[label]) if label in cb else None
            if za is None or zb is None or za != zb:
                difference = {
                    "vector": key,
                    "element": label,
                    "a": str(za) if za is not None else "0",
                    "b": str(zb) if zb is not None else "0",
                }
                break
        if difference:
            break
    emit({"equal": difference is None, "first_difference": difference}, args.out)
    return 0 if difference is None else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrbg",
        description="Exact computations with left regular bands of groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify semigroup axioms")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--kind", required=True, choices=AXIOM_KINDS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("saliola", help="lattice idempotents of an LRB algebra")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--section", default="uniform")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_saliola)

    p = sub.add_parser("csopoi", help="idempotent system of an LRBG algebra")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--section", default="uniform")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_csopoi)

    p = sub.add_parser("hsiao", help="the algebra of G-compositions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--emit", default="bases", choices=["bases", "idempotents", "semigroup"])
    p.add_argument("--section", default="uniform")
    p.add_argument("--check", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hsiao)

    p = sub.add_parser("mr", help="the Mantaci-Reutenauer algebra")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group", default="C2")
    p.add_argument("--emit", default="x-basis", choices=["x-basis", "idempotents", "vazirani"])
    p.add_argument("--check", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_mr)

    p = sub.add_parser("presheaf", help="presheaves of groups over an LRB")
    p.add_argument("--file")
    p.add_argument("--strictify", metavar="SEMIGROUP_JSON")
    p.add_argument("--roundtrip", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_presheaf)

    p = sub.add_parser("verify-csopoi", help="verify a vector list as a CSoPOI")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--vectors", required=True)
    p.add_argument("--no-primitivity", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_csopoi)

    p = sub.add_parser("compare", help="exact equality of two vector lists")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "presheaf" and not (args.file or args.strictify):
        parser.error("presheaf needs --file or --strictify")
    try:
        return args.func(args)
    except CliError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return exc.code
    except SemigroupError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
