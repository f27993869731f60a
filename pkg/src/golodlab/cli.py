"""Command-line interface.

Exit codes: 0 when a verdict was computed, 1 on input errors, and 2 when an
internal verification fails (an identity the theory guarantees came out
nonzero) -- the latter must never happen and indicates a bug.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from . import __version__
from .analysis import full_report, is_neighborly, is_tight, manifold_annotations
from .catalog import ENTRIES, CatalogIntegrityError, catalog, catalog_names
from .dga import HochsterDGA, weak_golod_check
from .homology import homology
from .io import ParseError, emit_complex, emit_report, parse_complex
from .linalg import parse_field
from .massey import (
    NotLiftable, PipelineError, construct_golod_certificate, hochster_class,
    triple_massey_exact,
)
from .simplicial import SimplicialComplex, SimplicialMap, VertexPartition

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


def _default_jobs():
    env = os.environ.get("GOLODLAB_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _load_complex(target: str, fmt: str | None) -> SimplicialComplex:
    if target in ENTRIES:
        return catalog(target)
    path = Path(target)
    if not path.exists():
        raise ParseError(f"{target!r} is neither a catalog name nor a file")
    if fmt is None:
        fmt = "facet-json" if path.suffix == ".json" else "facet-lines"
    return parse_complex(path.read_text(), fmt, name=path.stem)


def _emit(args, payload: dict) -> None:
    text = emit_report(payload, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_common(p, with_field=True):
    p.add_argument("complex", help="catalog name or path to a facet file")
    if with_field:
        p.add_argument("--field", default="q", help="q or f<p> (default q)")
    p.add_argument("--input-format", choices=["facet-lines", "facet-json"], default=None)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out", default=None, help="write the report to a file")
    p.add_argument("--jobs", type=int, default=None,
                   help="concurrent subset jobs (default: GOLODLAB_JOBS or all cores)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="golodlab",
        description="Exact tightness and Golodness checks for small simplicial complexes",
    )
    ap.add_argument("--version", action="version", version=f"golodlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="Betti numbers and homology bases")
    _add_common(p)
    p.add_argument("--flavor", choices=["unreduced", "reduced"], default="unreduced")

    p = sub.add_parser("tight", help="tightness over a field")
    _add_common(p)
    p.add_argument("--flavor", choices=["unreduced", "reduced"], default="unreduced")
    p.add_argument("--full-table", action="store_true")

    p = sub.add_parser("weak-golod", help="triviality of all pairwise products")
    _add_common(p)

    p = sub.add_parser("certify-golod", help="constructive vanishing certificates")
    _add_common(p)
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--skip-decomposition", action="store_true",
                   help="skip the per-entry decomposition oracle")

    p = sub.add_parser("massey-triple", help="exact triple product with indeterminacy")
    _add_common(p)
    p.add_argument("--supports", nargs=3, required=True, metavar="V,V,..",
                   help="three comma-separated vertex lists")
    p.add_argument("--degrees", default=None, help="comma-separated reduced degrees")
    p.add_argument("--indices", default=None, help="comma-separated basis indices")
    p.add_argument("--rerandomize", type=int, default=0,
                   help="re-randomize representatives this many times")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("report", help="full per-complex report")
    _add_common(p, with_field=False)
    p.add_argument("--fields", default="q,f2", help="comma-separated field names")
    p.add_argument("--certify", action="store_true",
                   help="include Golod certificates for tight fields")
    p.add_argument("--max-arity", type=int, default=3)

    p = sub.add_parser("catalog", help="list the built-in complexes")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify-identities", help="randomized identity sweeps")
    p.add_argument("complex", nargs="?", default=None,
                   help="optional catalog name or file for partition identities")
    p.add_argument("--field", default="q")
    p.add_argument("--input-format", choices=["facet-lines", "facet-json"], default=None)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=25)
    return ap


def _cmd_homology(args) -> int:
    K = _load_complex(args.complex, args.input_format)
    F = parse_field(args.field)
    reduced = args.flavor == "reduced"
    h = homology(K, F, reduced)
    lo = -1 if reduced else 0
    payload = {
        "command": "homology",
        "name": K.name or args.complex,
        "field": F.name,
        "flavor": args.flavor,
        "f_vector": list(K.f_vector()),
        "euler_characteristic": K.euler_characteristic(),
        "betti": {str(d): h.betti(d) for d in range(lo, K.dim() + 1)},
    }
    _emit(args, payload)
    return EXIT_OK


def _cmd_tight(args) -> int:
    K = _load_complex(args.complex, args.input_format)
    F = parse_field(args.field)
    rep = is_tight(K, F, args.flavor, full_table=args.full_table, jobs=args.jobs or _default_jobs())
    payload = {
        "command": "tight",
        "name": K.name or args.complex,
        "field": F.name,
        "flavor": args.flavor,
        "tight": rep.verdict,
        "witness": [list(v) for v in rep.witness] if rep.witness else None,
        "neighborly": is_neighborly(K),
    }
    if rep.table is not None:
        payload["table"] = {
            ",".join(str(v[0]) if len(v) == 1 else str(list(v)) for v in key): val
            for key, val in rep.table.items()
        }
    _emit(args, payload)
    return EXIT_OK


def _cmd_weak_golod(args) -> int:
    K = _load_complex(args.complex, args.input_format)
    F = parse_field(args.field)
    verdict, witness = weak_golod_check(K, F)
    payload = {
        "command": "weak-golod",
        "name": K.name or args.complex,
        "field": F.name,
        "weak_golod": verdict,
        "witness": None if witness is None else {
            "I": [list(v) for v in witness[0]],
            "J": [list(v) for v in witness[1]],
            "degrees": [witness[2], witness[3]],
        },
    }
    _emit(args, payload)
    return EXIT_OK


def _serialize_system(system):
    out = {}
    for (i, j), el in sorted(system.items()):
        if hasattr(el, "coeffs"):  # element of the dga
            K = el.dga.complex
            items = [
                {
                    "subset": [list(x) for x in K.face_of_mask(imask)],
                    "face": [list(x) for x in K.face_of_mask(fmask)],
                    "value": str(v),
                }
                for (imask, fmask), v in sorted(el.coeffs.items())
            ]
        else:  # ambient cochain
            items = [
                {"face": [list(x) for x in face], "value": str(v)}
                for face, v in sorted(el.data.items())
            ]
        out[f"{i},{j}"] = items
    return out


def _cmd_certify(args) -> int:
    K = _load_complex(args.complex, args.input_format)
    F = parse_field(args.field)
    rep = is_tight(K, F)
    if not rep.verdict:
        sys.stderr.write(
            f"golodlab: {K.name or args.complex} is not tight over {F.name} "
            f"(witness {rep.witness}); no certificate exists\n")
        return EXIT_INPUT
    cert = construct_golod_certificate(
        K, F, max_arity=args.max_arity, name=K.name or args.complex,
        check_decomposition=not args.skip_decomposition,
        jobs=args.jobs or _default_jobs())
    payload = {
        "command": "certify-golod",
        "name": K.name or args.complex,
        "field": F.name,
        "summary": cert.summary(),
        "entries": [
            {
                "support": [list(v) for v in e.support],
                "parts": [[list(v) for v in p] for p in e.parts],
                "classes": [list(c) for c in e.class_tuple],
                "q": e.q,
                "defining_system_ok": e.defining_ok,
                "representative_is_coboundary_of_top_element": e.representative_is_delta_b,
                "representative_class_zero": e.representative_zero,
                "decomposition_oracle_ok": e.decomposition_ok,
                "ambient_system": _serialize_system(e.a_system),
                "restricted_system": _serialize_system(e.b_system),
            }
            for e in cert.entries
        ],
    }
    _emit(args, payload)
    return EXIT_OK if cert.all_verified else EXIT_INTERNAL


def _parse_csints(s):
    return [int(tok) for tok in s.split(",") if tok.strip() != ""]


def _cmd_massey_triple(args) -> int:
    K = _load_complex(args.complex, args.input_format)
    F = parse_field(args.field)
    dga = HochsterDGA(K, F)
    supports = [_parse_csints(s) for s in args.supports]
    degrees = _parse_csints(args.degrees) if args.degrees else None
    indices = _parse_csints(args.indices) if args.indices else [0, 0, 0]
    classes = []
    for pos, sup in enumerate(supports):
        imask = K.mask_of([(v,) for v in sup])
        coh = dga.sub_cohomology(imask)
        if degrees:
            d = degrees[pos]
        else:
            ds = [d for d in range(-1, dga.subcomplex(imask).dim() + 1) if coh.betti(d)]
            if not ds:
                sys.stderr.write(f"golodlab: subset {sup} has no reduced cohomology\n")
                return EXIT_INPUT
            d = ds[0]
        try:
            classes.append(hochster_class(dga, imask, d, indices[pos]))
        except ValueError as exc:
            sys.stderr.write(f"golodlab: {exc}\n")
            return EXIT_INPUT
    outcome = triple_massey_exact(dga, *classes)
    for t in range(args.rerandomize):
        rng = random.Random(args.seed + t)
        again = triple_massey_exact(dga, *classes, rng=rng)
        if again.defined != outcome.defined or again.trivial != outcome.trivial:
            sys.stderr.write("golodlab: verdict changed under re-randomization\n")
            return EXIT_INTERNAL
    payload = {
        "command": "massey-triple",
        "name": K.name or args.complex,
        "field": F.name,
        "supports": supports,
        "degrees": [c.degree for c in classes],
        "total_degrees": [c.total_degree for c in classes],
        "defined": outcome.defined,
        "reason": outcome.reason,
        "trivial": outcome.trivial,
        "indeterminacy_rank": outcome.indeterminacy_rank,
        "rerandomizations": args.rerandomize,
    }
    _emit(args, payload)
    return EXIT_OK


def _cmd_report(args) -> int:
    K = _load_complex(args.complex, args.input_format)
    fields = [parse_field(tok) for tok in args.fields.split(",") if tok.strip()]
    report = full_report(K, fields, name=K.name or args.complex,
                         certify=args.certify, max_arity=args.max_arity,
                         jobs=args.jobs or _default_jobs())
    payload = dict(report.data)
    payload["command"] = "report"
    _emit(args, payload)
    return EXIT_OK


def _cmd_catalog(args) -> int:
    entries = []
    for name in catalog_names():
        K = catalog(name)
        entries.append({
            "name": name,
            "description": ENTRIES[name].description,
            "n_vertices": len(K.vertices),
            "dim": K.dim(),
            "f_vector": list(K.f_vector()),
            "euler_characteristic": K.euler_characteristic(),
            "validated": True,
        })
    _emit(args, {"command": "catalog", "entries": entries})
    return EXIT_OK


def _cmd_verify_identities(args) -> int:
    from .prism import (verify_boundary_identity, verify_boundary_identity_I,
                        verify_prism_identity)
    from .homology import Cochain
    from .linalg import GF2, GF3, QQ

    rng = random.Random(args.seed)
    fields = [QQ, GF2, GF3]
    checked = failures = 0
    for _ in range(args.cases):
        n = rng.randint(2, 5)
        verts = list(range(1, n + 1))
        facets = [rng.sample(verts, rng.randint(1, min(4, n)))
                  for _ in range(rng.randint(1, 5))]
        K = SimplicialComplex.from_facets(facets, vertices=verts)
        q = rng.randint(0, 2)
        prod = K.ordered_product(q)
        m = rng.randint(1, 4)
        L = SimplicialComplex.from_facets([list(range(m))])
        H = SimplicialMap(prod, L, {v: (rng.randrange(m),) for v in prod.vertices})
        F = fields[rng.randrange(3)]
        checked += 1
        if verify_boundary_identity(H, F):
            failures += 1
    partition_checked = 0
    if args.complex:
        K = _load_complex(args.complex, args.input_format)
        verts = list(K.vertices)
        for _ in range(args.cases):
            r = rng.randint(1, min(3, len(verts)))
            assignment = [rng.randrange(r) for _ in verts]
            if len(set(assignment)) < r:
                continue
            parts = [[v for v, a in zip(verts, assignment) if a == t] for t in range(r)]
            P = VertexPartition(K, parts)
            F = fields[rng.randrange(3)]
            partition_checked += 1
            if verify_boundary_identity_I(K, P, F):
                failures += 1
            if r >= 2:
                cochains = []
                for _ in range(r):
                    d = rng.randint(0, max(0, K.dim()))
                    data = {f: F.of(rng.randint(-2, 2)) for f in K.faces_of_card(d + 1)}
                    cochains.append(Cochain(K, F, d, data))
                if not verify_prism_identity(K, P, cochains, F).is_zero():
                    failures += 1
    payload = {
        "command": "verify-identities",
        "seed": args.seed,
        "random_homotopy_cases": checked,
        "partition_cases": partition_checked,
        "failures": failures,
    }
    _emit(args, payload)
    return EXIT_OK if failures == 0 else EXIT_INTERNAL


_COMMANDS = {
    "homology": _cmd_homology,
    "tight": _cmd_tight,
    "weak-golod": _cmd_weak_golod,
    "certify-golod": _cmd_certify,
    "massey-triple": _cmd_massey_triple,
    "report": _cmd_report,
    "catalog": _cmd_catalog,
    "verify-identities": _cmd_verify_identities,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, CatalogIntegrityError, NotLiftable, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"golodlab: {exc}\n")
        return EXIT_INPUT
    except PipelineError as exc:
        sys.stderr.write(f"golodlab: internal verification failure: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
