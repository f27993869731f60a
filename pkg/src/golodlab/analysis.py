"""Top-level predicates: tightness, neighborliness, manifold heuristics,
and the aggregated per-complex report."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .dga import HochsterDGA, popcount
from .homology import homology, induced_map
from .simplicial import SimplicialComplex, SimplicialMap


@dataclass
class TightnessReport:
    field_name: str
    flavor: str  # "unreduced" or "reduced"
    verdict: bool
    witness: tuple | None  # vertex labels of the first failing subset
    table: dict | None = None  # subset labels -> bool, when requested

    def __bool__(self):
        return self.verdict


def _subset_injective(K, sub, field, reduced, h_K):
    f = SimplicialMap(sub, K, {v: v for v in sub.vertices})
    h_sub = homology(sub, field, reduced)
    lo = -1 if reduced else 0
    for d in range(lo, sub.dim() + 1):
        b = h_sub.betti(d)
        if b == 0:
            continue
        M = induced_map(f, field, d, reduced, h_sub, h_K)
        if M.rank() < b:
            return False
    return True


def is_tight(K: SimplicialComplex, field, flavor: str = "unreduced",
             full_table: bool = False, jobs: int | None = None) -> TightnessReport:
    """Whether every full subcomplex's homology injects into the whole.

    Scans subsets by ascending cardinality and stops at the first failure
    unless a full table is requested.  The two flavors agree (the point
    class splits off naturally); both are offered because degree-0
    conventions differ across the literature.
    """
    if flavor not in ("unreduced", "reduced"):
        raise ValueError(f"unknown flavor {flavor!r}")
    reduced = flavor == "reduced"
    h_K = homology(K, field, reduced)
    n = len(K.vertices)
    masks = sorted(range(1, 1 << n), key=lambda m: (popcount(m), m))

    def check(imask):
        members = [K.vertices[t] for t in range(n) if imask >> t & 1]
        sub = K.full_subcomplex(members)
        return tuple(members), _subset_injective(K, sub, field, reduced, h_K)

    table = {}
    witness = None
    if jobs and jobs > 1 and full_table:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check, masks))
    else:
        results = map(check, masks)
    for members, ok in results:
        if full_table:
            table[members] = ok
        if not ok and witness is None:
            witness = members
            if not full_table:
                break
    return TightnessReport(field.name, flavor, witness is None, witness,
                           table if full_table else None)


def is_neighborly(K: SimplicialComplex) -> bool:
    """Every two vertices span an edge."""
    verts = K.vertices
    return all((verts[i], verts[j]) in K.faces
               for i in range(len(verts)) for j in range(i + 1, len(verts)))


def tight_neighborly_check(m: int, d: int, h1: int) -> bool:
    """The binomial identity linking vertex count, dimension and first Betti
    number of a candidate manifold triangulation; requires d >= 3."""
    if d < 3:
        raise ValueError("tight-neighborliness is defined for dimension >= 3")
    return comb(m - d - 1, 2) == comb(d + 2, 2) * h1


def tight_neighborly_of_complex(K: SimplicialComplex):
    """(m, d, h1 over the rationals, verdict) for a complex of dim >= 3."""
    from .linalg import QQ

    m = len(K.vertices)
    d = K.dim()
    h1 = homology(K, QQ).betti(1)
    return m, d, h1, tight_neighborly_check(m, d, h1)


def manifold_annotations(K: SimplicialComplex, field) -> dict:
    """Necessary-condition heuristics, not a manifold recognizer."""
    d = K.dim()
    facets = K.faces_of_dim(d)
    pure = all(
        any(set(f) < set(g) for g in facets) for f in K.faces if 0 < len(f) <= d
    ) if d >= 1 else True
    ridge_counts = {}
    for f in facets:
        for i in range(len(f)):
            r = f[:i] + f[i + 1:]
            ridge_counts[r] = ridge_counts.get(r, 0) + 1
    ridge_regular = bool(ridge_counts) and all(c == 2 for c in ridge_counts.values())
    h = homology(K, field)
    connected = h.betti(0) == 1
    return {
        "pure": pure,
        "every_ridge_in_two_facets": ridge_regular,
        "connected": connected,
        "top_homology_rank": h.betti(d),
        "note": "necessary-condition heuristics, not a manifold recognizer",
    }


@dataclass
class ComplexReport:
    name: str
    data: dict


def full_report(K: SimplicialComplex, fields, name: str | None = None,
                certify: bool = False, max_arity: int = 3,
                jobs: int | None = None) -> ComplexReport:
    """Aggregate f-vector, homology, tightness, weak Golodness, the Hochster
    table, annotations, and (optionally) the Golod certificate summary."""
    from . import massey
    from .dga import weak_golod_check

    seen = []
    for f in fields:
        if f not in seen:
            seen.append(f)
    fields = seen
    if not fields:
        raise ValueError("no fields given")
    name = name or K.name or "complex"
    fvec = K.f_vector()
    data = {
        "name": name,
        "n_vertices": len(K.vertices),
        "dim": K.dim(),
        "f_vector": list(fvec),
        "euler_characteristic": K.euler_characteristic(),
        "neighborly": is_neighborly(K),
        "fields": [f.name for f in fields],
        "betti": {},
        "tight": {},
        "weak_golod": {},
        "hochster_positive_entries": {},
        "annotations": {},
        "certificate": None,
    }
    for f in fields:
        h = homology(K, f)
        data["betti"][f.name] = list(h.betti_vector())
        hr = homology(K, f, reduced=True)
        data["betti"][f.name + "_reduced"] = list(hr.betti_vector())
        t_un = is_tight(K, f, "unreduced", jobs=jobs)
        t_re = is_tight(K, f, "reduced", jobs=jobs)
        data["tight"][f.name] = {
            "unreduced": t_un.verdict,
            "reduced": t_re.verdict,
            "witness": [list(v) for v in t_un.witness] if t_un.witness else None,
        }
        dga = HochsterDGA(K, f)
        verdict, raw = dga.weak_golod()
        witness = None if raw is None else (
            K.face_of_mask(raw[0]), K.face_of_mask(raw[1]), raw[2], raw[3])
        data["weak_golod"][f.name] = {
            "verdict": verdict,
            "witness": None if witness is None else {
                "I": [list(v) for v in witness[0]],
                "J": [list(v) for v in witness[1]],
                "degrees": [witness[2], witness[3]],
            },
        }
        table = dga.hochster_table()
        data["hochster_positive_entries"][f.name] = [
            {"subset": [list(v) for v in K.face_of_mask(imask)],
             "degree": d, "rank": rank}
            for (imask, d), rank in sorted(table.items())
        ]
        data["annotations"][f.name] = {
            k: v for k, v in manifold_annotations(K, f).items()
        }
        if certify and t_un.verdict:
            cert = massey.construct_golod_certificate(
                K, f, max_arity=max_arity, name=name, jobs=jobs)
            data["certificate"] = data["certificate"] or {}
            data["certificate"][f.name] = cert.summary()
    # internal consistency: Euler characteristic vs alternating Betti sum
    for f in fields:
        alt = sum((-1) ** i * b for i, b in enumerate(data["betti"][f.name]))
        if alt != data["euler_characteristic"]:
            raise AssertionError("Euler characteristic mismatch in report")
    return ComplexReport(name, data)
