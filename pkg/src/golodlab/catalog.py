"""Built-in complexes with self-certifying expectations.

Every entry stores, next to its facet list, the Euler characteristic,
reduced Betti numbers over the rationals and over F_2, and an
orientability proxy (top homology rank over the rationals).  ``catalog``
validates each entry against these expectations on first load, so a
corrupted facet list cannot slip through.
"""

from __future__ import annotations

from dataclasses import dataclass

from .homology import betti_numbers
from .linalg import GF2, QQ
from .simplicial import SimplicialComplex


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    facets: tuple
    description: str
    chi: int
    betti_q: tuple   # reduced, degrees -1..dim
    betti_f2: tuple
    orientable: bool | None  # None for non-manifold entries


def _cycle(m: int):
    return tuple(tuple(sorted((i, i % m + 1))) for i in range(1, m + 1))


def _simplex_facets(n: int):
    return (tuple(range(1, n + 2)),)


def _boundary_facets(n: int):
    verts = range(1, n + 2)
    return tuple(tuple(v for v in verts if v != skip) for skip in verts)


# Minimal 6-vertex triangulation of the real projective plane (antipodal
# quotient of the icosahedron) and the 7-vertex torus; both validated on
# load against their homology expectations.
RP2_6_FACETS = (
    (1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
    (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6),
)

TORUS_7_FACETS = tuple(
    tuple(sorted(((i + a) % 7 + 1, (i + b) % 7 + 1, (i + c) % 7 + 1)))
    for i in range(7) for (a, b, c) in ((0, 1, 3), (0, 2, 3))
)


def _entries():
    out = [
        CatalogEntry("point", ((1,),), "a single vertex", 1, (0, 0), (0, 0), None),
        CatalogEntry("two_points", ((1,), (2,)), "two isolated vertices",
                     2, (0, 1), (0, 1), None),
        CatalogEntry("triangle", _cycle(3), "minimal triangulation of a circle",
                     0, (0, 0, 1), (0, 0, 1), True),
    ]
    for m in range(4, 13):
        out.append(CatalogEntry(
            f"cycle_{m}", _cycle(m), f"the {m}-gon circle",
            0, (0, 0, 1), (0, 0, 1), True))
    for n in range(2, 7):
        chi = 1 + (-1) ** (n - 1)
        betti = tuple(1 if d == n - 1 else 0 for d in range(-1, n))
        out.append(CatalogEntry(
            f"boundary_simplex_{n}", _boundary_facets(n),
            f"boundary of the {n}-simplex (a {n-1}-sphere)",
            chi, betti, betti, True))
    for n in range(1, 7):
        betti = tuple(0 for _ in range(-1, n + 1))
        out.append(CatalogEntry(
            f"simplex_{n}", _simplex_facets(n), f"the full {n}-simplex",
            1, betti, betti, None))
    out.append(CatalogEntry(
        "rp2_6", RP2_6_FACETS, "minimal projective plane",
        1, (0, 0, 0, 0), (0, 0, 1, 1), False))
    out.append(CatalogEntry(
        "torus_7", TORUS_7_FACETS, "the 7-vertex torus",
        0, (0, 0, 2, 1), (0, 0, 2, 1), True))
    return {e.name: e for e in out}


ENTRIES = _entries()

_loaded: dict = {}


class CatalogIntegrityError(Exception):
    pass


def _validate(entry: CatalogEntry, K: SimplicialComplex):
    if K.euler_characteristic() != entry.chi:
        raise CatalogIntegrityError(
            f"{entry.name}: Euler characteristic {K.euler_characteristic()} != {entry.chi}")
    bq = betti_numbers(K, QQ, reduced=True)
    if bq != entry.betti_q:
        raise CatalogIntegrityError(f"{entry.name}: rational Betti {bq} != {entry.betti_q}")
    b2 = betti_numbers(K, GF2, reduced=True)
    if b2 != entry.betti_f2:
        raise CatalogIntegrityError(f"{entry.name}: F2 Betti {b2} != {entry.betti_f2}")
    if entry.orientable is not None:
        top = K.dim()
        rank = betti_numbers(K, QQ, reduced=True)[top + 1]
        if (rank == 1) != entry.orientable:
            raise CatalogIntegrityError(f"{entry.name}: orientability proxy mismatch")


def catalog_names():
    return tuple(ENTRIES)


def catalog(name: str) -> SimplicialComplex:
    """Load one validated catalog complex by name."""
    if name not in ENTRIES:
        raise KeyError(f"unknown catalog entry {name!r}")
    if name not in _loaded:
        entry = ENTRIES[name]
        K = SimplicialComplex.from_facets(entry.facets, name=name)
        _validate(entry, K)
        _loaded[name] = K
    return _loaded[name]


def catalog_all():
    return {name: catalog(name) for name in ENTRIES}
