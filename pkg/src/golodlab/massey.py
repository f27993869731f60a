"""Massey products in C(K) and the constructive vanishing pipeline.

A defining system for classes alpha_0..alpha_q is a family a_{i,j} with
d(a_{i,j}) = sum_k bar(a_{i,k}) a_{k+1,j}; the product is trivial when the
representative sum_k bar(a_{0,k}) a_{k+1,q} can be exhibited as a
coboundary.  For a tight complex the pipeline below constructs, for every
ordered partition of every vertex subset and every tuple of subset
cohomology classes, ambient cochains a_{i,j} satisfying the split relation

    delta a_{i,j} = sum_p mu_p^#( bar(a_{i,p}) * a_{p+1,j} )

by induction on the span: the adjacent case is solved explicitly by a
prism-operator pullback, longer spans by an exact linear solve whose right
side is certified exact through the hat-shuffle decomposition oracle.
Restricting to the support (with a bookkeeping sign per span) produces a
genuine defining system with representative exactly delta(b_{0,q}).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .dga import DgaElement, HochsterDGA, mask_cross, popcount
from .homology import Cochain, cochain_coboundary_preimage, cohomology
from .prism import (
    mu_pullback, prism_P, prism_pullback_on_star, star_delta_value,
)
from .shuffles import enumerate_hat_shuffles, epsilon_k
from .simplicial import SimplicialComplex, VertexPartition, span_partition


class PipelineError(Exception):
    """Internal verification failure: an identity the theory guarantees broke."""


class NotLiftable(Exception):
    """A subset class has no ambient cocycle lift (the complex is not tight)."""


@dataclass(frozen=True)
class CohomologyClass:
    """A reduced cohomology class of a full subcomplex K_I."""

    dga: HochsterDGA
    imask: int
    degree: int  # reduced degree
    index: int   # position in the representative basis
    coords: tuple

    @property
    def total_degree(self) -> int:
        return popcount(self.imask) + self.degree + 1

    @property
    def support(self):
        return self.dga.complex.face_of_mask(self.imask)

    def representative(self) -> Cochain:
        coh = self.dga.sub_cohomology(self.imask)
        sub = self.dga.subcomplex(self.imask)
        reps = coh.representatives(self.degree)
        F = self.dga.field
        vec = [F.zero] * len(reps[0]) if reps else []
        for c, rep in zip(self.coords, reps):
            vec = [F.add(x, F.mul(c, r)) for x, r in zip(vec, rep)]
        return Cochain.from_vector(sub, F, self.degree, vec)

    def element(self) -> DgaElement:
        return self.dga.from_summand_cochain(self.imask, self.representative())


def hochster_class(dga: HochsterDGA, subset, degree: int, index: int = 0) -> CohomologyClass:
    imask = subset if isinstance(subset, int) else dga.complex.mask_of(
        [v if isinstance(v, tuple) else (v,) for v in subset])
    rank = dga.sub_cohomology(imask).betti(degree)
    if not 0 <= index < rank:
        raise ValueError(f"no class #{index} in degree {degree} on that subset")
    F = dga.field
    coords = tuple(F.one if t == index else F.zero for t in range(rank))
    return CohomologyClass(dga, imask, degree, index, coords)


@dataclass
class DefiningSystem:
    dga: HochsterDGA
    classes: list
    elems: dict  # (i, j) -> DgaElement; (0, q) optional

    @property
    def q(self) -> int:
        return len(self.classes) - 1


def bar(x):
    return x.bar()


def is_defining_system(ds: DefiningSystem, check_final: bool = False):
    """Verify the diagonal representatives and every split relation exactly.

    Returns (ok, problems).  With ``check_final`` the (0, q) relation, i.e.
    representative = d(a_{0,q}), is required as well.
    """
    dga = ds.dga
    q = ds.q
    problems = []
    for i, cls in enumerate(ds.classes):
        a = ds.elems.get((i, i))
        if a is None:
            problems.append(("missing", i, i))
            continue
        if not dga.differential(a).is_zero():
            problems.append(("diagonal not a cocycle", i))
            continue
        want = {(cls.imask, cls.degree): list(cls.coords)}
        want = {k: v for k, v in want.items() if any(x != dga.field.zero for x in v)}
        if dga.class_coords(a) != want:
            problems.append(("diagonal represents the wrong class", i))
    for i in range(q + 1):
        for j in range(i + 1, q + 1):
            if (i, j) == (0, q) and not check_final:
                continue
            a = ds.elems.get((i, j))
            if a is None:
                problems.append(("missing", i, j))
                continue
            lhs = dga.differential(a)
            rhs = DgaElement(dga)
            for k in range(i, j):
                rhs = rhs.add(dga.product(ds.elems[(i, k)].bar(), ds.elems[(k + 1, j)]))
            if not lhs.sub(rhs).is_zero():
                problems.append(("relation fails", i, j))
    return not problems, problems


@dataclass
class MasseyOutcome:
    defined: bool
    representative: DgaElement | None
    class_coords: dict | None
    trivial: bool | None


def massey_evaluate(ds: DefiningSystem) -> MasseyOutcome:
    """Representative cocycle and class of a valid defining system."""
    dga = ds.dga
    ok, problems = is_defining_system(ds)
    if not ok:
        raise ValueError(f"not a defining system: {problems}")
    q = ds.q
    w = DgaElement(dga)
    for k in range(q):
        w = w.add(dga.product(ds.elems[(0, k)].bar(), ds.elems[(k + 1, q)]))
    if not dga.differential(w).is_zero():
        raise PipelineError("representative of a defining system is not a cocycle")
    coords = dga.class_coords(w)
    return MasseyOutcome(True, w, coords, not coords)


def zero_overlap_system(ds: DefiningSystem, i: int, j: int) -> DefiningSystem:
    """Zero out every span containing positions i < j of overlapping support.

    Products across the overlap die in C(K), so the result is again a
    defining system and its representative is exactly zero.
    """
    if not i < j:
        raise ValueError("need i < j")
    if not (ds.classes[i].imask & ds.classes[j].imask):
        raise ValueError("supports of the chosen positions are disjoint")
    q = ds.q
    elems = {}
    for (k, l), a in ds.elems.items():
        if k <= i < j <= l:
            elems[(k, l)] = DgaElement(ds.dga)
        else:
            elems[(k, l)] = a
    for k in range(q + 1):
        for l in range(k + 1, q + 1):
            if (k, l) not in elems and k <= i < j <= l and (k, l) != (0, q):
                elems[(k, l)] = DgaElement(ds.dga)
    return DefiningSystem(ds.dga, ds.classes, elems)


# -- exact triple products -----------------------------------------------------


@dataclass
class TripleOutcome:
    defined: bool
    reason: str | None
    class_vector: tuple | None
    indeterminacy_rank: int | None
    trivial: bool | None


def _class_layout(dga: HochsterDGA, p: int):
    table = dga.hochster_table()
    return sorted((imask, d) for (imask, d), _ in table.items() if popcount(imask) + d + 1 == p)


def _class_vector(dga: HochsterDGA, x: DgaElement, p: int):
    layout = _class_layout(dga, p)
    coords = dga.class_coords(x)
    F = dga.field
    vec = []
    for imask, d in layout:
        rank = dga.sub_cohomology(imask).betti(d)
        got = coords.get((imask, d))
        vec.extend(got if got is not None else [F.zero] * rank)
    return vec


def _basis_class_elements(dga: HochsterDGA, p: int):
    out = []
    for imask, d in _class_layout(dga, p):
        for idx in range(dga.sub_cohomology(imask).betti(d)):
            out.append(hochster_class(dga, imask, d, idx).element())
    return out


def triple_massey_exact(dga: HochsterDGA, c0, c1, c2, rng=None) -> TripleOutcome:
    """<c0, c1, c2> with the indeterminacy handled exactly.

    The value set is a coset of c0 . H + H . c2, so the product is trivial
    exactly when one representative's class lies in that subspace.  With an
    ``rng`` the diagonal representatives and the two connecting cochains are
    re-randomized (by coboundaries and cocycles) before evaluation; the
    verdict must not depend on these choices.
    """
    F = dga.field
    a00, a11, a22 = (c.element() for c in (c0, c1, c2))
    if rng is not None:
        a00 = _randomize_cocycle(dga, a00, rng)
        a11 = _randomize_cocycle(dga, a11, rng)
        a22 = _randomize_cocycle(dga, a22, rng)
    p01 = dga.product(a00.bar(), a11)
    p12 = dga.product(a11.bar(), a22)
    a01 = dga.coboundary_preimage(p01)
    if a01 is None:
        return TripleOutcome(False, "product of the first two classes is nonzero", None, None, None)
    a12 = dga.coboundary_preimage(p12)
    if a12 is None:
        return TripleOutcome(False, "product of the last two classes is nonzero", None, None, None)
    if rng is not None:
        a01 = _randomize_by_cocycle(dga, a01, rng)
        a12 = _randomize_by_cocycle(dga, a12, rng)
    w = dga.product(a00.bar(), a12).add(dga.product(a01.bar(), a22))
    if not dga.differential(w).is_zero():
        raise PipelineError("triple-product representative is not a cocycle")
    p = c0.total_degree + c1.total_degree + c2.total_degree - 1
    wvec = _class_vector(dga, w, p)
    spanners = []
    for h in _basis_class_elements(dga, c1.total_degree + c2.total_degree - 1):
        spanners.append(_class_vector(dga, dga.product(a00.bar(), h), p))
    for h in _basis_class_elements(dga, c0.total_degree + c1.total_degree - 1):
        spanners.append(_class_vector(dga, dga.product(h.bar(), a22), p))
    from .linalg import Matrix

    n = len(wvec)
    M = Matrix(F, [[s[i] for s in spanners] for i in range(n)], n, len(spanners))
    trivial = M.in_column_space(wvec) if n else True
    return TripleOutcome(True, None, tuple(wvec), M.rank() if n else 0, trivial)


def _randomize_cocycle(dga: HochsterDGA, x: DgaElement, rng) -> DgaElement:
    """Add a random coboundary of matching degree (class unchanged)."""
    F = dga.field
    d = x.degree()
    if d is None or d < 1:
        return x
    keys = [k for k in dga.basis() if dga.key_degree(k) == d - 1]
    if not keys:
        return x
    pick = rng.sample(keys, min(3, len(keys)))
    y = dga.element({k: F.of(rng.randint(1, 5)) for k in pick})
    return x.add(dga.differential(y))


def _randomize_by_cocycle(dga: HochsterDGA, x: DgaElement, rng) -> DgaElement:
    """Add a random cocycle of the same degree (still a valid choice)."""
    d = x.degree()
    if d is None:
        return x
    F = dga.field
    out = x
    for h in _basis_class_elements(dga, d):
        if rng.random() < 0.5:
            out = out.add(h.scale(F.of(rng.randint(1, 3))))
    return _randomize_cocycle(dga, out, rng)


# -- the constructive pipeline on a tight complex ------------------------------


def lift_cocycle(L: SimplicialComplex, fieldobj, part, cls: CohomologyClass) -> Cochain:
    """An ambient cocycle whose restriction to the part represents cls."""
    coh = cohomology(L, fieldobj, reduced=True)
    part_labels = [v if isinstance(v, tuple) else (v,) for v in part]
    sub = L.full_subcomplex(part_labels)
    sub_coh = cohomology(sub, fieldobj, reduced=True)
    d = cls.degree
    reps = coh.representatives(d)
    cols = []
    for rep in reps:
        c = Cochain.from_vector(L, fieldobj, d, rep).restrict(sub)
        coords = sub_coh.class_coords(d, c.to_vector())
        if coords is None:
            raise PipelineError("restriction of a cocycle failed to be a cocycle")
        cols.append(coords)
    from .linalg import Matrix

    target = list(cls.coords)
    n = len(target)
    M = Matrix(fieldobj, [[c[i] for c in cols] for i in range(n)], n, len(cols))
    x = M.solve(target)
    if x is None:
        raise NotLiftable(f"class on {tuple(sorted(part_labels))} does not lift")
    F = fieldobj
    out = Cochain(L, F, d)
    for coeff, rep in zip(x, reps):
        if coeff != F.zero:
            out = out.add(Cochain.from_vector(L, F, d, rep).scale(coeff))
    return out


def two_block_partition(L: SimplicialComplex, P: VertexPartition, i: int) -> VertexPartition:
    """Parts 0..i against parts i+1..q."""
    return VertexPartition(L, (P.part_union(0, i), P.part_union(i + 1, P.q)))


def build_adjacent(L, fieldobj, P: VertexPartition, i: int,
                   a_ii: Cochain, a_jj: Cochain) -> Cochain:
    """The adjacent-span element P(J)^#(bar(a_ii) * a_jj); its coboundary
    is verified to be mu_i^#(bar(a_ii) * a_jj) exactly."""
    J = two_block_partition(L, P, i)
    op = prism_P(L, J)
    a = prism_pullback_on_star(op, [a_ii.bar(), a_jj], fieldobj)
    want = mu_pullback(L, P, i, a_ii.bar(), a_jj, fieldobj)
    if not a.coboundary().sub(want).is_zero():
        raise PipelineError("adjacent-span coboundary contract failed")
    return a


def span_rhs(L, fieldobj, P: VertexPartition, i: int, j: int, system: dict) -> Cochain:
    """sum_p mu_p^#( bar(a_{i,p}) * a_{p+1,j} ) over i <= p < j."""
    out = None
    for p in range(i, j):
        term = mu_pullback(L, P, p, system[(i, p)].bar(), system[(p + 1, j)], fieldobj)
        out = term if out is None else out.add(term)
    return out


def build_general(L, fieldobj, P: VertexPartition, i: int, j: int, system: dict) -> Cochain:
    """Solve delta(x) = span right side; the right side must be an exact
    cocycle (guaranteed on tight input with a valid partial system)."""
    rhs = span_rhs(L, fieldobj, P, i, j, system)
    if not rhs.coboundary().is_zero():
        raise PipelineError(f"span ({i},{j}) right side is not a cocycle")
    x = cochain_coboundary_preimage(rhs)
    if x is None:
        raise PipelineError(f"span ({i},{j}) right side is not exact")
    return x


def _epsilon_s(entries, i: int, k: int, system: dict) -> int:
    """Parity attached to a hat shuffle: alternating factor degrees + 1."""
    cuts = [i + e for e in entries]
    spans = [(cuts[0], cuts[1])]
    for p in range(1, k + 1):
        spans.append((cuts[p] + 1, cuts[p + 1]))
    if k % 2 == 0:
        chosen = range(1, k, 2)
    else:
        chosen = [0] + list(range(2, k, 2))
    total = 0
    for p in chosen:
        total += system[spans[p]].degree + 1
    return total % 2


def verify_decomposition(L, fieldobj, P: VertexPartition, i: int, j: int,
                         system: dict, k: int) -> bool:
    """Whether the span right side agrees, modulo coboundaries, with the
    level-k hat-shuffle decomposition; True when the residual class is 0."""
    if not 1 <= k <= j - i:
        raise ValueError("decomposition level out of range")
    lhs = span_rhs(L, fieldobj, P, i, j, system)
    rhs = None
    for s in enumerate_hat_shuffles(j - i, k):
        entries = s.entries
        cuts = [i + e for e in entries]
        factors = [system[(cuts[0], cuts[1])]]
        for p in range(1, k + 1):
            factors.append(system[(cuts[p] + 1, cuts[p + 1])])
        Js = span_partition(P, i, j, s)
        op = prism_P(L, Js)
        card = sum(a.degree + 1 for a in factors)
        term = op.pullback(
            lambda f, fac=tuple(factors): star_delta_value(fac, f, fieldobj),
            card + 1, fieldobj)
        sign = (_epsilon_s(entries, i, k, system) + epsilon_k(k)) % 2
        if sign:
            term = term.neg()
        rhs = term if rhs is None else rhs.add(term)
    if rhs is None:
        rhs = Cochain(L, fieldobj, lhs.degree)
    residual = lhs.sub(rhs)
    if residual.is_zero():
        return True
    return cochain_coboundary_preimage(residual) is not None


def theta_sign(L: SimplicialComplex, parts, i: int, j: int, diag_cards) -> int:
    """Restriction sign for the span (i, j): pairwise part crossings plus
    size-degree interactions plus the span length, mod 2."""
    masks = [L.mask_of(sorted(p)) for p in parts]
    total = j - i
    for s in range(i, j + 1):
        for t in range(s + 1, j + 1):
            total += mask_cross(masks[s], masks[t])
            total += popcount(masks[s]) * (diag_cards[t] + 1)
    return total % 2


@dataclass
class CertificateEntry:
    support: tuple
    parts: tuple
    class_tuple: tuple  # ((degree, index) per part)
    q: int
    a_system: dict = dc_field(repr=False, default_factory=dict)
    b_system: dict = dc_field(repr=False, default_factory=dict)
    defining_ok: bool = False
    representative_is_delta_b: bool = False
    representative_zero: bool = False
    decomposition_ok: bool = False

    @property
    def verified(self) -> bool:
        return (self.defining_ok and self.representative_is_delta_b
                and self.representative_zero and self.decomposition_ok)


@dataclass
class GolodCertificate:
    field_name: str
    max_arity: int
    complex_name: str | None
    entries: list
    supports_scanned: int = 0
    partitions_scanned: int = 0
    vacuous_partitions: int = 0

    @property
    def all_verified(self) -> bool:
        return all(e.verified for e in self.entries)

    def summary(self) -> dict:
        return {
            "field": self.field_name,
            "max_arity": self.max_arity,
            "entries": len(self.entries),
            "entries_verified": sum(1 for e in self.entries if e.verified),
            "supports_scanned": self.supports_scanned,
            "partitions_scanned": self.partitions_scanned,
            "vacuous_partitions": self.vacuous_partitions,
            "all_verified": self.all_verified,
        }


def build_tuple_system(L: SimplicialComplex, fieldobj, parts, classes,
                       check_decomposition: bool = True, dga: HochsterDGA | None = None):
    """Run the whole pipeline for one partition + class tuple inside L.

    Returns (a_system dict of Cochains, dga of L, b_system dict, flags).
    """
    P = VertexPartition(L, parts)
    q = P.q
    system = {}
    for i, cls in enumerate(classes):
        system[(i, i)] = lift_cocycle(L, fieldobj, sorted(P.parts[i]), cls)
    for span in range(1, q + 1):
        for i in range(0, q - span + 1):
            j = i + span
            if span == 1:
                system[(i, j)] = build_adjacent(L, fieldobj, P, i,
                                                system[(i, i)], system[(j, j)])
            else:
                system[(i, j)] = build_general(L, fieldobj, P, i, j, system)
    decomposition_ok = True
    if check_decomposition:
        for span in range(1, q + 1):
            for i in range(0, q - span + 1):
                j = i + span
                for k in range(1, span + 1):
                    if not verify_decomposition(L, fieldobj, P, i, j, system, k):
                        decomposition_ok = False
    # restrict to supports, with the span sign, inside the dga of L
    if dga is None:
        dga = HochsterDGA(L, fieldobj)
    diag_cards = [classes[t].degree + 1 for t in range(q + 1)]
    b_system = {}
    for (i, j), a in system.items():
        support = sorted(P.part_union(i, j))
        sub = L.full_subcomplex(support)
        c = a.restrict(sub)
        if theta_sign(L, P.parts, i, j, diag_cards):
            c = c.neg()
        b_system[(i, j)] = dga.from_summand_cochain(L.mask_of(support), c)
    return system, dga, b_system, decomposition_ok


def certify_tuple(L: SimplicialComplex, fieldobj, parts, classes,
                  check_decomposition: bool = True,
                  dga: HochsterDGA | None = None) -> CertificateEntry:
    """Construct and fully verify the vanishing system for one tuple."""
    a_system, dga, b_system, decomposition_ok = build_tuple_system(
        L, fieldobj, parts, classes, check_decomposition, dga)
    q = len(classes) - 1
    # re-anchor the classes in the dga of L
    anchored = [
        CohomologyClass(dga, L.mask_of(sorted(p)), cls.degree, cls.index, cls.coords)
        for p, cls in zip(parts, classes)
    ]
    ds = DefiningSystem(dga, anchored, b_system)
    defining_ok, _problems = is_defining_system(ds, check_final=True)
    w = DgaElement(dga)
    for k in range(q):
        w = w.add(dga.product(b_system[(0, k)].bar(), b_system[(k + 1, q)]))
    delta_b = dga.differential(b_system[(0, q)])
    representative_is_delta_b = w.sub(delta_b).is_zero()
    representative_zero = dga.class_is_zero(w) if dga.is_cocycle(w) else False
    entry = CertificateEntry(
        support=tuple(sorted(L.vertices)),
        parts=tuple(tuple(sorted(p)) for p in parts),
        class_tuple=tuple((c.degree, c.index) for c in classes),
        q=q,
        a_system={k: v for k, v in a_system.items()},
        b_system={k: v for k, v in b_system.items()},
        defining_ok=defining_ok,
        representative_is_delta_b=representative_is_delta_b,
        representative_zero=representative_zero,
        decomposition_ok=decomposition_ok,
    )
    return entry


def _ordered_partitions(members, r: int):
    """All ordered partitions of the member list into r non-empty parts,
    enumerated deterministically."""
    n = len(members)
    if r > n:
        return
    def rec(idx, parts):
        if n - idx < sum(1 for p in parts if not p):
            return
        if idx == n:
            if all(parts):
                yield tuple(tuple(p) for p in parts)
            return
        for p in parts:
            p.append(members[idx])
            yield from rec(idx + 1, parts)
            p.pop()
    yield from rec(0, [[] for _ in range(r)])


def construct_golod_certificate(K: SimplicialComplex, fieldobj, max_arity: int = 3,
                                name: str | None = None,
                                check_decomposition: bool = True,
                                jobs: int | None = None) -> GolodCertificate:
    """Certify vanishing Massey systems over every subset and partition.

    Requires the complex to be tight over the field (checked first).  For
    every non-empty vertex subset, every ordered partition of it into
    2..max_arity parts, and every tuple of subset cohomology basis classes
    on the parts, the pipeline runs inside the corresponding full
    subcomplex; each produced system is verified exactly and failures raise
    PipelineError (they must not occur on genuinely tight input).
    """
    from .analysis import is_tight

    report = is_tight(K, fieldobj)
    if not report.verdict:
        raise NotLiftable(
            f"complex is not tight over {fieldobj.name}: witness {report.witness}")
    dga0 = HochsterDGA(K, fieldobj)
    nonzero = {}
    for (imask, d), rank in dga0.hochster_table().items():
        nonzero.setdefault(imask, []).append((d, rank))
    cert = GolodCertificate(fieldobj.name, max_arity, name or K.name, [])
    n = len(K.vertices)
    sub_cache = {}
    jobs_list = []
    for imask in sorted(range(1, 1 << n), key=lambda m: (popcount(m), m)):
        cert.supports_scanned += 1
        members = [K.vertices[t] for t in range(n) if imask >> t & 1]
        for r in range(2, max_arity + 1):
            for parts in _ordered_partitions(members, r):
                cert.partitions_scanned += 1
                part_masks = [K.mask_of(p) for p in parts]
                if any(m not in nonzero for m in part_masks):
                    cert.vacuous_partitions += 1
                    continue
                jobs_list.append((imask, parts, part_masks))
    def run_job(job):
        imask, parts, part_masks = job
        L, dgaL = sub_cache[imask]
        tuples = [[]]
        for m in part_masks:
            lmask = L.mask_of(K.face_of_mask(m))
            opts = []
            for d, rank in nonzero[m]:
                for idx in range(rank):
                    opts.append(hochster_class(dgaL, lmask, d, idx))
            tuples = [t + [c] for t in tuples for c in opts]
        return [certify_tuple(L, fieldobj, parts, classes, check_decomposition, dgaL)
                for classes in tuples]

    for imask, _, _ in jobs_list:
        if imask not in sub_cache:
            L = K.full_subcomplex([K.vertices[t] for t in range(n) if imask >> t & 1])
            sub_cache[imask] = (L, HochsterDGA(L, fieldobj))
    if jobs and jobs > 1 and len(jobs_list) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_job, jobs_list))
    else:
        results = [run_job(job) for job in jobs_list]
    for batch in results:
        for entry in batch:
            if not entry.verified:
                raise PipelineError(
                    f"construction failed on support {entry.support}, "
                    f"parts {entry.parts}, classes {entry.class_tuple}")
            cert.entries.append(entry)
    return cert
