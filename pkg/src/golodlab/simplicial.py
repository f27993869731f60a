"""Ordered simplicial complexes and the simplicial maps used throughout.

Conventions
-----------
* A vertex label is a non-empty tuple of non-negative integers, totally
  ordered lexicographically.  Plain complexes use length-1 labels; joins
  prepend a copy index, ordered products append a level coordinate.
* A face is a strictly increasing tuple of labels; ``()`` is the empty
  face of dimension -1 and belongs to every complex.
* Complexes store the full (downward-closed) face set.  Every vertex of
  ``vertices`` is a face: no ghost vertices.
* Simplicial maps may collapse vertices; the induced chain map sends a
  face with a degenerate image to 0 and otherwise carries the sign of
  sorting the image tuple (the classical oriented convention).
"""

from __future__ import annotations

from itertools import combinations

MAX_FACES = 1 << 21

Label = tuple  # tuple[int, ...]
Face = tuple  # tuple[Label, ...], strictly increasing


def as_label(v) -> Label:
    if isinstance(v, tuple):
        return v
    return (int(v),)


def as_face(vs) -> Face:
    return tuple(sorted(as_label(v) for v in vs))


def sort_sign(seq):
    """(sign, sorted tuple) of a sequence of labels, or None on repeats.

    The sign is the parity of the permutation that sorts the sequence.
    """
    n = len(seq)
    if len(set(seq)) != n:
        return None
    inv = 0
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(seq))


class SimplicialComplex:
    """Immutable ordered simplicial complex given by its full face set."""

    __slots__ = (
        "vertices", "faces", "name", "_by_card", "_vert_index",
        "_face_masks", "product_base", "product_levels",
    )

    def __init__(self, vertices, faces, name: str | None = None, _trusted: bool = False):
        vertices = tuple(sorted(as_label(v) for v in vertices))
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertices")
        faces = frozenset(faces) if _trusted else frozenset(as_face(f) for f in faces)
        if not _trusted:
            self._validate(vertices, faces)
        self.vertices = vertices
        self.faces = faces
        self.name = name
        by_card: dict[int, list[Face]] = {}
        for f in faces:
            by_card.setdefault(len(f), []).append(f)
        self._by_card = {k: tuple(sorted(v)) for k, v in by_card.items()}
        self._vert_index = {v: i for i, v in enumerate(vertices)}
        self._face_masks = None
        self.product_base = None
        self.product_levels = None

    @staticmethod
    def _validate(vertices, faces):
        vset = set(vertices)
        if () not in faces:
            raise ValueError("face set must contain the empty face")
        for f in faces:
            if list(f) != sorted(set(f)):
                raise ValueError(f"face not strictly increasing: {f}")
            if not set(f) <= vset:
                raise ValueError(f"face uses unknown vertex: {f}")
            for i in range(len(f)):
                if f[:i] + f[i + 1:] not in faces:
                    raise ValueError(f"not downward closed at {f}")
        for v in vertices:
            if (v,) not in faces:
                raise ValueError(f"ghost vertex {v}")

    @classmethod
    def from_facets(cls, facets, vertices=None, name=None) -> "SimplicialComplex":
        """Expand a facet list to the downward closure."""
        facets = [as_face(f) for f in facets]
        verts = set(as_label(v) for v in (vertices or ()))
        for f in facets:
            verts.update(f)
        faces = {()}
        faces.update((v,) for v in verts)
        for f in facets:
            for k in range(1, len(f) + 1):
                faces.update(combinations(f, k))
                if len(faces) > MAX_FACES:
                    raise ValueError("face set exceeds the supported size")
        return cls(sorted(verts), frozenset(faces), name=name, _trusted=True)

    # -- basic queries -------------------------------------------------------

    def __contains__(self, face) -> bool:
        return as_face(face) in self.faces

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and other.vertices == self.vertices
            and other.faces == self.faces
        )

    def __hash__(self):
        return hash((self.vertices, self.faces))

    def __repr__(self):
        label = self.name or f"{len(self.vertices)} vertices"
        return f"SimplicialComplex({label}, {len(self.faces)} faces)"

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def dim(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def faces_of_card(self, k: int):
        """Faces with k vertices, in lexicographic order."""
        return self._by_card.get(k, ())

    def faces_of_dim(self, d: int):
        return self.faces_of_card(d + 1)

    def f_vector(self):
        """(f_0, ..., f_dim); the empty face is not counted."""
        d = self.dim()
        return tuple(len(self.faces_of_card(k + 1)) for k in range(d + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * f for i, f in enumerate(self.f_vector()))

    def index_of(self, v: Label) -> int:
        return self._vert_index[v]

    def mask_of(self, face) -> int:
        m = 0
        for v in face:
            m |= 1 << self._vert_index[v]
        return m

    def face_of_mask(self, mask: int) -> Face:
        return tuple(self.vertices[i] for i in range(len(self.vertices)) if mask >> i & 1)

    @property
    def face_masks(self) -> frozenset:
        if self._face_masks is None:
            self._face_masks = frozenset(self.mask_of(f) for f in self.faces)
        return self._face_masks

    # -- constructions -------------------------------------------------------

    def full_subcomplex(self, subset) -> "SimplicialComplex":
        """K_I: all faces contained in the vertex subset I."""
        I = frozenset(as_label(v) for v in subset)
        if not I:
            raise ValueError("full subcomplex needs a non-empty vertex subset")
        if not I <= set(self.vertices):
            raise ValueError("subset is not contained in the vertex set")
        faces = frozenset(f for f in self.faces if set(f) <= I)
        return SimplicialComplex(sorted(I), faces, _trusted=True)

    @staticmethod
    def join_many(factors) -> "SimplicialComplex":
        """Iterated join; vertex labels get copy prefixes 0..n-1."""
        factors = list(factors)
        total = 1
        for K in factors:
            total *= len(K.faces)
        if total > MAX_FACES:
            raise ValueError("join exceeds the supported size")
        verts = []
        for i, K in enumerate(factors):
            verts.extend((i,) + v for v in K.vertices)
        acc = [()]
        for i, K in enumerate(factors):
            nxt = []
            for base in acc:
                for f in K.faces:
                    nxt.append(base + tuple((i,) + v for v in f))
            acc = nxt
        faces = frozenset(acc)
        return SimplicialComplex(verts, faces, _trusted=True)

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex.join_many([self, other])

    def ordered_product(self, q: int) -> "SimplicialComplex":
        """K (x) Delta^q: faces are chains in the product order whose
        projections are faces of both factors."""
        if q < 0:
            raise ValueError("q must be non-negative")
        verts = [v + (i,) for v in self.vertices for i in range(q + 1)]
        # depth-first extension of chains by strictly larger product-order
        # elements; each chain is produced exactly once, in sorted order
        faces = set()
        stack = [((), frozenset())]  # (chain, K-projection so far)
        while stack:
            chain, support = stack.pop()
            faces.add(chain)
            if len(faces) > MAX_FACES:
                raise ValueError("product exceeds the supported size")
            if chain:
                last_v, last_lev = chain[-1][:-1], chain[-1][-1]
            for v in self.vertices:
                if not chain:
                    levels = range(q + 1)
                    new_support = support | {v}
                elif v == last_v:
                    levels = range(last_lev + 1, q + 1)
                    new_support = support
                elif v > last_v:
                    levels = range(last_lev, q + 1)
                    new_support = support | {v}
                else:
                    continue
                if new_support is not support and tuple(sorted(new_support)) not in self.faces:
                    continue
                for lev in levels:
                    stack.append((chain + (v + (lev,),), new_support))
        K = SimplicialComplex(verts, frozenset(faces), _trusted=True)
        K.product_base = self
        K.product_levels = q
        return K


class SimplicialMap:
    """Vertex assignment whose face images (after dedup) are target faces."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, mapping: dict):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        for v in source.vertices:
            if v not in self.mapping:
                raise ValueError(f"vertex {v} not mapped")
            if self.mapping[v] not in target._vert_index:
                raise ValueError(f"image vertex {self.mapping[v]} not in target")
        for f in source.faces:
            if self.image_face(f) not in target.faces:
                raise ValueError(f"image of {f} is not a face of the target")

    def __call__(self, v: Label) -> Label:
        return self.mapping[v]

    def image_face(self, face: Face) -> Face:
        return tuple(sorted({self.mapping[v] for v in face}))

    def chain_image(self, face: Face):
        """Oriented chain image: None when vertices collapse, else (sign, face)."""
        return sort_sign([self.mapping[v] for v in face])

    def is_injective_on_faces(self) -> bool:
        images = [self.image_face(f) for f in self.source.faces]
        return len(set(images)) == len(images)

    def compose(self, after: "SimplicialMap") -> "SimplicialMap":
        if after.source is not self.target and after.source != self.target:
            raise ValueError("composition mismatch")
        return SimplicialMap(
            self.source, after.target,
            {v: after.mapping[w] for v, w in self.mapping.items()},
        )


class VertexPartition:
    """Ordered partition V(K) = I_0 | I_1 | ... | I_q into non-empty parts."""

    __slots__ = ("parent", "parts", "_part_of")

    def __init__(self, parent: SimplicialComplex, parts):
        parts = tuple(frozenset(as_label(v) for v in part) for part in parts)
        seen = set()
        for part in parts:
            if not part:
                raise ValueError("empty part")
            if part & seen:
                raise ValueError("parts not disjoint")
            seen |= part
        if seen != set(parent.vertices):
            raise ValueError("parts do not cover the vertex set")
        self.parent = parent
        self.parts = parts
        self._part_of = {v: k for k, part in enumerate(parts) for v in part}

    @property
    def q(self) -> int:
        return len(self.parts) - 1

    def part_of(self, v: Label) -> int:
        return self._part_of[v]

    def part_union(self, i: int, j: int) -> frozenset:
        out = frozenset()
        for k in range(i, j + 1):
            out |= self.parts[k]
        return out

    def merge(self, i: int) -> "VertexPartition":
        """Fuse parts i and i+1 (part count drops by one)."""
        if not 0 <= i < self.q:
            raise ValueError("merge index out of range")
        parts = (
            self.parts[:i] + (self.parts[i] | self.parts[i + 1],) + self.parts[i + 2:]
        )
        return VertexPartition(self.parent, parts)


def iota(K: SimplicialComplex, I, J) -> SimplicialMap:
    """K_{I u J} -> K_I * K_J, v -> copy 0 if v in I else copy 1."""
    I = frozenset(as_label(v) for v in I)
    J = frozenset(as_label(v) for v in J)
    if not I or not J:
        raise ValueError("iota needs non-empty subsets")
    if I & J:
        raise ValueError("iota needs disjoint subsets")
    src = K.full_subcomplex(I | J)
    tgt = SimplicialComplex.join_many([K.full_subcomplex(I), K.full_subcomplex(J)])
    mapping = {v: ((0,) + v if v in I else (1,) + v) for v in src.vertices}
    return SimplicialMap(src, tgt, mapping)


def h_map(K: SimplicialComplex, P: VertexPartition, i: int) -> SimplicialMap:
    """Level-i deformation K -> K^{*(q+1)}: part k goes to copy min(k, i)."""
    q = P.q
    if not 0 <= i <= q:
        raise ValueError("level out of range")
    tgt = SimplicialComplex.join_many([K] * (q + 1))
    mapping = {v: (min(P.part_of(v), i),) + v for v in K.vertices}
    return SimplicialMap(K, tgt, mapping)


def big_homotopy(K: SimplicialComplex, P: VertexPartition) -> SimplicialMap:
    """The homotopy K (x) Delta^q -> K^{*(q+1)} through all the h-levels.

    That the vertex rule (v, i) -> h^i(v) is simplicial is asserted by the
    SimplicialMap constructor.
    """
    q = P.q
    src = K.ordered_product(q)
    tgt = SimplicialComplex.join_many([K] * (q + 1))
    mapping = {v + (lev,): (min(P.part_of(v), lev),) + v
               for v in K.vertices for lev in range(q + 1)}
    return SimplicialMap(src, tgt, mapping)


def mu_map(K: SimplicialComplex, P: VertexPartition, i: int) -> SimplicialMap:
    """K -> K * K splitting the parts at position i."""
    q = P.q
    if not 0 <= i <= q - 1:
        raise ValueError("split index out of range")
    tgt = SimplicialComplex.join_many([K, K])
    mapping = {v: ((0,) + v if P.part_of(v) <= i else (1,) + v) for v in K.vertices}
    return SimplicialMap(K, tgt, mapping)


def partition_merge(P: VertexPartition, i: int) -> VertexPartition:
    return P.merge(i)


def partition_from_shuffle(P: VertexPartition, i: int, j: int, s) -> VertexPartition:
    """Coarsen the parts i..j of P into blocks cut at the shuffle entries.

    For s = (s_0,...,s_{k+1}) in S(j-i, k) the block boundaries sit at the
    indices i + s_p; the result partitions the support of parts i..j.
    """
    entries = tuple(s.entries) if hasattr(s, "entries") else tuple(s)
    k = len(entries) - 2
    if entries[0] != 0 or entries[-1] != j - i or list(entries) != sorted(entries):
        raise ValueError(f"malformed shuffle {entries} for range ({i}, {j})")
    cuts = [i + e for e in entries]
    blocks = [P.part_union(cuts[0], cuts[1])]
    for p in range(1, k + 1):
        blocks.append(P.part_union(cuts[p] + 1, cuts[p + 1]))
    support = frozenset().union(*blocks)
    if support == set(P.parent.vertices):
        parent = P.parent
    else:
        parent = P.parent.full_subcomplex(support)
    return VertexPartition(parent, blocks)


def span_partition(P: VertexPartition, i: int, j: int, s) -> VertexPartition:
    """Like partition_from_shuffle, but a partition of all of V(K): the
    leading block absorbs parts 0..i-1 and the trailing block parts j+1..q."""
    entries = tuple(s.entries) if hasattr(s, "entries") else tuple(s)
    k = len(entries) - 2
    if entries[0] != 0 or entries[-1] != j - i or list(entries) != sorted(entries):
        raise ValueError(f"malformed shuffle {entries} for range ({i}, {j})")
    cuts = [i + e for e in entries]
    blocks = [P.part_union(0, cuts[1])]
    for p in range(1, k):
        blocks.append(P.part_union(cuts[p] + 1, cuts[p + 1]))
    blocks.append(P.part_union(cuts[k] + 1, P.q))
    return VertexPartition(P.parent, blocks)
