"""Chain/cochain complexes of a simplicial complex and their (co)homology.

Bases are the faces in lexicographic order; the reduced flavor inserts the
empty face in degree -1.  The boundary uses alternating signs over the
ascending vertex order, and the coboundary is its transpose in the
Kronecker-dual basis.  Everything is exact over the chosen field.
"""

from __future__ import annotations

from .linalg import Matrix, vec_is_zero
from .simplicial import SimplicialComplex, SimplicialMap


def chain_basis(K: SimplicialComplex, d: int, reduced: bool):
    if d == -1:
        return ((),) if reduced else ()
    return K.faces_of_dim(d)


def boundary_matrix(K: SimplicialComplex, d: int, field, reduced: bool = False) -> Matrix:
    """The boundary C_d -> C_{d-1}; rows are (d-1)-faces, columns d-faces."""
    cols = chain_basis(K, d, reduced)
    rows = chain_basis(K, d - 1, reduced)
    idx = {f: i for i, f in enumerate(rows)}
    M = Matrix.zeros(field, len(rows), len(cols))
    one = field.one
    for j, f in enumerate(cols):
        for i in range(len(f)):
            sub = f[:i] + f[i + 1:]
            r = idx.get(sub)
            if r is None:
                continue  # only happens for the unreduced augmentation target
            M.rows[r][j] = one if i % 2 == 0 else field.neg(one)
    return M


def coboundary_matrix(K: SimplicialComplex, d: int, field, reduced: bool = True) -> Matrix:
    """The coboundary C^d -> C^{d+1} (transpose of the boundary)."""
    return boundary_matrix(K, d + 1, field, reduced).transpose()


class _DegreeData:
    __slots__ = ("betti", "representatives", "_span")

    def __init__(self, betti, representatives, span):
        self.betti = betti
        self.representatives = representatives
        self._span = span  # Matrix [boundaries | representatives]

    def class_coords(self, vec):
        """Coordinates of the (co)homology class of a (co)cycle, else None."""
        if self._span.ncols == 0:
            return [] if vec_is_zero(self._span.field, vec) else None
        x = self._span.solve(vec)
        if x is None:
            return None
        return x[self._span.ncols - self.betti:]


class HomologyBasis:
    """Per-degree representatives and class-coordinate projections."""

    def __init__(self, K, field, reduced, flavor, degrees):
        self.complex = K
        self.field = field
        self.reduced = reduced
        self.flavor = flavor  # "homology" or "cohomology"
        self.degrees = degrees  # dict d -> _DegreeData

    def betti(self, d: int) -> int:
        data = self.degrees.get(d)
        return data.betti if data else 0

    def betti_vector(self):
        lo = -1 if self.reduced else 0
        hi = self.complex.dim()
        return tuple(self.betti(d) for d in range(lo, hi + 1))

    def representatives(self, d: int):
        data = self.degrees.get(d)
        return data.representatives if data else []

    def class_coords(self, d: int, vec):
        data = self.degrees.get(d)
        if data is None:
            return [] if vec_is_zero(self.field, vec) else None
        return data.class_coords(vec)


def _independent_columns(M: Matrix):
    """The pivot columns of M, as vectors (a deterministic image basis)."""
    _, pivots = M.rref()
    return [M.column(j) for j in pivots]


def _extend_to_basis(field, space_dim, boundaries, cycles):
    """Extend the boundary vectors by cycle vectors to span the cycles."""
    rows = [list(v) for v in boundaries]
    reps = []
    rank = Matrix(field, [list(r) for r in rows], len(rows), space_dim).rank() if rows else 0
    for z in cycles:
        trial = rows + [list(z)]
        new_rank = Matrix(field, trial, len(trial), space_dim).rank()
        if new_rank > rank:
            rows = trial
            rank = new_rank
            reps.append(z)
    return reps


def _build_basis(K, field, reduced, matrices, lo, hi):
    """matrices[d] maps degree d to degree d-1 (homology) or d+1 (cohomology)."""
    degrees = {}
    for d in range(lo, hi + 1):
        basis = chain_basis(K, d, reduced)
        n = len(basis)
        if n == 0:
            continue
        out = matrices["out"](d)
        into = matrices["into"](d)
        cycles = out.nullspace()
        boundaries = _independent_columns(into) if into.ncols else []
        reps = _extend_to_basis(field, n, boundaries, cycles)
        span = Matrix(
            field,
            [[v[i] for v in boundaries + reps] for i in range(n)],
            n,
            len(boundaries) + len(reps),
        )
        degrees[d] = _DegreeData(len(reps), reps, span)
    return degrees


def homology(K: SimplicialComplex, field, reduced: bool = False) -> HomologyBasis:
    """Homology with explicit cycle representatives and projections."""
    lo = -1 if reduced else 0
    hi = K.dim()
    mats = {
        "out": lambda d: boundary_matrix(K, d, field, reduced),
        "into": lambda d: boundary_matrix(K, d + 1, field, reduced),
    }
    return HomologyBasis(K, field, reduced, "homology", _build_basis(K, field, reduced, mats, lo, hi))


def cohomology(K: SimplicialComplex, field, reduced: bool = True) -> HomologyBasis:
    """Cohomology; representatives are cocycles in the dual face basis."""
    lo = -1 if reduced else 0
    hi = K.dim()
    mats = {
        "out": lambda d: coboundary_matrix(K, d, field, reduced),
        "into": lambda d: coboundary_matrix(K, d - 1, field, reduced),
    }
    return HomologyBasis(K, field, reduced, "cohomology", _build_basis(K, field, reduced, mats, lo, hi))


def betti_numbers(K: SimplicialComplex, field, reduced: bool = False):
    return homology(K, field, reduced).betti_vector()


def chain_map_matrix(f: SimplicialMap, field, d: int, reduced: bool = False) -> Matrix:
    """Matrix of the induced chain map C_d(source) -> C_d(target).

    Faces with collapsing vertices map to 0; otherwise the image carries
    the orientation sign of sorting the image tuple.
    """
    src = chain_basis(f.source, d, reduced)
    tgt = chain_basis(f.target, d, reduced)
    idx = {face: i for i, face in enumerate(tgt)}
    M = Matrix.zeros(field, len(tgt), len(src))
    for j, face in enumerate(src):
        im = f.chain_image(face)
        if im is None:
            continue
        sign, image = im
        M.rows[idx[image]][j] = field.one if sign > 0 else field.neg(field.one)
    return M


def induced_map(f: SimplicialMap, field, d: int, reduced: bool = False,
                source_basis: HomologyBasis | None = None,
                target_basis: HomologyBasis | None = None) -> Matrix:
    """The induced map on degree-d homology, in the representative bases."""
    hs = source_basis or homology(f.source, field, reduced)
    ht = target_basis or homology(f.target, field, reduced)
    F = chain_map_matrix(f, field, d, reduced)
    cols = []
    for z in hs.representatives(d):
        w = F.mul_vec(z)
        coords = ht.class_coords(d, w)
        if coords is None:
            raise ValueError("image of a cycle is not a cycle")
        cols.append(coords)
    nrows = ht.betti(d)
    return Matrix(field, [[c[i] for c in cols] for i in range(nrows)], nrows, len(cols))


def is_injective_on_homology(f: SimplicialMap, field, reduced: bool = False,
                             source_basis=None, target_basis=None):
    """(verdict, first failing degree or None), over all degrees at once."""
    hs = source_basis or homology(f.source, field, reduced)
    ht = target_basis or homology(f.target, field, reduced)
    lo = -1 if reduced else 0
    for d in range(lo, f.source.dim() + 1):
        if hs.betti(d) == 0:
            continue
        M = induced_map(f, field, d, reduced, hs, ht)
        if M.rank() < hs.betti(d):
            return False, d
    return True, None


def is_surjective_on_cohomology(f: SimplicialMap, field, reduced: bool = True) -> bool:
    """Whether the pullback hits all of the source-restricted cohomology."""
    cs = cohomology(f.source, field, reduced)
    ct = cohomology(f.target, field, reduced)
    lo = -1 if reduced else 0
    for d in range(lo, f.source.dim() + 1):
        if cs.betti(d) == 0:
            continue
        pullback = chain_map_matrix(f, field, d, reduced).transpose()
        cols = []
        for c in ct.representatives(d):
            coords = cs.class_coords(d, pullback.mul_vec(c))
            if coords is None:
                raise ValueError("pullback of a cocycle is not a cocycle")
            cols.append(coords)
        nrows = cs.betti(d)
        M = Matrix(field, [[c[i] for c in cols] for i in range(nrows)], nrows, len(cols))
        if M.rank() < nrows:
            return False
    return True


def express_as_coboundary(K: SimplicialComplex, field, vec, d: int, reduced: bool = True):
    """A cochain x of degree d-1 with delta(x) = vec, or None if not exact."""
    delta = coboundary_matrix(K, d - 1, field, reduced)
    if delta.nrows != len(vec):
        raise ValueError("degree mismatch")
    return delta.solve(list(vec))


class Cochain:
    """Homogeneous reduced cochain on a complex, stored sparsely by face.

    ``degree`` is the reduced degree: the cochain evaluates on faces with
    degree+1 vertices (degree -1 is the dual of the empty face).
    """

    __slots__ = ("complex", "field", "degree", "data")

    def __init__(self, complex, field, degree, data=None):
        self.complex = complex
        self.field = field
        self.degree = degree
        self.data = {}
        for face, val in (data or {}).items():
            if len(face) != degree + 1:
                raise ValueError(f"face {face} has the wrong cardinality for degree {degree}")
            if val != field.zero:
                self.data[face] = val

    def value(self, face):
        if len(face) != self.degree + 1:
            return self.field.zero
        return self.data.get(face, self.field.zero)

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and other.complex == self.complex
            and other.degree == self.degree
            and other.data == self.data
        )

    def add(self, other: "Cochain") -> "Cochain":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        F = self.field
        data = dict(self.data)
        for face, val in other.data.items():
            s = F.add(data.get(face, F.zero), val)
            if s == F.zero:
                data.pop(face, None)
            else:
                data[face] = s
        out = Cochain(self.complex, F, self.degree)
        out.data = data
        return out

    def scale(self, c) -> "Cochain":
        F = self.field
        if c == F.zero:
            return Cochain(self.complex, F, self.degree)
        out = Cochain(self.complex, F, self.degree)
        out.data = {face: F.mul(c, val) for face, val in self.data.items()}
        return out

    def neg(self) -> "Cochain":
        return self.scale(self.field.neg(self.field.one))

    def sub(self, other: "Cochain") -> "Cochain":
        return self.add(other.neg())

    def bar(self) -> "Cochain":
        """Sign flip by parity: (-1)^{degree+1} times the cochain."""
        return self if (self.degree + 1) % 2 == 0 else self.neg()

    def coboundary(self) -> "Cochain":
        """(delta c)(tau) = c(boundary tau), one reduced degree up."""
        F = self.field
        out = {}
        for tau in self.complex.faces_of_card(self.degree + 2):
            acc = F.zero
            for i in range(len(tau)):
                val = self.data.get(tau[:i] + tau[i + 1:])
                if val is not None:
                    acc = F.add(acc, val if i % 2 == 0 else F.neg(val))
            if acc != F.zero:
                out[tau] = acc
        c = Cochain(self.complex, F, self.degree + 1)
        c.data = out
        return c

    def restrict(self, sub: SimplicialComplex) -> "Cochain":
        """Pull back along the inclusion of a full subcomplex."""
        out = Cochain(sub, self.field, self.degree)
        vs = set(sub.vertices)
        out.data = {f: v for f, v in self.data.items() if set(f) <= vs}
        return out

    def to_vector(self):
        basis = self.complex.faces_of_card(self.degree + 1)
        return [self.data.get(f, self.field.zero) for f in basis]

    @classmethod
    def from_vector(cls, K, field, degree, vec):
        basis = K.faces_of_card(degree + 1)
        return cls(K, field, degree, dict(zip(basis, vec)))


def cochain_coboundary_preimage(c: Cochain):
    """Solve delta(x) = c in the reduced cochains; None when not exact."""
    x = express_as_coboundary(c.complex, c.field, c.to_vector(), c.degree, reduced=True)
    if x is None:
        return None
    return Cochain.from_vector(c.complex, c.field, c.degree - 1, x)
