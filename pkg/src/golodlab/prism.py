"""Higher prism operators and executable checks of their chain identities.

A prism operator is built from a vertex rule (v, level) -> target vertex on
K x Delta^q; its value on a p-face is the signed sum, over all (p,q)-
shuffles, of the oriented images of the shuffled chains.  Operators into
joins are kept symbolic (columns are formal sums of join faces) so that no
join complex ever has to be materialized; identity checks compare sparse
chains column by column.
"""

from __future__ import annotations

from .homology import Cochain
from .shuffles import enumerate_shuffles
from .simplicial import (
    SimplicialComplex, SimplicialMap, VertexPartition, sort_sign,
)


def odot_pairs(face, s):
    """The shuffled chain of a p-face as (vertex, level) pairs."""
    if len(face) - 1 != s.p:
        raise ValueError(f"face of dimension {len(face)-1} needs a ({len(face)-1},q)-shuffle")
    e = s.entries
    out = []
    for lev in range(s.q + 1):
        for t in range(e[lev], e[lev + 1] + 1):
            out.append((face[t], lev))
    return tuple(out)


def sigma_odot(face, s):
    """The shuffled chain as a face of K (x) Delta^q (levels appended)."""
    return tuple(v + (lev,) for v, lev in odot_pairs(face, s))


class PrismOperator:
    """C_d(K) -> C_{d+q}(L) for the simplicial map with the given vertex rule."""

    __slots__ = ("source", "q", "rule", "target", "_columns")

    def __init__(self, source: SimplicialComplex, q: int, rule, target=None):
        self.source = source
        self.q = q
        self.rule = rule  # (vertex label, level) -> target label
        self.target = target
        self._columns = {}

    def column(self, face):
        """The image chain of a basis face, as {target face: integer coeff}."""
        col = self._columns.get(face)
        if col is not None:
            return col
        p = len(face) - 1
        col = {}
        if p >= 0:
            rule = self.rule
            for s in enumerate_shuffles(p, self.q):
                tup = [rule(v, lev) for v, lev in odot_pairs(face, s)]
                oriented = sort_sign(tup)
                if oriented is None:
                    continue
                osign, tface = oriented
                c = col.get(tface, 0) + s.sgn() * osign
                if c:
                    col[tface] = c
                else:
                    col.pop(tface, None)
        self._columns[face] = col
        return col

    def apply_chain(self, chain: dict, field) -> dict:
        out = {}
        for face, coeff in chain.items():
            if coeff == field.zero:
                continue
            for tface, c in self.column(face).items():
                v = field.add(out.get(tface, field.zero), field.mul(coeff, field.of(c)))
                if v == field.zero:
                    out.pop(tface, None)
                else:
                    out[tface] = v
        return out

    def apply_face(self, face, field) -> dict:
        return self.apply_chain({face: field.one}, field)

    def matrix(self, d: int, field):
        """Dense matrix C_d(source) -> C_{d+q}(target); needs a materialized target."""
        from .linalg import Matrix

        if self.target is None:
            raise ValueError("prism operator has no materialized target")
        cols = self.source.faces_of_dim(d)
        rows = self.target.faces_of_dim(d + self.q)
        idx = {f: i for i, f in enumerate(rows)}
        M = Matrix.zeros(field, len(rows), len(cols))
        for j, face in enumerate(cols):
            for tface, c in self.column(face).items():
                M.rows[idx[tface]][j] = field.of(c)
        return M

    def pullback(self, eval_fn, target_card: int, field) -> Cochain:
        """Pull a target cochain (given by an evaluation function on target
        faces of the stated cardinality) back to a cochain on the source."""
        d = target_card - self.q - 1
        out = {}
        for face in self.source.faces_of_card(target_card - self.q):
            acc = field.zero
            for tface, c in self.column(face).items():
                val = eval_fn(tface)
                if val != field.zero:
                    acc = field.add(acc, field.mul(field.of(c), val))
            if acc != field.zero:
                out[face] = acc
        return Cochain(self.source, field, d, out)


def chain_boundary(chain: dict, field) -> dict:
    """Unreduced boundary of a sparse chain (faces of one vertex die)."""
    out = {}
    for face, coeff in chain.items():
        if len(face) <= 1:
            continue
        for i in range(len(face)):
            sub = face[:i] + face[i + 1:]
            term = coeff if i % 2 == 0 else field.neg(coeff)
            v = field.add(out.get(sub, field.zero), term)
            if v == field.zero:
                out.pop(sub, None)
            else:
                out[sub] = v
    return out


def chain_sub(a: dict, b: dict, field) -> dict:
    out = dict(a)
    for face, coeff in b.items():
        v = field.sub(out.get(face, field.zero), coeff)
        if v == field.zero:
            out.pop(face, None)
        else:
            out[face] = v
    return out


def chain_add(a: dict, b: dict, field) -> dict:
    out = dict(a)
    for face, coeff in b.items():
        v = field.add(out.get(face, field.zero), coeff)
        if v == field.zero:
            out.pop(face, None)
        else:
            out[face] = v
    return out


def chain_scale(a: dict, c, field) -> dict:
    if c == field.zero:
        return {}
    return {face: field.mul(c, coeff) for face, coeff in a.items()}


def build_prism(H: SimplicialMap, target=None) -> PrismOperator:
    """Prism operator of an explicit simplicial map on K (x) Delta^q."""
    src = H.source
    if src.product_base is None:
        raise ValueError("source of H is not an ordered product")
    base, q = src.product_base, src.product_levels
    return PrismOperator(base, q, lambda v, lev: H.mapping[v + (lev,)],
                         target=target or H.target)


def prism_P(K: SimplicialComplex, P: VertexPartition) -> PrismOperator:
    """P(I): the prism operator of the part-collapsing homotopy of K.

    Targets the (q+1)-fold join of K symbolically (labels carry the copy
    index); for q = 0 the columns are the identity.
    """
    q = P.q
    return PrismOperator(K, q, lambda v, lev: (min(P.part_of(v), lev),) + v)


def level_restriction(op: PrismOperator, i: int) -> PrismOperator:
    """The operator for the same rule precomposed with the i-th coface:
    level shifts lev -> lev when lev < i and lev -> lev + 1 otherwise."""
    if not 0 <= i <= op.q:
        raise ValueError("coface index out of range")
    rule = op.rule
    return PrismOperator(op.source, op.q - 1,
                         lambda v, lev, _i=i: rule(v, lev if lev < _i else lev + 1))


def _one_star_mu_one_label(P: VertexPartition, i: int, lab):
    """Vertex rule of 1 * mu_i * 1 on join labels (copy, vertex...)."""
    c = lab[0]
    if c < i:
        return lab
    if c > i:
        return (c + 1,) + lab[1:]
    v = lab[1:]
    return ((i if P.part_of(v) <= i else i + 1),) + v


def one_star_mu_one_chain(P: VertexPartition, i: int, chain: dict, field) -> dict:
    """Push a sparse chain in K^{*q} through 1 * mu_i * 1 (oriented)."""
    out = {}
    for face, coeff in chain.items():
        oriented = sort_sign([_one_star_mu_one_label(P, i, lab) for lab in face])
        sign, tface = oriented  # vertexwise injective: never degenerate
        term = coeff if sign > 0 else field.neg(coeff)
        v = field.add(out.get(tface, field.zero), term)
        if v == field.zero:
            out.pop(tface, None)
        else:
            out[tface] = v
    return out


# -- identity checks ---------------------------------------------------------


def verify_boundary_identity(H, field) -> dict:
    """Residual of the prism boundary identity for an explicit homotopy H.

    Returns {source face: nonzero residual chain}; empty means the identity
    boundary o P + (-1)^{q-1} P o boundary = sum_i (-1)^i P_{level-skip i}
    holds on every unreduced basis chain.
    """
    op = H if isinstance(H, PrismOperator) else build_prism(H)
    q = op.q
    sides = {}
    level_ops = [level_restriction(op, i) for i in range(q + 1)] if q >= 1 else []
    for card in range(1, op.source.dim() + 2):
        for face in op.source.faces_of_card(card):
            lhs = chain_boundary(op.apply_face(face, field), field)
            dface = chain_boundary({face: field.one}, field)
            pd = op.apply_chain(dface, field)
            lhs = chain_add(lhs, chain_scale(pd, _sign_pow(field, q - 1), field), field)
            rhs = {}
            for i, lop in enumerate(level_ops):
                term = lop.apply_face(face, field)
                rhs = chain_add(rhs, chain_scale(term, _sign_pow(field, i), field), field)
            res = chain_sub(lhs, rhs, field)
            if res:
                sides[face] = res
    return sides


def verify_boundary_identity_I(K: SimplicialComplex, P: VertexPartition, field) -> dict:
    """Residual of the partition form of the boundary identity for P(I)."""
    q = P.q
    op = prism_P(K, P)
    sides = {}
    merged_ops = [prism_P(K, P.merge(i)) for i in range(q)]
    tail_op = level_restriction(op, q) if q >= 1 else None
    for card in range(1, K.dim() + 2):
        for face in K.faces_of_card(card):
            lhs = chain_boundary(op.apply_face(face, field), field)
            pd = op.apply_chain(chain_boundary({face: field.one}, field), field)
            lhs = chain_add(lhs, chain_scale(pd, _sign_pow(field, q - 1), field), field)
            rhs = {}
            for i in range(q):
                term = one_star_mu_one_chain(P, i, merged_ops[i].apply_face(face, field), field)
                rhs = chain_add(rhs, chain_scale(term, _sign_pow(field, i), field), field)
            if tail_op is not None:
                term = tail_op.apply_face(face, field)
                rhs = chain_add(rhs, chain_scale(term, _sign_pow(field, q), field), field)
            res = chain_sub(lhs, rhs, field)
            if res:
                sides[face] = res
    return sides


def _sign_pow(field, k: int):
    return field.one if k % 2 == 0 else field.neg(field.one)


# -- star cochains on joins ---------------------------------------------------


def star_value(cochains, face, field):
    """Evaluate a_0 * ... * a_q on a join face (split by copy index)."""
    blocks = [[] for _ in cochains]
    for lab in face:
        blocks[lab[0]].append(lab[1:])
    val = field.one
    for a, blk in zip(cochains, blocks):
        v = a.value(tuple(blk))
        if v == field.zero:
            return field.zero
        val = field.mul(val, v)
    return val


def star_delta_value(cochains, face, field):
    """Evaluate delta(a_0 * ... * a_q) on a join face."""
    acc = field.zero
    for i in range(len(face)):
        v = star_value(cochains, face[:i] + face[i + 1:], field)
        if v != field.zero:
            acc = field.add(acc, v if i % 2 == 0 else field.neg(v))
    return acc


def prism_pullback_on_star(op: PrismOperator, cochains, field) -> Cochain:
    """P^#(a_0 * ... * a_q) as a cochain on the source complex."""
    if len(cochains) != op.q + 1:
        raise ValueError(f"expected {op.q + 1} cochain factors")
    card = sum(a.degree + 1 for a in cochains)
    return op.pullback(lambda f: star_value(cochains, f, field), card, field)


def mu_pullback(K: SimplicialComplex, P: VertexPartition, k: int,
                a: Cochain, b: Cochain, field) -> Cochain:
    """mu_k^#(a * b): split each face at the part boundary k / k+1.

    Carries the orientation sign of sorting the split face into its two
    join blocks.
    """
    if not 0 <= k <= P.q - 1:
        raise ValueError("split index out of range")
    d = a.degree + b.degree + 1
    out = {}
    for rho in K.faces_of_card(d + 1):
        left = tuple(v for v in rho if P.part_of(v) <= k)
        right = tuple(v for v in rho if P.part_of(v) > k)
        va = a.value(left)
        if va == field.zero:
            continue
        vb = b.value(right)
        if vb == field.zero:
            continue
        val = field.mul(va, vb)
        if _cross(left, right) % 2:
            val = field.neg(val)
        if val != field.zero:
            out[rho] = val
    return Cochain(K, field, d, out)


def _cross(left, right) -> int:
    return sum(1 for x in left for y in right if x > y)


def star_mu_pullback_value(P: VertexPartition, i: int, cochains, face, field):
    """Evaluate (1 * mu_i * 1)^#(a_0 * ... * a_q) on a K^{*q} face."""
    oriented = sort_sign([_one_star_mu_one_label(P, i, lab) for lab in face])
    sign, tface = oriented
    v = star_value(cochains, tface, field)
    if v == field.zero or sign > 0:
        return v
    return field.neg(v)


def verify_prism_identity(K: SimplicialComplex, P: VertexPartition,
                          cochains, field) -> Cochain:
    """Residual of the pullback identity
    (P(I)^# delta + (-1)^{q-1} delta P(I)^#)(a_0*...*a_q)
      = sum_i (-1)^i P(I(i))^# (1 * mu_i * 1)^# (a_0*...*a_q)."""
    q = P.q
    if len(cochains) != q + 1:
        raise ValueError(f"expected {q + 1} cochain factors")
    op = prism_P(K, P)
    card = sum(a.degree + 1 for a in cochains)
    lhs = op.pullback(lambda f: star_delta_value(cochains, f, field), card + 1, field)
    second = prism_pullback_on_star(op, cochains, field).coboundary()
    lhs = lhs.add(second.scale(_sign_pow(field, q - 1)))
    rhs = Cochain(K, field, lhs.degree)
    for i in range(q):
        mop = prism_P(K, P.merge(i))
        term = mop.pullback(
            lambda f: star_mu_pullback_value(P, i, cochains, f, field), card, field)
        rhs = rhs.add(term.scale(_sign_pow(field, i)))
    return lhs.sub(rhs)
