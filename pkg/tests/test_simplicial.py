import pytest
from hypothesis import given, strategies as st

from golodlab.shuffles import Shuffle
from golodlab.simplicial import (
    SimplicialComplex, SimplicialMap, VertexPartition, as_face, big_homotopy,
    h_map, iota, mu_map, partition_from_shuffle, partition_merge, sort_sign,
    span_partition,
)


def cx(*facets, vertices=None, name=None):
    return SimplicialComplex.from_facets(facets, vertices=vertices, name=name)


CYC4 = cx([1, 2], [2, 3], [3, 4], [1, 4])
TRI = cx([1, 2], [2, 3], [1, 3])
D2 = cx([1, 2, 3])


@st.composite
def random_complex(draw):
    n = draw(st.integers(1, 5))
    verts = list(range(1, n + 1))
    facets = draw(st.lists(
        st.lists(st.sampled_from(verts), min_size=1, max_size=4, unique=True),
        min_size=1, max_size=5))
    return SimplicialComplex.from_facets(facets, vertices=verts)


def test_sort_sign():
    assert sort_sign([(1,), (2,)]) == (1, ((1,), (2,)))
    assert sort_sign([(2,), (1,)]) == (-1, ((1,), (2,)))
    assert sort_sign([(1,), (1,)]) is None
    assert sort_sign([(3,), (1,), (2,)]) == (1, ((1,), (2,), (3,)))


def test_constructor_rejects_violations():
    with pytest.raises(ValueError):
        SimplicialComplex([(1,), (2,)], {(), ((1,), (2,))})  # not closed
    with pytest.raises(ValueError):
        SimplicialComplex([(1,), (2,)], {(), ((1,),)})  # ghost vertex 2


@given(random_complex())
def test_downward_closure(K):
    for f in K.faces:
        for i in range(len(f)):
            assert f[:i] + f[i + 1:] in K.faces


def test_full_subcomplex_cases():
    sub = CYC4.full_subcomplex([(1,), (3,)])
    assert sub.f_vector() == (2,)
    assert CYC4.full_subcomplex(CYC4.vertices) == CYC4
    edge = D2.full_subcomplex([(1,), (2,)])
    assert set(edge.faces) == {(), ((1,),), ((2,),), ((1,), (2,))}
    with pytest.raises(ValueError):
        CYC4.full_subcomplex([])
    with pytest.raises(ValueError):
        CYC4.full_subcomplex([(9,)])


def test_join_point_point():
    pt = cx([1])
    assert pt.join(pt).f_vector() == (2, 1)


@given(random_complex(), random_complex())
def test_join_face_counts_multiply(K, L):
    assert len(K.join(L).faces) == len(K.faces) * len(L.faces)


def test_join_of_sphere_zeros_is_square():
    s0 = cx([1], [2])
    sq = s0.join(s0)
    assert sq.f_vector() == (4, 4)
    assert ((0, 1), (1, 1)) in sq.faces
    assert ((0, 1), (0, 2)) not in sq.faces


def test_join_associative_up_to_relabeling():
    A, B, C = cx([1, 2]), cx([1], [2]), cx([1, 2], [2, 3])
    left = A.join(B).join(C)      # labels ((0,0,v)), ((0,1,v)), ((1,v))
    right = A.join(B.join(C))     # labels ((0,v)), ((1,0,v)), ((1,1,v))

    # canonical flattening: (0,0,v)->(0,v), (0,1,v)->(1,0,v), (1,v)->(1,1,v)
    def flat(v):
        if v[:2] == (0, 0):
            return (0,) + v[2:]
        if v[:2] == (0, 1):
            return (1, 0) + v[2:]
        assert v[0] == 1
        return (1, 1) + v[1:]
    mapped = {tuple(sorted(flat(v) for v in f)) for f in left.faces}
    assert mapped == set(right.faces)


def test_ordered_product_point():
    pt = cx([1])
    for q in range(4):
        P = pt.ordered_product(q)
        assert P.f_vector() == tuple(
            __import__("math").comb(q + 1, k + 1) for k in range(q + 1))


def test_ordered_product_square():
    d1 = cx([0, 1])
    sq = d1.ordered_product(1)
    assert sq.f_vector() == (4, 5, 2)
    assert set(sq.faces_of_dim(2)) == {
        (((0, 0)), ((0, 1)), ((1, 1))),
        (((0, 0)), ((1, 0)), ((1, 1))),
    }


def test_ordered_product_top_face_count_is_binomial():
    from math import comb

    for p in range(0, 4):
        for q in range(0, 4):
            K = cx(list(range(p + 1)))
            top = K.ordered_product(q).faces_of_card(p + q + 1)
            assert len(top) == comb(p + q, q)


@given(random_complex(), st.integers(0, 2))
def test_product_chains_project_to_faces(K, q):
    P = K.ordered_product(q)
    for f in P.faces:
        proj_k = tuple(sorted({v[:-1] for v in f}))
        assert proj_k in K.faces
        assert all(0 <= v[-1] <= q for v in f)
        assert all(f[i] < f[i + 1] and f[i][-1] <= f[i + 1][-1] for i in range(len(f) - 1))


def test_iota_cases():
    m = iota(CYC4, [(1,), (3,)], [(2,), (4,)])
    assert m.image_face(as_face([(1,), (2,)])) == ((0, 1), (1, 2))
    assert m.image_face(as_face([(1,)])) == ((0, 1),)
    assert m.image_face(()) == ()
    assert m.is_injective_on_faces()
    with pytest.raises(ValueError):
        iota(CYC4, [(1,)], [(1,), (2,)])


def test_h_map_cases():
    P = VertexPartition(D2, [[(1,)], [(2,)], [(3,)]])
    h1 = h_map(D2, P, 1)
    assert h1.image_face(as_face([(1,), (2,), (3,)])) == ((0, 1), (1, 2), (1, 3))
    h0 = h_map(D2, P, 0)
    assert h0.image_face(as_face([(1,), (2,), (3,)])) == ((0, 1), (0, 2), (0, 3))
    h2 = h_map(D2, P, 2)
    assert h2.image_face(as_face([(1,), (2,), (3,)])) == ((0, 1), (1, 2), (2, 3))
    with pytest.raises(ValueError):
        h_map(D2, P, 3)


def test_h_map_image_avoids_last_copy_below_top_level():
    P = VertexPartition(CYC4, [[(1,), (3,)], [(2,), (4,)]])
    h0 = h_map(CYC4, P, 0)
    for f in CYC4.faces:
        assert all(v[0] < P.q for v in h0.image_face(f))


def test_big_homotopy_restricts_to_levels():
    P = VertexPartition(D2, [[(1,)], [(2,), (3,)]])
    H = big_homotopy(D2, P)
    for lev in range(P.q + 1):
        h = h_map(D2, P, lev)
        for v in D2.vertices:
            assert H.mapping[v + (lev,)] == h.mapping[v]


def test_big_homotopy_q0_is_identity():
    P = VertexPartition(D2, [list(D2.vertices)])
    H = big_homotopy(D2, P)
    assert all(H.mapping[v + (0,)] == (0,) + v for v in D2.vertices)


def test_big_homotopy_collapses_chain_to_join_face():
    d1 = cx([1, 2])
    P = VertexPartition(d1, [[(1,)], [(2,)]])
    H = big_homotopy(d1, P)
    chain = as_face([(1, 0), (2, 0), (2, 1)])
    assert H.image_face(chain) == ((0, 1), (0, 2), (1, 2))


def test_mu_map_cases():
    P = VertexPartition(CYC4, [[(1,), (3,)], [(2,), (4,)]])
    m = mu_map(CYC4, P, 0)
    assert m.image_face(as_face([(1,), (2,)])) == ((0, 1), (1, 2))
    with pytest.raises(ValueError):
        mu_map(CYC4, P, 1)
    P3 = VertexPartition(D2, [[(1,)], [(2,)], [(3,)]])
    m1 = mu_map(D2, P3, 1)
    assert m1.image_face(as_face([(1,), (2,), (3,)])) == ((0, 1), (0, 2), (1, 3))


def test_partition_merge():
    P3 = VertexPartition(D2, [[(1,)], [(2,)], [(3,)]])
    merged = partition_merge(P3, 1)
    assert merged.parts == (frozenset({(1,)}), frozenset({(2,), (3,)}))
    two = VertexPartition(CYC4, [[(1,), (3,)], [(2,), (4,)]])
    one = partition_merge(two, 0)
    assert len(one.parts) == 1
    with pytest.raises(ValueError):
        partition_merge(one, 0)


def test_partition_from_shuffle():
    K = SimplicialComplex.from_facets([[1, 2, 3, 4]])
    P = VertexPartition(K, [[(1,)], [(2,)], [(3,)], [(4,)]])
    # identity coarsening: the maximal hat shuffle
    s = Shuffle(3, 3, (0, 0, 1, 2, 3))
    Q = partition_from_shuffle(P, 0, 3, s)
    assert Q.parts == P.parts
    # one block
    s1 = Shuffle(3, 0, (0, 3))
    Q1 = partition_from_shuffle(P, 0, 3, s1)
    assert Q1.parts == (frozenset({(1,), (2,), (3,), (4,)}),)
    # split at the middle
    s2 = Shuffle(3, 1, (0, 1, 3))
    Q2 = partition_from_shuffle(P, 0, 3, s2)
    assert Q2.parts == (frozenset({(1,), (2,)}), frozenset({(3,), (4,)}))
    with pytest.raises(ValueError):
        partition_from_shuffle(P, 0, 3, (0, 2))


def test_partition_from_shuffle_subrange_has_restricted_parent():
    K = SimplicialComplex.from_facets([[1, 2, 3, 4]])
    P = VertexPartition(K, [[(1,)], [(2,)], [(3,)], [(4,)]])
    s = Shuffle(2, 1, (0, 1, 2))
    Q = partition_from_shuffle(P, 1, 3, s)
    assert Q.parts == (frozenset({(2,), (3,)}), frozenset({(4,)}))
    assert set(Q.parent.vertices) == {(2,), (3,), (4,)}


def test_span_partition_absorbs_ends():
    K = SimplicialComplex.from_facets([[1, 2, 3, 4, 5]])
    P = VertexPartition(K, [[(1,)], [(2,)], [(3,)], [(4,)], [(5,)]])
    s = Shuffle(2, 1, (0, 1, 2))
    Q = span_partition(P, 1, 3, s)
    # the leading block absorbs part 0, the trailing block part 4
    assert Q.parts == (frozenset({(1,), (2,), (3,)}), frozenset({(4,), (5,)}))


def test_simplicial_map_validation():
    with pytest.raises(ValueError):
        SimplicialMap(CYC4, TRI, {(1,): (1,), (2,): (2,), (3,): (3,), (4,): (9,)})
    collapse = SimplicialMap(TRI, cx([1]), {(1,): (1,), (2,): (1,), (3,): (1,)})
    assert collapse.chain_image(as_face([(1,), (2,)])) is None
