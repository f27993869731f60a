from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from golodlab.linalg import (
    GF2, HAVE_KERNEL, Matrix, PrimeField, QQ, parse_field,
)

GF5 = PrimeField(5)


def mat(field, rows):
    return Matrix(field, [[field.of(x) for x in r] for r in rows])


def test_parse_field():
    assert parse_field("q") is QQ
    assert parse_field("f2") == GF2
    assert parse_field("F7").p == 7
    with pytest.raises(ValueError):
        parse_field("f4")
    with pytest.raises(ValueError):
        parse_field("r64")


def test_prime_field_canonical():
    F = GF5
    assert F.of(-1) == 4
    assert F.of(Fraction(1, 2)) == F.inv(2)
    assert F.mul(F.inv(3), 3) == 1


def test_rref_identity():
    M = Matrix.identity(QQ, 3)
    R, pivots = M.rref()
    assert R == M and pivots == (0, 1, 2)
    assert M.rank() == 3


def test_rref_zero():
    M = Matrix.zeros(GF2, 3, 4)
    _, pivots = M.rref()
    assert pivots == ()
    assert M.rank() == 0


def test_rref_f2_rank_one():
    M = mat(GF2, [[1, 1], [1, 1]])
    R, pivots = M.rref()
    assert pivots == (0,)
    assert R.rows == [[1, 1], [0, 0]]


def test_solve_identity():
    M = Matrix.identity(QQ, 4)
    b = [QQ.of(x) for x in (3, -1, 0, 7)]
    assert M.solve(b) == b


def test_nullspace_sum_vector():
    M = mat(QQ, [[1, 1]])
    basis = M.nullspace()
    assert len(basis) == 1
    # spans the same line as (1, -1)
    v = basis[0]
    assert v[0] * Fraction(-1) == v[1]


def test_in_column_space_zero_matrix():
    M = Matrix.zeros(QQ, 2, 2)
    assert not M.in_column_space([QQ.one, QQ.zero])
    assert M.in_column_space([QQ.zero, QQ.zero])


@st.composite
def small_matrix(draw, field):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 5))
    rows = [[field.of(draw(st.integers(-6, 6))) for _ in range(n)] for _ in range(m)]
    return Matrix(field, rows)


@given(small_matrix(QQ), st.lists(st.integers(-6, 6), min_size=5, max_size=5))
def test_solve_substitutes_back_qq(M, xs):
    x = [QQ.of(v) for v in xs[: M.ncols]]
    b = M.mul_vec(x)
    sol = M.solve(b)
    assert sol is not None
    assert M.mul_vec(sol) == b


@given(small_matrix(GF5))
def test_rank_nullity(M):
    assert M.rank() + len(M.nullspace()) == M.ncols


@given(small_matrix(GF5))
def test_nullspace_vectors_are_killed(M):
    for v in M.nullspace():
        assert all(x == 0 for x in M.mul_vec(v))


@given(small_matrix(GF2))
@pytest.mark.skipif(not HAVE_KERNEL, reason="compiled kernel not built")
def test_kernel_matches_python_fallback(M):
    fast_R, fast_p = M.rref()
    slow_R, slow_p = M._rref_python()
    assert fast_p == slow_p
    assert fast_R.rows == slow_R.rows


def test_rref_is_idempotent():
    M = mat(QQ, [[2, 4, 1], [1, 2, 0], [0, 0, 3]])
    R, _ = M.rref()
    R2, _ = R.rref()
    assert R == R2
