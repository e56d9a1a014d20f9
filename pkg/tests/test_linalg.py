from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from frobspace import linalg
from frobspace.errors import DimensionMismatch, NotUnimodular, Singular, WrongRing
from frobspace.linalg import Matrix, kronecker, swap_matrix
from frobspace.rings import GF, QQ, ZZ

import oracle

F5 = GF(5)


def M(ring, rows, ncols=None):
    return Matrix(ring, rows, ncols)


# -- examples -------------------------------------------------------------------

def test_kernel_examples():
    assert linalg.kernel_basis(M(QQ, [[1]])) == []
    assert linalg.kernel_basis(M(QQ, [[1, -1]])) == [(1, 1)]
    assert linalg.kernel_basis(Matrix.zeros(F5, 2, 2)) == [(1, 0), (0, 1)]


def test_integer_kernel_examples():
    assert linalg.integer_kernel_basis(M(ZZ, [[2]])) == []
    assert linalg.integer_kernel_basis(M(ZZ, [[2, -2]])) == [(1, 1)]
    assert linalg.integer_kernel_basis(M(ZZ, [[1, 0], [0, 0]])) == [(0, 1)]


def test_integer_kernel_is_primitive():
    # (1, 1) generates every integer solution of 2x - 2y = 0 in a small box
    sols = [(x, y) for x in range(-6, 7) for y in range(-6, 7) if 2 * x - 2 * y == 0]
    assert all(x == y for x, y in sols)


def test_smith_examples():
    u, s, v = linalg.smith_normal_form(M(ZZ, [[2, 0], [0, 3]]))
    assert s == M(ZZ, [[1, 0], [0, 6]])
    assert u @ M(ZZ, [[2, 0], [0, 3]]) @ v == s

    z = Matrix.zeros(ZZ, 2, 3)
    u, s, v = linalg.smith_normal_form(z)
    assert s == z and u == Matrix.identity(ZZ, 2) and v == Matrix.identity(ZZ, 3)

    i3 = Matrix.identity(ZZ, 3)
    assert linalg.smith_normal_form(i3)[1] == i3


def test_solve_examples():
    b = (1, Fraction(2, 3), -4)
    assert linalg.solve_linear(Matrix.identity(QQ, 3), b) == b
    assert linalg.solve_linear(M(QQ, [[1, 1]]), (2,)) == (2, 0)
    assert linalg.solve_linear(M(QQ, [[0]]), (1,)) is None


def test_inverse_examples():
    p = M(QQ, [[0, 1], [1, 0]])
    assert linalg.inverse(p) == p
    assert linalg.inverse(Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 3)
    assert linalg.inverse(M(QQ, [[2]])) == M(QQ, [[Fraction(1, 2)]])
    with pytest.raises(Singular):
        linalg.inverse(M(QQ, [[1, 2], [2, 4]]))
    with pytest.raises(NotUnimodular):
        linalg.inverse(M(ZZ, [[2]]))
    assert linalg.inverse(M(ZZ, [[2, 1], [1, 1]])) == M(ZZ, [[1, -1], [-1, 2]])


def test_kronecker_examples():
    i2 = Matrix.identity(QQ, 2)
    assert kronecker(i2, i2) == Matrix.identity(QQ, 4)
    m = M(QQ, [[1, 2, 3], [4, 5, 6]])
    assert kronecker(M(QQ, [[1]]), m) == m
    n = M(QQ, [[0, 1], [0, 0]])
    k = kronecker(n, n)
    assert k.nnz() == 1 and k[0, 3] == 1


def test_rank_examples():
    assert linalg.rank(Matrix.zeros(QQ, 3, 3)) == 0
    assert linalg.rank(Matrix.identity(F5, 4)) == 4
    assert linalg.rank(M(QQ, [[1, 2], [2, 4]])) == 1


def test_swap_matrix():
    s = swap_matrix(QQ, 3)
    for i in range(3):
        for j in range(3):
            e = [0] * 9
            e[i * 3 + j] = 1
            out = s @ tuple(e)
            assert out[j * 3 + i] == 1 and sum(out) == 1


def test_errors():
    with pytest.raises(DimensionMismatch):
        M(QQ, [[1, 2]]) @ M(QQ, [[1, 2]])
    with pytest.raises(DimensionMismatch):
        M(QQ, [[1, 2], [3]])
    with pytest.raises(WrongRing):
        linalg.hermite_normal_form(M(QQ, [[1]]))
    with pytest.raises(WrongRing):
        linalg.kernel_basis(M(ZZ, [[1]]))


def test_field_arithmetic_mod_p():
    m = M(F5, [[2, 3], [1, 3]])
    assert linalg.det(m) == (2 * 3 - 3 * 1) % 5
    assert linalg.inverse(m) @ m == Matrix.identity(F5, 2)


# -- properties -------------------------------------------------------------------

small = st.integers(-4, 4)


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))


rings = st.sampled_from([QQ, GF(5), GF(7)])


@settings(max_examples=60, deadline=None)
@given(int_matrices(), rings)
def test_rank_nullity(rows, ring):
    m = M(ring, rows)
    ker = linalg.kernel_basis(m)
    assert linalg.rank(m) + len(ker) == m.ncols
    assert linalg.rank(m) == oracle.sympy_rank(ring, m.rows, m.ncols)
    for v in ker:
        assert all(x == 0 for x in m @ v)
    assert linalg.kernel_basis(M(ring, rows)) == ker


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_smith_properties(rows):
    m = M(ZZ, rows)
    u, s, v = linalg.smith_normal_form(m)
    assert u @ m @ v == s
    assert abs(linalg.det(u)) == 1 and abs(linalg.det(v)) == 1
    diag = [s[i, i] for i in range(min(s.shape))]
    assert all(s[i, j] == 0 for i in range(s.nrows) for j in range(s.ncols) if i != j)
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert diag[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert nz == oracle.sympy_divisors(rows)


@settings(max_examples=40, deadline=None)
@given(int_matrices(3, 3), int_matrices(3, 3), st.data())
def test_kronecker_mixed_product(a_rows, b_rows, data):
    a, b = M(QQ, a_rows), M(QQ, b_rows)
    c = M(QQ, data.draw(st.lists(st.lists(small, min_size=2, max_size=2),
                                 min_size=a.ncols, max_size=a.ncols)))
    d = M(QQ, data.draw(st.lists(st.lists(small, min_size=2, max_size=2),
                                 min_size=b.ncols, max_size=b.ncols)))
    assert kronecker(a, b) @ kronecker(c, d) == kronecker(a @ c, b @ d)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)), rings)
def test_inverse_property(rows, ring):
    m = M(ring, rows)
    d = linalg.det(m)
    assert d == oracle.sympy_det(ring, rows)
    if d == 0:
        with pytest.raises(Singular):
            linalg.inverse(m)
        return
    inv = linalg.inverse(m)
    ident = Matrix.identity(ring, m.nrows)
    assert inv @ m == ident and m @ inv == ident


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_integer_kernel_spans_rational_kernel(rows):
    m = M(ZZ, rows)
    ker = linalg.integer_kernel_basis(m)
    for v in ker:
        assert all(x == 0 for x in m @ v)
    rat = linalg.kernel_basis(m.over(QQ))
    assert len(ker) == len(rat)
    if ker:
        assert oracle.sympy_rank(QQ, ker + rat, m.ncols) == len(ker)
        # saturated: the lattice basis extends to a unimodular one, so its
        # maximal minors have gcd 1, i.e. all elementary divisors are 1
        assert oracle.sympy_divisors([list(v) for v in ker]) == [1] * len(ker)


@settings(max_examples=40, deadline=None)
@given(int_matrices(), rings, st.data())
def test_solve_matrix_consistent(rows, ring, data):
    m = M(ring, rows)
    x = M(ring, data.draw(st.lists(st.lists(small, min_size=2, max_size=2),
                                   min_size=m.ncols, max_size=m.ncols)))
    b = m @ x
    sol = linalg.solve_matrix(m, b)
    assert sol is not None and m @ sol == b
    for j in range(b.ncols):
        col = linalg.solve_linear(m, b.column(j))
        assert col is not None and m @ col == b.column(j)


@settings(max_examples=40, deadline=None)
@given(int_matrices())
def test_hermite_form(rows):
    m = M(ZZ, rows)
    h, u = linalg.hermite_normal_form(m)
    assert u @ m == h
    assert abs(linalg.det(u)) == 1
    lead = -1
    for row in h.rows:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        assert nz[0] > lead and row[nz[0]] > 0
        lead = nz[0]
