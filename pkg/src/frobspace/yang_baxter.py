"""
Yang-Baxter operators built from central tensors.

Operators act on coefficient vectors of A (x) A with index i*n + j and on
A (x) A (x) A with index (i*n + j)*n + k.  All identities are checked as
exact equalities of full matrices.
"""

from dataclasses import dataclass

from frobspace import linalg
from frobspace.algebra import embed_12, embed_13, embed_23, mul_tensor3, outer
from frobspace.errors import WrongRing
from frobspace.frobenius import require_central, is_central
from frobspace.linalg import Matrix, kronecker, swap_matrix
from frobspace.report import Report
from frobspace.rings import ZZ

MULT = "mult"
TWIST = "twist"
CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class ROperator:
    mat: Matrix
    kind: str = CUSTOM
    source_q: Matrix = None

    @property
    def n(self):
        return _sqrt_dim(self.mat.nrows)


def _sqrt_dim(n2):
    n = int(round(n2 ** 0.5))
    if n * n != n2:
        raise ValueError("operator size %d is not a square" % n2)
    return n


def _mat(r):
    return r.mat if isinstance(r, ROperator) else r


def r_from_q_mult(a, q):
    """R(x (x) y) = q * (x (x) y), i.e. sum_ij q_ij L_i (x) L_j."""
    n = a.n
    lm = a.left_mult_matrices
    entries = []
    for i, qrow in enumerate(q.sparse_rows):
        li = lm[i].sparse_rows
        for j, c in qrow:
            lj = lm[j].sparse_rows
            for r1, row1 in enumerate(li):
                for c1, v1 in row1:
                    f = c * v1
                    for r2, row2 in enumerate(lj):
                        for c2, v2 in row2:
                            entries.append((r1 * n + r2, c1 * n + c2, f * v2))
    return ROperator(Matrix.from_sparse(a.ring, n * n, n * n, entries), MULT, q)


def r_from_q_twist(a, q):
    """R = Q tau: x (x) y -> q * (y (x) x)."""
    m = r_from_q_mult(a, q).mat @ swap_matrix(a.ring, a.n)
    return ROperator(m, TWIST, q)


def lift_12(r, n):
    m = _mat(r)
    return kronecker(m, Matrix.identity(m.ring, n))


def lift_23(r, n):
    m = _mat(r)
    return kronecker(Matrix.identity(m.ring, n), m)


def lift_13(r, n):
    m = _mat(r)
    flip = kronecker(Matrix.identity(m.ring, n), swap_matrix(m.ring, n))
    return flip @ lift_12(m, n) @ flip


def _lifts(r, n):
    return lift_12(r, n), lift_13(r, n), lift_23(r, n)


def verify_qybe(r, n):
    """R12 R13 R23 == R23 R13 R12."""
    r12, r13, r23 = _lifts(r, n)
    return r12 @ r13 @ r23 == r23 @ r13 @ r12


def verify_eq2(r, n):
    """R13 R12 == R23 R13 == R12 R23."""
    r12, r13, r23 = _lifts(r, n)
    first = r13 @ r12
    return first == r23 @ r13 and first == r12 @ r23


def verify_q_identities(a, q):
    require_central(a, q)
    q12, q13, q23 = embed_12(a, q), embed_13(a, q), embed_23(a, q)
    m = lambda s, t: mul_tensor3(a, s, t)
    rep = Report("q-identities")
    rep.add("Q13Q12 == Q23Q13", m(q13, q12) == m(q23, q13))
    rep.add("Q23Q13 == Q12Q23", m(q23, q13) == m(q12, q23))
    rep.add("Q12Q23Q12 == Q23Q12Q23", m(m(q12, q23), q12) == m(m(q23, q12), q23))
    return rep


def is_right_module_map(a, r):
    """R((x (x) y) a) == R(x (x) y) a for all basis x, y, a (a acting on slot 2)."""
    m = _mat(r)
    n = a.n
    ident = Matrix.identity(a.ring, n)
    return all(m @ kronecker(ident, rp) == kronecker(ident, rp) @ m
               for rp in a.right_mult_matrices)


# -- the algebra A(R) ----------------------------------------------------------------------

@dataclass
class AROperatorAlgebra:
    """Basis (n x n matrices) of {f : (f (x) 1) R = R (1 (x) f)}."""

    basis: list
    contains_identity: bool
    closed: bool

    @property
    def dim(self):
        return len(self.basis)


def _ar_system(a, m):
    n = a.n
    n2 = n * n
    entries = []
    rows = m.sparse_rows
    for a_ in range(n):
        for c in range(n):
            base = (a_ * n + c) * n2
            # (F (x) 1) M: coefficient of F[a_, b] is M[(b, c), col]
            for b in range(n):
                for col, v in rows[b * n + c]:
                    entries.append((base + col, a_ * n + b, v))
            # M (1 (x) F): M[(a_, c), (x, y)] F[y, y']
            for col, v in rows[a_ * n + c]:
                x, y = divmod(col, n)
                for yp in range(n):
                    entries.append((base + x * n + yp, y * n + yp, -v))
    return Matrix.from_sparse(a.ring, n2 * n2, n2, entries)


def satisfies_ar(r, f):
    m = _mat(r)
    ident = Matrix.identity(m.ring, f.nrows)
    return kronecker(f, ident) @ m == m @ kronecker(ident, f)


def ar_algebra(a, r):
    """
    Canonical basis of A(R).  Over ZZ this is a lattice basis of the integer
    solutions.
    """
    n = a.n
    system = _ar_system(a, _mat(r))
    if a.ring is ZZ:
        vecs = linalg.integer_kernel_basis(system)
    else:
        vecs = linalg.kernel_basis(system)
    basis = [Matrix._raw(a.ring, tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), n)
             for v in vecs]
    flat = [b.entries() for b in basis]
    d = len(basis)
    ident = Matrix.identity(a.ring, n).entries()
    rk = lambda vs: linalg.rank(Matrix(a.ring, vs, n * n)) if vs else 0
    has_id = rk(flat + [ident]) == d
    prods = [(f @ g).entries() for f in basis for g in basis]
    closed = rk(flat + prods) == d
    return AROperatorAlgebra(basis, has_id, closed)


def left_regular_rep(a):
    """i(e_p) = L_p."""
    return list(a.left_mult_matrices)


def check_monomorphism(a, r):
    rep = Report("monomorphism")
    src = r.source_q if isinstance(r, ROperator) else None
    if src is not None:
        rep.add("source_q_central", is_central(a, src), certified=True)
    ops = left_regular_rep(a)
    bad = [p for p, lp in enumerate(ops) if not satisfies_ar(r, lp)]
    rep.add("left_mult_in_AR", not bad, {"failed_basis_indices": bad})
    rk = linalg.rank(Matrix(a.ring, [lp.entries() for lp in ops], a.n * a.n))
    rep.add("i_injective", rk == a.n, {"rank": rk})
    vec11 = outer(a, a.unit, a.unit).entries()
    image = _mat(r) @ vec11
    q_back = Matrix._raw(a.ring, tuple(image[i * a.n:(i + 1) * a.n] for i in range(a.n)), a.n)
    rep.add("R(1x1)_central", is_central(a, q_back))
    if src is not None and isinstance(r, ROperator) and r.kind == MULT:
        rep.add("R(1x1)_equals_source", q_back == src)
    return rep


def check_r_in_ar_tensor_ar(a, q, ar):
    """
    Whether R = sum_ij q_ij L_i (x) L_j lies in A(R) (x) A(R) inside
    End(A) (x) End(A).  As an n^2 x n^2 matrix R is Lambda q Lambda^T with
    Lambda = [vec L_0 ... vec L_(n-1)]; membership means R = B C B^T for the
    basis matrix B of A(R), found by two linear solves.
    """
    if not a.ring.is_field:
        raise WrongRing("membership in A(R) (x) A(R) is only decided over a field")
    n2 = a.n * a.n
    lam = Matrix.from_columns(a.ring, [lp.entries() for lp in a.left_mult_matrices], n2)
    big = lam @ q @ lam.T
    if not ar.basis:
        return big.is_zero()
    b = Matrix.from_columns(a.ring, [f.entries() for f in ar.basis], n2)
    x = linalg.solve_matrix(b, big)
    if x is None:
        return False
    ct = linalg.solve_matrix(b, x.T)
    if ct is None:
        return False
    return b @ ct.T @ b.T == big
