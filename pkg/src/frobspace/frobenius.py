"""
Nearly Frobenius structures.

A coproduct that is an A-bimodule map is determined by Q = Delta(1), and Q
ranges over the A-central elements of A (x) A.  This module computes that
space, looks for nondegenerate trace forms, builds the associated dual
bases, Frobenius coproduct and Nakayama automorphism, and checks that the
central elements form a free rank one module generated by the Frobenius
coproduct.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from frobspace import linalg
from frobspace.algebra import mul
from frobspace.errors import (DeterministicTooLarge, FrobspaceError, NoSolution, NotCentral,
                              Singular, WrongRing)
from frobspace.linalg import Matrix
from frobspace.report import Report
from frobspace.rings import QQ, ZZ

DEFAULT_TRIALS = 32
DEFAULT_HEIGHT = 2 ** 16
DEFAULT_SEED = 0xF506
DETERMINISTIC_MAX_DIM = 8


# -- central elements ---------------------------------------------------------------

def left_mul_tensor(a, x, q):
    """x * q, multiplying into the first tensor slot."""
    return a.left_mult(x) @ q


def right_mul_tensor(a, q, x):
    """q * x, multiplying into the second tensor slot."""
    return q @ a.right_mult(x).T


def is_central(a, q):
    if q.shape != (a.n, a.n):
        raise ValueError("tensor shape %s does not match dimension %d" % (q.shape, a.n))
    return all(lp @ q == q @ rp.T
               for lp, rp in zip(a.left_mult_matrices, a.right_mult_matrices))


def require_central(a, q, what="input"):
    if not is_central(a, q):
        raise NotCentral("%s tensor is not A-central" % what)


def centrality_system(a):
    """
    The n^3 x n^2 matrix whose kernel is the space of central tensors.
    Row (p, k, m) encodes entry (k, m) of L_p T - T R_p^T; unknown (i, j)
    sits in column i*n + j.
    """
    n = a.n
    entries = []
    for p in range(n):
        lp = a.left_mult_matrices[p]
        rp = a.right_mult_matrices[p]
        for k in range(n):
            for m in range(n):
                row = (p * n + k) * n + m
                for i, c in lp.sparse_rows[k]:
                    entries.append((row, i * n + m, c))
                for j, c in rp.sparse_rows[m]:
                    entries.append((row, k * n + j, -c))
    return Matrix.from_sparse(a.ring, n ** 3, n * n, entries)


@dataclass
class FrobeniusSpace:
    """
    Canonical basis of the central tensors.  Over ZZ the generators are a
    lattice basis and ``snf_diagonal`` lists the nonzero elementary divisors
    of the defining system.
    """

    ring: object
    n: int
    generators: list
    snf_diagonal: tuple = None

    @property
    def rank(self):
        return len(self.generators)


def central_basis(a):
    n = a.n
    system = centrality_system(a)
    if a.ring is ZZ:
        vecs = linalg.integer_kernel_basis(system)
        snf = tuple(linalg.elementary_divisors(system))
    else:
        vecs = linalg.kernel_basis(system)
        snf = None
    gens = [Matrix._raw(a.ring, tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), n)
            for v in vecs]
    return FrobeniusSpace(a.ring, n, gens, snf)


def frobdim(a):
    """Dimension of the Frobenius space (over ZZ, the rank of the lattice)."""
    return central_basis(a).rank


def coproduct_from_q(a, q, x):
    """Delta(x) = x * Delta(1) for the coproduct with Delta(1) = q."""
    require_central(a, q)
    return left_mul_tensor(a, x, q)


def ast_action(a, elt, q):
    """(elt * Delta)(1) = (1 (x) elt) Delta(1)."""
    require_central(a, q)
    out = q @ a.left_mult(elt).T
    if not is_central(a, out):
        raise NotCentral("ast action produced a non-central tensor")
    return out


def eta_map(a, q, f):
    """(id (x) f)(q) for an endomorphism f of A given as a matrix."""
    require_central(a, q)
    return q @ f.T


# -- trace forms ----------------------------------------------------------------------

def gram(a, eps):
    """G[i][j] = eps(e_i e_j)."""
    red = a.ring.reduce
    eps = tuple(a.ring(e) for e in eps)
    return Matrix._raw(a.ring, tuple(
        tuple(red(sum((c * eps[k] for k, c in a.products[i][j]), 0)) for j in range(a.n))
        for i in range(a.n)), a.n)


def _det_int_or_field(m):
    if m.ring is QQ and all(type(x) is int for x in m.entries()):
        return linalg.det(Matrix._raw(ZZ, m.rows, m.ncols))
    return linalg.det(m)


@dataclass
class FormSearch:
    """
    Outcome of a search for a nondegenerate trace form.  ``verdict`` is one
    of "Frobenius", "NotFrobenius", "ProbablyNotFrobenius", or "DegenerateForm"
    when a supplied eps fails (which says nothing about other forms);
    ``failure_bound`` bounds the probability that a probabilistic negative
    answer is wrong.
    """

    verdict: str
    certified: bool
    epsilon: tuple = None
    determinant: object = None
    failure_bound: Fraction = None
    trials: int = 0
    method: str = "random"
    bound_text: str = None

    @property
    def is_frobenius(self):
        return self.verdict == "Frobenius"


def check_frobenius_form(a, eps):
    """Decide whether a given eps is nondegenerate (unimodular over ZZ)."""
    eps = tuple(a.ring(e) for e in eps)
    if len(eps) != a.n:
        raise ValueError("epsilon needs %d coefficients" % a.n)
    d = linalg.det(gram(a, eps))
    ok = d in (1, -1) if a.ring is ZZ else d != 0
    return FormSearch("Frobenius" if ok else "DegenerateForm", True,
                      epsilon=eps if ok else None, determinant=d, method="check")


def _degree_bounds(a):
    # the determinant has degree <= rank(C_k) in eps_k, where G = sum_k eps_k C_k
    n = a.n
    bounds = []
    for k in range(n):
        ck = Matrix.from_sparse(QQ if a.ring is ZZ else a.ring, n, n, (
            (i, j, c) for i in range(n) for j in range(n) for kk, c in a.products[i][j] if kk == k))
        bounds.append(linalg.rank(ck))
    return bounds


def _grid_search(a):
    ring = a.ring
    size = getattr(ring, "p", None)
    axes = []
    for d in _degree_bounds(a):
        npts = d + 1 if size is None else min(d + 1, size)
        axes.append(range(npts) if d else (0,))
    evaluated = 0
    for point in itertools.product(*axes):
        evaluated += 1
        g = gram(a, point)
        d = _det_int_or_field(g)
        if d:
            return FormSearch("Frobenius", True, tuple(ring(x) for x in point), d,
                              trials=evaluated, method="grid")
    return FormSearch("NotFrobenius", True, trials=evaluated, method="grid")


def find_frobenius_form(a, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, height=DEFAULT_HEIGHT,
                        deterministic=False, epsilon=None):
    """
    Look for eps with det G(eps) != 0.

    Random trials draw each coordinate uniformly from a set of size S
    (S = p over GF(p), S = height over QQ); det G(eps) has total degree n,
    so a negative answer after t trials is wrong with probability at most
    (n/S)^t.  With ``deterministic`` the determinant is evaluated on a grid
    large enough to interpolate it, which certifies either answer.  Over ZZ
    only a supplied ``epsilon`` can be checked.
    """
    if epsilon is not None:
        return check_frobenius_form(a, epsilon)
    if not a.ring.is_field:
        raise WrongRing("searching for a Frobenius form over %s is not supported; "
                        "supply epsilon to check one" % a.ring)
    if deterministic and a.n > DETERMINISTIC_MAX_DIM:
        raise DeterministicTooLarge("deterministic search needs dim <= %d, got %d"
                                    % (DETERMINISTIC_MAX_DIM, a.n))
    n = a.n
    size = getattr(a.ring, "p", None) or height
    for t in range(trials):
        rng = random.Random("%d:%d" % (seed, t))
        eps = tuple(a.ring(rng.randrange(size)) for _ in range(n))
        d = _det_int_or_field(gram(a, eps))
        if d:
            return FormSearch("Frobenius", True, eps, d, trials=t + 1)
    if deterministic:
        res = _grid_search(a)
        res.trials += trials
        return res
    base = min(Fraction(1), Fraction(n, size))
    return FormSearch("ProbablyNotFrobenius", False, failure_bound=base ** trials,
                      trials=trials, bound_text="(%s)^%d" % (base, trials))


@dataclass
class FrobeniusData:
    """
    Everything derived from a nondegenerate trace form eps.

    ``gram[i][j] = eps(e_i e_j)``; the dual basis is e_i^# = sum_m dual[i][m] e_m,
    so that B(e_i^#, e_j) = delta_ij; ``q0`` is sum_i e_i (x) e_i^#; the
    Nakayama automorphism sends e_i to sum_m nakayama[m][i] e_m.
    """

    algebra: object
    epsilon: tuple
    gram: Matrix
    dual: Matrix
    q0: Matrix
    nakayama: Matrix
    nakayama_inv: Matrix

    def bilinear(self, x, y):
        a = self.algebra
        xy = mul(a, x, y)
        return a.ring.reduce(sum((u * v for u, v in zip(self.epsilon, xy)), 0))

    def nu(self, x):
        return self.nakayama @ x

    def nu_inv(self, x):
        return self.nakayama_inv @ x


def frobenius_data(a, eps):
    eps = tuple(a.ring(e) for e in eps)
    g = gram(a, eps)
    if linalg.det(g) == 0:
        raise Singular("trace form is degenerate")
    d = linalg.inverse(g)
    nak = d @ g.T
    data = FrobeniusData(a, eps, g, d, d, nak, linalg.inverse(nak))
    _check_frobenius_data(data)
    return data


def _ensure(cond, what):
    if not cond:
        raise FrobspaceError("internal consistency failure: %s" % what)


def _check_frobenius_data(f):
    a = f.algebra
    n = a.n
    basis = [a.basis_element(i) for i in range(n)]
    _ensure(f.dual @ f.gram == Matrix.identity(a.ring, n), "dual * gram != 1")
    dual_vecs = f.dual.rows
    for i in range(n):
        for j in range(n):
            _ensure(f.bilinear(dual_vecs[i], basis[j]) == (1 if i == j else 0),
                    "B(e_%d^#, e_%d)" % (i, j))
            _ensure(f.bilinear(basis[i], basis[j]) == f.bilinear(basis[j], f.nu(basis[i])),
                    "Nakayama relation at (%d, %d)" % (i, j))
            _ensure(f.nu(mul(a, basis[i], basis[j])) == mul(a, f.nu(basis[i]), f.nu(basis[j])),
                    "Nakayama multiplicativity at (%d, %d)" % (i, j))
    _ensure(f.nu(a.unit) == a.unit, "Nakayama fixes 1")


def star_action(frob, elt, q):
    """(elt * Delta)(1) = (1 (x) nu^-1(elt)) Delta(1)."""
    a = frob.algebra
    require_central(a, q)
    out = q @ a.left_mult(frob.nu_inv(elt)).T
    if not is_central(a, out):
        raise NotCentral("star action produced a non-central tensor")
    return out


def solve_star_coefficient(frob, q_target):
    """
    The unique a with q_target = a * q0 under the twisted action.  Writing
    q_target = sum_i e_i (x) b_i, it is a = nu(sum_i eps(e_i) b_i).
    """
    a = frob.algebra
    require_central(a, q_target)
    b = q_target.T @ frob.epsilon
    coeff = frob.nu(b)
    if star_action(frob, coeff, frob.q0) != q_target:
        raise NoSolution("q_target is not in A * q0")
    return coeff


def coproduct_via_duality(a, eps, x):
    """
    Delta(x) computed through the dual space: pair x into A* by
    b -> B(x, b), transpose the product (u (x) v -> v u) and pull both
    factors back along the same pairing.
    """
    g = gram(a, eps)
    ginv = linalg.inverse(g)
    phi = g.T @ tuple(a.ring(c) for c in x)
    n = a.n
    red = a.ring.reduce
    mu_star = Matrix._raw(a.ring, tuple(
        tuple(red(sum((phi[k] * c for k, c in a.products[j][i]), 0)) for j in range(n))
        for i in range(n)), n)
    return ginv.T @ mu_star @ ginv


def counit_check(a, eps, q):
    """(eps (x) id) q == 1 == (id (x) eps) q."""
    eps = tuple(a.ring(e) for e in eps)
    return q.T @ eps == a.unit and q @ eps == a.unit


def verify_theorem_a(a, frob):
    """
    Check that the central tensors form the free module A * q0: the dimension
    matches, {e_i * q0} is independent, and every generator is reached.
    """
    rep = Report("theorem-a")
    space = central_basis(a)
    rep.add("frobdim_equals_dim", space.rank == a.n, {"frobdim": space.rank, "dim": a.n})
    orbit = [star_action(frob, a.basis_element(i), frob.q0) for i in range(a.n)]
    r = linalg.rank(Matrix(a.ring, [m.entries() for m in orbit], a.n * a.n))
    rep.add("star_orbit_independent", r == a.n, {"rank": r})
    bad = []
    for idx, q in enumerate(space.generators):
        try:
            solve_star_coefficient(frob, q)
        except NoSolution:
            bad.append(idx)
    rep.add("generators_in_star_orbit", not bad, {"failed_generators": bad})
    return rep
