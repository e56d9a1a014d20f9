"""
Finite-dimensional associative algebras given by structure constants.

``table[i][j][k]`` is the coefficient of ``e_k`` in ``e_i * e_j``.  Elements
of A are coefficient tuples, elements of A (x) A are n x n ``Matrix`` objects
(entry (i, j) is the coefficient of e_i (x) e_j) and elements of A (x) A (x) A
are ``Tensor3`` objects with flat index (i*n + j)*n + k.
"""

import graphlib
from dataclasses import dataclass
from functools import cached_property

from frobspace.errors import DimensionMismatch, InfiniteDimensional, ValidationError
from frobspace.linalg import Matrix
from frobspace.report import Report


class Algebra:
    def __init__(self, ring, table, unit, labels=None, name=""):
        n = len(unit)
        table = tuple(tuple(tuple(ring(c) for c in cell) for cell in row) for row in table)
        if len(table) != n or any(len(row) != n or any(len(c) != n for c in row)
                                  for row in table):
            raise DimensionMismatch("structure table must be %d x %d x %d" % (n, n, n))
        if labels is not None and len(labels) != n:
            raise DimensionMismatch("need %d basis labels, got %d" % (n, len(labels)))
        self.ring = ring
        self.n = n
        self.table = table
        self.unit = tuple(ring(c) for c in unit)
        self.labels = tuple(labels) if labels is not None else tuple("e%d" % i for i in range(n))
        self.name = name

    def __repr__(self):
        return "<Algebra %s dim=%d over %s>" % (self.name or "?", self.n, self.ring)

    @cached_property
    def products(self):
        """``products[i][j]``: the nonzero ``(k, c)`` terms of ``e_i * e_j``."""
        return tuple(tuple(tuple((k, c) for k, c in enumerate(cell) if c) for cell in row)
                     for row in self.table)

    def basis_element(self, i):
        return tuple(self.ring.one if k == i else self.ring.zero for k in range(self.n))

    def zero(self):
        return (self.ring.zero,) * self.n

    def element(self, coeffs):
        if len(coeffs) != self.n:
            raise DimensionMismatch("element of length %d in dim %d algebra"
                                    % (len(coeffs), self.n))
        return tuple(self.ring(c) for c in coeffs)

    @cached_property
    def left_mult_matrices(self):
        ring, n = self.ring, self.n
        return tuple(Matrix.from_sparse(ring, n, n, (
            (k, i, c) for i in range(n) for k, c in self.products[p][i])) for p in range(n))

    @cached_property
    def right_mult_matrices(self):
        ring, n = self.ring, self.n
        return tuple(Matrix.from_sparse(ring, n, n, (
            (m, j, c) for j in range(n) for m, c in self.products[j][p])) for p in range(n))

    def left_mult(self, x):
        """Matrix of y -> x*y for an arbitrary element x."""
        return _combine(self.ring, self.n, x, self.left_mult_matrices)

    def right_mult(self, x):
        """Matrix of y -> y*x."""
        return _combine(self.ring, self.n, x, self.right_mult_matrices)


def _combine(ring, n, coeffs, mats):
    entries = []
    for c, m in zip(coeffs, mats):
        if c:
            entries.extend((i, j, c * v) for i, row in enumerate(m.sparse_rows) for j, v in row)
    return Matrix.from_sparse(ring, n, n, entries)


def left_mult_matrix(a, p):
    """(L_p)[k, i] = c_{p i}^k, so that L_p @ x is e_p * x."""
    return a.left_mult_matrices[p]


def right_mult_matrix(a, p):
    """(R_p)[m, j] = c_{j p}^m, so that R_p @ x is x * e_p."""
    return a.right_mult_matrices[p]


def mul(a, x, y):
    if len(x) != a.n or len(y) != a.n:
        raise DimensionMismatch("elements must have length %d" % a.n)
    out = [0] * a.n
    prods = a.products
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            f = xi * yj
            for k, c in prods[i][j]:
                out[k] += f * c
    red = a.ring.reduce
    return tuple(red(v) for v in out)


def add(a, x, y):
    red = a.ring.reduce
    return tuple(red(u + v) for u, v in zip(x, y))


def scale(a, c, x):
    red = a.ring.reduce
    c = a.ring(c)
    return tuple(red(c * v) for v in x)


def validate(a):
    """
    Check associativity and the unit.  The returned report holds one failed
    check per violation and is empty exactly when the table is valid.
    """
    rep = Report("validate")
    n = a.n
    basis = [a.basis_element(i) for i in range(n)]
    prods = [[mul(a, basis[i], basis[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = mul(a, prods[i][j], basis[k])
                rhs = mul(a, basis[i], prods[j][k])
                for m in range(n):
                    if lhs[m] != rhs[m]:
                        rep.add("associativity", False, (i, j, k, m))
    for i in range(n):
        if mul(a, a.unit, basis[i]) != basis[i]:
            rep.add("unit", False, ("left", i))
        if mul(a, basis[i], a.unit) != basis[i]:
            rep.add("unit", False, ("right", i))
    return rep


def check_valid(a):
    rep = validate(a)
    if not rep.ok:
        fails = [c.detail for c in rep.checks]
        raise ValidationError("algebra %s fails %d associativity/unit checks, first %s"
                              % (a.name or "?", len(fails), fails[0]), fails)
    return a


# -- tensors ---------------------------------------------------------------------

def outer(a, x, y):
    """The Tensor2 x (x) y."""
    return Matrix._raw(a.ring, tuple(tuple(a.ring.reduce(u * v) for v in y) for u in x), a.n)


def tensor2(a, coeffs):
    return Matrix(a.ring, coeffs, a.n)


def zero_tensor2(a):
    return Matrix.zeros(a.ring, a.n, a.n)


def mul_tensor2(a, s, t):
    """Product in the algebra A (x) A."""
    n = a.n
    prods = a.products
    acc = {}
    for i, srow in enumerate(s.sparse_rows):
        for j, sv in srow:
            for p, trow in enumerate(t.sparse_rows):
                left = prods[i][p]
                if not left:
                    continue
                for q, tv in trow:
                    right = prods[j][q]
                    if not right:
                        continue
                    f = sv * tv
                    for u, cu in left:
                        for v, cv in right:
                            acc[u, v] = acc.get((u, v), 0) + f * cu * cv
    return Matrix.from_sparse(a.ring, n, n, ((u, v, c) for (u, v), c in acc.items()))


class Tensor3:
    """An element of A (x) A (x) A, stored flat with index (i*n + j)*n + k."""

    def __init__(self, ring, n, coeffs):
        if len(coeffs) != n ** 3:
            raise DimensionMismatch("Tensor3 needs %d coefficients" % n ** 3)
        self.ring = ring
        self.n = n
        self.coeffs = tuple(coeffs)

    def __getitem__(self, ijk):
        i, j, k = ijk
        return self.coeffs[(i * self.n + j) * self.n + k]

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.n == other.n and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        nz = {(i // self.n ** 2, i // self.n % self.n, i % self.n): c
              for i, c in enumerate(self.coeffs) if c}
        return "Tensor3(%s)" % nz

    def nonzero(self):
        n = self.n
        for idx, c in enumerate(self.coeffs):
            if c:
                yield idx // (n * n), idx // n % n, idx % n, c

    def is_zero(self):
        return not any(self.coeffs)


def _tensor3(a, entries):
    n = a.n
    out = [0] * n ** 3
    for i, j, k, c in entries:
        out[(i * n + j) * n + k] += c
    red = a.ring.reduce
    return Tensor3(a.ring, n, [red(c) for c in out])


def mul_tensor3(a, s, t):
    """Product in the algebra A (x) A (x) A."""
    prods = a.products
    tn = list(t.nonzero())
    out = []
    for i, j, k, sv in s.nonzero():
        pi, pj, pk = prods[i], prods[j], prods[k]
        for p, q, r, tv in tn:
            left, mid, right = pi[p], pj[q], pk[r]
            if not (left and mid and right):
                continue
            f = sv * tv
            for u, cu in left:
                for v, cv in mid:
                    for w, cw in right:
                        out.append((u, v, w, f * cu * cv * cw))
    return _tensor3(a, out)


def embed_12(a, q):
    """q = sum x (x) y  ->  sum x (x) y (x) 1."""
    u = a.unit
    return _tensor3(a, ((i, j, k, c * u[k]) for i, row in enumerate(q.sparse_rows)
                        for j, c in row for k in range(a.n) if u[k]))


def embed_13(a, q):
    """q = sum x (x) y  ->  sum x (x) 1 (x) y."""
    u = a.unit
    return _tensor3(a, ((i, j, k, c * u[j]) for i, row in enumerate(q.sparse_rows)
                        for k, c in row for j in range(a.n) if u[j]))


def embed_23(a, q):
    """q = sum x (x) y  ->  sum 1 (x) x (x) y."""
    u = a.unit
    return _tensor3(a, ((i, j, k, c * u[i]) for j, row in enumerate(q.sparse_rows)
                        for k, c in row for i in range(a.n) if u[i]))


# -- stock algebras ---------------------------------------------------------------

def _from_products(ring, n, rule, unit, labels, name):
    """``rule(i, j)`` returns an iterable of (k, c) for e_i * e_j."""
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in rule(i, j):
                table[i][j][k] += c
    return Algebra(ring, table, unit, labels, name)


def matrix_algebra(m, ring):
    """M_m with basis E_ij in row-major order (index i*m + j)."""
    n = m * m
    rule = lambda x, y: [(x // m * m + y % m, 1)] if x % m == y // m else []
    unit = [1 if x // m == x % m else 0 for x in range(n)]
    labels = ["E%d%d" % (x // m + 1, x % m + 1) for x in range(n)]
    return _from_products(ring, n, rule, unit, labels, "M%d" % m)


def cyclic_group_algebra(m, ring):
    """Group algebra of Z/m with basis g^0, ..., g^(m-1)."""
    unit = [1] + [0] * (m - 1)
    return _from_products(ring, m, lambda i, j: [((i + j) % m, 1)], unit,
                          ["g^%d" % i for i in range(m)], "C%d" % m)


def truncated_poly(m, ring):
    """k[x]/(x^m) with basis 1, x, ..., x^(m-1)."""
    unit = [1] + [0] * (m - 1)
    return _from_products(ring, m, lambda i, j: [(i + j, 1)] if i + j < m else [], unit,
                          ["x^%d" % i for i in range(m)], "T%d" % m)


def product_ring(m, ring):
    """k^m with orthogonal idempotent basis e_1, ..., e_m."""
    return _from_products(ring, m, lambda i, j: [(i, 1)] if i == j else [], [1] * m,
                          ["e%d" % (i + 1) for i in range(m)], "P%d" % m)


STOCK = {
    "matrix": matrix_algebra,
    "cyclic_group": cyclic_group_algebra,
    "truncated_poly": truncated_poly,
    "product": product_ring,
}


# -- quivers ------------------------------------------------------------------------

@dataclass(frozen=True)
class Quiver:
    """
    Vertices, arrows ``(name, source, target)`` and monomial relations.
    Relations are arrow-name sequences in composition order: ``("g", "a")``
    means "first g, then a".
    """

    vertices: tuple
    arrows: tuple
    relations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(map(str, a)) for a in self.arrows))
        object.__setattr__(self, "relations", tuple(tuple(map(str, r)) for r in self.relations))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex labels")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate arrow names")
        for a in self.arrows:
            if len(a) != 3:
                raise ValidationError("arrow %r must be (name, source, target)" % (a,))
            if a[1] not in self.vertices or a[2] not in self.vertices:
                raise ValidationError("arrow %s has an unknown endpoint" % a[0])
        arrow = self.arrow_map
        for rel in self.relations:
            if len(rel) < 2:
                raise ValidationError("relation %r has length < 2" % (rel,))
            for x in rel:
                if x not in arrow:
                    raise ValidationError("relation %r uses unknown arrow %s" % (rel, x))
            for x, y in zip(rel, rel[1:]):
                if arrow[x][2] != arrow[y][1]:
                    raise ValidationError("relation %r is not a path" % (rel,))

    @property
    def arrow_map(self):
        return {a[0]: a for a in self.arrows}


def _allowed_extension(path, relations):
    # path is allowed given path[:-1] is: only relations ending at the last arrow
    return not any(len(r) <= len(path) and path[-len(r):] == r for r in relations)


def _check_finite(q):
    rels = q.relations
    k = max([len(r) for r in rels], default=2) - 1
    out_arrows = {v: [] for v in q.vertices}
    for name, s, t in q.arrows:
        out_arrows[s].append((name, t))

    # states: allowed paths of length exactly k; edges append one arrow
    layer = [((name,), t) for name, s, t in q.arrows]
    for _ in range(k - 1):
        layer = [(p + (name,), t) for p, end in layer for name, t in out_arrows[end]
                 if _allowed_extension(p + (name,), rels)]
    graph = {}
    for p, end in layer:
        succ = graph.setdefault(p, set())
        for name, t in out_arrows[end]:
            ext = p + (name,)
            if _allowed_extension(ext, rels):
                succ.add(ext[1:])
    # predecessors map for graphlib; a CycleError means infinitely many paths
    preds = {}
    for p, succ in graph.items():
        preds.setdefault(p, set())
        for s in succ:
            preds.setdefault(s, set()).add(p)
    try:
        tuple(graphlib.TopologicalSorter(preds).static_order())
    except graphlib.CycleError as e:
        cycle = e.args[1]
        raise InfiniteDimensional(
            "path algebra is infinite dimensional: allowed paths run through the cycle %s"
            % " -> ".join("".join(s) for s in cycle)) from None


def path_algebra(q, ring, bound=10000, name="path"):
    """
    Bound path algebra kQ/(relations) for monomial relations.

    Basis: vertex idempotents in input order, then allowed paths sorted by
    (length, arrow-name sequence).  Paths compose left to right: ``p * q`` is
    "first p, then q" when target(p) == source(q), otherwise 0.
    """
    _check_finite(q)
    rels = q.relations
    out_arrows = {v: [] for v in q.vertices}
    for a_name, s, t in q.arrows:
        out_arrows[s].append((a_name, t))
    arrow = q.arrow_map

    paths = []
    layer = sorted(((a_name,), t) for a_name, s, t in q.arrows)
    while layer:
        paths.extend(p for p, _ in layer)
        if len(paths) + len(q.vertices) > bound:
            raise InfiniteDimensional("more than %d basis paths" % bound)
        layer = sorted((p + (a_name,), t) for p, end in layer for a_name, t in out_arrows[end]
                       if _allowed_extension(p + (a_name,), rels))

    nv = len(q.vertices)
    n = nv + len(paths)
    index = {p: nv + i for i, p in enumerate(paths)}
    source = [v for v in q.vertices] + [arrow[p[0]][1] for p in paths]
    target = [v for v in q.vertices] + [arrow[p[-1]][2] for p in paths]
    word = [()] * nv + paths

    def rule(i, j):
        if target[i] != source[j]:
            return []
        if i < nv:
            return [(j, 1)]
        if j < nv:
            return [(i, 1)]
        k = index.get(word[i] + word[j])
        return [(k, 1)] if k is not None else []

    sep = "" if all(len(x[0]) == 1 for x in q.arrows) else "*"
    labels = ["e%s" % v for v in q.vertices] + [sep.join(p) for p in paths]
    unit = [1] * nv + [0] * len(paths)
    return _from_products(ring, n, rule, unit, labels, name)
