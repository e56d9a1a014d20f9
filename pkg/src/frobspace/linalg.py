"""
Dense exact linear algebra over QQ, GF(p) and ZZ.

Matrices are immutable.  Storage is dense (a tuple of row tuples) but the
product and the eliminations walk only the nonzero entries, which keeps the
lifted n^3 x n^3 operators cheap to multiply.

Kernels over a field come back in canonical form: the rows of the reduced
row echelon form of the kernel, so two kernels of the same space compare
equal entry by entry.  Kernels over ZZ come back as the Hermite normal form
of a lattice basis.
"""

from functools import cached_property

from frobspace.errors import DimensionMismatch, NotUnimodular, Singular, WrongRing
from frobspace.rings import QQ, ZZ


class Matrix:
    """An immutable rows x cols matrix with entries in ``ring``."""

    def __init__(self, ring, rows, ncols=None):
        rows = tuple(tuple(ring(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("need ncols for a matrix without rows")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows: expected %d columns" % ncols)
        self.ring = ring
        self.rows = rows
        self.ncols = ncols

    @classmethod
    def _raw(cls, ring, rows, ncols):
        # entries already normalised
        m = object.__new__(cls)
        m.ring = ring
        m.rows = rows
        m.ncols = ncols
        return m

    @classmethod
    def identity(cls, ring, n):
        one, zero = ring.one, ring.zero
        return cls._raw(ring, tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls._raw(ring, tuple((ring.zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, ring, columns, nrows):
        columns = list(columns)
        if not columns:
            return cls.zeros(ring, nrows, 0)
        return cls(ring, zip(*columns), len(columns))

    @classmethod
    def from_sparse(cls, ring, nrows, ncols, entries):
        """Build from an iterable of ``(i, j, value)``; repeated positions add up."""
        rows = [[ring.zero] * ncols for _ in range(nrows)]
        for i, j, v in entries:
            rows[i][j] = rows[i][j] + v
        red = ring.reduce
        return cls._raw(ring, tuple(tuple(red(x) for x in r) for r in rows), ncols)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.format(x) for x in row) for row in self.rows)
        return "Matrix(%s, %dx%d, [%s])" % (self.ring, self.nrows, self.ncols, body)

    @cached_property
    def sparse_rows(self):
        """Per row, the tuple of ``(column, value)`` pairs with nonzero value."""
        return tuple(tuple((j, x) for j, x in enumerate(row) if x) for row in self.rows)

    def nnz(self):
        return sum(len(r) for r in self.sparse_rows)

    def is_zero(self):
        return not any(self.sparse_rows)

    @cached_property
    def T(self):
        if not self.rows:
            return Matrix.zeros(self.ring, self.ncols, 0)
        return Matrix._raw(self.ring, tuple(zip(*self.rows)), len(self.rows))

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def entries(self):
        """Row-major flattening."""
        return tuple(x for row in self.rows for x in row)

    def _check_same(self, other):
        if self.ring != other.ring:
            raise DimensionMismatch("ring mismatch: %s vs %s" % (self.ring, other.ring))
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch: %s vs %s" % (self.shape, other.shape))

    def __add__(self, other):
        self._check_same(other)
        red = self.ring.reduce
        return Matrix._raw(self.ring, tuple(
            tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols)

    def __sub__(self, other):
        self._check_same(other)
        red = self.ring.reduce
        return Matrix._raw(self.ring, tuple(
            tuple(red(a - b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = self.ring(c)
        red = self.ring.reduce
        return Matrix._raw(self.ring, tuple(tuple(red(c * a) for a in r) for r in self.rows),
                           self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return self._matmul(other)
        return self.apply(other)

    def _matmul(self, other):
        if self.ring != other.ring:
            raise DimensionMismatch("ring mismatch: %s vs %s" % (self.ring, other.ring))
        if self.ncols != other.nrows:
            raise DimensionMismatch("cannot multiply %s by %s" % (self.shape, other.shape))
        red = self.ring.reduce
        zero = self.ring.zero
        brows = other.sparse_rows
        ncols = other.ncols
        out = []
        for row in self.sparse_rows:
            acc = {}
            get = acc.get
            for k, a in row:
                for j, b in brows[k]:
                    acc[j] = get(j, 0) + a * b
            dense = [zero] * ncols
            for j, v in acc.items():
                dense[j] = red(v)
            out.append(tuple(dense))
        return Matrix._raw(self.ring, tuple(out), ncols)

    def apply(self, vec):
        """Matrix-vector product; ``vec`` is a sequence of scalars."""
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector of length %d for %s matrix" % (len(vec), self.shape))
        red = self.ring.reduce
        return tuple(red(sum((a * vec[j] for j, a in row), self.ring.zero))
                     for row in self.sparse_rows)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionMismatch("row count mismatch")
        return Matrix._raw(self.ring, tuple(r + s for r, s in zip(self.rows, other.rows)),
                           self.ncols + other.ncols)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionMismatch("column count mismatch")
        return Matrix._raw(self.ring, self.rows + other.rows, self.ncols)

    def over(self, ring):
        """The same entries coerced into another ring (e.g. ZZ -> QQ)."""
        return Matrix(ring, self.rows, self.ncols)


def vector(ring, xs):
    return tuple(ring(x) for x in xs)


def kronecker(a, b):
    """Kronecker product; row (i, k) of the result is i * b.nrows + k."""
    if a.ring != b.ring:
        raise DimensionMismatch("ring mismatch: %s vs %s" % (a.ring, b.ring))
    ring = a.ring
    red = ring.reduce
    br, bc = b.shape
    ncols = a.ncols * bc
    out = []
    for arow in a.sparse_rows:
        for brow in b.sparse_rows:
            dense = [ring.zero] * ncols
            for j, x in arow:
                off = j * bc
                for l, y in brow:
                    dense[off + l] = red(x * y)
            out.append(tuple(dense))
    return Matrix._raw(ring, tuple(out), ncols)


def swap_matrix(ring, n):
    """The permutation of (n*n)-vectors sending index i*n+j to j*n+i."""
    return Matrix.from_sparse(ring, n * n, n * n,
                              ((j * n + i, i * n + j, 1) for i in range(n) for j in range(n)))


# -- elimination over a field ------------------------------------------------

def _require_field(ring, hint=""):
    if not ring.is_field:
        raise WrongRing("%s is not a field%s" % (ring, hint))


def _rref(ring, rows):
    """
    Reduced row echelon form of an iterable of sparse rows (dicts col -> value).
    Returns the list of (pivot column, row dict) sorted by pivot column; each
    pivot entry is 1 and every pivot column is zero in all other rows.
    """
    red, inv = ring.reduce, ring.inv
    pivots = {}
    for r in rows:
        r = {c: v for c, v in r.items() if v}
        for c in sorted(pivots.keys() & r.keys()):
            f = r.get(c)
            if not f:
                continue
            for cc, pv in pivots[c].items():
                v = red(r.get(cc, 0) - f * pv)
                if v:
                    r[cc] = v
                else:
                    r.pop(cc, None)
        if not r:
            continue
        c0 = min(r)
        s = inv(r[c0])
        if s != 1:
            r = {c: red(v * s) for c, v in r.items()}
        for other in pivots.values():
            f = other.get(c0)
            if not f:
                continue
            for cc, v in r.items():
                w = red(other.get(cc, 0) - f * v)
                if w:
                    other[cc] = w
                else:
                    other.pop(cc, None)
        pivots[c0] = r
    return sorted(pivots.items())


def _row_dicts(m):
    return (dict(r) for r in m.sparse_rows)


def rref(m):
    """Nonzero rows of the reduced row echelon form, as a Matrix."""
    _require_field(m.ring)
    piv = _rref(m.ring, _row_dicts(m))
    return Matrix.from_sparse(m.ring, len(piv), m.ncols,
                              ((i, c, v) for i, (_, r) in enumerate(piv) for c, v in r.items()))


def rank(m):
    ring = m.ring if m.ring.is_field else QQ
    return len(_rref(ring, _row_dicts(m)))


def _canonical_span(ring, ncols, vectors):
    piv = _rref(ring, vectors)
    out = []
    for _, r in piv:
        dense = [ring.zero] * ncols
        for c, v in r.items():
            dense[c] = v
        out.append(tuple(dense))
    return out


def canonical_basis(ring, vectors, ncols):
    """Reduced echelon basis of the span of ``vectors`` (sequences of scalars)."""
    _require_field(ring)
    return _canonical_span(ring, ncols, ({j: x for j, x in enumerate(v) if x} for v in vectors))


def kernel_basis(m):
    """
    Canonical basis of the right kernel {v : m v = 0} over a field.

    >>> kernel_basis(Matrix(QQ, [[1, -1]]))
    [(1, 1)]
    """
    _require_field(m.ring, "; use integer_kernel_basis")
    ring = m.ring
    piv = _rref(ring, _row_dicts(m))
    pivot_cols = {c for c, _ in piv}
    free = [c for c in range(m.ncols) if c not in pivot_cols]
    raw = []
    for f in free:
        v = {f: ring.one}
        for c, r in piv:
            x = r.get(f)
            if x:
                v[c] = ring.reduce(-x)
        raw.append(v)
    return _canonical_span(ring, m.ncols, raw)


def solve_linear(m, b):
    """One solution of m x = b (free variables set to 0), or None if inconsistent."""
    _require_field(m.ring)
    ring = m.ring
    if len(b) != m.nrows:
        raise DimensionMismatch("rhs of length %d for %s matrix" % (len(b), m.shape))
    n = m.ncols
    rows = []
    for row, rhs in zip(m.sparse_rows, b):
        d = dict(row)
        rhs = ring(rhs)
        if rhs:
            d[n] = rhs
        rows.append(d)
    x = [ring.zero] * n
    for c, r in _rref(ring, rows):
        if c == n:
            return None
        x[c] = r.get(n, ring.zero)
    return tuple(x)


def solve_matrix(m, b):
    """Solve m X = b for all columns of b at once; None if inconsistent."""
    _require_field(m.ring)
    ring = m.ring
    if b.nrows != m.nrows:
        raise DimensionMismatch("rhs has %d rows for %s matrix" % (b.nrows, m.shape))
    n = m.ncols
    rows = []
    for row, rhs in zip(m.sparse_rows, b.sparse_rows):
        d = dict(row)
        d.update((n + j, v) for j, v in rhs)
        rows.append(d)
    entries = []
    for c, r in _rref(ring, rows):
        if c >= n:
            return None
        entries.extend((c, j - n, v) for j, v in r.items() if j >= n)
    return Matrix.from_sparse(ring, n, b.ncols, entries)


def det(m):
    if m.nrows != m.ncols:
        raise DimensionMismatch("determinant of non-square %s matrix" % (m.shape,))
    ring = m.ring
    if ring is ZZ:
        return _bareiss(m.rows)
    _require_field(ring)
    red, inv = ring.reduce, ring.inv
    a = [list(r) for r in m.rows]
    n = len(a)
    d = ring.one
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ring.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = red(-d)
        d = red(d * a[c][c])
        s = inv(a[c][c])
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = red(f * s)
                a[i] = [red(x - f * y) for x, y in zip(a[i], a[c])]
    return d


def _bareiss(rows):
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def inverse(m):
    n = m.nrows
    if n != m.ncols:
        raise DimensionMismatch("inverse of non-square %s matrix" % (m.shape,))
    if m.ring is ZZ:
        d = det(m)
        if d == 0:
            raise Singular("matrix is singular")
        if d not in (1, -1):
            raise NotUnimodular("determinant %d is not a unit in ZZ" % d)
        return inverse(m.over(QQ)).over(ZZ)
    _require_field(m.ring)
    ring = m.ring
    rows = []
    for i, row in enumerate(m.sparse_rows):
        d = dict(row)
        d[n + i] = ring.one
        rows.append(d)
    piv = _rref(ring, rows)
    if len(piv) < n or piv[n - 1][0] != n - 1:
        raise Singular("matrix is singular")
    return Matrix.from_sparse(ring, n, n, (
        (i, c - n, v) for i, (_, r) in enumerate(piv) for c, v in r.items() if c >= n))


# -- integer normal forms ------------------------------------------------------

def _require_zz(m):
    if m.ring is not ZZ:
        raise WrongRing("%s: integer normal forms need ZZ" % m.ring)


def _hnf_rows(a, u):
    """In place row-style HNF of list-of-lists ``a``, tracking transform ``u``."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, nrows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if not any(a[i][c] for i in range(r, nrows)):
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return r


def hermite_normal_form(m):
    """
    Row-style Hermite normal form over ZZ.  Returns ``(H, U)`` with ``H = U m``,
    ``U`` unimodular, pivots positive and entries above each pivot reduced
    into ``[0, pivot)``.
    """
    _require_zz(m)
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(m.nrows)] for i in range(m.nrows)]
    _hnf_rows(a, u)
    mk = lambda rows, c: Matrix._raw(ZZ, tuple(map(tuple, rows)), c)
    return mk(a, m.ncols), mk(u, m.nrows)


def integer_kernel_basis(m):
    """HNF-reduced ZZ-basis of the lattice {v in ZZ^cols : m v = 0}."""
    _require_zz(m)
    h, u = hermite_normal_form(m.T)
    r = sum(1 for row in h.sparse_rows if row)
    kern = [list(row) for row in u.rows[r:]]
    if not kern:
        return []
    _hnf_rows(kern, [[0] for _ in kern])
    return [tuple(v) for v in kern if any(v)]


def smith_normal_form(m):
    """
    Smith normal form over ZZ: returns ``(U, S, V)`` with ``S = U m V``
    diagonal, nonnegative, each diagonal entry dividing the next.
    """
    _require_zz(m)
    nr, nc = m.shape
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, q):
        # col dst -= q * col src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(nr, nc)):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        a[t], a[i0] = a[i0], a[t]
        u[t], u[i0] = u[i0], u[t]
        swap_cols(t, j0)
        while True:
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    clean = clean and not a[i][t]
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    clean = clean and not a[t][j]
            if clean:
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                i = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                u[t] = [x + y for x, y in zip(u[t], u[i])]
                continue
            # move the smallest remaining entry of row/column t onto the diagonal
            cands = [(abs(a[i][t]), i, t) for i in range(t + 1, nr) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t + 1, nc) if a[t][j]]
            _, i, j = min(cands)
            if j == t:
                a[t], a[i] = a[i], a[t]
                u[t], u[i] = u[i], u[t]
            else:
                swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    mk = lambda rows, c: Matrix._raw(ZZ, tuple(map(tuple, rows)), c)
    return mk(u, nr), mk(a, nc), mk(v, nc)


def elementary_divisors(m):
    """Nonzero diagonal entries of the Smith normal form."""
    _, s, _ = smith_normal_form(m)
    return [s[i, i] for i in range(min(s.shape)) if s[i, i]]
