"""Exact linear algebra over the rationals.

Matrices are plain lists of rows; entries are ``int`` or ``Fraction``.  All
elimination goes through the integer kernel in ``_kernels`` after clearing
denominators row by row, so no floating point is ever involved.
"""
from fractions import Fraction
from math import gcd, lcm

from ._kernels import echelon

ZERO = Fraction(0)
ONE = Fraction(1)


def _int_row(row):
    den = 1
    for x in row:
        if type(x) is not int:
            d = x.denominator
            if d != 1:
                den = lcm(den, d)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def int_rows(rows):
    """Scale each row by the lcm of its denominators."""
    return [_int_row(r) for r in rows]


def primitive(vec):
    """Integer multiple of ``vec`` with coprime entries (sign preserved)."""
    row = _int_row(vec)
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    return tuple(row)


def rref(rows, ncols=None):
    """Reduced row echelon form.

    Args:
        rows: matrix as a list of rows.
        ncols: number of columns; inferred from the first row when omitted.

    Returns:
        (rref_rows, pivots) with ``rref_rows`` a list of tuples of Fractions
        (zero rows dropped) and ``pivots`` the pivot column indices.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, piv = echelon(int_rows(rows), ncols)
    out = []
    for r, c in zip(red, piv):
        p = r[c]
        out.append(tuple(Fraction(x, p) if x else ZERO for x in r))
    return out, piv


def rank(rows, ncols=None):
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return len(echelon(int_rows(rows), ncols)[1])


def _kernel_vectors(red, piv, ncols):
    pivset = set(piv)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for r, c in zip(red, piv):
            x = r[f]
            if x:
                v[c] = -Fraction(x, r[c])
        vecs.append(v)
    return vecs


def kernel(rows, ncols=None):
    """Right null space ``{x : M x = 0}`` as a canonical Subspace."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, piv = echelon(int_rows(rows), ncols)
    return Subspace(_kernel_vectors(red, piv, ncols), ncols)


def transpose(rows, ncols=None):
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return [list(col) for col in zip(*rows)] if rows else [[] for _ in range(ncols)]


def left_kernel(rows, nrows=None):
    """``{y : y M = 0}`` for a matrix with ``nrows`` rows."""
    if nrows is None:
        nrows = len(rows)
    if nrows == 0:
        return Subspace([], 0)
    ncols = len(rows[0])
    if ncols == 0:
        return Subspace.full(nrows)
    return kernel(transpose(rows), nrows)


def matmul(a, b):
    if not a:
        return []
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * m
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(m):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def vecmat(v, b, m=None):
    """Row vector times matrix."""
    if m is None:
        m = len(b[0]) if b else 0
    acc = [0] * m
    for k, x in enumerate(v):
        if x:
            brow = b[k]
            for j in range(m):
                y = brow[j]
                if y:
                    acc[j] += x * y
    return acc


def solve(m, b):
    """Solve ``m x = b``.

    Returns:
        None when ``b`` is not in the column space, otherwise
        ``(x, kernel)`` where ``x`` is the particular solution with zero free
        coordinates.

    Raises:
        ValueError: if the dimensions do not match.
    """
    if len(m) != len(b):
        raise ValueError("dimension mismatch: %d rows vs rhs of length %d" % (len(m), len(b)))
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [b[i]] for i, row in enumerate(m)]
    red, piv = echelon(int_rows(aug), ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for r, c in zip(red, piv):
        if r[ncols]:
            x[c] = Fraction(r[ncols], r[c])
    ker = Subspace(_kernel_vectors([r[:ncols] for r in red], piv, ncols), ncols)
    return x, ker


class Subspace:
    """A subspace of Q^n stored by its reduced row echelon basis.

    Two subspaces are equal iff their canonical bases coincide, so instances
    hash and compare by value.
    """

    __slots__ = ("ambient", "basis", "pivots", "_hash")

    def __init__(self, vectors, ambient):
        self.ambient = ambient
        if vectors:
            red, piv = rref(vectors, ambient)
        else:
            red, piv = [], []
        self.basis = tuple(red)
        self.pivots = tuple(piv)
        self._hash = None

    @classmethod
    def _raw(cls, basis, pivots, ambient):
        s = cls.__new__(cls)
        s.ambient = ambient
        s.basis = tuple(basis)
        s.pivots = tuple(pivots)
        s._hash = None
        return s

    @classmethod
    def zero(cls, ambient):
        return cls._raw((), (), ambient)

    @classmethod
    def full(cls, ambient):
        basis = []
        for i in range(ambient):
            v = [ZERO] * ambient
            v[i] = ONE
            basis.append(tuple(v))
        return cls._raw(basis, range(ambient), ambient)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient, self.basis))
        return self._hash

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.ambient)

    def reduce(self, v):
        """Residual of ``v`` after eliminating the pivot coordinates."""
        r = list(v)
        for row, c in zip(self.basis, self.pivots):
            x = r[c]
            if x:
                for j, y in enumerate(row):
                    if y:
                        r[j] -= x * y
        return r

    def contains(self, v):
        return not any(self.reduce(v))

    def coords(self, v):
        """Coordinates of ``v`` in the canonical basis, or None if outside."""
        if any(self.reduce(v)):
            return None
        return [v[c] for c in self.pivots]

    def complement_columns(self):
        p = set(self.pivots)
        return [j for j in range(self.ambient) if j not in p]

    def __add__(self, other):
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        if not other.basis:
            return self
        if not self.basis:
            return other
        return Subspace(list(self.basis) + list(other.basis), self.ambient)

    def perp(self):
        """Orthogonal complement for the standard pairing."""
        if not self.basis:
            return Subspace.full(self.ambient)
        return kernel(list(self.basis), self.ambient)

    def intersect(self, other):
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient)
        return (self.perp() + other.perp()).perp()

    def issubset(self, other):
        return all(other.contains(v) for v in self.basis)


def sum_and_intersect(a, b):
    """(a + b, a ∩ b) for subspaces of the same ambient space."""
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch: %d vs %d" % (a.ambient, b.ambient))
    return a + b, a.intersect(b)


class SpanCoords:
    """Coordinates with respect to a fixed list of independent vectors.

    Keeps ``[V | I]`` in reduced form so that a query costs one pass over the
    pivot rows.
    """

    __slots__ = ("vectors", "ambient", "_rows", "_piv", "k")

    def __init__(self, vectors, ambient):
        self.vectors = [list(v) for v in vectors]
        self.ambient = ambient
        self.k = len(vectors)
        aug = []
        for i, v in enumerate(vectors):
            row = list(v) + [0] * self.k
            row[ambient + i] = 1
            aug.append(row)
        red, piv = rref(aug, ambient + self.k) if aug else ([], [])
        if any(c >= ambient for c in piv):
            raise ValueError("vectors are linearly dependent")
        self._rows = red
        self._piv = piv

    def coords(self, v):
        """Coefficients ``c`` with ``sum c_i V_i = v``, or None."""
        n = self.ambient
        r = list(v)
        out = [ZERO] * self.k
        for row, c in zip(self._rows, self._piv):
            x = r[c]
            if x:
                for j in range(n):
                    y = row[j]
                    if y:
                        r[j] -= x * y
                for j in range(self.k):
                    y = row[n + j]
                    if y:
                        out[j] += x * y
        if any(r):
            return None
        return out


def det(rows):
    """Exact determinant by elimination (small square matrices)."""
    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f:
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return d
