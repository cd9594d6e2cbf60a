"""Exact scalars and sparse linear algebra over Q and F_p.

Vectors are plain dicts ``index -> scalar`` with no stored zeros. Rational
scalars are ``gmpy2.mpq``; prime-field scalars are :class:`Fp`.
Every subspace is kept as a basis in reduced row-echelon form with the pivot
chosen as the first nonzero column, so results are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

import gmpy2
import sympy

Rational = type(gmpy2.mpq(0))


class FieldMismatchError(ValueError):
    pass


class DimensionError(ValueError):
    pass


@total_ordering
class Fp:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        raise FieldMismatchError(f"cannot combine F_{self.p} with {type(other).__name__}")

    def __add__(self, other):
        return Fp(self.v + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.v - self._other(other), self.p)

    def __rsub__(self, other):
        return Fp(self._other(other) - self.v, self.p)

    def __mul__(self, other):
        return Fp(self.v * self._other(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other) % self.p
        if o == 0:
            raise ZeroDivisionError("division by 0 in F_%d" % self.p)
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(self._other(other), self.p) / self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __lt__(self, other):
        return (self.p, self.v) < (other.p, other.v)

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """Q when ``prime`` is None, otherwise F_prime."""

    __slots__ = ("prime", "_zero", "_one")

    def __init__(self, prime=None):
        if prime is not None:
            prime = int(prime)
            if not sympy.isprime(prime):
                raise ValueError(f"modulus {prime} is not prime")
        self.prime = prime
        self._zero = self(0)
        self._one = self(1)

    @classmethod
    def rationals(cls):
        return cls(None)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def __call__(self, x):
        """Coerce ints, strings ``"a/b"``, Fractions or Fp values into this field."""
        if self.prime is None:
            if isinstance(x, Fp):
                raise FieldMismatchError("F_p element used over Q")
            if isinstance(x, Fraction):
                return gmpy2.mpq(x.numerator, x.denominator)
            return gmpy2.mpq(x)
        if isinstance(x, Fp):
            if x.p != self.prime:
                raise FieldMismatchError(f"F_{x.p} element used over F_{self.prime}")
            return x
        f = Fraction(x)
        return Fp(f.numerator, self.prime) / Fp(f.denominator, self.prime)

    def owns(self, x):
        if self.prime is None:
            return isinstance(x, (Rational, int)) and not isinstance(x, bool)
        return isinstance(x, Fp) and x.p == self.prime

    def order(self, x):
        """Multiplicative order of a nonzero scalar, or None if infinite."""
        x = self(x)
        if not x:
            raise ValueError("0 has no multiplicative order")
        if self.prime is None:
            if x == 1:
                return 1
            if x == -1:
                return 2
            return None
        k, y = 1, x
        while y != 1:
            y = y * x
            k += 1
        return k

    def to_json(self, x):
        if self.prime is None:
            x = self(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return int(x)

    def __eq__(self, other):
        return isinstance(other, Field) and other.prime == self.prime

    def __hash__(self):
        return hash(("Field", self.prime))

    def __repr__(self):
        return "QQ" if self.prime is None else f"GF({self.prime})"


def field_of(x):
    if isinstance(x, Fp):
        return Field(x.p)
    return Field(None)


# ---------------------------------------------------------------------------
# sparse vectors

def axpy(y, a, x):
    """y += a*x in place."""
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)
    return y


def vadd(*vs):
    out = {}
    for v in vs:
        axpy(out, 1, v)
    return out


def vscale(a, x):
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def clean(v):
    return {k: c for k, c in v.items() if c}


# ---------------------------------------------------------------------------
# row reduction

DENSE_FILL = 0.5


def _inv(x):
    # plain ints must not fall through to float division
    if isinstance(x, int):
        return gmpy2.mpq(1, x)
    return 1 / x


def _rref_sparse(rows):
    pivots = {}
    for row in rows:
        r = clean(row)
        for c in [c for c in r if c in pivots]:
            a = r.get(c)
            if a:
                axpy(r, -a, pivots[c])
        if not r:
            continue
        p = min(r)
        inv = _inv(r[p])
        r = {k: v * inv for k, v in r.items()}
        for q, other in pivots.items():
            a = other.get(p)
            if a:
                axpy(other, -a, r)
        pivots[p] = r
    return [pivots[p] for p in sorted(pivots)]


def _rref_dense(rows, ncols, zero):
    mat = []
    for row in rows:
        dense = [zero] * ncols
        for k, v in row.items():
            dense[k] = v
        mat.append(dense)
    out = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = _inv(mat[r][c])
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                a = mat[i][c]
                mat[i] = [x - a * y for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    for i in range(r):
        out.append({k: v for k, v in enumerate(mat[i]) if v})
    return out


def rref(rows, ncols, field=None):
    """Reduced row-echelon basis of the span of ``rows`` (integer-indexed dicts)."""
    rows = [r for r in rows if r]
    if not rows:
        return []
    nnz = sum(len(r) for r in rows)
    if ncols and nnz > DENSE_FILL * len(rows) * ncols and len(rows) * ncols <= 250_000:
        zero = field.zero if field is not None else field_of(next(iter(rows[0].values()))).zero
        return _rref_dense(rows, ncols, zero)
    return _rref_sparse(rows)


# ---------------------------------------------------------------------------

class ExactMatrix:
    """Sparse matrix with entries keyed by (row, col)."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows, cols, entries=None, field=None):
        self.rows = rows
        self.cols = cols
        self.entries = {k: v for k, v in (entries or {}).items() if v}
        for (i, j) in self.entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionError(f"entry ({i}, {j}) outside {rows}x{cols}")
        if field is None and self.entries:
            field = field_of(next(iter(self.entries.values())))
        self.field = field or Field()

    @classmethod
    def from_rows(cls, rows, field=None):
        field = field or Field()
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        ent = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise DimensionError("ragged rows")
            for j, v in enumerate(row):
                v = field(v)
                if v:
                    ent[i, j] = v
        return cls(nr, nc, ent, field)

    @classmethod
    def from_columns(cls, nrows, columns, field=None):
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    ent[i, j] = v
        return cls(nrows, len(columns), ent, field)

    @classmethod
    def identity(cls, n, field=None):
        field = field or Field()
        return cls(n, n, {(i, i): field.one for i in range(n)}, field)

    @classmethod
    def zero(cls, rows, cols, field=None):
        return cls(rows, cols, {}, field)

    def __getitem__(self, ij):
        return self.entries.get(ij, self.field.zero)

    def check_field(self):
        for v in self.entries.values():
            if not self.field.owns(v):
                raise FieldMismatchError(f"entry {v!r} not in {self.field!r}")

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column_dicts(self):
        out = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    @property
    def T(self):
        return ExactMatrix(self.cols, self.rows,
                           {(j, i): v for (i, j), v in self.entries.items()}, self.field)

    def apply(self, vec):
        out = {}
        cols = self.column_dicts()
        for j, a in vec.items():
            if j >= self.cols:
                raise DimensionError("vector longer than matrix width")
            axpy(out, a, cols[j])
        return out

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [self.apply(c) for c in other.column_dicts()]
        return ExactMatrix.from_columns(self.rows, cols, self.field)

    def density(self):
        if not self.rows or not self.cols:
            return 0.0
        return len(self.entries) / (self.rows * self.cols)

    def to_lists(self):
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, {self.field!r})"


class Subspace:
    """Subspace of K^ambient spanned by RREF rows."""

    __slots__ = ("ambient", "basis", "field")

    def __init__(self, ambient, basis, field=None):
        self.ambient = ambient
        self.basis = tuple(basis)
        self.field = field or Field()

    @classmethod
    def span(cls, ambient, vectors, field=None):
        vectors = list(vectors)
        for v in vectors:
            if any(not (0 <= k < ambient) for k in v):
                raise DimensionError("vector index outside ambient space")
        return cls(ambient, rref(vectors, ambient, field), field)

    @classmethod
    def full(cls, ambient, field=None):
        field = field or Field()
        return cls(ambient, [{i: field.one} for i in range(ambient)], field)

    @classmethod
    def zero(cls, ambient, field=None):
        return cls(ambient, [], field)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def pivots(self):
        return [min(r) for r in self.basis]

    def reduce(self, vec):
        """Residue of ``vec`` modulo the subspace (supported off the pivots)."""
        r = dict(vec)
        for row in self.basis:
            p = min(row)
            a = r.get(p)
            if a:
                axpy(r, -a, row)
        return r

    def contains(self, vec):
        return not self.reduce(vec)

    def __contains__(self, vec):
        return self.contains(vec)

    def coordinates(self, vec):
        """Coefficients of ``vec`` in the RREF basis; raises if not a member."""
        if not self.contains(vec):
            raise ValueError("vector not in subspace")
        return [vec.get(min(row), 0) for row in self.basis]

    def __add__(self, other):
        _same_ambient(self, other)
        return Subspace.span(self.ambient, list(self.basis) + list(other.basis), self.field)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __le__(self, other):
        _same_ambient(self, other)
        return all(other.contains(v) for v in self.basis)

    def as_matrix(self):
        ent = {(i, j): v for i, row in enumerate(self.basis) for j, v in row.items()}
        return ExactMatrix(len(self.basis), self.ambient, ent, self.field)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def _same_ambient(a, b):
    if a.ambient != b.ambient:
        raise DimensionError(f"ambient {a.ambient} vs {b.ambient}")


def rank(m):
    m.check_field()
    return len(rref(m.row_dicts(), m.cols, m.field))


def kernel(m):
    """Right null space of ``m``."""
    m.check_field()
    rows = rref(m.row_dicts(), m.cols, m.field)
    piv = {min(r): r for r in rows}
    one = m.field.one
    vecs = []
    for f in range(m.cols):
        if f in piv:
            continue
        v = {f: one}
        for p, r in piv.items():
            a = r.get(f)
            if a:
                v[p] = -a
        vecs.append(v)
    return Subspace(m.cols, rref(vecs, m.cols, m.field), m.field)


def image(m):
    """Column space of ``m``."""
    m.check_field()
    return Subspace(m.rows, rref(m.column_dicts(), m.rows, m.field), m.field)


def row_space(m):
    m.check_field()
    return Subspace(m.cols, rref(m.row_dicts(), m.cols, m.field), m.field)


def intersect(a, b):
    _same_ambient(a, b)
    if not a.basis or not b.basis:
        return Subspace.zero(a.ambient, a.field)
    # x in a with zero residue modulo b
    residues = [b.reduce(v) for v in a.basis]
    comb = kernel(ExactMatrix.from_columns(a.ambient, residues, a.field))
    vecs = []
    for c in comb.basis:
        v = {}
        for i, coef in c.items():
            axpy(v, coef, a.basis[i])
        vecs.append(v)
    return Subspace(a.ambient, rref(vecs, a.ambient, a.field), a.field)


def preimage(f, s):
    """{x : f(x) in s}."""
    if f.rows != s.ambient:
        raise DimensionError(f"map lands in dim {f.rows}, subspace lives in {s.ambient}")
    residues = [s.reduce(col) for col in f.column_dicts()]
    return kernel(ExactMatrix.from_columns(f.rows, residues, f.field))
