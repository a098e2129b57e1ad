"""
Exact linear algebra over a FieldSpec.

Subspace keeps a reduced row echelon basis, so two subspaces are equal iff
their bases are equal.  Vectors are tuples of FieldElements.

SparseEchelon and ModpEchelon are incremental builders used for the large
coordinate spaces of enveloping algebras; the first works over any field with
dict-valued rows, the second over F_p with numpy matrices.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, NotContained

__all__ = [
    "Subspace",
    "span",
    "member",
    "combine",
    "kernel",
    "SparseEchelon",
    "ModpEchelon",
    "ModpSubspace",
]


def _rref(field, rows, ncols):
    """Row-reduce a list of lists in place semantics; return (rows, pivots)."""
    rows = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            inv = lead.inv()
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


class Subspace:
    """A subspace of field^ambient_dim in canonical reduced echelon form."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, vectors=()):
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis, self.pivots = _rref(field, vectors, ambient_dim)

    @classmethod
    def full(cls, field, n):
        one, zero = field.one(), field.zero()
        return cls(field, n, [tuple(one if i == j else zero for j in range(n)) for i in range(n)])

    @classmethod
    def zero(cls, field, n):
        return cls(field, n)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, len(self.basis), tuple(self.pivots)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, v):
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} vs ambient dimension {self.ambient_dim}")

    def reduce(self, v):
        """Residual of v after clearing the pivot columns; zero iff v is a member."""
        self._check(v)
        v = list(v)
        for row, c in zip(self.basis, self.pivots):
            f = v[c]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, row)]
        return tuple(v)

    def __contains__(self, v):
        return not any(self.reduce(v))

    def coordinates(self, v):
        """Coefficients of v in the echelon basis (raises NotContained)."""
        if v not in self:
            raise NotContained("vector is not in the subspace")
        return [v[c] for c in self.pivots]

    def contains(self, other):
        return all(v in self for v in other.basis)

    def __add__(self, other):
        _same(self, other)
        return Subspace(self.field, self.ambient_dim, self.basis + other.basis)

    def intersect(self, other):
        _same(self, other)
        # Zassenhaus: rows (s | s) and (t | 0); rows with zero left half span the intersection
        n = self.ambient_dim
        zero = self.field.zero()
        rows = [tuple(s) + tuple(s) for s in self.basis]
        rows += [tuple(t) + (zero,) * n for t in other.basis]
        red, piv = _rref(self.field, rows, 2 * n)
        inter = [r[n:] for r, c in zip(red, piv) if c >= n]
        return Subspace(self.field, n, inter)

    def quotient_dim(self, sub):
        _same(self, sub)
        if not self.contains(sub):
            raise NotContained("quotient_dim requires the second subspace to be contained in the first")
        return self.dim - sub.dim

    def complement_indices(self):
        """Coordinate indices that are not pivots: a complement of standard basis vectors."""
        ps = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in ps]

    def restrict(self, indices):
        """Intersection with the coordinate subspace spanned by e_i, i in indices."""
        keep = set(indices)
        zero = self.field.zero()
        one = self.field.one()
        coords = Subspace(
            self.field,
            self.ambient_dim,
            [tuple(one if j == i else zero for j in range(self.ambient_dim)) for i in keep],
        )
        return self.intersect(coords)


def _same(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def span(field, vectors, ambient_dim=None):
    vectors = [tuple(v) for v in vectors]
    if ambient_dim is None:
        if not vectors:
            raise DimensionMismatch("ambient dimension needed for an empty spanning set")
        ambient_dim = len(vectors[0])
    return Subspace(field, ambient_dim, vectors)


def member(v, S):
    return tuple(v) in S


def combine(S, T, op):
    if op == "sum":
        return S + T
    if op == "intersect":
        return S.intersect(T)
    if op == "quotient_dim":
        return S.quotient_dim(T)
    raise ValueError(f"unknown operation {op!r}")


def kernel(field, matrix, ncols):
    """Null space {x : matrix @ x = 0} where matrix is a list of rows of length ncols."""
    red, piv = _rref(field, matrix, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    zero, one = field.zero(), field.one()
    vecs = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for row, c in zip(red, piv):
            if row[f]:
                x[c] = -row[f]
        vecs.append(tuple(x))
    return Subspace(field, ncols, vecs)


class SparseEchelon:
    """Incremental echelon form with dict rows {index: FieldElement}.

    Rows are kept fully reduced against each other, so reduction of a new
    vector touches each pivot at most once.
    """

    def __init__(self, field, ambient_dim):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = {}  # pivot -> row dict with row[pivot] == 1

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        v = {i: c for i, c in v.items() if c}
        for c in [i for i in v if i in self.rows]:
            f = v.get(c)
            if not f:
                continue
            for j, x in self.rows[c].items():
                y = v.get(j)
                y = -(f * x) if y is None else y - f * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
        return v

    def add(self, v):
        """Insert v; return the new reduced row or None if v was already in the span."""
        v = self.reduce(v)
        if not v:
            return None
        piv = min(v)
        inv = v[piv].inv()
        if v[piv] != 1:
            v = {i: c * inv for i, c in v.items()}
        for q, row in self.rows.items():
            f = row.get(piv)
            if f:
                for j, x in v.items():
                    y = row.get(j)
                    y = -(f * x) if y is None else y - f * x
                    if y:
                        row[j] = y
                    else:
                        row.pop(j, None)
        self.rows[piv] = v
        return v

    def __contains__(self, v):
        return not self.reduce(v)

    def to_subspace(self):
        zero = self.field.zero()
        vecs = []
        for piv in sorted(self.rows):
            row = self.rows[piv]
            vecs.append(tuple(row.get(i, zero) for i in range(self.ambient_dim)))
        return Subspace(self.field, self.ambient_dim, vecs)


class ModpEchelon:
    """Reduced echelon basis of a subspace of F_p^n stored as a numpy matrix.

    Entries are int64 residues.  Reduction of a batch is a single integer
    matrix product against the pivot block followed by one mod-p pass; sums
    stay far below 2^63 for the dimensions used here.
    """

    CHUNK = 256

    def __init__(self, p, n):
        self.p = p
        self.n = n
        self.dtype = np.int64
        self.B = np.zeros((0, n), dtype=self.dtype)
        self.pivots = []

    @property
    def dim(self):
        return len(self.pivots)

    def _mod(self, X):
        return np.mod(X, self.p, out=X)

    def reduce(self, X):
        X = np.asarray(X, dtype=self.dtype)
        if X.ndim == 1:
            X = X[None, :]
        X = self._mod(X.copy())
        if self.pivots and len(X):
            X -= X[:, self.pivots] @ self.B
            self._mod(X)
        return X

    def add_rows(self, X):
        """Insert the rows of X; return the matrix of newly created basis rows."""
        X = self.reduce(X)
        X = X[np.any(X != 0, axis=1)]
        added = []
        for start in range(0, len(X), self.CHUNK):
            chunk = X[start:start + self.CHUNK]
            if added and len(chunk):
                chunk = self.reduce(chunk)
                chunk = chunk[np.any(chunk != 0, axis=1)]
            if not len(chunk):
                continue
            R, piv = _modp_rref(chunk, self.p)
            if not piv:
                continue
            # clear new pivot columns from the old basis
            if self.pivots:
                self.B -= self.B[:, piv] @ R
                self._mod(self.B)
            self.B = np.vstack([self.B, R])
            self.pivots.extend(piv)
            added.append(R)
        if not added:
            return np.zeros((0, self.n), dtype=self.dtype)
        return np.vstack(added)

    def contains(self, v):
        return not np.any(self.reduce(v))

    def to_subspace(self):
        order = np.argsort(self.pivots, kind="stable")
        return ModpSubspace(self.p, self.n, self.B[order].astype(np.int64), [self.pivots[i] for i in order])


def _modp_rref(X, p):
    X = X.copy()
    rows, ncols = X.shape
    pivots = []
    r = 0
    inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
    for c in range(ncols):
        if r == rows:
            break
        nz = np.nonzero(X[r:, c])[0]
        if not len(nz):
            continue
        i = r + nz[0]
        if i != r:
            X[[r, i]] = X[[i, r]]
        lead = int(X[r, c])
        if lead != 1:
            X[r] = np.mod(X[r] * inv[lead], p)
        col = X[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            X[mask] -= np.outer(col[mask], X[r])
            X[mask] = np.mod(X[mask], p)
        pivots.append(c)
        r += 1
    return X[:r], pivots


class ModpSubspace:
    """Canonical reduced echelon basis over F_p held as an int64 matrix."""

    def __init__(self, p, n, B, pivots):
        self.p = p
        self.ambient_dim = n
        self.B = B
        self.pivots = list(pivots)

    @property
    def dim(self):
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, ModpSubspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.B, other.B)
        )

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.pivots)))

    def reduce(self, v):
        v = np.mod(np.asarray(v, dtype=np.int64), self.p)
        if self.pivots:
            v = np.mod(v - v[..., self.pivots] @ self.B, self.p)
        return v

    def __contains__(self, v):
        return not np.any(self.reduce(v))

    def __repr__(self):
        return f"ModpSubspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"
