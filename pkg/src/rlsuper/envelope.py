"""
The restricted enveloping algebra u(L) in PBW normal form.

A PBW monomial is an exponent tuple over the ordered basis of L with even
exponents in [0, p) and odd exponents in {0, 1}.  Products are straightened
by right multiplication with one generator at a time:

* out-of-order generators are transposed, ``e_j e_g = (-1)^{|j||g|} e_g e_j + (e_j, e_g)``;
* an even generator reaching exponent p is replaced by its p-map image;
* an odd square is replaced by ``e^2 = 1/2 (e, e)``.

Every rewrite either sorts the word or lowers its degree, so the recursion
terminates.  Results are memoised per (monomial, generator).

Subspaces of u(L) are handled by one of two backends: ``generic`` keeps
sparse echelon rows of FieldElements, ``modp`` keeps numpy matrices over F_p.
"""

from __future__ import annotations

import itertools

import numpy as np
import scipy.sparse as sp

from .errors import BudgetExceeded, InvalidParameter, NotAnIdeal, NotHomogeneous, ParityError
from .exactfield import FieldElement
from .linalg import ModpEchelon, SparseEchelon
from .liesuper import LieElement, coordinate_solver, rebase

__all__ = [
    "Envelope",
    "UElement",
    "USubspace",
    "envelope",
    "pbw_dimension",
    "multiply",
    "power",
    "super_commutator",
    "ideal_generated",
    "commutator_ideal",
    "augmentation_ideal",
    "ideal_power_chain",
    "nil_index_probe",
    "nil_index",
    "RegularRepresentation",
    "regular_representation",
]


def envelope(L, backend=None):
    """The (cached) Envelope of L; ``backend`` overrides the subspace backend."""
    if L._envelope is None:
        L._envelope = Envelope(L)
    env = L._envelope
    if backend is not None and backend != env.backend:
        other = Envelope(L, backend=backend)
        other._cache = env._cache
        return other
    return env


def pbw_dimension(L):
    return L.field.p ** L.n * 2 ** L.m


class UElement:
    """Sparse linear combination of PBW monomials (no zero coefficients stored)."""

    __slots__ = ("env", "terms")

    def __init__(self, env, terms):
        self.env = env
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.env.scalar(other)
        return UElement(self.env, _add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return UElement(self.env, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.env.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.env.field(other)
            if not c:
                return self.env.zero()
            return UElement(self.env, {m: v * c for m, v in self.terms.items()})
        if isinstance(other, UElement):
            return self.env.multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self * other
        return NotImplemented

    def __pow__(self, k):
        return self.env.power(self, k)

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.env.scalar(other)
        if not isinstance(other, UElement):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms))

    @property
    def parity(self):
        """Odd degree mod 2 if homogeneous, else None."""
        pars = {self.env.mono_parity(m) for m in self.terms}
        if len(pars) > 1:
            return None
        return pars.pop() if pars else 0

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (sum(m), m)):
            c = self.terms[m]
            name = self.env.mono_str(m)
            if name == "1":
                parts.append(str(c) if "+" not in str(c) else f"({c})")
            elif c == 1:
                parts.append(name)
            else:
                s = str(c)
                parts.append(f"({s})*{name}" if "+" in s and "/" not in s else f"{s}*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"UElement({self})"


def _add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        if v is None:
            out[m] = c
        else:
            v = v + c
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def _axpy(acc, scale, terms):
    """acc += scale * terms, in place."""
    for m, c in terms.items():
        v = acc.get(m)
        d = c * scale if scale != 1 else c
        if v is None:
            if d:
                acc[m] = d
        else:
            v = v + d
            if v:
                acc[m] = v
            else:
                del acc[m]


class Envelope:
    """PBW basis and straightening multiplication for u(L)."""

    PAIR_CACHE_LIMIT = 2000

    def __init__(self, L, backend=None):
        self.L = L
        self.field = L.field
        self.p = L.field.p
        self.dim = L.dim
        self.parity = L.parity
        self.backend = backend or ("modp" if L.field.is_finite else "generic")
        if self.backend == "modp" and not L.field.is_finite:
            raise InvalidParameter("the modp backend needs a finite base field")
        self._cache = {"gen": {}, "pair": {}, "maps": {}}
        self._monomials = None
        self._half = L.field(2).inv()
        self._one = L.field.one()

    # -- PBW basis -------------------------------------------------------------

    @property
    def pbw_dimension(self):
        return pbw_dimension(self.L)

    @property
    def monomials(self):
        """All PBW monomials in graded lexicographic order."""
        if self._monomials is None:
            ranges = [range(self.p) if q == 0 else range(2) for q in self.parity]
            monos = sorted(itertools.product(*ranges), key=lambda m: (sum(m), m))
            self._monomials = monos
            self._index = {m: i for i, m in enumerate(monos)}
        return self._monomials

    @property
    def index(self):
        self.monomials
        return self._index

    def mono_parity(self, m):
        return sum(e for e, q in zip(m, self.parity) if q) % 2

    def mono_str(self, m):
        parts = []
        for name, e in zip(self.L.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- elements --------------------------------------------------------------

    def zero(self):
        return UElement(self, {})

    def one(self):
        return UElement(self, {(0,) * self.dim: self._one})

    def scalar(self, c):
        c = self.field(c)
        return UElement(self, {(0,) * self.dim: c} if c else {})

    def gen(self, i):
        if isinstance(i, str):
            i = self.L.index(i)
        m = [0] * self.dim
        m[i] = 1
        return UElement(self, {tuple(m): self._one})

    def __getitem__(self, name):
        return self.gen(name)

    def monomial(self, exps):
        exps = tuple(exps)
        if exps not in self.index:
            raise InvalidParameter(f"{exps} is not a PBW monomial")
        return UElement(self, {exps: self._one})

    def embed(self, x):
        """The image of a LieElement under L -> u(L)."""
        terms = {}
        for i, c in x.nonzero():
            m = [0] * self.dim
            m[i] = 1
            terms[tuple(m)] = c
        return UElement(self, terms)

    def from_vector(self, vec):
        monos = self.monomials
        return UElement(self, {monos[i]: c for i, c in vec.items() if c})

    def to_vector(self, u):
        idx = self.index
        return {idx[m]: c for m, c in u.terms.items()}

    # -- straightening ---------------------------------------------------------

    def _mul_mono_gen(self, mono, g):
        cache = self._cache["gen"]
        key = (mono, g)
        hit = cache.get(key)
        if hit is not None:
            return hit
        result = self._straighten(mono, g)
        cache[key] = result
        return result

    def _straighten(self, mono, g):
        L = self.L
        j = -1
        for i in range(self.dim - 1, -1, -1):
            if mono[i]:
                j = i
                break
        if g > j:
            m = list(mono)
            m[g] = 1
            return {tuple(m): self._one}
        if g == j:
            e = mono[g] + 1
            if self.parity[g] == 0 and e < self.p:
                m = list(mono)
                m[g] = e
                return {tuple(m): self._one}
            m = list(mono)
            m[g] = 0
            base = tuple(m)
            if self.parity[g] == 0:
                image = L._sparse_pmap[g]
                scale = self._one
            else:
                image = L._sparse[g][g]
                scale = self._half
            acc = {}
            for k, c in image:
                _axpy(acc, c * scale, self._mul_mono_gen(base, k))
            return acc
        # g < j: mono = rest * e_j, and e_j e_g = sign e_g e_j + (e_j, e_g)
        m = list(mono)
        m[j] -= 1
        rest = tuple(m)
        sign = -1 if self.parity[j] and self.parity[g] else 1
        acc = {}
        for mm, c in self._mul_mono_gen(rest, g).items():
            _axpy(acc, c if sign == 1 else -c, self._mul_mono_gen(mm, j))
        for k, c in L._sparse[j][g]:
            _axpy(acc, c, self._mul_mono_gen(rest, k))
        return acc

    def _mul_terms_gen(self, terms, g):
        acc = {}
        for m, c in terms.items():
            _axpy(acc, c, self._mul_mono_gen(m, g))
        return acc

    def _factors(self, mono):
        out = []
        for i, e in enumerate(mono):
            out.extend([i] * e)
        return out

    def _mul_mono_mono(self, a, b):
        cache = self._cache["pair"]
        key = (a, b)
        hit = cache.get(key)
        if hit is not None:
            return hit
        cur = {a: self._one}
        for g in self._factors(b):
            cur = self._mul_terms_gen(cur, g)
        if len(cache) < self.PAIR_CACHE_LIMIT * self.PAIR_CACHE_LIMIT // 16:
            cache[key] = cur
        return cur

    def multiply(self, u, v):
        if not u.terms or not v.terms:
            return self.zero()
        acc = {}
        for a, ca in u.terms.items():
            for b, cb in v.terms.items():
                _axpy(acc, ca * cb, self._mul_mono_mono(a, b))
        return UElement(self, acc)

    def power(self, u, k):
        if k < 0:
            raise InvalidParameter("negative power")
        result = self.one()
        for _ in range(k):
            result = self.multiply(result, u)
        return result

    def lie_commutator(self, u, v):
        return self.multiply(u, v) - self.multiply(v, u)

    def super_commutator(self, u, v):
        pu, pv = u.parity, v.parity
        if pu is None or pv is None:
            raise ParityError("super commutator needs homogeneous arguments")
        sign = -1 if pu and pv else 1
        return self.multiply(u, v) - self.multiply(v, u) * sign

    def is_central(self, u):
        return all(self.lie_commutator(u, self.gen(i)).is_zero() for i in range(self.dim))

    # -- grading ---------------------------------------------------------------

    @property
    def grading(self):
        """Reduced integer row basis of the relations g_k = g_i + g_j and g_k = p g_i.

        Basis element e_i has degree class e_i + Lambda in Z^d / Lambda; every
        rewrite rule of the straightening preserves the class.
        """
        g = self._cache.get("grading")
        if g is None:
            rels = []
            for i in range(self.dim):
                for j in range(i, self.dim):
                    for k, _ in self.L._sparse[i][j]:
                        r = [0] * self.dim
                        r[i] += 1
                        r[j] += 1
                        r[k] -= 1
                        rels.append(r)
            for i, entries in self.L._sparse_pmap.items():
                for k, _ in entries:
                    r = [0] * self.dim
                    r[i] += self.p
                    r[k] -= 1
                    rels.append(r)
            g = _hnf(rels, self.dim)
            self._cache["grading"] = g
        return g

    def degree_class(self, vec):
        return _hnf_reduce(self.grading, vec)

    def mono_degree(self, m):
        return self.degree_class(m)

    def element_degree(self, u):
        """Degree class of a homogeneous element (None if mixed or zero)."""
        degs = {self.mono_degree(m) for m in u.terms}
        return degs.pop() if len(degs) == 1 else None

    def shift(self, deg, delta):
        return self.degree_class([a + b for a, b in zip(deg, delta)])

    @property
    def degree_columns(self):
        """Map degree class -> numpy array of PBW indices in that class."""
        cols = self._cache.get("degcols")
        if cols is None:
            groups = {}
            for i, m in enumerate(self.monomials):
                groups.setdefault(self.mono_degree(m), []).append(i)
            cols = {d: np.array(ix, dtype=np.int64) for d, ix in groups.items()}
            self._cache["degcols"] = cols
        return cols

    # -- linear maps on coordinates ------------------------------------------

    def op(self, side, g):
        """The operator v -> v*e_g (side='right') or v -> e_g*v on coordinates."""
        unit = [0] * self.dim
        unit[g] = 1
        shift = self.degree_class(unit)
        if side == "right":
            return _Op(self, ("R", g), lambda: self.right_rows(g), shift)
        return _Op(self, ("L", g), lambda: self.left_rows(g), shift)

    def element_op(self, u, side="right"):
        deg = self.element_degree(u)
        return _Op(self, None, lambda: self.element_rows(u, side), deg)

    def generator_ops(self, sides=("left", "right"), generators=None):
        gens = range(self.dim) if generators is None else generators
        return [self.op(side, g) for side in sides for g in gens]

    def right_rows(self, g):
        """Row i is the coordinate vector of monomial_i * e_g."""
        key = ("R", g)
        rows = self._cache["maps"].get(key)
        if rows is None:
            idx = self.index
            rows = [
                {idx[m]: c for m, c in self._mul_mono_gen(mono, g).items()}
                for mono in self.monomials
            ]
            self._cache["maps"][key] = rows
        return rows

    def left_rows(self, g):
        """Row i is the coordinate vector of e_g * monomial_i."""
        key = ("L", g)
        rows = self._cache["maps"].get(key)
        if rows is None:
            idx = self.index
            start = [0] * self.dim
            start[g] = 1
            start = tuple(start)
            rows = [
                {idx[m]: c for m, c in self._mul_mono_mono(start, mono).items()}
                for mono in self.monomials
            ]
            self._cache["maps"][key] = rows
        return rows

    def element_rows(self, u, side="right"):
        """Rows of the operator v -> v*u (side='right') or v -> u*v."""
        idx = self.index
        rows = []
        for mono in self.monomials:
            b = UElement(self, {mono: self._one})
            w = self.multiply(b, u) if side == "right" else self.multiply(u, b)
            rows.append({idx[m]: c for m, c in w.terms.items()})
        return rows

    def sparse_matrix(self, rows):
        """CSR matrix of a row-map with entries in [0, p); finite fields only."""
        N = len(rows)
        data, ri, ci = [], [], []
        for i, row in enumerate(rows):
            for j, c in row.items():
                ri.append(i)
                ci.append(j)
                data.append(int(c))
        return sp.csr_matrix((np.array(data, dtype=np.int64), (ri, ci)), shape=(N, N))

    # -- subspaces -------------------------------------------------------------

    def _new_space(self, graded=True):
        if self.backend == "modp":
            return _ModpSpace(self, graded)
        return _GenericSpace(self)

    def _homogeneous(self, vectors):
        return all(self.element_degree(u) is not None for u in vectors if u.terms)

    def span(self, elements):
        elements = list(elements)
        space = self._new_space(self._homogeneous(elements))
        space.add([self.to_vector(u) for u in elements])
        return USubspace(self, space)

    def closure(self, start, ops=None):
        """Smallest subspace containing ``start`` and stable under the operators
        (default: left and right multiplication by every basis element of L)."""
        start = list(start)
        ops = self.generator_ops() if ops is None else ops
        graded = self._homogeneous(start) and all(op.shift is not None for op in ops)
        space = self._new_space(graded)
        new = space.add([self.to_vector(u) for u in start])
        while space.pending(new):
            new = space.add_images(new, ops)
        return USubspace(self, space)


class _Op:
    """A linear operator on u(L) coordinates that shifts degree classes by ``shift``."""

    def __init__(self, env, key, rows_fn, shift):
        self.env = env
        self.key = key
        self._rows_fn = rows_fn
        self._rows = None
        self._matrix = None
        self._sub = {}
        self.shift = shift

    @property
    def rows(self):
        if self._rows is None:
            self._rows = self._rows_fn()
        return self._rows

    @property
    def matrix(self):
        if self._matrix is None:
            cache = self.env._cache["maps"]
            mkey = ("M", self.key)
            M = cache.get(mkey) if self.key is not None else None
            if M is None:
                M = self.env.sparse_matrix(self.rows)
                if self.key is not None:
                    cache[mkey] = M
            self._matrix = M
        return self._matrix

    def block(self, deg):
        """(target class, CSR block) of the operator restricted to class ``deg``."""
        hit = self._sub.get(deg)
        if hit is None:
            cache = self.env._cache["maps"]
            ckey = ("B", self.key, deg)
            hit = cache.get(ckey) if self.key is not None else None
            if hit is None:
                cols = self.env.degree_columns
                target = self.env.shift(deg, self.shift)
                tcols = cols.get(target)
                if tcols is None:
                    hit = (target, None)
                else:
                    hit = (target, self.matrix[cols[deg]][:, tcols].tocsr())
                if self.key is not None:
                    cache[ckey] = hit
            self._sub[deg] = hit
        return hit

    def apply_dict(self, v):
        rows = self.rows
        acc = {}
        for i, c in v.items():
            _axpy(acc, c, rows[i])
        return acc


def _hnf(rows, n):
    """Row Hermite normal form of an integer matrix: list of (pivot, row)."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    for c in range(n):
        live = [r for r in rows if r[c]]
        rest = [r for r in rows if not r[c]]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[c] // piv[c]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[c] else rest).append(r)
            live = nxt
        piv = live[0]
        if piv[c] < 0:
            piv = [-a for a in piv]
        for _, prev in out:
            q = prev[c] // piv[c]
            if q:
                prev[:] = [a - q * b for a, b in zip(prev, piv)]
        out.append((c, piv))
        rows = [r for r in rest if any(r)]
    return out


def _hnf_reduce(hnf, vec):
    v = list(vec)
    for c, row in hnf:
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


class _GenericSpace:
    """Echelon rows as dicts over any field."""

    def __init__(self, env):
        self.env = env
        self.ech = SparseEchelon(env.field, env.pbw_dimension)

    @property
    def dim(self):
        return self.ech.dim

    def add(self, vectors):
        out = []
        for v in vectors:
            r = self.ech.add(v)
            if r is not None:
                out.append(dict(r))
        return out

    def pending(self, new):
        return bool(new)

    def add_images(self, new, ops):
        images = []
        for v in new:
            for op in ops:
                w = op.apply_dict(v)
                if w:
                    images.append(w)
        return self.add(images)

    def images_of_basis(self, ops):
        return [w for v in self.basis_vectors() for op in ops for w in [op.apply_dict(v)] if w]

    def stable_under(self, ops):
        return all(self.contains_vec(w) for w in self.images_of_basis(ops))

    def product_into(self, target, ops):
        return target.add(self.images_of_basis(ops))

    def basis_vectors(self):
        return [self.ech.rows[p] for p in sorted(self.ech.rows)]

    def contains_vec(self, v):
        return v in self.ech

    def key(self):
        return tuple((p, tuple(sorted(self.ech.rows[p].items(), key=lambda t: t[0]))) for p in sorted(self.ech.rows))


class _ModpSpace:
    """Echelon matrices over F_p, one per degree class when ``graded``.

    A subspace spanned by homogeneous vectors is the direct sum of its
    intersections with the degree classes, so each class is reduced
    independently; images under degree-shifting operators stay homogeneous.
    """

    BATCH = 256

    def __init__(self, env, graded=True):
        self.env = env
        self.N = env.pbw_dimension
        self.graded = graded
        if graded:
            self.cols = env.degree_columns
        else:
            self.cols = {None: np.arange(self.N, dtype=np.int64)}
        self.label = np.empty(self.N, dtype=object)
        for d, ix in self.cols.items():
            for i in ix:
                self.label[i] = d
        self.comps = {}

    @property
    def dim(self):
        return sum(e.dim for e in self.comps.values())

    def _comp(self, d):
        e = self.comps.get(d)
        if e is None:
            e = self.comps[d] = ModpEchelon(self.env.p, len(self.cols[d]))
        return e

    def _split(self, vectors):
        """Group dict vectors into dense rows per degree class."""
        groups = {}
        for v in vectors:
            parts = {}
            for i, c in v.items():
                c = int(c)
                if c:
                    parts.setdefault(self.label[i], []).append((i, c))
            for d, entries in parts.items():
                groups.setdefault(d, []).append(entries)
        out = {}
        for d, rows in groups.items():
            pos = {int(g): k for k, g in enumerate(self.cols[d])}
            X = np.zeros((len(rows), len(pos)), dtype=self._comp(d).dtype)
            for r, entries in enumerate(rows):
                for i, c in entries:
                    X[r, pos[i]] = c
            out[d] = X
        return out

    def add(self, vectors):
        return self._add_blocks(self._split(vectors).items())

    def _add_blocks(self, blocks):
        new = []
        for d, X in blocks:
            if len(X):
                a = self._comp(d).add_rows(X)
                if len(a):
                    new.append((d, a))
        return new

    def pending(self, new):
        return bool(new)

    def _images(self, d, W, ops):
        p = self.env.p
        for op in ops:
            if self.graded:
                target, M = op.block(d)
            else:
                target, M = None, op.matrix
            if M is None:
                continue
            for start in range(0, len(W), self.BATCH):
                Y = np.asarray(W[start:start + self.BATCH] @ M)
                Y = np.mod(Y, p).astype(self._comp(target).dtype, copy=False)
                yield target, Y

    def add_images(self, new, ops):
        out = []
        for d, W in new:
            out.extend(self._add_blocks(self._images(d, W, ops)))
        return out

    def stable_under(self, ops):
        for d, ech in list(self.comps.items()):
            for target, Y in self._images(d, ech.B, ops):
                if target not in self.comps or not self.comps[target].contains(Y):
                    if np.any(Y):
                        return False
        return True

    def product_into(self, target, ops):
        new = []
        for d, ech in self.comps.items():
            new.extend(target._add_blocks(self._images(d, ech.B, ops)))
        return new

    def basis_vectors(self):
        F = self.env.field
        out = []
        for d in self._order():
            sub = self.comps[d].to_subspace()
            cols = self.cols[d]
            for row in sub.B:
                nz = np.nonzero(row)[0]
                out.append({int(cols[i]): F.const(int(row[i])) for i in nz})
        return out

    def _order(self):
        return sorted((d for d in self.comps if self.comps[d].dim), key=lambda d: int(self.cols[d][0]))

    def contains_vec(self, v):
        for d, X in self._split([v]).items():
            if d not in self.comps or not self.comps[d].contains(X):
                return False
        return True

    def key(self):
        if not self.graded:
            sub = self.comps[None].to_subspace() if None in self.comps else None
            return () if sub is None or not sub.dim else (tuple(sub.pivots), sub.B.tobytes())
        # canonical form independent of grading: compare global echelon
        return _global_key(self)


def _global_key(space):
    ech = ModpEchelon(space.env.p, space.N)
    vecs = space.basis_vectors()
    if vecs:
        X = np.zeros((len(vecs), space.N), dtype=ech.dtype)
        for r, v in enumerate(vecs):
            for i, c in v.items():
                X[r, i] = int(c)
        ech.add_rows(X)
    sub = ech.to_subspace()
    return (tuple(sub.pivots), sub.B.tobytes())


class USubspace:
    """A subspace of u(L) in canonical echelon form, over either backend."""

    def __init__(self, env, space, generators=None):
        self.env = env
        self.space = space
        self.generators = generators

    @property
    def dim(self):
        return self.space.dim

    def __len__(self):
        return self.dim

    def basis_vectors(self):
        return self.space.basis_vectors()

    def elements(self):
        return [self.env.from_vector(v) for v in self.basis_vectors()]

    def __contains__(self, u):
        return self.space.contains_vec(self.env.to_vector(u))

    def contains(self, other):
        return all(u in self for u in other.elements())

    def __eq__(self, other):
        if not isinstance(other, USubspace):
            return NotImplemented
        if self.dim != other.dim:
            return False
        if type(self.space) is _ModpSpace and type(other.space) is _ModpSpace:
            return _global_key(self.space) == _global_key(other.space)
        return self.contains(other)

    def __hash__(self):
        return hash(self.dim)

    def is_two_sided_ideal(self):
        return self.space.stable_under(self.env.generator_ops())

    def random_element(self, rng, terms=3):
        basis = self.basis_vectors()
        if not basis:
            return self.env.zero()
        F = self.env.field
        acc = {}
        for _ in range(terms):
            v = basis[rng.randrange(len(basis))]
            c = F.const(rng.randrange(1, self.env.p)) if F.is_finite else F.random(rng, degree=1)
            if c:
                _axpy(acc, c, v)
        return self.env.from_vector(acc)

    def __repr__(self):
        return f"USubspace(dim={self.dim}, ambient={self.env.pbw_dimension}, backend={self.env.backend})"


# -- module-level operations ---------------------------------------------------

def multiply(L, u, v):
    return envelope(L).multiply(u, v)


def power(L, u, k):
    return envelope(L).power(u, k)


def super_commutator(L, u, v, kind="lie"):
    env = envelope(L)
    if kind == "lie":
        return env.lie_commutator(u, v)
    if kind == "super":
        return env.super_commutator(u, v)
    raise InvalidParameter(f"unknown commutator kind {kind!r}")


def ideal_generated(L, generators, sided="two_sided", backend=None):
    """Smallest two-sided ideal containing the generators."""
    if sided != "two_sided":
        raise InvalidParameter("only two-sided ideals are supported")
    env = envelope(L, backend)
    gens = [g for g in generators if g.terms]
    I = env.closure(gens)
    I.generators = gens
    return I


def commutator_generators(L, backend=None):
    env = envelope(L, backend)
    out = []
    for i in range(env.dim):
        for j in range(i + 1, env.dim):
            c = env.lie_commutator(env.gen(i), env.gen(j))
            if c:
                out.append(c)
    return out


def commutator_ideal(L, method="generators", backend=None):
    """[u(L), u(L)] u(L), generated by [e_i, e_j] or by all PBW basis commutators."""
    env = envelope(L, backend)
    if method == "generators":
        gens = commutator_generators(L, backend)
    elif method == "pbw_pairs":
        monos = [env.monomial(m) for m in env.monomials]
        gens = []
        for a, b in itertools.combinations(monos, 2):
            c = env.lie_commutator(a, b)
            if c:
                gens.append(c)
    else:
        raise InvalidParameter(f"unknown method {method!r}")
    return ideal_generated(L, gens, backend=backend)


def augmentation_ideal(L, backend=None):
    """omega(L): the ideal generated by L."""
    env = envelope(L, backend)
    return ideal_generated(L, [env.gen(i) for i in range(env.dim)], backend=backend)


class ChainResult:
    def __init__(self, chain, verdict, index):
        self.chain = chain
        self.verdict = verdict
        self.index = index

    @property
    def dims(self):
        return [c.dim for c in self.chain]

    @property
    def nilpotent(self):
        return self.verdict == "nilpotent"

    def __iter__(self):
        return iter((self.chain, (self.verdict, self.index)))

    def __repr__(self):
        return f"ChainResult({self.verdict}, index={self.index}, dims={self.dims})"


def ideal_power_chain(L, I, check=True):
    """I, I^2, I^3, ... until 0 (nilpotent, with index) or a nonzero fixed point.

    With known ideal generators C, I^{k+1} = I^k C u(L) is the right ideal
    generated by the products v*c; otherwise I^{k+1} = span(I^k * I).
    """
    env = I.env
    if check and not I.is_two_sided_ideal():
        raise NotAnIdeal("the subspace is not multiplication-stable")
    chain = [I]
    if I.dim == 0:
        return ChainResult(chain, "nilpotent", 1)
    use_gens = I.generators is not None
    factors = I.generators if use_gens else I.elements()
    ops = [env.element_op(f, "right") for f in factors]
    graded = all(op.shift is not None for op in ops) and getattr(I.space, "graded", False)
    right = env.generator_ops(sides=("right",))
    while True:
        cur = chain[-1]
        space = env._new_space(graded)
        new = cur.space.product_into(space, ops)
        if use_gens:
            while space.pending(new):
                new = space.add_images(new, right)
        nxt = USubspace(env, space)
        if nxt.dim == 0:
            chain.append(nxt)
            return ChainResult(chain, "nilpotent", len(chain))
        if nxt.dim == cur.dim:
            return ChainResult(chain, "stabilized_nonzero", None)
        chain.append(nxt)


def _nil_index(env, u):
    """Least N with u^N = 0, or None when u is not nilpotent.

    For nilpotent u of index N the powers u, ..., u^(N-1) are linearly
    independent, so u is nilpotent iff the first power that depends on the
    earlier ones is zero.
    """
    if u.is_zero():
        return 1
    ech = SparseEchelon(env.field, env.pbw_dimension)
    cur = u
    k = 1
    while True:
        if cur.is_zero():
            return k
        if ech.add(env.to_vector(cur)) is None:
            return None
        cur = env.multiply(cur, u)
        k += 1


def nil_index(L, u):
    """Least N with u^N = 0 in u(L), or None if u is not nilpotent."""
    return _nil_index(u.env, u)


class NilProbe:
    def __init__(self, index, complete, witness, examined, non_nilpotent=None):
        self.index = index
        self.complete = complete
        self.witness = witness
        self.examined = examined
        self.non_nilpotent = non_nilpotent

    def __iter__(self):
        return iter((self.index, self.complete))

    def __repr__(self):
        return f"NilProbe(index={self.index}, complete={self.complete}, examined={self.examined})"


def nil_index_probe(L, I, mode=("sampled", 50, 0), budget=5000, extra=()):
    """Least N with u^N = 0 over enumerated or sampled u in I, with a witness of index N."""
    env = I.env
    if mode == "exhaustive":
        if not env.field.is_finite:
            raise BudgetExceeded(f"cannot enumerate an ideal over {env.field}")
        if env.p ** I.dim > budget:
            raise BudgetExceeded(f"{env.p}^{I.dim} elements exceed the budget {budget}")
        basis = I.elements()
        scalars = env.field.elements()
        candidates = []
        for combo in itertools.product(scalars, repeat=len(basis)):
            acc = env.zero()
            for c, b in zip(combo, basis):
                if c:
                    acc = acc + b * c
            candidates.append(acc)
        complete = True
    else:
        _, count, seed = mode
        rng = L.rng(seed, "nil_index_probe")
        candidates = list(extra)
        candidates += list(I.generators or [])
        candidates += I.elements()[:count]
        candidates += ideal_samples(env, I, rng, count)
        complete = False
    best, witness = 1, None
    for u in candidates:
        k = _nil_index(env, u)
        if k is None:
            return NilProbe(None, complete, None, len(candidates), non_nilpotent=u)
        if k > best:
            best, witness = k, u
    return NilProbe(best, complete, witness, len(candidates))


def ideal_samples(env, I, rng, count):
    """Seeded elements a*c*b of I, c an ideal generator (or basis vector), a and b sparse."""
    gens = list(I.generators or []) or I.elements()
    if not gens:
        return []
    monos = env.monomials
    out = []
    F = env.field
    for _ in range(count):
        c = gens[rng.randrange(len(gens))]
        a = env.zero()
        b = env.zero()
        for _ in range(rng.randint(1, 2)):
            a = a + env.monomial(monos[rng.randrange(len(monos))]) * _small_scalar(F, rng)
            b = b + env.monomial(monos[rng.randrange(len(monos))]) * _small_scalar(F, rng)
        if rng.random() < 0.3:
            a = env.one()
        out.append(env.multiply(env.multiply(a, c), b))
    return out


def _small_scalar(F, rng):
    c = F.const(rng.randrange(1, F.p))
    if F.variables and rng.random() < 0.5:
        c = c * F.var(F.variables[rng.randrange(F.k)])
    return c


class RegularRepresentation:
    """u(L) acting on itself as a free right u(A)-module.

    The basis of L is replaced by (complement basis vectors, basis of A) so that
    every PBW monomial factors as c*d with c a complement monomial and d a PBW
    monomial of u(A).  ``matrix(u)`` has entry (i, j) equal to the u(A)
    coordinate of c_i in u*c_j.
    """

    def __init__(self, L, A):
        if A.ambient_dim != L.dim:
            raise InvalidParameter("A lives in a different space")
        if not L.is_homogeneous(A):
            raise NotHomogeneous("A is not homogeneous")
        bad = L.ideal_violations(A)
        if bad:
            raise NotAnIdeal(f"A is not a restricted ideal: {bad[0][0]} closure fails")
        self.L = L
        comp = A.complement_indices()
        comp_vecs = [L.basis_element(i) for i in comp]
        a_vecs = [LieElement(L, v) for v in A.basis]
        comp_names = [L.names[i] for i in comp]
        a_names = [f"a{k}" for k in range(len(a_vecs))]
        self.k = len(comp_vecs)
        self.Lt = rebase(L, comp_vecs + a_vecs, comp_names + a_names)
        self.A = rebase(L, a_vecs, a_names) if a_vecs else None
        self.env = envelope(L, "generic")
        self.envt = envelope(self.Lt, "generic")
        self.envA = envelope(self.A, "generic") if self.A is not None else None
        solve = coordinate_solver(L.field, [v.coords for v in comp_vecs + a_vecs])
        self._to_t = [self.envt.embed(LieElement(self.Lt, solve(L.basis_element(i).coords))) for i in range(L.dim)]
        self._from_t = [self.env.embed(v) for v in comp_vecs + a_vecs]
        self.columns = [m for m in self.envt.monomials if not any(m[self.k:])]
        self.rank = len(self.columns)

    def _transport(self, u, images, target):
        acc = target.zero()
        for m, c in u.terms.items():
            w = target.one()
            for i, e in enumerate(m):
                for _ in range(e):
                    w = target.multiply(w, images[i])
            acc = acc + w * c
        return acc

    def to_tilde(self, u):
        return self._transport(u, self._to_t, self.envt)

    def from_tilde(self, u):
        return self._transport(u, self._from_t, self.env)

    def _a_part(self, mono):
        return self.envA.monomial(mono[self.k:]) if self.envA else None

    def matrix(self, u):
        ut = self.to_tilde(u)
        col_index = {m: i for i, m in enumerate(self.columns)}
        out = [[self.zero_entry() for _ in range(self.rank)] for _ in range(self.rank)]
        for j, cj in enumerate(self.columns):
            w = self.envt.multiply(ut, self.envt.monomial(cj))
            for m, c in w.terms.items():
                i = col_index[m[:self.k] + (0,) * (self.Lt.dim - self.k)]
                out[i][j] = out[i][j] + self._entry(m, c)
        return out

    def zero_entry(self):
        return self.envA.zero() if self.envA else self.L.field.zero()

    def _entry(self, m, c):
        if self.envA is None:
            return c
        return self.envA.monomial(m[self.k:]) * c

    def matmul(self, X, Y):
        r = self.rank
        out = [[self.zero_entry() for _ in range(r)] for _ in range(r)]
        for i in range(r):
            for j in range(r):
                acc = self.zero_entry()
                for k in range(r):
                    if self.envA is None:
                        acc = acc + X[i][k] * Y[k][j]
                    else:
                        acc = acc + self.envA.multiply(X[i][k], Y[k][j])
                out[i][j] = acc
        return out

    def _embed_a(self, d):
        """u(A) element -> u(L~) (A sits in the trailing coordinates)."""
        if self.envA is None:
            return self.envt.scalar(d)
        terms = {}
        for m, c in d.terms.items():
            terms[(0,) * self.k + m] = c
        return UElement(self.envt, terms)

    def apply(self, X, column=0):
        """sum_i c_i * X[i][column], mapped back to u(L); column 0 is the unit."""
        acc = self.envt.zero()
        for i, ci in enumerate(self.columns):
            acc = acc + self.envt.multiply(self.envt.monomial(ci), self._embed_a(X[i][column]))
        return self.from_tilde(acc)


def regular_representation(L, A):
    return RegularRepresentation(L, A)
