"""
Finite-dimensional restricted Lie superalgebras given by structure constants.

The basis is a totally ordered list of Z_2-homogeneous elements; ``parity[i]``
is 0 for even and 1 for odd basis elements.  The bracket table holds
``(e_i, e_j)`` for every ordered pair and the p-map table holds ``e_i^[p]``
for every even ``e_i``.  The p-map of a general even element is obtained from
the table by p-semilinearity and the correction terms s_i(x, y).

Conventions: ``ad x (y) = (y, x)``, long brackets are left-normed.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field as dc_field

from .errors import (
    ExhaustionUnavailable,
    GradingError,
    InvalidParameter,
    NotAnIdeal,
    NotContained,
    NotHomogeneous,
    ParityError,
)
from .exactfield import FieldElement
from .linalg import Subspace, _rref, kernel

__all__ = [
    "LieElement",
    "RestrictedLieSuperalgebra",
    "AxiomReport",
    "verify_axioms",
    "restricted_closure",
    "quotient",
    "series",
    "center",
    "compute_M",
    "compute_p_nil_part",
    "bracket_span",
    "derive_seed",
]

EXHAUSTIVE_BUDGET = 20000


def derive_seed(seed, operation, instance=""):
    """Deterministic per-(seed, operation, instance) stream seed."""
    digest = hashlib.sha256(f"{seed}|{operation}|{instance}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class LieElement:
    """A vector in L = L_0 + L_1, coordinates relative to the algebra's basis."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = tuple(coords)

    @property
    def even_coords(self):
        return tuple(self.coords[i] for i in self.algebra.even_indices)

    @property
    def odd_coords(self):
        return tuple(self.coords[i] for i in self.algebra.odd_indices)

    def nonzero(self):
        return [(i, c) for i, c in enumerate(self.coords) if c]

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return any(self.coords)

    def is_even(self):
        par = self.algebra.parity
        return all(not c for i, c in enumerate(self.coords) if par[i])

    def is_odd(self):
        par = self.algebra.parity
        return all(not c for i, c in enumerate(self.coords) if not par[i])

    def is_homogeneous(self):
        return self.is_even() or self.is_odd()

    @property
    def parity(self):
        """0 or 1 for homogeneous elements (zero counts as even); None otherwise."""
        if self.is_even():
            return 0
        if self.is_odd():
            return 1
        return None

    def even_part(self):
        zero = self.algebra.field.zero()
        return LieElement(self.algebra, [c if not q else zero for c, q in zip(self.coords, self.algebra.parity)])

    def odd_part(self):
        zero = self.algebra.field.zero()
        return LieElement(self.algebra, [c if q else zero for c, q in zip(self.coords, self.algebra.parity)])

    def __add__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return LieElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return LieElement(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return LieElement(self.algebra, [-a for a in self.coords])

    def __mul__(self, scalar):
        if isinstance(scalar, (int, FieldElement)):
            scalar = self.algebra.field(scalar)
            return LieElement(self.algebra, [a * scalar for a in self.coords])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * self.algebra.field(scalar).inv()

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return self.algebra.format_vector(self.coords)

    def __repr__(self):
        return f"LieElement({self})"


def _fmt_coef(c):
    s = str(c)
    return f"({s})" if "+" in s and "/" not in s else s


class RestrictedLieSuperalgebra:
    """Structure constants, parities and p-map table of a restricted Lie superalgebra.

    ``brackets`` maps ordered index pairs to coordinate sequences; pairs that
    are missing are completed by super-anticommutativity, or set to zero.
    ``pmap`` maps even indices to coordinate sequences; missing entries are 0.
    """

    def __init__(self, field, names, parity, brackets=None, pmap=None):
        names = tuple(names)
        parity = tuple(int(q) for q in parity)
        if len(names) != len(parity):
            raise InvalidParameter("names and parities differ in length")
        if len(set(names)) != len(names):
            raise InvalidParameter("basis names must be distinct")
        if any(q not in (0, 1) for q in parity):
            raise InvalidParameter("parities must be 0 or 1")
        self.field = field
        self.names = names
        self.parity = parity
        d = len(names)
        self.dim = d
        self.even_indices = tuple(i for i in range(d) if parity[i] == 0)
        self.odd_indices = tuple(i for i in range(d) if parity[i] == 1)
        self.n = len(self.even_indices)
        self.m = len(self.odd_indices)
        zero = field.zero()
        zvec = (zero,) * d

        def conv(v):
            v = tuple(field(c) for c in v)
            if len(v) != d:
                raise InvalidParameter(f"structure vector of length {len(v)}, expected {d}")
            return v

        given = {(i, j): conv(v) for (i, j), v in (brackets or {}).items()}
        table = [[zvec] * d for _ in range(d)]
        for (i, j), v in given.items():
            table[i][j] = v
            if (j, i) not in given:
                sign = 1 if parity[i] and parity[j] else -1
                table[j][i] = tuple(sign * c for c in v) if sign == 1 else tuple(-c for c in v)
        self.table = tuple(tuple(row) for row in table)
        self.pmap_table = {}
        for i in self.even_indices:
            self.pmap_table[i] = zvec
        for i, v in (pmap or {}).items():
            if parity[i]:
                raise GradingError(f"p-map given on odd basis element {names[i]!r}")
            self.pmap_table[i] = conv(v)
        self._sparse = [[[(k, c) for k, c in enumerate(self.table[i][j]) if c] for j in range(d)] for i in range(d)]
        self._sparse_pmap = {i: [(k, c) for k, c in enumerate(v) if c] for i, v in self.pmap_table.items()}
        self._envelope = None
        self._fingerprint = None

    # -- construction helpers ------------------------------------------------

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidParameter(f"unknown basis element {name!r}") from None

    def zero(self):
        return LieElement(self, (self.field.zero(),) * self.dim)

    def basis_element(self, i):
        if isinstance(i, str):
            i = self.index(i)
        one, zero = self.field.one(), self.field.zero()
        return LieElement(self, [one if j == i else zero for j in range(self.dim)])

    def __getitem__(self, name):
        return self.basis_element(name)

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def element(self, coords):
        return LieElement(self, [self.field(c) for c in coords])

    def format_vector(self, coords):
        parts = []
        for i, c in enumerate(coords):
            if not c:
                continue
            if c == 1:
                parts.append(self.names[i])
            else:
                parts.append(f"{_fmt_coef(c)}*{self.names[i]}")
        return " + ".join(parts) if parts else "0"

    def fingerprint(self):
        if self._fingerprint is None:
            h = hashlib.sha256()
            h.update(f"{self.field}|{self.names}|{self.parity}".encode())
            for i in range(self.dim):
                for j in range(self.dim):
                    h.update(self.format_vector(self.table[i][j]).encode() + b";")
            for i in self.even_indices:
                h.update(self.format_vector(self.pmap_table[i]).encode() + b";")
            self._fingerprint = h.hexdigest()[:16]
        return self._fingerprint

    def __eq__(self, other):
        if not isinstance(other, RestrictedLieSuperalgebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.names == other.names
            and self.parity == other.parity
            and self.table == other.table
            and self.pmap_table == other.pmap_table
        )

    def __hash__(self):
        return hash(self.fingerprint())

    def __repr__(self):
        return f"RestrictedLieSuperalgebra({self.field}, n={self.n}, m={self.m})"

    # -- bracket and p-map ---------------------------------------------------

    def bracket(self, u, v):
        field = self.field
        acc = [field.zero()] * self.dim
        sp = self._sparse
        unz = u.nonzero()
        vnz = v.nonzero()
        for i, a in unz:
            row = sp[i]
            for j, b in vnz:
                entries = row[j]
                if entries:
                    ab = a * b
                    for k, c in entries:
                        acc[k] = acc[k] + ab * c
        return LieElement(self, acc)

    def ad(self, x):
        """The operator ad x : y -> (y, x) as a function."""
        return lambda y: self.bracket(y, x)

    def _require_even(self, *xs):
        for x in xs:
            if not x.is_even():
                raise ParityError(f"{x} is not an even element")

    def s_coefficients(self, x, y):
        """s_1..s_{p-1}: i*s_i is the coefficient of lambda^(i-1) in ad(lambda x + y)^(p-1)(x)."""
        self._require_even(x, y)
        p = self.field.p
        poly = [x]
        for _ in range(p - 1):
            new = [self.zero() for _ in range(len(poly) + 1)]
            for d, c in enumerate(poly):
                if c.is_zero():
                    continue
                new[d] = new[d] + self.bracket(c, y)
                new[d + 1] = new[d + 1] + self.bracket(c, x)
            poly = new
        return [poly[i - 1] / i for i in range(1, p)]

    def p_power(self, x, order=None):
        """x^[p] for even x via a left fold of the two-term sum law over basis components."""
        self._require_even(x)
        p = self.field.p
        terms = x.nonzero()
        if order is not None:
            pos = {i: r for r, i in enumerate(order)}
            terms.sort(key=lambda t: pos[t[0]])
        acc = None
        accp = self.zero()
        for i, a in terms:
            term = self.basis_element(i) * a
            termp = LieElement(self, self.pmap_table[i]) * (a ** p)
            if acc is None:
                acc, accp = term, termp
                continue
            corr = self.zero()
            for s in self.s_coefficients(acc, term):
                corr = corr + s
            accp = accp + termp + corr
            acc = acc + term
        return accp

    def p_power_iter(self, x, times):
        for _ in range(times):
            x = self.p_power(x)
        return x

    def is_p_nilpotent(self, x):
        """(True, s) with least s such that x^[p^s] = 0, else (False, None).

        Iterates at most n + 1 times: the iterates of x span a commuting
        family on which the p-map is p-semilinear, so a nilpotent orbit dies
        within dim L_0 steps.
        """
        self._require_even(x)
        cur = x
        for s in range(self.n + 2):
            if cur.is_zero():
                return True, s
            cur = self.p_power(cur)
        return False, None

    # -- subspaces -------------------------------------------------------------

    def span(self, elements):
        return Subspace(self.field, self.dim, [e.coords for e in elements])

    def full_space(self):
        return Subspace.full(self.field, self.dim)

    def zero_space(self):
        return Subspace.zero(self.field, self.dim)

    def even_space(self):
        return self.span([self.basis_element(i) for i in self.even_indices])

    def odd_space(self):
        return self.span([self.basis_element(i) for i in self.odd_indices])

    def elements_of(self, S):
        return [LieElement(self, v) for v in S.basis]

    def even_part_of(self, S):
        return S.restrict(self.even_indices)

    def odd_part_of(self, S):
        return S.restrict(self.odd_indices)

    def is_homogeneous(self, S):
        return self.even_part_of(S) + self.odd_part_of(S) == S

    def is_ideal(self, S):
        """Bracket-stable and p-stable (a restricted ideal)."""
        return not self.ideal_violations(S)

    def ideal_violations(self, S):
        out = []
        for v in self.elements_of(S):
            for i in range(self.dim):
                w = self.bracket(v, self.basis_element(i))
                if w.coords not in S:
                    out.append(("bracket", v, self.basis_element(i), w))
                    return out
        for v in self.elements_of(self.even_part_of(S)):
            w = self.p_power(v)
            if w.coords not in S:
                out.append(("pmap", v, None, w))
                return out
        return out

    def enumerate_space(self, S, budget=EXHAUSTIVE_BUDGET):
        """All elements of a subspace over a finite field."""
        if not self.field.is_finite:
            raise ExhaustionUnavailable(f"cannot enumerate a subspace over {self.field}")
        q = self.field.p
        if q ** S.dim > budget:
            raise ExhaustionUnavailable(f"{q}^{S.dim} elements exceed the budget {budget}")
        vecs = self.elements_of(S)
        scalars = self.field.elements()
        for combo in itertools.product(scalars, repeat=len(vecs)):
            acc = self.zero()
            for c, v in zip(combo, vecs):
                if c:
                    acc = acc + v * c
            yield acc

    # -- sampling --------------------------------------------------------------

    def rng(self, seed, operation):
        return random.Random(derive_seed(seed, operation, self.fingerprint()))

    def random_element(self, rng, parity=None):
        idx = range(self.dim)
        if parity == 0:
            idx = self.even_indices
        elif parity == 1:
            idx = self.odd_indices
        zero = self.field.zero()
        coords = [zero] * self.dim
        for i in idx:
            coords[i] = self.field.random(rng)
        return LieElement(self, coords)

    def structured_samples(self, parity):
        """Basis vectors, pairwise sums/differences, and e_i + v*e_j for indeterminates v."""
        idx = self.even_indices if parity == 0 else self.odd_indices
        basis = [self.basis_element(i) for i in idx]
        out = list(basis)
        extra = [self.field.var(v) for v in self.field.variables]
        extra += [v * v for v in extra]
        for a, b in itertools.combinations(basis, 2):
            out.append(a + b)
            out.append(a - b)
            for c in extra:
                out.append(a + b * c)
        return out


@dataclass
class AxiomReport:
    checks: list = dc_field(default_factory=list)

    def add(self, name, ok, witness=None):
        self.checks.append((name, "PASS" if ok else "FAIL", None if ok else witness))

    @property
    def ok(self):
        return all(status == "PASS" for _, status, _ in self.checks)

    def status(self, name):
        for n, s, _ in self.checks:
            if n == name:
                return s
        raise KeyError(name)

    def failures(self):
        return [c for c in self.checks if c[1] == "FAIL"]


def _ad_power(L, x, y, k):
    for _ in range(k):
        y = L.bracket(y, x)
    return y


def verify_axioms(L, samples=20, seed=0):
    """Check grading, super-anticommutativity, super-Jacobi and the restricted axioms."""
    report = AxiomReport()
    par = L.parity
    d = L.dim
    basis = L.basis()
    p = L.field.p

    # (i) grading
    witness = None
    for i in range(d):
        for j in range(d):
            target = (par[i] + par[j]) % 2
            if any(c for k, c in enumerate(L.table[i][j]) if par[k] != target):
                witness = (L.names[i], L.names[j])
                break
        if witness:
            break
    report.add("grading", witness is None, witness)

    # (ii) super-anticommutativity on basis pairs
    witness = None
    for i in range(d):
        for j in range(i, d):
            sign = -1 if not (par[i] and par[j]) else 1
            lhs = LieElement(L, L.table[i][j])
            rhs = LieElement(L, L.table[j][i]) * sign
            if lhs != rhs:
                witness = (L.names[i], L.names[j])
                break
        if witness:
            break
    report.add("anticommutativity", witness is None, witness)

    rng = L.rng(seed, "verify_axioms")
    homog = list(basis)
    for _ in range(samples):
        homog.append(L.random_element(rng, parity=rng.randrange(2) if L.n and L.m else (0 if L.n else 1)))
    homog = [h for h in homog if h.is_homogeneous()]

    # (iii) super-Jacobi: (x,(y,z)) = ((x,y),z) + (-1)^{|x||y|} (y,(x,z))
    def jacobi_fails(x, y, z):
        sign = -1 if x.parity and y.parity else 1
        lhs = L.bracket(x, L.bracket(y, z))
        rhs = L.bracket(L.bracket(x, y), z) + L.bracket(y, L.bracket(x, z)) * sign
        return lhs != rhs

    witness = None
    for x, y, z in itertools.product(basis, repeat=3):
        if jacobi_fails(x, y, z):
            witness = (str(x), str(y), str(z))
            break
    if witness is None and d:
        for _ in range(samples):
            x, y, z = (homog[rng.randrange(len(homog))] for _ in range(3))
            if jacobi_fails(x, y, z):
                witness = (str(x), str(y), str(z))
                break
    report.add("jacobi", witness is None, witness)

    # (vi) p-map values lie in L_0
    witness = None
    for i in L.even_indices:
        if not LieElement(L, L.pmap_table[i]).is_even():
            witness = L.names[i]
            break
    report.add("pmap_even", witness is None, witness)

    # (iv) (y, x^[p]) = (ad x)^p (y)
    witness = None
    evens = [b for b in basis if b.is_even() and not b.is_zero()]
    evens += [L.random_element(rng, parity=0) for _ in range(samples if L.n else 0)]
    targets = basis + [L.random_element(rng) for _ in range(min(samples, 5) if d else 0)]
    if report.status("pmap_even") == "PASS":
        for x in evens:
            xp = L.p_power(x)
            for y in targets:
                if L.bracket(y, xp) != _ad_power(L, x, y, p):
                    witness = (str(x), str(y))
                    break
            if witness:
                break
    report.add("restricted_ad", witness is None, witness)

    # well-definedness of the extended p-map: fold order does not matter
    witness = None
    if report.status("pmap_even") == "PASS":
        for x in evens:
            rev = list(reversed(range(d)))
            if L.p_power(x) != L.p_power(x, order=rev):
                witness = str(x)
                break
    report.add("pmap_fold_order", witness is None, witness)

    # (v) p = 3: ((y,y),y) = 0 for odd y
    if p == 3:
        witness = None
        odds = [b for b in basis if b.is_odd() and not b.is_zero()]
        if L.field.is_finite and L.m and p ** L.m <= EXHAUSTIVE_BUDGET:
            odds = list(L.enumerate_space(L.odd_space()))
        else:
            odds += L.structured_samples(1)
            odds += [L.random_element(rng, parity=1) for _ in range(samples if L.m else 0)]
        for y in odds:
            if not L.bracket(L.bracket(y, y), y).is_zero():
                witness = str(y)
                break
        report.add("odd_cube", witness is None, witness)
    return report


def bracket_span(L, S, T):
    """The subspace (S, T) spanned by brackets of basis vectors."""
    vecs = []
    for s in L.elements_of(S):
        for t in L.elements_of(T):
            vecs.append(L.bracket(s, t).coords)
    return Subspace(L.field, L.dim, vecs)


def restricted_closure(L, X):
    """Smallest restricted ideal containing X: stable under brackets with L and the p-map."""
    vecs = [x.coords if isinstance(x, LieElement) else tuple(x) for x in X]
    S = Subspace(L.field, L.dim, vecs)
    while True:
        new = list(S.basis)
        for v in L.elements_of(S):
            for e in L.basis():
                new.append(L.bracket(v, e).coords)
        for v in L.elements_of(L.even_part_of(S)):
            new.append(L.p_power(v).coords)
        T = Subspace(L.field, L.dim, new)
        if T == S:
            return S
        S = T


def coordinate_solver(field, vectors):
    """Return coords(w) giving w as a combination of ``vectors`` (linearly independent)."""
    k = len(vectors)
    if not k:
        def coords0(w):
            if any(w):
                raise NotContained("vector not in the span")
            return []
        return coords0
    n = len(vectors[0])
    zero, one = field.zero(), field.one()
    rows = [tuple(v) + tuple(one if a == b else zero for b in range(k)) for a, v in enumerate(vectors)]
    red, piv = _rref(field, rows, n + k)
    if len(piv) != k or any(c >= n for c in piv):
        raise InvalidParameter("vectors are linearly dependent")

    def coords(w):
        w = tuple(w)
        out = [zero] * k
        resid = list(w)
        for row, c in zip(red, piv):
            f = resid[c]
            if f:
                resid = [x - f * y for x, y in zip(resid, row[:n])]
                for a in range(k):
                    if row[n + a]:
                        out[a] = out[a] + f * row[n + a]
        if any(resid):
            raise NotContained("vector not in the span")
        return out

    return coords


def rebase(L, vectors, names=None):
    """The algebra structure on span(vectors) relative to that basis.

    ``vectors`` must be homogeneous, linearly independent and span a restricted
    subalgebra; with a full basis this is a change of basis of L.
    """
    vectors = list(vectors)
    for v in vectors:
        if not v.is_homogeneous() or v.is_zero():
            raise NotHomogeneous(f"{v} is not a nonzero homogeneous element")
    parity = [v.parity for v in vectors]
    if names is None:
        names = [f"b{i}" for i in range(len(vectors))]
    solve = coordinate_solver(L.field, [v.coords for v in vectors])
    brackets = {}
    for a, u in enumerate(vectors):
        for b, v in enumerate(vectors):
            brackets[(a, b)] = solve(L.bracket(u, v).coords)
    pmap = {a: solve(L.p_power(u).coords) for a, u in enumerate(vectors) if parity[a] == 0}
    return RestrictedLieSuperalgebra(L.field, names, parity, brackets, pmap)


class Quotient:
    """L/I on the complement of standard basis vectors at non-pivot columns of I."""

    def __init__(self, L, I):
        if I.ambient_dim != L.dim:
            raise InvalidParameter("ideal lives in a different space")
        if not L.is_homogeneous(I):
            raise NotHomogeneous("the subspace is not homogeneous")
        bad = L.ideal_violations(I)
        if bad:
            kind, v, e, w = bad[0]
            raise NotAnIdeal(f"{kind} closure fails: {v} gives {w}")
        self.source = L
        self.ideal = I
        self.keep = I.complement_indices()
        names = [L.names[i] for i in self.keep]
        parity = [L.parity[i] for i in self.keep]
        brackets = {}
        for a, i in enumerate(self.keep):
            for b, j in enumerate(self.keep):
                brackets[(a, b)] = self._proj(L.table[i][j])
        pmap = {a: self._proj(L.pmap_table[i]) for a, i in enumerate(self.keep) if not L.parity[i]}
        self.algebra = RestrictedLieSuperalgebra(L.field, names, parity, brackets, pmap)

    def _proj(self, coords):
        r = self.ideal.reduce(coords)
        return [r[i] for i in self.keep]

    def project(self, x):
        return LieElement(self.algebra, self._proj(x.coords))


def quotient(L, I, return_map=False):
    q = Quotient(L, I)
    return (q.algebra, q.project) if return_map else q.algebra


@dataclass
class SeriesResult:
    kind: str
    terms: list

    @property
    def stabilized(self):
        return self.terms[-1]

    @property
    def is_nilpotent(self):
        return self.kind == "lower_central" and self.terms[-1].dim == 0

    @property
    def is_solvable(self):
        return self.kind == "derived" and self.terms[-1].dim == 0

    @property
    def length(self):
        """Nilpotency class (lower central) or derived length, None if the chain stalls."""
        if self.terms[-1].dim:
            return None
        # lower central: class c with gamma_{c+1} = 0; derived: least m with delta_m = 0
        return len(self.terms) - 1


def series(L, kind):
    """gamma_1 = L, gamma_{k+1} = (gamma_k, L); or delta_0 = L, delta_{i+1} = (delta_i, delta_i)."""
    if kind not in ("lower_central", "derived"):
        raise InvalidParameter(f"unknown series {kind!r}")
    full = L.full_space()
    terms = [full]
    while True:
        cur = terms[-1]
        nxt = bracket_span(L, cur, full if kind == "lower_central" else cur)
        if nxt == cur:
            break
        terms.append(nxt)
        if nxt.dim == 0:
            break
    return SeriesResult(kind, terms)


def center(L):
    """{v : (v, e_i) = 0 for all basis e_i}, as a kernel."""
    rows = []
    for i in range(L.dim):
        for k in range(L.dim):
            rows.append(tuple(L.table[j][i][k] for j in range(L.dim)))
    return kernel(L.field, rows, L.dim)


@dataclass
class SearchResult:
    """Span of the elements found, plus how much of the space was examined."""

    space: Subspace
    complete: bool
    set_closed: bool = None
    found: list = dc_field(default_factory=list)
    examined: int = 0

    def __iter__(self):
        return iter((self.space, self.complete))


def _parse_mode(mode):
    if mode == "exhaustive":
        return "exhaustive", 0, 0
    if isinstance(mode, tuple) and mode and mode[0] == "sampled":
        count = mode[1] if len(mode) > 1 else 20
        seed = mode[2] if len(mode) > 2 else 0
        return "sampled", count, seed
    raise InvalidParameter(f"unknown mode {mode!r}")


def _search(L, parity, mode, test, opname):
    kind, count, seed = _parse_mode(mode)
    space = L.odd_space() if parity else L.even_space()
    if kind == "exhaustive":
        if not L.field.is_finite:
            raise ExhaustionUnavailable(f"exhaustive search over {L.field} is impossible")
        candidates = list(L.enumerate_space(space))
    else:
        rng = L.rng(seed, opname)
        candidates = L.structured_samples(parity)
        candidates += [L.random_element(rng, parity=parity) for _ in range(count if space.dim else 0)]
    found = [c for c in candidates if not c.is_zero() and test(c)]
    S = L.span(found) if found else L.zero_space()
    closed = None
    if kind == "exhaustive":
        closed = len(found) + 1 == L.field.p ** S.dim
    return SearchResult(S, kind == "exhaustive", closed, found, len(candidates))


def compute_M(L, mode="exhaustive"):
    """Span of odd y with (y, y) p-nilpotent."""
    return _search(L, 1, mode, lambda y: L.is_p_nilpotent(L.bracket(y, y))[0], "compute_M")


def compute_p_nil_part(L, mode="exhaustive"):
    """Span of the p-nilpotent even elements."""
    return _search(L, 0, mode, lambda x: L.is_p_nilpotent(x)[0], "compute_p_nil_part")
