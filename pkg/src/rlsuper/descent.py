"""
Descent of monomially graded algebras to the prime field.

If every structure constant over F_p(t_1..t_k) is a Laurent monomial
``c * t^g``, one can often find rational weights w_i so that the rescaled basis
``t^{w_i} e_i`` has all structure constants in F_p.  The rescaling lives in
the purely inseparable extension K = F_p(t^{1/D}); since L (x) K and the F_p-form
(x) K coincide, ranks of subspaces of u(L) and nilpotency of its ideals can be
computed over F_p exactly.  Element-level quantities such as p-nilpotence of a
particular element of L are not transported.
"""

from __future__ import annotations

from fractions import Fraction

from .exactfield import FieldSpec
from .liesuper import RestrictedLieSuperalgebra

__all__ = ["Descent", "descend"]


class Descent:
    """An F_p-form of L with the weights used to build it."""

    def __init__(self, source, algebra, weights):
        self.source = source
        self.algebra = algebra
        self.weights = weights

    def __repr__(self):
        return f"Descent({self.source.field} -> {self.algebra.field}, weights={self.weights})"


def _monomial(c):
    """(exponent vector, constant) of a nonzero Laurent monomial, or None."""
    if len(c.num) != 1 or len(c.den) != 1:
        return None
    (en, cn), = c.num.items()
    (ed, cd), = c.den.items()
    const = cn * pow(cd, c.field.p - 2, c.field.p) % c.field.p
    return tuple(a - b for a, b in zip(en, ed)), const


def _solve(rows, rhs, nvars):
    """A rational solution of rows @ w = rhs (free variables 0), or None."""
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        lead = aug[r][c]
        aug[r] = [x / lead for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in aug):
        return None
    w = [Fraction(0)] * nvars
    for i, c in enumerate(pivots):
        w[c] = aug[i][-1]
    return w


def descend(L):
    """Return a Descent of L to F_p, or None when no monomial rescaling exists."""
    F = L.field
    if F.is_finite:
        return Descent(L, L, [(Fraction(0),) * 0 for _ in range(L.dim)])
    d = L.dim
    rows, rhs, consts = [], [], []
    for i in range(d):
        for j in range(d):
            for k, c in L._sparse[i][j]:
                mono = _monomial(c)
                if mono is None:
                    return None
                row = [0] * d
                row[k] += 1
                row[i] -= 1
                row[j] -= 1
                rows.append(row)
                rhs.append(mono[0])
                consts.append((("b", i, j, k), mono[1]))
    for i, entries in L._sparse_pmap.items():
        for k, c in entries:
            mono = _monomial(c)
            if mono is None:
                return None
            row = [0] * d
            row[k] += 1
            row[i] -= F.p
            rows.append(row)
            rhs.append(mono[0])
            consts.append((("p", i, k), mono[1]))
    per_var = []
    for v in range(F.k):
        w = _solve(rows, [g[v] for g in rhs], d) if rows else [Fraction(0)] * d
        if w is None:
            return None
        per_var.append(w)
    weights = [tuple(per_var[v][i] for v in range(F.k)) for i in range(d)]
    Fp = FieldSpec(F.p)
    zero = [0] * d
    brackets = {}
    pmap = {}
    for key, c in consts:
        if key[0] == "b":
            _, i, j, k = key
            brackets.setdefault((i, j), list(zero))[k] = c
        else:
            _, i, k = key
            pmap.setdefault(i, list(zero))[k] = c
    algebra = RestrictedLieSuperalgebra(Fp, L.names, L.parity, brackets, pmap)
    return Descent(L, algebra, weights)
