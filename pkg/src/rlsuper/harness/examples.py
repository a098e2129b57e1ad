"""Builders for the named example algebras and small stock algebras."""

from __future__ import annotations

import re

from ..errors import InvalidParameter
from ..exactfield import FieldSpec
from ..liesuper import RestrictedLieSuperalgebra

__all__ = ["build_example", "EXAMPLE_IDS"]

EXAMPLE_IDS = ("ex41", "ex42", "heisenberg_super", "even_heisenberg_toral", "abelian(n,m)")


def _scalar(F, value, default):
    return F(value) if value is not None else default


def _field_for(p, value, variables, field):
    if field is not None:
        return field
    if isinstance(value, int):
        return FieldSpec(p)
    return FieldSpec(p, variables)


class _Builder:
    """Collects structure constants by basis name."""

    def __init__(self, F, even, odd):
        self.F = F
        self.names = list(even) + list(odd)
        self.parity = [0] * len(even) + [1] * len(odd)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.brackets = {}
        self.pmap = {}

    def vec(self, terms):
        v = [self.F.zero()] * len(self.names)
        for name, c in terms.items():
            v[self.index[name]] = v[self.index[name]] + self.F(c)
        return v

    def bracket(self, u, w, **terms):
        self.brackets[(self.index[u], self.index[w])] = self.vec(terms)

    def p(self, x, **terms):
        self.pmap[self.index[x]] = self.vec(terms)

    def build(self):
        return RestrictedLieSuperalgebra(self.F, self.names, self.parity, self.brackets, self.pmap)


def ex41(p=3, alpha=None, field=None):
    """(L_0, L) = 0; (y,y) = x1, (z,z) = x2, (y,z) = x3; x1 -> x1, x2 -> alpha^2 x1, x3 -> alpha x1."""
    F = _field_for(p, alpha, ("t",), field)
    a = _scalar(F, alpha, F.var(F.variables[0]) if F.variables else None)
    if a is None:
        raise InvalidParameter("ex41 over a finite field needs an explicit alpha")
    b = _Builder(F, ["x1", "x2", "x3"], ["y", "z"])
    b.bracket("y", "y", x1=1)
    b.bracket("z", "z", x2=1)
    b.bracket("y", "z", x3=1)
    b.p("x1", x1=1)
    b.p("x2", x1=a * a)
    b.p("x3", x1=a)
    return b.build()


def ex42(p=3, alpha=None, beta=None, field=None):
    """Three odd y_i with (y_i,y_j) = z_ij, (y_k,y_k) = x_k, central L_0, p-map into <x1>."""
    F = _field_for(p, alpha, ("a", "b"), field)
    if F.variables:
        a = _scalar(F, alpha, F.var(F.variables[0]))
        bb = _scalar(F, beta, F.var(F.variables[-1]))
    else:
        if alpha is None or beta is None:
            raise InvalidParameter("ex42 over a finite field needs explicit alpha and beta")
        a, bb = F(alpha), F(beta)
    b = _Builder(F, ["z12", "z13", "z23", "x1", "x2", "x3"], ["y1", "y2", "y3"])
    for i in (1, 2, 3):
        b.bracket(f"y{i}", f"y{i}", **{f"x{i}": 1})
        for j in range(i + 1, 4):
            b.bracket(f"y{i}", f"y{j}", **{f"z{i}{j}": 1})
    b.p("x1", x1=1)
    b.p("x2", x1=a * a)
    b.p("x3", x1=bb * bb)
    b.p("z12", x1=a)
    b.p("z13", x1=bb)
    b.p("z23", x1=a * bb)
    return b.build()


def heisenberg_super(p=3, field=None):
    """x even, y odd, (y,y) = x, x^[p] = 0."""
    F = field or FieldSpec(p)
    b = _Builder(F, ["x"], ["y"])
    b.bracket("y", "y", x=1)
    return b.build()


def even_heisenberg_toral(p=3, field=None):
    """a, b, c even with (a,b) = c and c^[p] = c."""
    F = field or FieldSpec(p)
    b = _Builder(F, ["a", "b", "c"], [])
    b.bracket("a", "b", c=1)
    b.p("c", c=1)
    return b.build()


def abelian(n, m, p=3, field=None):
    F = field or FieldSpec(p)
    return _Builder(F, [f"x{i}" for i in range(1, n + 1)], [f"y{i}" for i in range(1, m + 1)]).build()


_ABELIAN = re.compile(r"^abelian\((\d+),(\d+)\)$")


def build_example(name, p=3, alpha=None, beta=None, field=None):
    """Build a named algebra: ex41, ex42, heisenberg_super, even_heisenberg_toral, abelian(n,m)."""
    key = name.replace(" ", "")
    if key == "ex41":
        return ex41(p, alpha, field)
    if key == "ex42":
        return ex42(p, alpha, beta, field)
    if key == "heisenberg_super":
        return heisenberg_super(p, field)
    if key == "even_heisenberg_toral":
        return even_heisenberg_toral(p, field)
    m = _ABELIAN.match(key)
    if m:
        return abelian(int(m.group(1)), int(m.group(2)), p, field)
    raise InvalidParameter(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_IDS)}")
