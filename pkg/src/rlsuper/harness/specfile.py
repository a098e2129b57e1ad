"""
Text format for restricted Lie superalgebras.

    # comment
    p = 3
    field = Fp(t)
    even = x1 x2 x3
    odd = y z
    bracket (y,y) = x1
    bracket (y,z) = x3
    pmap x2 = t^2*x1

Header lines (p, field, even, odd) come first; unspecified brackets and
p-map values are zero and the opposite-order brackets are completed by
super-anticommutativity.  The basis order is the even names followed by the
odd names.
"""

from __future__ import annotations

import re
from pathlib import Path

from ..errors import GradingError, InvalidParameter, ParseError, UnknownName
from ..exactfield import FieldElement, FieldSpec, parse_expression
from ..liesuper import RestrictedLieSuperalgebra

__all__ = ["parse_spec", "format_spec", "load_spec", "bundled_path"]

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_HEADER = re.compile(r"^\s*(p|field|even|odd)\s*=\s*(.*?)\s*$")
_BRACKET = re.compile(rf"^\s*bracket\s*\(\s*({_IDENT})\s*,\s*({_IDENT})\s*\)\s*=\s*(.*?)\s*$")
_PMAP = re.compile(rf"^\s*pmap\s+({_IDENT})\s*=\s*(.*?)\s*$")
_FIELD = re.compile(rf"^Fp(?:\(\s*({_IDENT}(?:\s*,\s*{_IDENT})*)\s*\))?$")

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def bundled_path(name):
    return DATA_DIR / name


def load_spec(path):
    """Parse a spec file; bare names missing from disk fall back to the bundled data."""
    path = Path(path)
    if not path.exists() and bundled_path(path.name).exists():
        path = bundled_path(path.name)
    return parse_spec(path.read_text(encoding="utf-8"))


def _strip(line):
    i = line.find("#")
    return line if i < 0 else line[:i]


class _SpecParser:
    def __init__(self, text):
        self.lines = text.splitlines()
        self.header = {}
        self.field = None
        self.even = []
        self.odd = []
        self.names = {}
        self.brackets = {}
        self.pmap = {}

    def fail(self, cls, msg, lineno, col=None):
        raise cls(msg, line=lineno, column=col)

    def parse(self):
        for lineno, raw in enumerate(self.lines, start=1):
            line = _strip(raw)
            if not line.strip():
                continue
            m = _HEADER.match(line)
            if m:
                self.header_line(m, lineno)
                continue
            m = _BRACKET.match(line)
            if m:
                self.bracket_line(m, lineno)
                continue
            m = _PMAP.match(line)
            if m:
                self.pmap_line(m, lineno)
                continue
            col = len(line) - len(line.lstrip()) + 1
            self.fail(ParseError, f"unrecognized declaration {line.strip()!r}", lineno, col)
        self.finish_header(len(self.lines) + 1)
        return self.build()

    # -- header -----------------------------------------------------------------

    def header_line(self, m, lineno):
        key, value = m.group(1), m.group(2)
        if self.field is not None:
            self.fail(ParseError, f"{key} must be declared before brackets and p-map values", lineno, 1)
        if key in self.header:
            self.fail(ParseError, f"duplicate {key} declaration", lineno, m.start(1) + 1)
        self.header[key] = (value, lineno, m.start(2) + 1)

    def finish_header(self, lineno):
        if self.field is not None:
            return
        if "p" not in self.header:
            self.fail(ParseError, "missing 'p = <prime>' declaration", lineno, 1)
        pval, pline, pcol = self.header["p"]
        if not re.fullmatch(r"\d+", pval):
            self.fail(ParseError, f"p must be a positive integer, got {pval!r}", pline, pcol)
        fval, fline, fcol = self.header.get("field", ("Fp", pline, 1))
        fm = _FIELD.match(fval)
        if not fm:
            self.fail(ParseError, f"field must be Fp, Fp(t) or Fp(a,b), got {fval!r}", fline, fcol)
        variables = tuple(v.strip() for v in fm.group(1).split(",")) if fm.group(1) else ()
        try:
            self.field = FieldSpec(int(pval), variables)
        except InvalidParameter as exc:
            self.fail(ParseError, str(exc), pline, pcol)
        for key, parity in (("even", 0), ("odd", 1)):
            value, line, col = self.header.get(key, ("", lineno, 1))
            target = self.even if parity == 0 else self.odd
            for m in re.finditer(r"\S+", value):
                name = m.group(0)
                c = col + m.start()
                if not re.fullmatch(_IDENT, name):
                    self.fail(ParseError, f"bad basis name {name!r}", line, c)
                if name in self.names:
                    self.fail(ParseError, f"duplicate basis name {name!r}", line, c)
                if name in self.field.variables:
                    self.fail(ParseError, f"basis name {name!r} clashes with an indeterminate", line, c)
                self.names[name] = parity
                target.append(name)
        order = self.even + self.odd
        self.index = {n: i for i, n in enumerate(order)}
        self.parity = [self.names[n] for n in order]
        self.scratch = RestrictedLieSuperalgebra(self.field, order, self.parity)
        self.values = {n: self.scratch.basis_element(i) for n, i in self.index.items()}

    # -- body -------------------------------------------------------------------

    def lookup(self, name, lineno, col):
        if name not in self.index:
            self.fail(UnknownName, f"unknown basis name {name!r}", lineno, col)
        return self.index[name]

    def vector(self, text, lineno, col):
        try:
            value = parse_expression(text, self.field, self.values)
        except ParseError as exc:
            cls = type(exc)
            c = col + (exc.column - 1 if exc.column else 0)
            raise cls(exc.message, line=lineno, column=c) from None
        if isinstance(value, FieldElement):
            if value:
                self.fail(ParseError, "expected a linear combination of basis names", lineno, col)
            return self.scratch.zero()
        return value

    def bracket_line(self, m, lineno):
        self.finish_header(lineno)
        i = self.lookup(m.group(1), lineno, m.start(1) + 1)
        j = self.lookup(m.group(2), lineno, m.start(2) + 1)
        if (i, j) in self.brackets or (j, i) in self.brackets:
            self.fail(ParseError, f"duplicate bracket ({m.group(1)},{m.group(2)})", lineno, m.start(1) + 1)
        col = m.start(3) + 1
        v = self.vector(m.group(3), lineno, col)
        want = (self.parity[i] + self.parity[j]) % 2
        if v and v.parity != want:
            kind = "even" if want == 0 else "odd"
            self.fail(GradingError, f"bracket ({m.group(1)},{m.group(2)}) must be {kind}", lineno, col)
        self.brackets[(i, j)] = v.coords

    def pmap_line(self, m, lineno):
        self.finish_header(lineno)
        i = self.lookup(m.group(1), lineno, m.start(1) + 1)
        if self.parity[i]:
            self.fail(GradingError, f"p-map given on odd basis element {m.group(1)!r}", lineno, m.start(1) + 1)
        if i in self.pmap:
            self.fail(ParseError, f"duplicate pmap for {m.group(1)!r}", lineno, m.start(1) + 1)
        col = m.start(2) + 1
        v = self.vector(m.group(2), lineno, col)
        if v and v.parity != 0:
            self.fail(GradingError, f"pmap {m.group(1)} must be even", lineno, col)
        self.pmap[i] = v.coords

    def build(self):
        return RestrictedLieSuperalgebra(
            self.field, self.even + self.odd, self.parity, self.brackets, self.pmap
        )


def parse_spec(text):
    """Build an algebra from spec text (axioms are not checked here)."""
    return _SpecParser(text).parse()


def format_spec(L, comment=None):
    """Render L in the spec format; parse_spec(format_spec(L)) == L when L lists even names first."""
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"p = {L.field.p}")
    out.append(f"field = {L.field.label}")
    out.append("even = " + " ".join(L.names[i] for i in L.even_indices))
    out.append("odd = " + " ".join(L.names[i] for i in L.odd_indices))
    order = list(L.even_indices) + list(L.odd_indices)
    for a, i in enumerate(order):
        for j in order[a:]:
            v = L.table[i][j]
            if any(v):
                out.append(f"bracket ({L.names[i]},{L.names[j]}) = {L.format_vector(v)}")
    for i in L.even_indices:
        v = L.pmap_table[i]
        if any(v):
            out.append(f"pmap {L.names[i]} = {L.format_vector(v)}")
    return "\n".join(out) + "\n"
