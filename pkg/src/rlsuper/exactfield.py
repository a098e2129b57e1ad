"""
Exact arithmetic in F_p and in rational function fields F_p(t_1, ..., t_k), k <= 2.

Polynomials are sparse dicts mapping exponent tuples to residues in [1, p).
A FieldElement is a quotient num/den of two such polynomials.  Fractions are
not kept in lowest terms: equality is decided by cross-multiplication.  A cheap
normalisation pass strips the common monomial content, makes the denominator
monic, and (for k = 1 only) divides out the univariate gcd.

    >>> F = FieldSpec(3, ("t",))
    >>> t = F.var("t")
    >>> (t + 1).frobenius(1) == t**3 + 1
    True
    >>> t.pth_root() is None
    True
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .errors import DivisionByZero, InvalidParameter, ParseError, UnknownName

__all__ = ["FieldSpec", "FieldElement", "NoRoot", "parse_expression"]

NoRoot = None

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- sparse polynomial helpers (dict: exponent tuple -> residue) -------------

def _padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        s = (out.get(e, 0) + c) % p
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _pneg(a, p):
    return {e: p - c for e, c in a.items()}


def _pscale(a, c, p):
    c %= p
    if not c:
        return {}
    return {e: (v * c) % p for e, v in a.items()}


def _pmul(a, b, p):
    if len(a) == 1 and len(b) == 1:
        (ea, ca), = a.items()
        (eb, cb), = b.items()
        return {tuple(x + y for x, y in zip(ea, eb)): (ca * cb) % p}
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = (out.get(e, 0) + ca * cb) % p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _lead(a):
    # lexicographically largest exponent after total degree
    return max(a, key=lambda e: (sum(e), e))


def _to_dense(a):
    deg = max(e[0] for e in a)
    out = [0] * (deg + 1)
    for e, c in a.items():
        out[e[0]] = c
    return out


def _from_dense(coeffs):
    return {(i,): c for i, c in enumerate(coeffs) if c}


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _dense_divmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        f = (a[-1] * inv) % p
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - f * c) % p
    return _trim(q), a


def _dense_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _dense_divmod(a, b, p)
        a, b = b, r
    inv = pow(a[-1], p - 2, p)
    return [(c * inv) % p for c in a]


@dataclass(frozen=True)
class FieldSpec:
    """The base field: F_p when ``variables`` is empty, else F_p(variables)."""

    p: int
    variables: tuple = ()
    _zero_exp: tuple = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise InvalidParameter(f"characteristic {self.p!r} is not a prime")
        if self.p == 2:
            raise InvalidParameter("characteristic 2 is not supported (need p > 2)")
        if len(self.variables) > 2:
            raise InvalidParameter("at most two indeterminates are supported")
        if len(set(self.variables)) != len(self.variables):
            raise InvalidParameter("indeterminate names must be distinct")
        for v in self.variables:
            if not isinstance(v, str) or not _IDENT.match(v):
                raise InvalidParameter(f"bad indeterminate name {v!r}")
        object.__setattr__(self, "_zero_exp", (0,) * len(self.variables))

    @property
    def k(self):
        return len(self.variables)

    @property
    def is_finite(self):
        return not self.variables

    @property
    def is_perfect(self):
        return not self.variables

    def __str__(self):
        if not self.variables:
            return f"F{self.p}"
        return f"F{self.p}({','.join(self.variables)})"

    @property
    def label(self):
        """Field line value for the algebra file format."""
        if not self.variables:
            return "Fp"
        return f"Fp({','.join(self.variables)})"

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise InvalidParameter("element belongs to a different field")
            return value
        if isinstance(value, int):
            return self.const(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to a field element")

    def const(self, c):
        c %= self.p
        num = {self._zero_exp: c} if c else {}
        return FieldElement._raw(self, num, {self._zero_exp: 1})

    def zero(self):
        return self.const(0)

    def one(self):
        return self.const(1)

    def var(self, name):
        try:
            i = self.variables.index(name)
        except ValueError:
            raise InvalidParameter(f"{name!r} is not an indeterminate of {self}") from None
        e = tuple(1 if j == i else 0 for j in range(self.k))
        return FieldElement._raw(self, {e: 1}, {self._zero_exp: 1})

    def elements(self):
        """All elements of a finite field, starting with 0."""
        if not self.is_finite:
            raise InvalidParameter(f"{self} is infinite")
        return [self.const(c) for c in range(self.p)]

    def random(self, rng, degree=2):
        """A random element; over F_p(t..) a random polynomial of bounded degree."""
        if self.is_finite:
            return self.const(rng.randrange(self.p))
        num = {}
        for _ in range(rng.randint(1, 3)):
            e = tuple(rng.randint(0, degree) for _ in range(self.k))
            c = rng.randrange(1, self.p)
            num = _padd(num, {e: c}, self.p)
        return FieldElement._make(self, num, {self._zero_exp: 1})

    def parse(self, text):
        value = parse_expression(text, self)
        if not isinstance(value, FieldElement):
            raise ParseError(f"expected a field element, got {text!r}")
        return value


class FieldElement:
    """Immutable element num/den of F_p(t_1..t_k)."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=None):
        p = field.p
        num = {tuple(e): c % p for e, c in num.items() if c % p}
        if den is None:
            den = {field._zero_exp: 1}
        else:
            den = {tuple(e): c % p for e, c in den.items() if c % p}
        if not den:
            raise DivisionByZero("zero denominator")
        self.field = field
        self.num, self.den = _normalize(field, num, den)

    @classmethod
    def _raw(cls, field, num, den):
        obj = object.__new__(cls)
        obj.field = field
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def _make(cls, field, num, den):
        num, den = _normalize(field, num, den)
        return cls._raw(field, num, den)

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise InvalidParameter("mixing elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.const(other)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        p = F.p
        if not F.variables:
            return F.const(self.num.get((), 0) + other.num.get((), 0))
        if self.den == other.den:
            return FieldElement._make(F, _padd(self.num, other.num, p), self.den)
        num = _padd(_pmul(self.num, other.den, p), _pmul(other.num, self.den, p), p)
        return FieldElement._make(F, num, _pmul(self.den, other.den, p))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(self.field, _pneg(self.num, self.field.p), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        p = F.p
        if not F.variables:
            return F.const(self.num.get((), 0) * other.num.get((), 0))
        if not self.num or not other.num:
            return F.zero()
        return FieldElement._make(F, _pmul(self.num, other.num, p), _pmul(self.den, other.den, p))

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        F = self.field
        if not F.variables:
            return F.const(pow(self.num[()], F.p - 2, F.p))
        return FieldElement._make(F, dict(self.den), dict(self.num))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self.num == other.num
        p = self.field.p
        return _pmul(self.num, other.den, p) == _pmul(other.num, self.den, p)

    def __hash__(self):
        if self.field.k <= 1:
            return hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return hash(self.field)

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def __int__(self):
        if self.field.variables:
            if self.is_constant():
                c = self.num.get(self.field._zero_exp, 0)
                d = self.den[self.field._zero_exp]
                return (c * pow(d, self.field.p - 2, self.field.p)) % self.field.p
            raise TypeError(f"{self} is not a constant")
        return self.num.get((), 0)

    def is_constant(self):
        z = self.field._zero_exp
        return all(e == z for e in self.num) and all(e == z for e in self.den)

    # -- characteristic-p maps -----------------------------------------------

    def frobenius(self, e=1):
        """Return self ** (p ** e); coefficients are fixed since c^p = c in F_p."""
        F = self.field
        if not F.variables:
            return self
        q = F.p ** e
        num = {tuple(x * q for x in ex): c for ex, c in self.num.items()}
        den = {tuple(x * q for x in ex): c for ex, c in self.den.items()}
        return FieldElement._raw(F, num, den)

    def pth_root(self):
        """Return r with r**p == self, or None (NoRoot) when no root exists in the field."""
        F = self.field
        if not F.variables:
            return self
        p = F.p
        if not self.num:
            return self
        # f/g = f g^(p-1) / g^p
        f = self.num
        for _ in range(p - 1):
            f = _pmul(f, self.den, p)
        if any(x % p for ex in f for x in ex):
            return NoRoot
        root = {tuple(x // p for x in ex): c for ex, c in f.items()}
        return FieldElement._make(F, root, dict(self.den))

    # -- display ---------------------------------------------------------------

    def __str__(self):
        F = self.field
        num = _poly_str(self.num, F)
        if self.den == {F._zero_exp: 1}:
            return num
        den = _poly_str(self.den, F)
        return f"({num})/({den})"

    def __repr__(self):
        return f"FieldElement({self}, {self.field})"


def _normalize(F, num, den):
    p = F.p
    z = F._zero_exp
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return {}, {z: 1}
    if not F.variables:
        c = (num.get((), 0) * pow(den[()], p - 2, p)) % p
        return ({(): c} if c else {}), {(): 1}
    # strip common monomial content
    k = F.k
    low = [min(min(e[i] for e in num), min(e[i] for e in den)) for i in range(k)]
    if any(low):
        num = {tuple(x - l for x, l in zip(e, low)): c for e, c in num.items()}
        den = {tuple(x - l for x, l in zip(e, low)): c for e, c in den.items()}
    if k == 1 and len(num) > 1 and len(den) > 1:
        g = _dense_gcd(_to_dense(num), _to_dense(den), p)
        if len(g) > 1:
            qn, _ = _dense_divmod(_to_dense(num), g, p)
            qd, _ = _dense_divmod(_to_dense(den), g, p)
            num, den = _from_dense(qn), _from_dense(qd)
    lc = den[_lead(den)]
    if lc != 1:
        inv = pow(lc, p - 2, p)
        num = _pscale(num, inv, p)
        den = _pscale(den, inv, p)
    return num, den


def _poly_str(a, F):
    if not a:
        return "0"
    parts = []
    for e in sorted(a, key=lambda e: (sum(e), e), reverse=True):
        c = a[e]
        factors = []
        for name, x in zip(F.variables, e):
            if x == 1:
                factors.append(name)
            elif x > 1:
                factors.append(f"{name}^{x}")
        if c != 1 or not factors:
            factors.insert(0, str(c))
        parts.append("*".join(factors))
    return "+".join(parts)


# -- literal grammar ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        col = m.start(m.lastindex) + 1
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), col))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", column=col)
            tokens.append(("op", ch, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text, field, names):
        self.tokens = _tokenize(text)
        self.i = 0
        self.field = field
        self.names = names or {}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, column=tok[2])

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected token {tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            tok = self.take()
            rhs = self.term()
            value = self.combine(value, tok, rhs)
        return value

    def term(self):
        value = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            rhs = self.unary()
            value = self.combine(value, tok, rhs)
        return value

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            tok = self.take()
            value = self.unary()
            try:
                return -value
            except Exception as exc:
                raise self.error(str(exc), tok) from None
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            tok = self.take()
            exp = self.take()
            if exp[0] != "int":
                raise self.error("exponent must be a non-negative integer", exp)
            if not isinstance(base, FieldElement):
                raise self.error("only scalars may be raised to a power", tok)
            return base ** exp[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return self.field.const(val)
        if kind == "name":
            if val in self.field.variables:
                return self.field.var(val)
            if val in self.names:
                return self.names[val]
            raise UnknownName(f"unknown name {val!r}", column=tok[2])
        if kind == "op" and val == "(":
            value = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                raise self.error("expected ')'", close)
            return value
        raise self.error(f"unexpected token {val!r}" if val else "unexpected end of input", tok)

    def combine(self, lhs, tok, rhs):
        op = tok[1]
        lscalar = isinstance(lhs, FieldElement)
        rscalar = isinstance(rhs, FieldElement)
        if op in "+-" and lscalar != rscalar:
            raise self.error("cannot add a scalar and a vector", tok)
        if op == "*" and not (lscalar or rscalar):
            raise self.error("cannot multiply two vectors", tok)
        if op == "/" and not rscalar:
            raise self.error("can only divide by a scalar", tok)
        try:
            if op == "+":
                return lhs + rhs
            if op == "-":
                return lhs - rhs
            if op == "*":
                return lhs * rhs if not lscalar or rscalar else rhs * lhs
            return lhs * rhs.inv()
        except DivisionByZero:
            raise self.error("division by zero", tok) from None


def parse_expression(text, field, names=None):
    """Parse a coefficient literal; ``names`` maps extra identifiers to vector values."""
    return _Parser(text, field, names).parse()
