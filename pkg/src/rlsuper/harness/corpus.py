"""
Seeded random corpus of small restricted Lie superalgebras over F_3 and F_5.

Candidates come from structured templates (central even part, two-step even
Heisenberg, toral weight algebras, named examples) with random constants, and
are kept only if verify_axioms passes.  Profiles bias the p-map:

* ``nilpotent_pnil``: p-map identically zero;
* ``toral_mix``: toral and random p-maps, starting with the even Heisenberg
  algebra with toral centre;
* ``odd_heavy``: two odd basis elements with random odd brackets.

``toral_mix`` and ``odd_heavy`` also draw unstructured sparse candidates,
which are usually rejected.
"""

from __future__ import annotations

import random

from ..errors import InvalidParameter
from ..exactfield import FieldSpec
from ..liesuper import RestrictedLieSuperalgebra, derive_seed, verify_axioms
from .examples import build_example

__all__ = ["Corpus", "generate_corpus", "PROFILES"]

PROFILES = ("nilpotent_pnil", "toral_mix", "odd_heavy")
PRIMES = (3, 5)
MAX_ATTEMPTS = 200


class Corpus(list):
    """Accepted algebras (each carries a ``label``) plus rejection statistics."""

    def __init__(self, items=(), attempts=0, rejected=0):
        super().__init__(items)
        self.attempts = attempts
        self.rejected = rejected

    @property
    def rejection_rate(self):
        return self.rejected / self.attempts if self.attempts else 0.0


def _rand(rng, p, zero_weight=0.3):
    return 0 if rng.random() < zero_weight else rng.randrange(1, p)


def _algebra(F, even, odd, brackets, pmap):
    names = list(even) + list(odd)
    parity = [0] * len(even) + [1] * len(odd)
    return RestrictedLieSuperalgebra(F, names, parity, brackets, pmap)


def _pmap_matrix(rng, p, n, kind):
    """Rows are p-map images of the even basis in the even coordinates."""
    rows = []
    for i in range(n):
        if kind == "zero":
            row = [0] * n
        elif kind == "nilpotent":
            row = [_rand(rng, p) if j > i else 0 for j in range(n)]
        elif kind == "toral":
            row = [0] * n
            row[i] = rng.choice([0, 1, 1])
        else:
            row = [_rand(rng, p, 0.5) for _ in range(n)]
        rows.append(row)
    return rows


def central_template(rng, p, n, m, pmap_kind):
    """L_0 central, random symmetric odd brackets into L_0, p-map from a matrix."""
    F = FieldSpec(p)
    brackets = {}
    for a in range(m):
        for b in range(a, m):
            v = [_rand(rng, p) for _ in range(n)] + [0] * m
            brackets[(n + a, n + b)] = v
    pmap = {}
    for i, row in enumerate(_pmap_matrix(rng, p, n, pmap_kind)):
        pmap[i] = row + [0] * m
    even = [f"x{i + 1}" for i in range(n)]
    odd = [f"y{i + 1}" for i in range(m)]
    return _algebra(F, even, odd, brackets, pmap)


def heisenberg_template(rng, p, m, pmap_kind):
    """(a, b) = c with c central; optional odd y with (y, y) = lambda c."""
    F = FieldSpec(p)
    brackets = {(0, 1): [0, 0, 1] + [0] * m}
    if m:
        brackets[(3, 3)] = [0, 0, rng.randrange(p), 0]
    if pmap_kind == "zero":
        mu, la, lb = 0, 0, 0
    elif pmap_kind == "nilpotent":
        mu, la, lb = 0, rng.randrange(p), rng.randrange(p)
    else:
        mu, la, lb = rng.choice([1, 1, rng.randrange(p)]), rng.randrange(p), rng.randrange(p)
    pmap = {0: [0, 0, la] + [0] * m, 1: [0, 0, lb] + [0] * m, 2: [0, 0, mu] + [0] * m}
    return _algebra(F, ["a", "b", "c"], ["y"][:m], brackets, pmap)


def weight_template(rng, p, m, pmap_kind):
    """Toral h with (y_i, h) = w_i y_i; (y_i, y_j) = c when w_i + w_j = 0, c central."""
    F = FieldSpec(p)
    weights = [rng.randrange(p) for _ in range(m)]
    brackets = {}
    for i, w in enumerate(weights):
        v = [0, 0] + [0] * m
        v[2 + i] = w
        brackets[(2 + i, 0)] = v
    for i in range(m):
        for j in range(i, m):
            if (weights[i] + weights[j]) % p == 0 and rng.random() < 0.8:
                brackets[(2 + i, 2 + j)] = [0, rng.randrange(1, p)] + [0] * m
    mu = 0 if pmap_kind in ("zero", "nilpotent") else rng.choice([0, 1])
    pmap = {0: [1, 0] + [0] * m, 1: [0, mu] + [0] * m}
    return _algebra(F, ["h", "c"], [f"y{i + 1}" for i in range(m)], brackets, pmap)


def raw_template(rng, p):
    """Sparse random brackets and p-map of the right parity; most candidates fail the axioms."""
    F = FieldSpec(p)
    n, m = rng.randint(1, 2), rng.randint(1, 2)
    d = n + m
    parity = [0] * n + [1] * m
    brackets = {}
    for i in range(d):
        for j in range(i, d):
            if rng.random() < 0.3:
                want = (parity[i] + parity[j]) % 2
                k = rng.choice([x for x in range(d) if parity[x] == want])
                v = [0] * d
                v[k] = rng.randrange(1, p)
                brackets[(i, j)] = v
    pmap = {}
    for i in range(n):
        v = [0] * d
        if rng.random() < 0.5:
            v[rng.randrange(n)] = rng.randrange(1, p)
        pmap[i] = v
    return _algebra(F, [f"x{i + 1}" for i in range(n)], [f"y{i + 1}" for i in range(m)], brackets, pmap)


def _candidate(rng, profile, k):
    p = rng.choice(PRIMES)
    if profile == "nilpotent_pnil":
        choice = rng.choice(["central", "central", "heisenberg", "heisenberg_super", "abelian"])
        if choice == "central":
            return choice, central_template(rng, p, rng.randint(1, 3), rng.randint(0, 2), "zero")
        if choice == "heisenberg":
            return choice, heisenberg_template(rng, p, rng.randint(0, 1), "zero")
        if choice == "heisenberg_super":
            return choice, build_example("heisenberg_super", p=p)
        return choice, build_example(f"abelian({rng.randint(0, 3)},{rng.randint(0, 2)})", p=p)
    if profile == "toral_mix":
        if k == 0:
            return "even_heisenberg_toral", build_example("even_heisenberg_toral", p=p)
        choice = rng.choice(["ex41", "central", "heisenberg", "weight", "even_heisenberg_toral", "raw"])
        if choice == "raw":
            return choice, raw_template(rng, p)
        if choice == "ex41":
            return choice, build_example("ex41", p=p, alpha=rng.randrange(p))
        if choice == "central":
            kind = rng.choice(["toral", "random", "nilpotent"])
            return choice, central_template(rng, p, rng.randint(1, 3), rng.randint(0, 2), kind)
        if choice == "heisenberg":
            return choice, heisenberg_template(rng, p, rng.randint(0, 1), rng.choice(["random", "nilpotent"]))
        if choice == "weight":
            return choice, weight_template(rng, p, rng.randint(1, 2), "random")
        return choice, build_example("even_heisenberg_toral", p=p)
    if profile == "odd_heavy":
        choice = rng.choice(["central", "central", "weight", "ex41", "raw"])
        if choice == "raw":
            return choice, raw_template(rng, p)
        if choice == "central":
            kind = rng.choice(["random", "toral", "nilpotent", "zero"])
            return choice, central_template(rng, p, rng.randint(1, 3), 2, kind)
        if choice == "weight":
            return choice, weight_template(rng, p, 2, rng.choice(["random", "zero"]))
        return choice, build_example("ex41", p=p, alpha=rng.randrange(p))
    raise InvalidParameter(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")


def generate_corpus(count, seed=0, profile="toral_mix"):
    """``count`` axiom-passing algebras, deterministic in (seed, profile)."""
    if not isinstance(count, int) or count < 1:
        raise InvalidParameter("corpus count must be a positive integer")
    if profile not in PROFILES:
        raise InvalidParameter(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")
    rng = random.Random(derive_seed(seed, "corpus", profile))
    out = Corpus()
    attempts = rejected = 0
    while len(out) < count:
        if attempts >= MAX_ATTEMPTS * count:
            raise InvalidParameter(f"profile {profile!r} rejected {rejected} of {attempts} candidates")
        attempts += 1
        template, L = _candidate(rng, profile, len(out))
        if not verify_axioms(L, samples=5, seed=seed).ok:
            rejected += 1
            continue
        L.label = f"{profile}-{len(out):03d}-{template}-F{L.field.p}"
        out.append(L)
    out.attempts = attempts
    out.rejected = rejected
    return out
