import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rlsuper.errors import DimensionMismatch, NotContained
from rlsuper.exactfield import FieldSpec
from rlsuper.linalg import ModpEchelon, SparseEchelon, Subspace, kernel

F3 = FieldSpec(3)
N = 4

vec = st.lists(st.integers(0, 2), min_size=N, max_size=N)
vecs = st.lists(vec, min_size=0, max_size=5)


def as_field(v):
    return tuple(F3.const(c) for c in v)


def brute_span(rows):
    """Every F_3 combination of the rows, as integer tuples."""
    out = set()
    for coeffs in itertools.product(range(3), repeat=len(rows)):
        out.add(tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % 3 for i in range(N)))
    return out or {(0,) * N}


@given(vecs, vec)
def test_membership_matches_enumeration(rows, v):
    S = Subspace(F3, N, [as_field(r) for r in rows])
    members = brute_span(rows)
    assert 3 ** S.dim == len(members)
    assert (as_field(v) in S) == (tuple(v) in members)


@given(vecs, vecs)
def test_intersection_and_sum(r1, r2):
    S = Subspace(F3, N, [as_field(r) for r in r1])
    T = Subspace(F3, N, [as_field(r) for r in r2])
    a, b = brute_span(r1), brute_span(r2)
    assert 3 ** S.intersect(T).dim == len(a & b)
    assert S.dim + T.dim == (S + T).dim + S.intersect(T).dim


@given(vecs)
def test_echelon_form_is_canonical(rows):
    S = Subspace(F3, N, [as_field(r) for r in rows])
    T = Subspace(F3, N, list(reversed(S.basis)) + [as_field(r) for r in rows])
    assert S == T and S.basis == T.basis


@given(vecs)
def test_kernel_is_annihilator(rows):
    K = kernel(F3, [as_field(r) for r in rows], N)
    for x in K.basis:
        for r in rows:
            assert sum((F3.const(a) * b for a, b in zip(r, x)), F3.zero()) == F3.zero()
    rank = Subspace(F3, N, [as_field(r) for r in rows]).dim
    assert K.dim == N - rank


@given(vecs, vec)
def test_sparse_echelon_agrees(rows, v):
    E = SparseEchelon(F3, N)
    for r in rows:
        E.add({i: F3.const(c) for i, c in enumerate(r) if c})
    S = Subspace(F3, N, [as_field(r) for r in rows])
    assert E.to_subspace() == S
    assert ({i: F3.const(c) for i, c in enumerate(v) if c} in E) == (as_field(v) in S)


@given(vecs, vec)
def test_modp_echelon_agrees(rows, v):
    E = ModpEchelon(3, N)
    if rows:
        E.add_rows(np.array(rows))
    S = Subspace(F3, N, [as_field(r) for r in rows])
    assert E.dim == S.dim
    assert E.contains(np.array(v)) == (as_field(v) in S)
    M = E.to_subspace()
    assert [tuple(int(x) for x in r) for r in M.B] == [tuple(int(x) for x in r) for r in S.basis]


def test_modp_echelon_large_batch():
    rng = np.random.default_rng(5)
    X = rng.integers(0, 5, size=(700, 300))
    E = ModpEchelon(5, 300)
    E.add_rows(X[:400])
    E.add_rows(X[400:])
    assert E.dim == 300
    assert all(E.contains(x) for x in X[:20])


def test_coordinates_and_errors():
    S = Subspace(F3, 3, [as_field([1, 1, 0])])
    assert S.coordinates(as_field([2, 2, 0])) == [F3.const(2)]
    with pytest.raises(NotContained):
        S.coordinates(as_field([0, 0, 1]))
    with pytest.raises(DimensionMismatch):
        Subspace(F3, 3, [as_field([1, 1])])
