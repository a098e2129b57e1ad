import itertools
import random

import pytest
from hypothesis import given, strategies as st

from rlsuper.errors import ExhaustionUnavailable, NotAnIdeal, NotHomogeneous, ParityError
from rlsuper.exactfield import FieldSpec
from rlsuper.harness import build_example, generate_corpus
from rlsuper.liesuper import (
    RestrictedLieSuperalgebra,
    center,
    compute_M,
    compute_p_nil_part,
    quotient,
    rebase,
    restricted_closure,
    series,
    verify_axioms,
)


@pytest.fixture(scope="module")
def corpus():
    out = []
    for profile in ("nilpotent_pnil", "toral_mix", "odd_heavy"):
        out += generate_corpus(12, seed=3, profile=profile)
    return out


def even_heisenberg(p=3):
    F = FieldSpec(p)
    return RestrictedLieSuperalgebra(F, ["a", "b", "c"], [0, 0, 0], {(0, 1): [0, 0, 1]}, {2: [0, 0, 1]})


# -- construction and brackets -------------------------------------------------


def test_ex41_brackets(ex41):
    y, z = ex41["y"], ex41["z"]
    assert ex41.bracket(y, z) == ex41["x3"]
    assert ex41.bracket(y + z, y + z) == ex41["x1"] + ex41["x2"] + ex41["x3"] * 2
    x = ex41["x1"] + ex41["x2"]
    assert ex41.bracket(x, x).is_zero()


def test_super_anticommutativity_completion():
    F = FieldSpec(3)
    L = RestrictedLieSuperalgebra(F, ["x", "y"], [0, 1], {(1, 0): [0, 1]}, {})
    assert L.bracket(L["x"], L["y"]) == L["y"] * -1


def test_axioms_on_examples(ex41, ex41_alpha1, heis_super, heis_toral):
    for L in (ex41, ex41_alpha1, heis_super, heis_toral, build_example("abelian(2,1)", p=5)):
        rep = verify_axioms(L, samples=10, seed=1)
        assert rep.ok, rep.failures()


def test_grading_violation_is_reported():
    F = FieldSpec(3)
    L = RestrictedLieSuperalgebra(F, ["x", "y"], [0, 1], {(1, 1): [0, 1]}, {})
    rep = verify_axioms(L)
    assert rep.status("grading") == "FAIL"
    assert rep.failures()[0][2] is not None


def test_jacobi_violation_is_reported():
    # (a,b) = a and (a,c) = b with c acting trivially elsewhere breaks Jacobi
    F = FieldSpec(5)
    L = RestrictedLieSuperalgebra(F, ["a", "b", "c"], [0, 0, 0], {(0, 1): [1, 0, 0], (0, 2): [0, 1, 0]}, {})
    assert verify_axioms(L).status("jacobi") == "FAIL"


def test_odd_cube_axiom_at_p3():
    F = FieldSpec(3)
    # (y,y) = x with (y,x) = y violates ((y,y),y) = 0
    L = RestrictedLieSuperalgebra(F, ["x", "y"], [0, 1], {(1, 1): [1, 0], (1, 0): [0, 1]}, {0: [1, 0]})
    assert verify_axioms(L).status("odd_cube") == "FAIL"


# -- p-map ---------------------------------------------------------------------


def test_s_coefficients():
    A = build_example("abelian(2,0)", p=5)
    assert all(s.is_zero() for s in A.s_coefficients(A["x1"], A["x2"]))
    H = even_heisenberg()
    assert all(s.is_zero() for s in H.s_coefficients(H["a"], H["b"]))
    with pytest.raises(ParityError):
        H.s_coefficients(H["a"], build_example("heisenberg_super")["y"])


def test_s_coefficients_nonabelian():
    # two-dimensional (a,b) = b at p = 3: ad(la+b)^2(a) = -(l a + b ... ) computed by hand
    F = FieldSpec(3)
    L = RestrictedLieSuperalgebra(F, ["a", "b"], [0, 0], {(0, 1): [0, 2]}, {0: [1, 0]})
    a, b = L["a"], L["b"]
    # ad(la+b)(a) = (a, la+b) = (a,b) = 2b ; ad(la+b)(2b) = 2(b, la+b) = 2l(b,a) = 2l*b
    s1, s2 = L.s_coefficients(a, b)
    assert s1.is_zero()
    assert s2 == b * 2 / 2


def test_p_power_examples(ex41, ex41_alpha1, heis_super):
    assert ex41.p_power(ex41["x1"]) == ex41["x1"]
    t = ex41.field.var("t")
    assert ex41.p_power(ex41["x2"]) == ex41["x1"] * t * t
    L = ex41_alpha1
    assert L.p_power(L["x1"] + L["x2"]) == L["x1"] * 2
    assert L.p_power(L.zero()).is_zero()
    assert heis_super.p_power(heis_super["x"]).is_zero()
    with pytest.raises(ParityError):
        ex41.p_power(ex41["y"])


def test_p_nilpotence(ex41, ex41_alpha1, heis_super):
    assert ex41.is_p_nilpotent(ex41["x1"]) == (False, None)
    assert heis_super.is_p_nilpotent(heis_super["x"]) == (True, 1)
    L = ex41_alpha1
    w = L.bracket(L["y"] - L["z"], L["y"] - L["z"])
    assert w == L["x1"] + L["x2"] + L["x3"]
    assert L.is_p_nilpotent(w) == (True, 1)
    assert L.is_p_nilpotent(L.zero()) == (True, 0)


@given(seed=st.integers(0, 10 ** 6), pick=st.integers(0, 5))
def test_p_power_fold_order(seed, pick, corpus):
    L = corpus[pick * 5 % len(corpus)]
    rng = random.Random(seed)
    x = L.random_element(rng, parity=0)
    order = list(L.even_indices)
    rng.shuffle(order)
    assert L.p_power(x, order=order) == L.p_power(x)


@given(seed=st.integers(0, 10 ** 6))
def test_p_power_under_basis_permutation(seed, corpus):
    rng = random.Random(seed)
    L = corpus[rng.randrange(len(corpus))]
    perm = list(range(L.dim))
    rng.shuffle(perm)
    basis = [L.basis_element(i) for i in perm]
    Lp = rebase(L, basis, [L.names[i] for i in perm])
    x = L.random_element(rng, parity=0)
    xp = Lp.element([x.coords[i] for i in perm])
    img = Lp.p_power(xp)
    assert [img.coords[perm.index(i)] for i in range(L.dim)] == list(L.p_power(x).coords)


@given(seed=st.integers(0, 10 ** 6))
def test_restricted_ad_on_general_elements(seed, corpus):
    rng = random.Random(seed)
    L = corpus[rng.randrange(len(corpus))]
    x = L.random_element(rng, parity=0)
    v = L.random_element(rng)
    w = v
    for _ in range(L.field.p):
        w = L.bracket(w, x)
    assert L.bracket(v, L.p_power(x)) == w


def test_p_power_semilinear(ex41):
    t = ex41.field.var("t")
    x = ex41["x2"] + ex41["x3"] * (t + 1)
    assert ex41.p_power(x * t) == ex41.p_power(x) * t ** 3


# -- closures, quotients, series ---------------------------------------------------


def test_restricted_closure(ex41):
    assert restricted_closure(ex41, []).dim == 0
    S = restricted_closure(ex41, [ex41["y"]])
    assert S == ex41.span([ex41["y"], ex41["x1"], ex41["x3"]])
    H = build_example("even_heisenberg_toral", p=3)
    assert restricted_closure(H, [H["c"]]) == H.span([H["c"]])


def test_quotient_examples(ex41):
    Q = quotient(ex41, ex41.span([ex41["x1"]]))
    assert (Q.n, Q.m) == (2, 2)
    assert all(not any(Q.pmap_table[i]) for i in Q.even_indices)
    assert quotient(ex41, ex41.zero_space()) == ex41
    assert quotient(ex41, ex41.full_space()).dim == 0
    with pytest.raises(NotAnIdeal):
        quotient(ex41, ex41.span([ex41["y"]]))
    with pytest.raises(NotHomogeneous):
        quotient(ex41, ex41.span([ex41["x1"] + ex41["y"]]))


def test_quotient_projection_is_homomorphism(ex41_alpha1):
    L = ex41_alpha1
    I = restricted_closure(L, [L["x1"] + L["x2"] + L["x3"]])
    Q, proj = quotient(L, I, return_map=True)
    rng = random.Random(2)
    for _ in range(20):
        u, v = L.random_element(rng), L.random_element(rng)
        assert proj(L.bracket(u, v)) == Q.bracket(proj(u), proj(v))
        x = L.random_element(rng, parity=0)
        assert proj(L.p_power(x)) == Q.p_power(proj(x))


@given(seed=st.integers(0, 10 ** 6))
def test_closure_commutes_with_projection(seed, corpus):
    rng = random.Random(seed)
    L = corpus[rng.randrange(len(corpus))]
    I = restricted_closure(L, [L.random_element(rng, parity=rng.randrange(2))])
    Q, proj = quotient(L, I, return_map=True)
    X = [L.random_element(rng, parity=rng.randrange(2)) for _ in range(2)]
    lhs = restricted_closure(Q, [proj(x) for x in X])
    big = restricted_closure(L, X) + I
    rhs = Q.span([proj(v) for v in L.elements_of(big)])
    assert lhs == rhs


def test_series_examples(ex41, heis_super):
    A = build_example("abelian(2,2)", p=3)
    assert series(A, "lower_central").terms[1].dim == 0
    assert series(A, "derived").length == 1
    lcs = series(ex41, "lower_central")
    assert lcs.terms[1] == ex41.even_space()
    assert lcs.is_nilpotent and lcs.length == 2
    assert series(heis_super, "derived").length == 2


def test_center_examples(ex41, heis_super):
    A = build_example("abelian(1,2)", p=3)
    assert center(A) == A.full_space()
    assert center(ex41) == ex41.even_space()
    assert center(heis_super) == heis_super.span([heis_super["x"]])


def test_engel_on_corpus(corpus):
    for L in corpus:
        nil_ad = True
        for e in L.basis():
            v = list(L.basis())
            for _ in range(L.dim):
                v = [L.bracket(w, e) for w in v]
            nil_ad &= all(w.is_zero() for w in v)
        if nil_ad:
            assert series(L, "lower_central").is_nilpotent, L.label


def test_pnil_even_part_forces_nilpotence(corpus):
    for L in corpus:
        if all(L.is_p_nilpotent(x)[0] for x in L.enumerate_space(L.even_space())):
            assert series(L, "lower_central").is_nilpotent, L.label


# -- M and the p-nil part ------------------------------------------------------------


def test_compute_M_examples(ex41, ex41_alpha1):
    A = build_example("abelian(1,2)", p=3)
    assert compute_M(A).space == A.odd_space()
    L = ex41_alpha1
    M = compute_M(L)
    assert M.complete and M.space == L.span([L["y"] - L["z"]])
    S = compute_M(ex41, ("sampled", 20, 0))
    assert S.space.dim == 0 and not S.complete
    with pytest.raises(ExhaustionUnavailable):
        compute_M(ex41)


def test_compute_M_exhaustive_property(corpus):
    for L in corpus:
        res = compute_M(L)
        M = res.space
        good = [y for y in L.enumerate_space(L.odd_space()) if L.is_p_nilpotent(L.bracket(y, y))[0]]
        assert all(y.coords in M for y in good)
        # M is spanned by vectors with p-nilpotent square
        assert all(L.is_p_nilpotent(L.bracket(y, y))[0] for y in res.found)
        assert L.span(res.found) == M if res.found else M.dim == 0


def test_p_nil_part(heis_super, ex41, ex41_alpha1):
    assert compute_p_nil_part(heis_super).space == heis_super.even_space()
    assert compute_p_nil_part(ex41, ("sampled", 10, 0)).space.dim == 0
    A = build_example("abelian(2,1)", p=3)
    assert compute_p_nil_part(A).space == A.even_space()
    P = compute_p_nil_part(ex41_alpha1).space
    L = ex41_alpha1
    assert P == L.span([L["x1"] - L["x3"], L["x2"] - L["x3"]])


def test_enumeration_budget(ex41_alpha1):
    with pytest.raises(ExhaustionUnavailable):
        list(ex41_alpha1.enumerate_space(ex41_alpha1.full_space(), budget=10))
    assert len(list(ex41_alpha1.enumerate_space(ex41_alpha1.odd_space()))) == 9
