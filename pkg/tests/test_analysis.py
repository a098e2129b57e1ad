import pytest

from rlsuper.analysis import (
    DIVERGENCE,
    check_condition2,
    check_condition3,
    check_nonmatrix_identity,
    check_petrogradsky,
    equivalence_audit,
    subspace_p_nilpotence,
)
from rlsuper.errors import InvalidM
from rlsuper.harness import build_example, generate_corpus
from rlsuper.liesuper import bracket_span, compute_M


@pytest.fixture(scope="module")
def audit_corpus():
    out = []
    for profile in ("nilpotent_pnil", "toral_mix", "odd_heavy"):
        out += generate_corpus(6, seed=5, profile=profile)
    return out


def test_petrogradsky(ex41, heis_toral):
    A = build_example("abelian(1,1)", p=3)
    assert check_petrogradsky(A, A.zero_space(), A.zero_space()).passed
    assert check_petrogradsky(ex41, ex41.even_space(), ex41.zero_space()).passed
    rep = check_petrogradsky(heis_toral, heis_toral.full_space(), heis_toral.span([heis_toral["c"]]))
    assert rep.verdict == "FAIL"
    assert rep.status("B0_p_nilpotent") == "FAIL"
    assert rep.witness("B0_p_nilpotent") == heis_toral["c"]


def test_petrogradsky_structural_failures(ex41):
    rep = check_petrogradsky(ex41, ex41.zero_space(), ex41.even_space())
    assert rep.status("B_in_A") == "FAIL"
    rep = check_petrogradsky(ex41, ex41.full_space(), ex41.zero_space())
    assert rep.status("AA_in_B") == "FAIL"
    assert rep.status("B0_p_nilpotent") == "PASS"
    rep = check_petrogradsky(ex41, ex41.span([ex41["y"]]), ex41.zero_space())
    assert rep.status("A_restricted_ideal") == "FAIL"
    assert all(c[3] is not None for c in rep.failures())


def test_condition2_examples(ex41_alpha1, heis_toral):
    A = build_example("abelian(2,2)", p=3)
    assert check_condition2(A).passed
    L = ex41_alpha1
    rep = check_condition2(L)
    assert rep.passed and rep.complete
    assert rep.parts["M"] == L.span([L["y"] - L["z"]])
    ML1 = bracket_span(L, rep.parts["M"], L.odd_space())
    assert ML1 == L.span([L["x1"] - L["x3"], L["x3"] - L["x2"]])
    rep = check_condition2(heis_toral)
    assert rep.verdict == "FAIL" and rep.witness("L0L0_p_nilpotent") == heis_toral["c"]


def test_condition2_supplied_M(ex41_alpha1):
    L = ex41_alpha1
    assert check_condition2(L, M=L.span([L["y"] - L["z"]])).passed
    with pytest.raises(InvalidM):
        check_condition2(L, M=L.span([L["y"]]))
    with pytest.raises(InvalidM):
        check_condition2(L, M=L.span([L["x1"]]))


def test_condition2_monotone_in_M(audit_corpus):
    for L in audit_corpus:
        M = compute_M(L).space
        found = compute_M(L).found
        if not found:
            continue
        small = L.span(found[:1])
        if check_condition2(L, M=small).passed:
            assert check_condition2(L, M=M).passed, L.label


def test_condition2_over_function_field(ex41):
    rep = check_condition2(ex41, seed=1)
    assert rep.verdict == "INCOMPLETE" and not rep.complete
    assert rep.parts["M"].dim == 0
    assert rep.status("dim_L1_mod_M") == "INCOMPLETE"


def test_condition3_examples(ex41, heis_toral):
    A = build_example("abelian(2,1)", p=3)
    rep = check_condition3(A)
    assert rep.passed and rep.exponents["N"] == 1 and rep.parts["ideal_dim"] == 0
    rep = check_condition3(ex41)
    assert rep.passed and rep.exponents["N"] == 6
    rep = check_condition3(heis_toral)
    assert rep.verdict == "FAIL"
    w = rep.witness("commutator_ideal_nilpotent")
    assert str(w) == "c"


def test_condition3_without_descent_agrees(ex41):
    a = check_condition3(ex41, use_descent=False)
    b = check_condition3(ex41)
    assert a.verdict == b.verdict and a.exponents == b.exponents


def test_nonmatrix_identity(ex41, heis_toral):
    A = build_example("abelian(2,1)", p=3)
    assert check_nonmatrix_identity(A, 3)[0] == 0
    assert check_nonmatrix_identity(ex41, 3) == (2, True)
    assert check_nonmatrix_identity(heis_toral, 5) == (None, True)
    # t_max too small to see the index 6
    assert check_nonmatrix_identity(ex41, 1) == (None, False)


def test_identity_implies_condition3(audit_corpus):
    for L in audit_corpus:
        t, _ = check_nonmatrix_identity(L, 3, mode="exhaustive")
        if t is not None:
            assert check_condition3(L).passed, L.label


def test_audit_examples(ex41, ex41_alpha1, heis_toral):
    assert equivalence_audit(ex41_alpha1).verdict == "PASS"
    rep = equivalence_audit(heis_toral)
    assert rep.verdict == "PASS"
    assert rep.parts["condition2"].verdict == rep.parts["condition3"].verdict == "FAIL"
    rep = equivalence_audit(ex41, seed=1)
    assert rep.verdict == DIVERGENCE
    assert rep.parts["condition3"].passed


def test_audit_agreement_on_corpus(audit_corpus):
    for L in audit_corpus:
        rep = equivalence_audit(L)
        assert rep.verdict == "PASS", L.label


def test_fail_reports_carry_witnesses(audit_corpus):
    for L in audit_corpus:
        for rep in (check_condition2(L), check_condition3(L)):
            assert all(c[3] is not None for c in rep.failures())
            if rep.verdict == "INCOMPLETE":
                assert not L.field.is_finite


def test_subspace_p_nilpotence_sampled(ex41):
    ok, s, w, complete = subspace_p_nilpotence(ex41, ex41.even_space(), ("sampled", 5, 0))
    assert not ok and w is not None and complete
    ok, s, w, complete = subspace_p_nilpotence(ex41, ex41.zero_space(), ("sampled", 5, 0))
    assert ok and complete
