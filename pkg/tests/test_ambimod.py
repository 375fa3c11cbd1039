from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ambitrace import zoo
from ambitrace.ambimod import (
    NotAmbidextrousError,
    NotInIdealError,
    Verdict,
    ambi_check,
    check_split_canonical,
    mod_dim,
    trace_on_ideal,
)
from ambitrace.identities import CATEGORIES, category_objects
from ambitrace.kernel import GF, QQ, Matrix
from ambitrace.repcat import Morphism, cat_dim, cat_trace, end_basis, identity, unit


def _random_endo(rng, V):
    F = V.field
    f = identity(V).scale(0)
    for b in end_basis(V):
        c = F.random(rng, ()) if F.p else int(rng.integers(-3, 4))
        f = f + b.scale(c)
    return f


# ---------------------------------------------------------------------------
# ambidexterity verdicts
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("F,flavor", [(GF(2), "group"), (GF(5), "lie"), (QQ, "super-lie")])
def test_unit_is_ambidextrous(F, flavor):
    assert ambi_check(unit(F, flavor)).verdict == Verdict.AMBIDEXTROUS


def test_c2_regular_module_is_not_ambidextrous():
    report = ambi_check(zoo.cyclic_module(2, 2))
    assert report.verdict == Verdict.NOT_AMBIDEXTROUS
    assert tuple(s.value for s in report.witness_pair) == (1, 0)
    doc = report.to_json()
    assert doc["verdict"] == "not_ambidextrous" and "witness_index" in doc


def test_klein_v1_ambidextrous():
    report = ambi_check(zoo.klein_from_string("V(1,a)", GF(4)))
    assert report.ambidextrous
    assert all(left == right for _, left, right in report.basis_results)


def test_baby_verma_regular_nilpotent_not_ambidextrous():
    V = zoo.sl2_baby_verma(5, zoo.ChiType("regular-nilpotent"), 0)
    assert ambi_check(V).verdict == Verdict.NOT_AMBIDEXTROUS


def test_gl11_natural_ambidextrous():
    assert ambi_check(zoo.gl11_natural(QQ)).ambidextrous


def test_decomposable_object_is_reported():
    V = zoo.cyclic_module(3, 1)
    from ambitrace.repcat import direct_sum

    assert ambi_check(direct_sum(V, V)).verdict != Verdict.AMBIDEXTROUS


# ---------------------------------------------------------------------------
# induced traces and modified dimensions
# ---------------------------------------------------------------------------


def test_trace_of_identity_on_j_is_one():
    for J in (zoo.klein_from_string("V(1,a)", GF(4)), zoo.sl2_restricted_simple(5, 2), zoo.gl11_natural(QQ)):
        assert trace_on_ideal(J, J, identity(J)) == 1
        assert mod_dim(J, J) == 1


@settings(max_examples=20, deadline=None)
@given(cat=st.sampled_from(CATEGORIES), data=st.data(), seed=st.integers(0, 10**6))
def test_unit_trace_is_categorical_trace(cat, data, seed):
    V = data.draw(st.sampled_from(category_objects(cat)))
    f = _random_endo(np.random.default_rng(seed), V)
    one = unit(V.field, V.flavor)
    assert trace_on_ideal(one, V, f) == cat_trace(f)


@pytest.mark.parametrize("cat", CATEGORIES)
def test_unit_modified_dimension_is_categorical_dimension(cat):
    for M in category_objects(cat):
        assert mod_dim(unit(M.field, M.flavor), M) == cat_dim(M)


def test_klein_v2_has_zero_modified_dimension():
    F = GF(4)
    V1, V2 = zoo.klein_from_string("V(1,a)", F), zoo.klein_from_string("V(2,a)", F)
    assert trace_on_ideal(V1, V2, identity(V2)) == 0


@pytest.mark.parametrize("lam", range(4))
def test_steinberg_has_zero_dimension_for_restricted_simples(lam):
    J = zoo.sl2_restricted_simple(5, lam)
    St = zoo.sl2_restricted_simple(5, 4)
    assert mod_dim(J, St) == 0


def test_steinberg_against_itself_is_one():
    St = zoo.sl2_restricted_simple(5, 4)
    assert mod_dim(St, St) == 1


def test_non_ambidextrous_j_is_refused():
    V = zoo.sl2_baby_verma(5, zoo.ChiType("regular-nilpotent"), 0)
    St = zoo.sl2_restricted_simple(5, 4)
    with pytest.raises(NotAmbidextrousError):
        mod_dim(V, St)


def test_object_outside_ideal_is_refused():
    F = GF(4)
    with pytest.raises(NotInIdealError):
        mod_dim(zoo.klein_from_string("V(1,a)", F), zoo.klein_module("trivial", F))


def test_trace_needs_endomorphism_of_v():
    J = zoo.sl2_restricted_simple(5, 1)
    with pytest.raises(ValueError):
        trace_on_ideal(J, J, identity(zoo.sl2_restricted_simple(5, 2)))


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_induced_trace_is_cyclic_on_klein_ideal(seed):
    rng = np.random.default_rng(seed)
    F = GF(4)
    J = zoo.klein_from_string("V(1,a)", F)
    V = zoo.klein_from_string("V(2,a)", F)
    from ambitrace.repcat import hom_basis

    def rand(M, N):
        f = None
        for b in hom_basis(M, N):
            term = b.scale(F.random(rng, ()))
            f = term if f is None else f + term
        return f

    f, g = rand(J, V), rand(V, J)
    assert trace_on_ideal(J, V, f @ g) == trace_on_ideal(J, J, g @ f)


# ---------------------------------------------------------------------------
# the canonical evaluation epimorphism
# ---------------------------------------------------------------------------


def test_split_for_unit():
    one = unit(GF(3))
    assert check_split_canonical(one, one)


@pytest.mark.parametrize("p", [3, 5])
def test_split_for_cyclic_modules_tracks_divisibility(p):
    one = unit(GF(p))
    for r in range(1, p + 1):
        assert check_split_canonical(zoo.cyclic_module(p, r), one) == (r % p != 0)


def test_split_agrees_with_ideal_equality_for_klein_v2():
    # I_V(2,a) = I_V(1,a), so the evaluation map splits even though d = 0 there
    F = GF(4)
    V1, V2 = zoo.klein_from_string("V(1,a)", F), zoo.klein_from_string("V(2,a)", F)
    assert check_split_canonical(V2, V1)
    assert not check_split_canonical(V1, zoo.klein_from_string("V(3,a)", F))


def test_split_matches_nonzero_dimension_for_simple_v():
    St = zoo.sl2_restricted_simple(5, 4)
    for lam in range(4):
        J = zoo.sl2_restricted_simple(5, lam)
        assert not check_split_canonical(St, J)
        assert mod_dim(J, St) == 0
    for lam in range(5):
        L = zoo.sl2_restricted_simple(5, lam)
        assert check_split_canonical(L, L)
