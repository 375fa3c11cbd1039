from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ambitrace import zoo
from ambitrace.decomp import (
    NotAbsolutelyIndecomposableError,
    canonical_functional,
    canonical_scalar,
    find_retract,
    generalized_eigenspaces,
    ideal_equal,
    in_ideal,
    is_absolutely_indecomposable,
    is_projective,
    split_indecomposables,
)
from ambitrace.identities import CATEGORIES, category_objects
from ambitrace.kernel import GF, QQ, Matrix, det
from ambitrace.repcat import Morphism, direct_sum, dual, end_basis, hom_basis, identity, tensor, unit


def _isomorphic(M, N) -> bool:
    if M.dim != N.dim:
        return False
    return any(det(M.field, h.data) != M.field.zero for h in hom_basis(M, N))


# ---------------------------------------------------------------------------
# canonical scalar
# ---------------------------------------------------------------------------


def test_canonical_scalar_of_identity_and_nilpotent():
    V = zoo.cyclic_module(3, 3)
    assert canonical_scalar(identity(V)) == 1
    F = V.field
    x = Morphism(V, V, Matrix(V.field, F.sub(V.action("g"), F.eye(3))))
    assert canonical_scalar(x) == 0


def test_canonical_scalar_reads_off_first_basis_vector():
    F = GF(4)
    V1 = zoo.klein_from_string("V(1,a)", F)
    for h in end_basis(V1):
        c = canonical_scalar(h)
        assert h.data[0, 0] == c.value and h.data[1, 0] == 0


def test_canonical_scalar_refuses_split_endomorphism():
    F = GF(3)
    V = direct_sum(zoo.cyclic_module(3, 1, F), zoo.cyclic_module(3, 1, F))
    f = Morphism(V, V, Matrix(F, [[1, 0], [0, 2]]))
    with pytest.raises(NotAbsolutelyIndecomposableError):
        canonical_scalar(f)


@pytest.mark.parametrize("cat", CATEGORIES)
def test_canonical_functional_matches_scalar(cat):
    for M in category_objects(cat):
        for s in split_indecomposables(M):
            J = s.rep
            fn = canonical_functional(J)
            for h in end_basis(J):
                assert fn(h.data) == canonical_scalar(h).value


# ---------------------------------------------------------------------------
# indecomposability and splitting
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5])
def test_jordan_blocks_are_absolutely_indecomposable(p):
    for r in range(1, p + 1):
        assert is_absolutely_indecomposable(zoo.cyclic_module(p, r))


def test_direct_sum_is_decomposable():
    V1 = zoo.klein_from_string("V(1,a)", GF(4))
    assert not is_absolutely_indecomposable(direct_sum(V1, V1))


def test_klein_parameter_needs_extension_field():
    with pytest.raises(ValueError):
        zoo.klein_from_string("V(1,a)", GF(2))
    assert is_absolutely_indecomposable(zoo.klein_from_string("V(1,a)", GF(4)))


def test_regular_c2_square_splits_in_two():
    A = zoo.cyclic_module(2, 2)
    parts = split_indecomposables(tensor(A, A))
    assert sorted(s.rep.dim for s in parts) == [2, 2]
    assert all(_isomorphic(s.rep, A) for s in parts)


def test_klein_tensor_square_is_v2():
    F = GF(4)
    V1 = zoo.klein_from_string("V(1,a)", F)
    parts = split_indecomposables(tensor(V1, V1))
    assert len(parts) == 1
    assert _isomorphic(parts[0].rep, zoo.klein_from_string("V(2,a)", F))


def test_sl2_tensor_square_summands():
    p = 5
    V = zoo.sl2_baby_verma(p, zoo.ChiType("regular-nilpotent"), 0)
    parts = split_indecomposables(tensor(V, V))
    assert sorted(s.rep.dim for s in parts) == [5, 5, 5, 10]


def test_omega_generalized_eigenspaces():
    p = 5
    V = zoo.sl2_baby_verma(p, zoo.ChiType("regular-nilpotent"), 0)
    spaces = {c.value: s.rep.dim for c, s in generalized_eigenspaces(zoo.omega12(V, V))}
    assert spaces == {0: 10, 1: 5, 2: 10}


@pytest.mark.parametrize("cat", CATEGORIES)
def test_summands_reassemble(cat):
    for M in category_objects(cat):
        parts = split_indecomposables(M)
        F = M.field
        total = F.zeros((M.dim, M.dim))
        for s in parts:
            assert (s.projection @ s.inclusion) == identity(s.rep)
            total = F.add(total, (s.inclusion @ s.projection).data)
        assert np.array_equal(total, F.eye(M.dim))
        assert all(is_absolutely_indecomposable(s.rep) for s in parts)


@settings(max_examples=10, deadline=None)
@given(cat=st.sampled_from(CATEGORIES), data=st.data(), seeds=st.tuples(st.integers(0, 999), st.integers(0, 999)))
def test_krull_schmidt_stability(cat, data, seeds):
    objs = category_objects(cat)
    M = tensor(data.draw(st.sampled_from(objs)), data.draw(st.sampled_from(objs)))
    if M.dim > 40:
        M = data.draw(st.sampled_from(objs))
    a = sorted(s.rep.dim for s in split_indecomposables(M, seed=seeds[0]))
    b = sorted(s.rep.dim for s in split_indecomposables(M, seed=seeds[1]))
    assert a == b


# ---------------------------------------------------------------------------
# retracts and ideals
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("cat", CATEGORIES)
def test_every_object_is_a_retract_through_itself(cat):
    for V in category_objects(cat):
        w = find_retract(V, V)
        assert w is not None and w.check()


def test_trivial_module_is_not_in_projective_ideal():
    A = zoo.cyclic_module(2, 2)
    k = zoo.cyclic_module(2, 1)
    assert find_retract(k, A) is None
    assert is_projective(A, zoo.projective_generator("cyclic", 2))
    assert not is_projective(k, zoo.projective_generator("cyclic", 2))


def test_klein_retract_and_ideal_equality():
    F = GF(4)
    V1, V2 = zoo.klein_from_string("V(1,a)", F), zoo.klein_from_string("V(2,a)", F)
    w = find_retract(V2, V1)
    assert w is not None and w.check()
    assert ideal_equal(V1, V2)


@pytest.mark.parametrize("cat", CATEGORIES)
def test_ideal_of_dual_is_the_same(cat):
    for V in category_objects(cat)[:5]:
        assert ideal_equal(V, dual(V))


def test_sl2_ideal_chain():
    V = zoo.sl2_baby_verma(5, zoo.ChiType("regular-nilpotent"), 0)
    St = zoo.sl2_restricted_simple(5, 4)
    k = zoo.sl2_restricted_simple(5, 0)
    assert in_ideal(St, V) and not in_ideal(V, St)
    assert in_ideal(V, k) and not in_ideal(k, V)


def test_unit_ideal_contains_everything():
    for cat in CATEGORIES:
        for V in category_objects(cat):
            one = unit(V.field, V.flavor)
            assert in_ideal(V, one)
