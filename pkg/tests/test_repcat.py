from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ambitrace import zoo
from ambitrace.decomp import canonical_scalar, split_indecomposables
from ambitrace.identities import CATEGORIES, category_objects
from ambitrace.kernel import GF, QQ, Matrix
from ambitrace.repcat import (
    Flavor,
    Morphism,
    Rep,
    braiding,
    cat_dim,
    cat_trace,
    coev,
    coev_tw,
    dual,
    end_basis,
    ev,
    ev_tw,
    hom_basis,
    identity,
    rep_from_json,
    rep_to_json,
    tensor,
    tr_L,
    tr_R,
    unit,
)

ALL_OBJECTS = [(c, i) for c in CATEGORIES for i in range(len(category_objects(c)))]


def _obj(ci):
    c, i = ci
    return category_objects(c)[i]


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------


def test_cyclic_relation_is_validated():
    F = GF(3)
    with pytest.raises(ValueError):
        Rep(F, "group", {"g": [[1, 1], [0, 2]]}, algebra="cyclic-3")


def test_sl2_relations_are_validated():
    F = GF(5)
    with pytest.raises(ValueError):
        Rep(F, "lie", {"H": [[1]], "E": [[0]], "F": [[0]]}, algebra="sl2")


def test_odd_vectors_need_super_flavor():
    with pytest.raises(ValueError):
        Rep(QQ, "lie", {}, dim=2, parity=(0, 1))


def test_morphism_validation_rejects_non_intertwiner():
    A = zoo.cyclic_module(2, 2)
    F = A.field
    with pytest.raises(ValueError):
        Morphism(A, A, Matrix(F, [[0, 1], [0, 0]]).T)


def test_tensor_of_jordan_blocks_is_kronecker():
    F = GF(5)
    V2, V3 = zoo.cyclic_module(5, 2, F), zoo.cyclic_module(5, 3, F)
    T = tensor(V2, V3)
    assert T.dim == 6
    assert np.array_equal(T.action("g"), F.kron(V2.action("g"), V3.action("g")))


def test_lie_tensor_is_leibniz():
    L1 = zoo.sl2_restricted_simple(5, 1)
    F = L1.field
    T = tensor(L1, L1)
    E = L1.action("E")
    assert np.array_equal(T.action("E"), F.add(F.kron(E, F.eye(2)), F.kron(F.eye(2), E)))


def test_dual_of_unit_is_unit():
    for F, flavor in ((GF(3), "group"), (GF(5), "lie"), (QQ, "super-lie")):
        one = unit(F, flavor)
        assert dual(one) == one


@pytest.mark.parametrize("ci", ALL_OBJECTS, ids=lambda ci: f"{ci[0]}-{ci[1]}")
def test_double_dual_and_json_roundtrip(ci):
    M = _obj(ci)
    MM = dual(dual(M))
    if M.flavor != Flavor.SUPER:
        assert MM == M
    else:
        # the supertranspose squares to conjugation by the parity operator
        F = M.field
        P = np.diag([F.neg(F.one) if b else F.one for b in M.parity])
        for g in M.gens:
            assert np.array_equal(MM.action(g), F.matmul(P, F.matmul(M.action(g), P)))
    doc = json.loads(json.dumps(rep_to_json(M)))
    assert rep_from_json(doc) == M
    assert rep_from_json(json.dumps(doc)) == M


# ---------------------------------------------------------------------------
# braiding
# ---------------------------------------------------------------------------


def test_group_braiding_is_flip():
    F = GF(3)
    V = zoo.cyclic_module(3, 2, F)
    c = braiding(V, V).data
    for i in range(2):
        for j in range(2):
            e = F.zeros(4)
            e[2 * i + j] = F.one
            out = F.matmul(c, e[:, None])[:, 0]
            assert out[2 * j + i] == F.one and np.count_nonzero(out) == 1


def test_super_braiding_sign_on_odd_vectors():
    N = zoo.gl11_natural(QQ)
    c = braiding(N, N).data
    # basis index 2*i + j of v_i⊗v_j, v_1 odd
    assert c[3, 3] == -1
    assert c[0, 0] == 1
    assert c[2, 1] == 1 and c[1, 2] == 1


@settings(max_examples=40, deadline=None)
@given(cat=st.sampled_from(CATEGORIES), data=st.data())
def test_braiding_is_symmetric(cat, data):
    objs = category_objects(cat)
    V = data.draw(st.sampled_from(objs))
    W = data.draw(st.sampled_from(objs))
    assert np.array_equal((braiding(W, V) @ braiding(V, W)).data, identity(tensor(V, W)).data)


# ---------------------------------------------------------------------------
# duality and traces
# ---------------------------------------------------------------------------


def test_zigzag_on_cyclic_module():
    V = zoo.cyclic_module(5, 3)
    F = V.field
    I = identity(V)
    assert np.array_equal(F.matmul(I.tensor(ev(V)).data, coev(V).tensor(I).data), I.data)


@pytest.mark.parametrize("ci", ALL_OBJECTS, ids=lambda ci: f"{ci[0]}-{ci[1]}")
def test_loop_gives_categorical_dimension(ci):
    M = _obj(ci)
    loop = (ev_tw(M) @ coev(M)).data[0, 0]
    assert loop == cat_dim(M).value
    loop2 = (ev(M) @ coev_tw(M)).data[0, 0]
    assert loop2 == cat_dim(M).value


def test_categorical_dimensions():
    assert cat_dim(zoo.cyclic_module(5, 5)) == 0
    for p in (3, 5, 7):
        for r in range(1, p + 1):
            assert cat_dim(zoo.cyclic_module(p, r)).value == r % p
    assert cat_dim(zoo.gl11_natural(QQ)).value == 0
    assert cat_dim(tensor(zoo.gl11_natural(QQ), zoo.gl11_natural(QQ))).value == 0


def test_hom_space_dimensions():
    F = GF(4)
    assert len(hom_basis(unit(F), unit(F))) == 1
    V1 = zoo.klein_from_string("V(1,a)", F)
    assert len(end_basis(tensor(V1, V1))) == 6
    F25 = GF(25)
    lam = F25.generator
    Vs = zoo.sl2_baby_verma(5, zoo.semisimple_chi(lam, F25), lam, F25)
    assert len(end_basis(Vs)) == 1
    N = zoo.gl11_natural(QQ)
    assert len(end_basis(N)) == 1


@settings(max_examples=30, deadline=None)
@given(cat=st.sampled_from(CATEGORIES), data=st.data())
def test_partial_trace_of_identity(cat, data):
    objs = category_objects(cat)
    V, W = data.draw(st.sampled_from(objs)), data.draw(st.sampled_from(objs))
    Id = identity(tensor(V, W))
    F = V.field
    assert np.array_equal(tr_R(Id, V, W).data, F.mul(F.eye(V.dim), cat_dim(W).value))
    assert np.array_equal(tr_L(Id, V, W).data, F.mul(F.eye(W.dim), cat_dim(V).value))


@settings(max_examples=30, deadline=None)
@given(cat=st.sampled_from(CATEGORIES), data=st.data(), seed=st.integers(0, 10**6))
def test_partial_traces_are_morphisms_preserving_trace(cat, data, seed):
    objs = category_objects(cat)
    V, W = data.draw(st.sampled_from(objs)), data.draw(st.sampled_from(objs))
    VW = tensor(V, W)
    basis = end_basis(VW)
    rng = np.random.default_rng(seed)
    F = V.field
    f = basis[0].scale(0)
    for b in basis:
        f = f + b.scale(F.random(rng, ()) if F.p else Fraction(int(rng.integers(-3, 4))))
    L, R = tr_L(f, V, W), tr_R(f, V, W)
    L.validate()
    R.validate()
    assert cat_trace(L) == cat_trace(f) == cat_trace(R)


def test_c2_witness_traces():
    A = zoo.cyclic_module(2, 2)
    f = zoo.cyclic2_witness()
    assert canonical_scalar(tr_L(f, A, A)) == 1
    assert canonical_scalar(tr_R(f, A, A)) == 0


def test_c5_witness_orbit():
    p = 5
    F = GF(p)
    A = zoo.cyclic_regular(p, F)
    L = tr_L(zoo.cyclic_regular_witness(p), A, A).data
    half = F.inv(F.neg(F.from_int(2)))
    v = F.zeros(p)
    v[0] = F.one
    for t in range(1, 2 * p):
        v = F.matmul(L, v[:, None])[:, 0]
        expected = F.zeros(p)
        expected[(2 * t) % p] = F.power(half, t)
        assert np.array_equal(v, expected)


@pytest.mark.parametrize("ci", ALL_OBJECTS, ids=lambda ci: f"{ci[0]}-{ci[1]}")
def test_nilpotent_endomorphisms_of_indecomposables_have_zero_trace(ci):
    M = _obj(ci)
    for s in split_indecomposables(M):
        J = s.rep
        for h in end_basis(J):
            c = canonical_scalar(h)
            nil = h - identity(J).scale(c)
            assert cat_trace(nil) == 0


def test_flavor_values():
    assert {f.value for f in Flavor} == {"group", "lie", "super-lie"}
