from __future__ import annotations

import warnings

import numpy as np
import pytest

from ambitrace import zoo
from ambitrace.decomp import split_indecomposables
from ambitrace.kernel import GF, QQ, det, nullspace, rank
from ambitrace.repcat import Flavor, cat_dim, end_basis, hom_basis, tensor, tr_L, tr_R, unit


def _isomorphic(M, N) -> bool:
    return M.dim == N.dim and any(det(M.field, h.data) != 0 for h in hom_basis(M, N))


# ---------------------------------------------------------------------------
# cyclic groups
# ---------------------------------------------------------------------------


def test_c2_regular_action():
    A = zoo.cyclic_module(2, 2)
    g = A.action("g")
    assert g[:, 0].tolist() == [1, 0]  # g v1 = v1
    assert g[:, 1].tolist() == [1, 1]  # g v2 = v1 + v2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_one_dimensional_cyclic_module_is_trivial(p):
    k = zoo.cyclic_module(p, 1)
    assert np.array_equal(k.action("g"), k.field.eye(1))
    assert _isomorphic(unit(k.field), k)


def test_cyclic_dimension_example():
    assert cat_dim(zoo.cyclic_module(5, 4)) == 4


def test_cyclic_module_bounds():
    with pytest.raises(ValueError):
        zoo.cyclic_module(3, 4)
    with pytest.raises(ValueError):
        zoo.cyclic_module(3, 0)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_regular_module_is_the_free_module(p):
    A = zoo.cyclic_regular(p)
    assert _isomorphic(A, zoo.cyclic_module(p, p))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_cyclic_witness_relations(p):
    F = GF(p)
    A = zoo.cyclic_regular(p, F)
    f = zoo.cyclic_regular_witness(p)
    f.validate()
    L, R = tr_L(f, A, A), tr_R(f, A, A)
    assert R == -L
    half = F.inv(F.neg(F.from_int(2)))
    assert np.array_equal((L**p).data, F.mul(F.eye(p), F.power(half, p)))


# ---------------------------------------------------------------------------
# Klein four group
# ---------------------------------------------------------------------------


def test_klein_v1_matrices():
    F = GF(4)
    a = F.generator
    V1 = zoo.klein_from_string("V(1,a)", F)
    x = F.sub(V1.action("g"), F.eye(2))
    y = F.sub(V1.action("h"), F.eye(2))
    assert x.tolist() == [[0, 1], [0, 0]]
    assert y.tolist() == [[0, a], [0, 0]]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_klein_dimensions(n):
    F = GF(4)
    assert zoo.klein_from_string(f"V({n},a)", F).dim == 2 * n
    assert zoo.klein_from_string(f"V({n},inf)", F).dim == 2 * n


def test_klein_string_forms():
    F = GF(4)
    assert zoo.klein_from_string("V(1,∞)", F) == zoo.klein_from_string("V(1,inf)", F)
    assert zoo.klein_from_string("V(2,x+1)", F).label == "V(2,x+1)"
    assert zoo.klein_from_string("D", F).dim == 4
    assert zoo.klein_from_string("k", F).dim == 1
    with pytest.raises(ValueError):
        zoo.klein_from_string("W(1,a)", F)


def test_klein_degenerate_parameter_warns():
    F = GF(4)
    with pytest.warns(UserWarning):
        zoo.klein_module("V", F, 1, 1)


def test_klein_requires_characteristic_two():
    with pytest.raises(ValueError):
        zoo.klein_module("trivial", GF(3))


def test_klein_parameters_give_distinct_modules():
    F = GF(4)
    mods = [zoo.klein_from_string(s, F) for s in ("V(1,a)", "V(1,x+1)", "V(1,inf)")]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        mods += [zoo.klein_module("V", F, 1, 0), zoo.klein_module("V", F, 1, 1)]
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            assert not _isomorphic(mods[i], mods[j])


# ---------------------------------------------------------------------------
# sl2
# ---------------------------------------------------------------------------

P = 5
CHI = zoo.ChiType("regular-nilpotent")


def test_baby_verma_e_action():
    F = GF(P)
    V = zoo.sl2_baby_verma(P, CHI, 0)
    E = V.action("E")
    for i in range(1, P):
        assert E[i - 1, i] == F.from_int(i * (1 - i))


@pytest.mark.parametrize("lam", range(P))
def test_baby_verma_primitive_vectors(lam):
    V = zoo.sl2_baby_verma(P, CHI, lam)
    primitive = nullspace(V.field, V.action("E")).shape[0]
    assert primitive == (1 if lam == P - 1 else 2)


def test_baby_verma_isomorphism_classes():
    vermas = [zoo.sl2_baby_verma(P, CHI, lam) for lam in range(P)]
    for lam in range(P):
        star = (P - 2 - lam) % P
        assert _isomorphic(vermas[lam], vermas[star])
    classes = []
    for V in vermas:
        if not any(_isomorphic(V, W) for W in classes):
            classes.append(V)
    assert len(classes) == (P + 1) // 2


def test_baby_verma_rejects_bad_character():
    with pytest.raises(ValueError):
        zoo.ChiType("mystery")
    with pytest.raises(ValueError):
        zoo.ChiType("semisimple")
    F25 = GF(25)
    lam = F25.generator
    chi = zoo.semisimple_chi(lam, F25)
    # lam + 1 shares the character, 2 lam does not
    zoo.sl2_baby_verma(P, chi, F25.add(lam, F25.one), F25)
    with pytest.raises(ValueError):
        zoo.sl2_baby_verma(P, chi, F25.mul(lam, F25.from_int(2)), F25)


def test_semisimple_character_value():
    F25 = GF(25)
    lam = F25.generator
    chi = zoo.semisimple_chi(lam, F25)
    assert str(chi.a) == "2x"


@pytest.mark.parametrize("a", range(P))
def test_casimir_scalar_on_doubled_block(a):
    F = GF(P)
    V = zoo.sl2_baby_verma(P, zoo.ChiType("regular-nilpotent", scale=2), a)
    expected = F.add(F.from_int(a), F.mul(F.from_int(a * a), F.inv(F.from_int(2))))
    assert np.array_equal(zoo.casimir_action(V).data, F.mul(F.eye(P), expected))
    if a == 1:
        assert expected == 4


def test_restricted_simples():
    for lam in range(P):
        L = zoo.sl2_restricted_simple(P, lam)
        assert L.dim == lam + 1
        assert len(end_basis(L)) == 1
    assert zoo.sl2_restricted_simple(P, P - 1).label == "St"


def test_semisimple_tensor_square_highest_weights():
    F25 = GF(25)
    lam = F25.generator
    V = zoo.sl2_baby_verma(P, zoo.semisimple_chi(lam, F25), lam, F25)
    parts = split_indecomposables(tensor(V, V))
    weights = []
    for s in parts:
        M = s.rep
        E, H = M.action("E"), M.action("H")
        ker = nullspace(F25, E)
        assert ker.shape[0] == 1
        v = ker[0]
        hv = F25.matmul(H, v[:, None])[:, 0]
        i = int(np.flatnonzero(v)[0])
        weights.append(F25.div(hv[i], v[i]))
    expected = {F25.sub(F25.mul(lam, F25.from_int(2)), F25.from_int(i)) for i in range(P)}
    assert set(weights) == expected


def test_vzero_witness():
    F = GF(P)
    V = zoo.sl2_baby_verma(P, CHI, 0)
    f = zoo.vzero_witness(P)
    om = zoo.omega12(V, V)
    assert not np.any((om @ f).data) and not np.any((f @ om).data)
    assert np.array_equal(tr_R(f, V, V).data, F.neg(F.eye(P)))
    assert np.array_equal(tr_L(f, V, V).data, F.eye(P))


def test_weight_block_of_omega():
    F = GF(P)
    V = zoo.sl2_baby_verma(P, CHI, 0)
    om = zoo.omega12(V, V).data
    idx = [i * P + ((1 - i) % P) for i in range(P)]
    X = om[np.ix_(idx, idx)]
    assert rank(F, X) == P - 2


# ---------------------------------------------------------------------------
# gl(1|1)
# ---------------------------------------------------------------------------


def test_gl11_natural():
    N = zoo.gl11_natural(QQ)
    assert N.flavor == Flavor.SUPER
    assert N.dim == 2 and N.parity == (0, 1)
    assert cat_dim(N) == 0
    assert len(end_basis(N)) == 1


def test_projective_generators():
    assert zoo.projective_generator("cyclic", 3).dim == 3
    assert zoo.projective_generator("klein", field=GF(4)).dim == 4
    assert zoo.projective_generator("sl2", 5).dim == 5
    with pytest.raises(ValueError):
        zoo.projective_generator("super")
