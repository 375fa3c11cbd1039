from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ambitrace import superk as sk
from ambitrace.suite import _jacobi_trudi_product, _schur_ones, _sdim_hook


def W(text, m=None, n=None):
    return sk.parse_weight(text, m, n)


def _partitions(max_size, max_parts=None):
    out = []
    for size in range(max_size + 1):
        out += list(_partitions_of(size, size, max_parts))
    return out


def _partitions_of(n, cap, max_parts):
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions_of(n - first, first, None if max_parts is None else max_parts - 1):
            yield (first,) + rest


partitions = st.integers(0, 5).flatmap(lambda s: st.sampled_from(list(_partitions_of(s, s, None))))


# ---------------------------------------------------------------------------
# weights and the form
# ---------------------------------------------------------------------------


def test_rho_and_form():
    assert str(sk.rho(2, 1)) == "1,0|0"
    e1, e3 = W("1,0|0"), W("0,0|1")
    assert sk.form(e1, e1) == 1
    assert sk.form(e3, e3) == -1
    assert sk.form(sk.rho(1, 1), sk.rho(1, 1)) == 0


def test_parse_weight():
    assert W("3,2|2").entries == (3, 2, 2)
    assert W("1|", 2, 2).entries == (1, 0, 0, 0)
    with pytest.raises(ValueError):
        W("1,2")
    with pytest.raises(ValueError):
        W("1,2,3|0", 2, 1)


@pytest.mark.parametrize("mn", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_zero_weight_has_atypicality_defect(mn):
    assert sk.atypicality(sk.Weight.zero(*mn)) == sk.defect(*mn) == min(mn)


def test_atypicality_examples():
    assert sk.atypicality(W("1|0")) == 0
    for k in range(4):
        assert sk.atypicality(sk.tau(sk.sigma(3, 3, k), 3, 3)) == k


@settings(max_examples=200, deadline=None)
@given(m=st.integers(1, 3), n=st.integers(1, 3), data=st.data())
def test_atypicality_bounded_by_defect(m, n, data):
    entries = tuple(data.draw(st.integers(-4, 4)) for _ in range(m + n))
    lam = sk.Weight(m, n, entries)
    a = sk.atypicality(lam)
    assert 0 <= a <= sk.defect(m, n)
    # typical weights are exactly those with no vanishing odd pairing
    shifted = lam + sk.rho(m, n)
    vanishing = [(i, j) for i, j in sk.odd_roots(m, n) if shifted.entries[i - 1] + shifted.entries[j - 1] == 0]
    assert (a == 0) == (not vanishing)


# ---------------------------------------------------------------------------
# typical dimension
# ---------------------------------------------------------------------------


def test_typical_dimension_values():
    assert sk.typical_dim(W("1|0")) == 1
    assert sk.typical_dim(W("2,1|1")) == Fraction(1, 4)
    lam = W("3,1|2")
    assert sk.mod_dim_ratio(lam, lam) == 1


def test_typical_dimension_rejects_atypical_weight():
    with pytest.raises(sk.AtypicalWeightError) as info:
        sk.typical_dim(W("1,0|0"))
    assert info.value.root == (2, 3)
    assert "eps_2-eps_3" in str(info.value)


def _typical_dim_oracle(lam):
    """Direct product over positive roots with the standard pairing signs."""
    m, n = lam.m, lam.n
    x = (lam + sk.rho(m, n)).entries
    r = sk.rho(m, n).entries
    num = Fraction(1)
    for i, j in itertools.combinations(range(m), 2):
        num *= Fraction(x[i] - x[j], r[i] - r[j])
    for i, j in itertools.combinations(range(m, m + n), 2):
        num *= Fraction(-(x[i] - x[j]), -(r[i] - r[j]))
    den = 1
    for i in range(m):
        for j in range(m, m + n):
            den *= x[i] + x[j]
    return num / den


@settings(max_examples=100, deadline=None)
@given(m=st.integers(1, 3), n=st.integers(1, 3), data=st.data())
def test_typical_dimension_matches_direct_product(m, n, data):
    entries = tuple(data.draw(st.integers(-5, 5)) for _ in range(m + n))
    lam = sk.Weight(m, n, entries)
    if sk.atypicality(lam):
        with pytest.raises(sk.AtypicalWeightError):
            sk.typical_dim(lam)
    else:
        assert sk.typical_dim(lam) == _typical_dim_oracle(lam)


# ---------------------------------------------------------------------------
# hook partitions
# ---------------------------------------------------------------------------


def test_tau_example():
    assert tuple(sk.tau(W("3,2|2"))) == (3, 2, 1, 1)
    assert sk.tau(sk.Partition((3, 2, 1, 1)), 2, 1) == W("3,2|2")


@settings(max_examples=200, deadline=None)
@given(m=st.integers(1, 4), n=st.integers(1, 4), data=st.data())
def test_tau_is_an_involution(m, n, data):
    size = data.draw(st.integers(0, 9))
    hooks = list(sk.hook_partitions(m, n, size))
    if not hooks:
        return
    gamma = data.draw(st.sampled_from(hooks))
    lam = sk.tau(gamma, m, n)
    assert sk.is_polynomial(lam)
    assert sk.tau(lam) == gamma
    assert sk.tau(sk.tau(lam), m, n) == lam


def test_hook_condition():
    assert sk.is_hook((3, 2, 1, 1), 2, 1)
    assert not sk.is_hook((2, 2, 2), 1, 1)
    for m, n in ((2, 1), (3, 3), (2, 4)):
        for k in range(min(m, n) + 1):
            assert sk.is_hook(sk.sigma(m, n, k), m, n)
            assert sk.is_rectangle(sk.sigma(m, n, k))


def test_transpose():
    assert tuple(sk.transpose((3, 1))) == (2, 1, 1)
    assert tuple(sk.transpose(())) == ()


# ---------------------------------------------------------------------------
# Littlewood-Richardson
# ---------------------------------------------------------------------------


def test_lr_small_cases():
    assert sk.lr_coeff((1,), (1,), (2,)) == 1
    assert sk.lr_coeff((1,), (1,), (1, 1)) == 1
    assert sk.lr_coeff((2, 1), (2, 1), (3, 2, 1)) == 2


@settings(max_examples=80, deadline=None)
@given(lam=partitions)
def test_pieri_with_a_single_box(lam):
    prod = sk.lr_product(lam, (1,))
    assert set(prod.values()) <= {1}
    base = list(lam) + [0]
    expected = set()
    for i in range(len(base)):
        if i == 0 or base[i - 1] > base[i]:
            mu = base[:]
            mu[i] += 1
            expected.add(tuple(x for x in mu if x))
    assert {tuple(mu) for mu in prod} == expected


@settings(max_examples=80, deadline=None)
@given(a=partitions, b=partitions)
def test_lr_is_symmetric_and_matches_oracles(a, b):
    prod = {tuple(mu): c for mu, c in sk.lr_product(a, b).items()}
    assert prod == {tuple(mu): c for mu, c in sk.lr_product(b, a).items()}
    assert prod == _jacobi_trudi_product(a, b)
    for N in (1, 2, 3, 4):
        lhs = sum(c * _schur_ones(mu, N) for mu, c in prod.items())
        assert lhs == _schur_ones(a, N) * _schur_ones(b, N)


def test_rectangle_square_is_multiplicity_free():
    assert max(sk.lr_product((2, 2), (2, 2)).values()) == 1
    assert max(sk.lr_product((2, 1), (2, 1)).values()) == 2


def test_hook_schur_product_filters_hooks():
    prod = sk.hook_schur_product((1, 1), (1, 1), 1, 1)
    assert all(sk.is_hook(mu, 1, 1) for mu in prod)
    assert tuple(sk.Partition((2, 2))) not in {tuple(mu) for mu in prod}


# ---------------------------------------------------------------------------
# rectangles and chains
# ---------------------------------------------------------------------------


def test_sigma():
    assert tuple(sk.sigma(2, 1, 0)) == (1, 1)
    assert tuple(sk.sigma(3, 2, 3 - 1)) == (0,) * 0 + tuple(sk.sigma(3, 2, 2))
    assert tuple(sk.sigma(2, 2, 2)) == ()
    with pytest.raises(ValueError):
        sk.sigma(2, 1, 2)


def test_chain_from_rectangle_is_trivial():
    for k in range(3):
        mu = sk.tau(sk.sigma(2, 2, k), 2, 2)
        assert sk.atypicality_chain(mu) == [mu]


def test_chain_example():
    mu = sk.tau(sk.Partition((3, 2, 1, 1)), 2, 1)
    k = sk.atypicality(mu)
    chain = sk.atypicality_chain(mu)
    assert chain[-1] == mu
    assert len(chain) == 7 - sk.sigma(2, 1, k).size + 1
    for a, b in zip(chain, chain[1:]):
        assert sk.tau(b).size == sk.tau(a).size + 1
        assert sk.tau(b).contains(sk.tau(a))
    assert all(sk.atypicality(w) == k for w in chain)


@pytest.mark.parametrize("mn", [(2, 1), (2, 2), (3, 2)])
def test_chains_exist_for_all_small_hooks(mn):
    m, n = mn
    for size in range(8):
        for gamma in sk.hook_partitions(m, n, size):
            mu = sk.tau(gamma, m, n)
            k = sk.atypicality(mu)
            chain = sk.atypicality_chain(mu)
            assert chain[0] == sk.tau(sk.sigma(m, n, k), m, n)
            assert all(sk.atypicality(w) == k for w in chain)


# ---------------------------------------------------------------------------
# Kac-Wakimoto style verdicts
# ---------------------------------------------------------------------------


def test_gkw_basic_cases():
    lam = W("3,1|1")
    assert sk.gkw_check(lam, lam) == sk.GKWVerdict.NONZERO
    J0 = sk.tau(sk.sigma(2, 1, 0), 2, 1)
    assert sk.gkw_check(W("2,1|1"), J0) == sk.GKWVerdict.NONZERO
    assert sk.gkw_check(W("2,1|1"), sk.Weight.zero(2, 1)) == sk.GKWVerdict.ZERO


def test_gkw_input_validation():
    with pytest.raises(ValueError):
        sk.gkw_check(W("1,0|-1"), sk.Weight.zero(2, 1))
    with pytest.raises(ValueError):
        sk.gkw_check(sk.Weight.zero(2, 1), W("1,1|0"))


def test_superdimension_oracle_small_cases():
    # the natural gl(2|1) module has sdim 2 - 1, its exterior square sdim 1 - 2 + 1 = 0
    assert _sdim_hook((1,), 2, 1) == 1
    assert _sdim_hook((1, 1), 2, 1) == 0
    assert _sdim_hook((), 2, 1) == 1
    # a polynomial gl(m|0) module: sdim is the ordinary dimension
    assert _sdim_hook((2, 1), 3, 0) == 8
    assert _sdim_hook((2,), 0, 2) == math.comb(2, 2)
