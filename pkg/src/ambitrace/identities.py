"""Seeded fuzzing of the ribbon-category identities on the example categories.

Each identity is checked by building both sides from categorical morphisms
(coevaluations, braidings, tensor products of morphisms) and comparing the
matrices exactly. Partial traces are rebuilt here by literal composition,
independent of the batched versions in :mod:`repcat`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .decomp import canonical_scalar_raw, _homogeneous_basis, _restrict
from .kernel import GF, QQ, Matrix, inverse, row_space
from .repcat import (
    Morphism,
    Rep,
    braiding,
    cat_trace,
    coev,
    coev_tw,
    dual,
    direct_sum,
    ev,
    ev_tw,
    hom_raw,
    identity,
    tensor,
    tr_L,
    tr_R,
    unit,
)
from . import zoo

__all__ = ["IDENTITIES", "CATEGORIES", "FuzzReport", "category_objects", "fuzz_identities"]

CATEGORIES = ("cyclic", "klein", "sl2", "super")


@lru_cache(maxsize=None)
def category_objects(category: str) -> tuple[Rep, ...]:
    """A small fixed family of objects used as fuzzing material."""
    if category == "cyclic":
        F = GF(3)
        V = [zoo.cyclic_module(3, r, F) for r in (1, 2, 3)]
        return tuple(V) + (zoo.cyclic_regular(3), dual(V[1]), tensor(V[1], V[1]))
    if category == "klein":
        F = GF(4)
        V1 = zoo.klein_from_string("V(1,a)", F)
        return (
            zoo.klein_module("trivial", F),
            V1,
            zoo.klein_from_string("V(2,a)", F),
            zoo.klein_from_string("V(1,inf)", F),
            zoo.klein_module("regular", F),
            dual(V1),
        )
    if category == "sl2":
        p = 5
        L = [zoo.sl2_restricted_simple(p, lam) for lam in range(3)]
        V = zoo.sl2_baby_verma(p, zoo.ChiType("regular-nilpotent"), 0)
        return tuple(L) + (zoo.sl2_restricted_simple(p, 4), V, tensor(L[1], L[1]))
    if category == "super":
        N = zoo.gl11_natural(QQ)
        return (unit(QQ, N.flavor).relabel("1"), N, dual(N), tensor(N, N), direct_sum(N, unit(QQ, N.flavor)))
    raise ValueError(f"unknown category {category!r}")


@dataclass
class _Ctx:
    rng: np.random.Generator
    objects: tuple
    homs: dict = field(default_factory=dict)

    def pick(self) -> Rep:
        return self.objects[int(self.rng.integers(len(self.objects)))]

    def hom(self, M: Rep, N: Rep) -> Morphism:
        key = (M.key, N.key)
        if key not in self.homs:
            self.homs[key] = hom_raw(M, N, echelon=False)
        H = self.homs[key]
        F = M.field
        if H.shape[0] == 0:
            return Morphism(M, N, Matrix(F, F.zeros((N.dim, M.dim))), validate=False)
        c = F.random(self.rng, H.shape[0])
        data = F.matmul(c[None, :], H.reshape(H.shape[0], -1)).reshape(N.dim, M.dim)
        return Morphism(M, N, Matrix(F, data), validate=False)


def _tr_L_literal(f: Morphism, V: Rep, W: Rep) -> Morphism:
    Vd = dual(V)
    step1 = coev_tw(V).tensor(identity(W))
    step2 = identity(Vd).tensor(f)
    step3 = ev(V).tensor(identity(W))
    return _strip_unit(step3 @ _as(step2, tensor(Vd, tensor(V, W))) @ step1, W)


def _tr_R_literal(f: Morphism, V: Rep, W: Rep) -> Morphism:
    Wd = dual(W)
    step1 = identity(V).tensor(coev(W))
    step2 = f.tensor(identity(Wd))
    step3 = identity(V).tensor(ev_tw(W))
    return _strip_unit(step3 @ _as(step2, tensor(tensor(V, W), Wd)) @ step1, V)


def _as(f: Morphism, obj: Rep) -> Morphism:
    """Reinterpret an endomorphism on an equal-basis object (strict associativity)."""
    return Morphism(obj, obj, f.matrix, validate=False)


def _strip_unit(f: Morphism, obj: Rep) -> Morphism:
    return Morphism(obj, obj, f.matrix, validate=False)


def _eq(a: Morphism, b: Morphism) -> bool:
    return np.array_equal(a.data, b.data)


def _zigzag(ctx: _Ctx) -> bool:
    V = ctx.pick()
    Vd = dual(V)
    I, Id = identity(V), identity(Vd)
    one = np.array_equal
    left = (I.tensor(ev(V))).matrix.data
    right = (coev(V).tensor(I)).matrix.data
    F = V.field
    ok = one(F.matmul(left, right), I.data)
    ok &= one(F.matmul(ev(V).tensor(Id).data, Id.tensor(coev(V)).data), Id.data)
    ok &= one(F.matmul(ev_tw(V).tensor(I).data, I.tensor(coev_tw(V)).data), I.data)
    ok &= one(F.matmul(Id.tensor(ev_tw(V)).data, coev_tw(V).tensor(Id).data), Id.data)
    return bool(ok)


def _naturality(ctx: _Ctx) -> bool:
    V, V2, W, W2 = ctx.pick(), ctx.pick(), ctx.pick(), ctx.pick()
    f, g = ctx.hom(V, V2), ctx.hom(W, W2)
    return _eq(braiding(V2, W2) @ f.tensor(g), g.tensor(f) @ braiding(V, W))


def _symmetry(ctx: _Ctx) -> bool:
    V, W = ctx.pick(), ctx.pick()
    return _eq(braiding(W, V) @ braiding(V, W), identity(tensor(V, W)))


def _partial_traces(ctx: _Ctx) -> bool:
    """Batched partial traces agree with the literal composites; tr_C is preserved."""
    V, W = ctx.pick(), ctx.pick()
    f = ctx.hom(tensor(V, W), tensor(V, W))
    L, R = tr_L(f, V, W), tr_R(f, V, W)
    ok = _eq(L, _tr_L_literal(f, V, W)) and _eq(R, _tr_R_literal(f, V, W))
    return ok and cat_trace(L) == cat_trace(f) == cat_trace(R)


def _braid_conjugation(ctx: _Ctx) -> bool:
    """tr_R(f) = tr_L(c^{-1} f c) for f in End(V⊗V)."""
    V = ctx.pick()
    VV = tensor(V, V)
    f = ctx.hom(VV, VV)
    c = braiding(V, V)
    F = V.field
    c_inv = Morphism(VV, VV, Matrix(F, inverse(F, c.data)), validate=False)
    return _eq(tr_R(f, V, V), tr_L(c_inv @ f @ c, V, V))


def _exchange(ctx: _Ctx) -> bool:
    """tr_R((Id⊗f) c^{-1} (Id⊗hg)) = tr_R((Id⊗gf) c^{-1} (Id⊗h))."""
    V, W, U = ctx.pick(), ctx.pick(), ctx.pick()
    f, g, h = ctx.hom(V, W), ctx.hom(W, U), ctx.hom(U, V)
    F = V.field
    I = identity(V)
    c = braiding(V, V)
    c_inv = Morphism(tensor(V, V), tensor(V, V), Matrix(F, inverse(F, c.data)), validate=False)
    lhs = I.tensor(f) @ c_inv @ I.tensor(h @ g)
    rhs = I.tensor(g @ f) @ c_inv @ I.tensor(h)
    return _eq(tr_R(lhs, V, W), tr_R(rhs, V, U))


def _complement(F, sub: np.ndarray, n: int, parity) -> np.ndarray:
    """Standard basis vectors completing the columns of ``sub`` to a basis."""
    cols = [sub[:, i] for i in range(sub.shape[1])]
    R, _ = row_space(F, np.stack(cols) if cols else F.zeros((0, n)))
    extra = []
    for i in range(n):
        e = F.zeros(n)
        e[i] = F.one
        trial = np.concatenate([R, e[None, :]]) if R.size else e[None, :]
        R2, _ = row_space(F, trial)
        if R2.shape[0] > R.shape[0]:
            R = R2
            extra.append(e)
    return np.stack(extra, axis=1) if extra else F.zeros((n, 0))


def _additivity(ctx: _Ctx) -> bool:
    """tr_C(f) = tr_C(f on a subrep) + tr_C(f on the quotient), subrep = image of f^j."""
    V = ctx.pick()
    F = V.field
    f = ctx.hom(V, V)
    j = int(ctx.rng.integers(1, 3))
    img = f.data
    for _ in range(j - 1):
        img = F.matmul(img, f.data)
    R, _ = row_space(F, img.T)
    sub = _homogeneous_basis(F, V, R.T) if R.shape[0] else F.zeros((V.dim, 0))
    k = sub.shape[1]
    if k in (0, V.dim):
        return cat_trace(f) == cat_trace(f)  # degenerate split, nothing to compare
    comp = _complement(F, sub, V.dim, V.parity)
    S = np.concatenate([sub, comp], axis=1)
    Sinv = inverse(F, S)
    block = F.matmul(Sinv, F.matmul(f.data, S))
    if np.any(block[k:, :k] != 0):
        return False
    U = _restrict(V, sub, Sinv[:k], "sub")
    Q = _restrict(V, comp, Sinv[k:], "quot")
    fU = Morphism(U, U, Matrix(F, block[:k, :k]))
    fQ = Morphism(Q, Q, Matrix(F, block[k:, k:]))
    return cat_trace(f) == cat_trace(fU) + cat_trace(fQ)


def _nilpotent_trace(ctx: _Ctx) -> bool:
    """h - <h> is nilpotent on an indecomposable and has categorical trace zero."""
    from .decomp import split_indecomposables

    V = ctx.pick()
    J = split_indecomposables(V)[0].rep
    F = J.field
    h = ctx.hom(J, J)
    c = canonical_scalar_raw(F, h.data)
    if c is None:
        return False
    nil = h - identity(J).scale(c)
    acc = nil.data
    for _ in range(J.dim):
        acc = F.matmul(acc, nil.data)
    return not np.any(acc != 0) and cat_trace(nil) == 0


IDENTITIES = {
    "zigzag": _zigzag,
    "braiding-naturality": _naturality,
    "braiding-symmetry": _symmetry,
    "partial-trace-composites": _partial_traces,
    "braid-conjugation": _braid_conjugation,
    "partial-trace-exchange": _exchange,
    "trace-additivity": _additivity,
    "nilpotent-trace-zero": _nilpotent_trace,
}


@dataclass(frozen=True)
class FuzzReport:
    cases: dict  # identity -> number of cases run
    violations: dict  # identity -> list of (category, case index)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def to_json(self) -> dict:
        return {
            "cases": dict(self.cases),
            "violations": {k: [list(v) for v in vs] for k, vs in self.violations.items()},
            "ok": self.ok,
        }


def fuzz_identities(categories=CATEGORIES, cases: int = 100, seed: int = 0, identities=None) -> FuzzReport:
    """Run ``cases`` seeded cases of each identity, cycling through ``categories``."""
    names = list(identities or IDENTITIES)
    contexts = {c: _Ctx(np.random.default_rng([seed, i]), category_objects(c)) for i, c in enumerate(categories)}
    counts, bad = {}, {}
    for name in names:
        check = IDENTITIES[name]
        counts[name] = cases
        bad[name] = []
        for i in range(cases):
            cat = categories[i % len(categories)]
            if not check(contexts[cat]):
                bad[name].append((cat, i))
    return FuzzReport(counts, bad)
