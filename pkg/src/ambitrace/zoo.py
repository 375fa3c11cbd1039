"""Example categories: C_p, the Klein four group, restricted sl2 blocks, gl(1|1).

Also builds the explicit endomorphisms that witness non-ambidexterity.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

import numpy as np

from .kernel import GF, QQ, FieldSpec, Matrix, Scalar, inverse, matpow, nullspace, solve
from .repcat import Flavor, Morphism, Rep, hom_raw, tensor, unit

__all__ = [
    "ChiType",
    "cyclic_module",
    "cyclic_regular",
    "cyclic_regular_witness",
    "cyclic2_witness",
    "klein_module",
    "klein_from_string",
    "sl2_restricted_simple",
    "sl2_baby_verma",
    "semisimple_chi",
    "casimir_action",
    "omega12",
    "vzero_witness",
    "gl11_natural",
    "projective_generator",
]


# ---------------------------------------------------------------------------
# cyclic groups
# ---------------------------------------------------------------------------


def _field_for(p: int, field: FieldSpec | None) -> FieldSpec:
    F = field or GF(p)
    if F.p != p:
        raise ValueError(f"{F} does not have characteristic {p}")
    return F


def cyclic_module(p: int, r: int, field: FieldSpec | None = None) -> Rep:
    """V_r: the generator acts by a unipotent Jordan block of size r."""
    if not 1 <= r <= p:
        raise ValueError(f"r must lie in 1..{p}")
    F = _field_for(p, field)
    g = F.eye(r)
    for i in range(r - 1):
        g[i, i + 1] = F.one
    return Rep(F, Flavor.GROUP, {"g": g}, algebra=f"cyclic-{p}", label=f"V{r}")


def cyclic_regular(p: int, field: FieldSpec | None = None) -> Rep:
    """The regular module A with basis v_i = g^i (g permutes cyclically)."""
    F = _field_for(p, field)
    g = F.zeros((p, p))
    for i in range(p):
        g[(i + 1) % p, i] = F.one
    return Rep(F, Flavor.GROUP, {"g": g}, algebra=f"cyclic-{p}", label="A")


def cyclic_regular_witness(p: int) -> Morphism:
    """The endomorphism of A⊗A sending g^i·e_1 to g^i·(v2⊗v1 - v1⊗v2).

    Here e_k = v0⊗vk + vk⊗v0 and o_k = v0⊗vk - vk⊗v0 generate free summands
    of A⊗A; the map vanishes on every summand except the one generated by e_1.
    """
    if p % 2 == 0:
        raise ValueError("p must be odd")
    F = GF(p)
    A = cyclic_regular(p, F)
    AA = tensor(A, A)
    g = AA.action("g")

    def vv(i, j):
        v = F.zeros(p * p)
        v[(i % p) * p + (j % p)] = F.one
        return v

    gens = [F.add(vv(0, k), vv(k, 0)) for k in range((p + 1) // 2)]
    gens += [F.sub(vv(0, k), vv(k, 0)) for k in range(1, (p + 1) // 2)]
    cols, images = [], []
    target = F.sub(vv(2, 1), vv(1, 2))
    for idx, gen in enumerate(gens):
        w, t = gen, target
        for _ in range(p):
            cols.append(w)
            images.append(t if idx == 1 else F.zeros(p * p))
            w = F.matmul(g, w[:, None])[:, 0]
            t = F.matmul(g, t[:, None])[:, 0]
    T = np.stack(cols, axis=1)
    Y = np.stack(images, axis=1)
    f = F.matmul(Y, inverse(F, T))
    return Morphism(AA, AA, Matrix(F, f))


def cyclic2_witness() -> Morphism:
    """Projection of A⊗A (A = V2 over C_2) onto its second free summand.

    The summands are <v1⊗v2, v1⊗v1> and <v1⊗v2 + v2⊗v2, v1⊗v2 + v2⊗v1>.
    """
    F = GF(2)
    A = cyclic_module(2, 2, F)
    AA = tensor(A, A)
    e = {(i, j): np.eye(4, dtype=np.int64)[2 * i + j] for i in range(2) for j in range(2)}
    cols = [e[0, 1], e[0, 0], e[0, 1] ^ e[1, 1], e[0, 1] ^ e[1, 0]]
    S = np.stack(cols, axis=1) % 2
    P = np.diag([0, 0, 1, 1]).astype(np.int64)
    f = F.matmul(S, F.matmul(P, inverse(F, S)))
    return Morphism(AA, AA, Matrix(F, f))


# ---------------------------------------------------------------------------
# Klein four group
# ---------------------------------------------------------------------------


def _jordan(F, n, lam):
    J = F.zeros((n, n))
    for i in range(n):
        J[i, i] = lam
        if i + 1 < n:
            J[i, i + 1] = F.one
    return J


def _from_xy(F, x, y, label):
    n = x.shape[0]
    g = F.add(F.eye(n), x)
    h = F.add(F.eye(n), y)
    return Rep(F, Flavor.GROUP, {"g": g, "h": h}, algebra="klein", label=label)


def klein_module(kind: str, field: FieldSpec | None = None, n: int = 1, alpha=None) -> Rep:
    """Indecomposable Klein-four modules in the x = 1+g, y = 1+h presentation.

    ``kind`` is one of ``"trivial"``, ``"regular"`` (D), ``"V"`` (needs n and
    alpha in the field) or ``"V_inf"`` (needs n).
    """
    F = field or GF(4)
    if F.p != 2:
        raise ValueError("the Klein four examples need characteristic 2")
    if kind == "trivial":
        return Rep(F, Flavor.GROUP, {"g": F.eye(1), "h": F.eye(1)}, algebra="klein", label="k")
    if kind == "regular":
        # basis 1, g, h, gh; left multiplication
        g = F.zeros((4, 4))
        h = F.zeros((4, 4))
        for src, dst in ((0, 1), (1, 0), (2, 3), (3, 2)):
            g[dst, src] = F.one
        for src, dst in ((0, 2), (2, 0), (1, 3), (3, 1)):
            h[dst, src] = F.one
        return Rep(F, Flavor.GROUP, {"g": g, "h": h}, algebra="klein", label="D")
    if n < 1:
        raise ValueError("n must be positive")
    zero = F.zeros((n, n))
    if kind == "V":
        if alpha is None:
            raise ValueError("V(n, alpha) needs alpha")
        a = F.coerce(alpha)
        if a in (0, 1):
            warnings.warn("alpha in {0, 1}: outside the generic family used for ambidexterity", stacklevel=2)
        top = np.block([[zero, F.eye(n)], [zero, zero]])
        bot = np.block([[zero, _jordan(F, n, a)], [zero, zero]])
        return _from_xy(F, top, bot, f"V({n},{F.format(a)})")
    if kind == "V_inf":
        top = np.block([[zero, _jordan(F, n, F.zero)], [zero, zero]])
        bot = np.block([[zero, F.eye(n)], [zero, zero]])
        return _from_xy(F, top, bot, f"V({n},inf)")
    raise ValueError(f"unknown Klein module kind {kind!r}")


def klein_from_string(text: str, field: FieldSpec | None = None) -> Rep:
    """Parse ``k``, ``D``, ``V(n,alpha)`` or ``V(n,inf)``; ``a`` names the field generator."""
    F = field or GF(4)
    s = text.replace(" ", "")
    if s in ("k", "trivial"):
        return klein_module("trivial", F)
    if s in ("D", "regular"):
        return klein_module("regular", F)
    m = re.fullmatch(r"V\((\d+),([^)]+)\)", s)
    if not m:
        raise ValueError(f"cannot parse Klein module {text!r}")
    n, a = int(m.group(1)), m.group(2)
    if a in ("inf", "∞", "infinity"):
        return klein_module("V_inf", F, n)
    if a == "a":
        a = "x"
    return klein_module("V", F, n, F.parse(a))


# ---------------------------------------------------------------------------
# sl2 in characteristic p
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChiType:
    """p-character type: ``restricted``, ``semisimple`` (with a) or ``regular-nilpotent``.

    ``scale`` is the scalar by which F^p acts in the regular nilpotent type;
    1 gives chi, 2 gives the block of 2chi.
    """

    kind: str
    a: object = None
    scale: int = 1

    def __post_init__(self):
        if self.kind not in ("restricted", "semisimple", "regular-nilpotent"):
            raise ValueError(f"unknown chi type {self.kind!r}")
        if self.kind == "semisimple" and (self.a is None or self.a == 0):
            raise ValueError("semisimple type needs a nonzero a")


def semisimple_chi(lam, field: FieldSpec) -> ChiType:
    """The semisimple chi for which the baby Verma of weight ``lam`` exists.

    Solves a^p = lam^p - lam for a (Frobenius is a bijection on finite fields).
    """
    F = field
    lam = F.coerce(lam)
    target = F.sub(F.power(lam, F.p), lam)
    if target == 0:
        raise ValueError("lam lies in the prime field, so the chi would be restricted")
    a = F.power(target, F.p ** (F.e - 1))  # inverse Frobenius
    return ChiType("semisimple", Scalar(F, a))


def _sl2_rep(F, H, E, Fm, label):
    return Rep(F, Flavor.LIE, {"H": H, "E": E, "F": Fm}, algebra="sl2", label=label)


def sl2_restricted_simple(p: int, lam: int, field: FieldSpec | None = None) -> Rep:
    """L(lam), lam = 0..p-1, on the truncated weight basis v_0..v_lam."""
    if p <= 2:
        raise ValueError("p must be an odd prime")
    if not 0 <= lam <= p - 1:
        raise ValueError(f"lam must lie in 0..{p - 1}")
    F = _field_for(p, field)
    d = lam + 1
    H, E, Fm = F.zeros((d, d)), F.zeros((d, d)), F.zeros((d, d))
    for i in range(d):
        H[i, i] = F.from_int(lam - 2 * i)
        if i + 1 < d:
            Fm[i + 1, i] = F.one
        if i >= 1:
            E[i - 1, i] = F.from_int(i * (lam - i + 1))
    label = "St" if lam == p - 1 else f"L({lam})"
    return _sl2_rep(F, H, E, Fm, label)


def sl2_baby_verma(p: int, chi: ChiType, lam, field: FieldSpec | None = None) -> Rep:
    """Baby Verma module V_{chi,lam} with basis v_i = F^i v_0.

    H v_i = (lam - 2i) v_i, F v_i = v_{i+1}, E v_i = i(lam - i + 1) v_{i-1};
    F v_{p-1} is chi(F)^p v_0. The p-character is checked on the matrices.
    """
    if p <= 2:
        raise ValueError("p must be an odd prime")
    if field is None:
        field = GF(p, 2) if chi.kind == "semisimple" else GF(p)
    F = _field_for(p, field)
    lam_c = F.coerce(lam)
    fp = F.from_int(chi.scale) if chi.kind == "regular-nilpotent" else F.zero
    if chi.kind == "regular-nilpotent" and fp == 0:
        raise ValueError("regular nilpotent type needs a nonzero scale")
    H, E, Fm = F.zeros((p, p)), F.zeros((p, p)), F.zeros((p, p))
    for i in range(p):
        H[i, i] = F.sub(lam_c, F.from_int(2 * i))
        Fm[(i + 1) % p, i] = F.one if i + 1 < p else fp
        if i >= 1:
            E[i - 1, i] = F.mul(F.from_int(i), F.add(F.sub(lam_c, F.from_int(i)), F.one))
    # p-character checks on the matrices
    eye = F.eye(p)
    hp_h = F.sub(matpow(F, H, p), H)
    if chi.kind == "semisimple":
        a = F.coerce(chi.a)
        expected = F.mul(eye, F.power(a, p))
    else:
        expected = F.zeros((p, p))
    if not np.array_equal(hp_h, expected):
        raise ValueError("lam is incompatible with this chi (H^p - H check)")
    if not np.array_equal(matpow(F, Fm, p), F.mul(eye, F.power(fp, 1))):
        raise ValueError("F^p check failed")
    if np.any(matpow(F, E, p) != 0):
        raise ValueError("E^p check failed")
    tag = {"restricted": "0", "semisimple": "ss", "regular-nilpotent": "chi" if chi.scale == 1 else f"{chi.scale}chi"}[chi.kind]
    return _sl2_rep(F, H, E, Fm, f"V_{{{tag},{F.format(lam_c)}}}")


def _sl2_parts(M: Rep):
    if M.algebra != "sl2":
        raise ValueError("needs an sl2 representation")
    return M.action("H"), M.action("E"), M.action("F")


def casimir_action(M: Rep) -> Morphism:
    """Omega = EF + FE + H^2/2 acting on M."""
    F = M.field
    H, E, Fm = _sl2_parts(M)
    half = F.inv(F.from_int(2))
    om = F.add(F.add(F.matmul(E, Fm), F.matmul(Fm, E)), F.mul(F.matmul(H, H), half))
    return Morphism(M, M, Matrix(F, om))


def omega12(M: Rep, N: Rep) -> Morphism:
    """E⊗F + F⊗E + (H⊗H)/2 on M⊗N."""
    F = M.field
    H1, E1, F1 = _sl2_parts(M)
    H2, E2, F2 = _sl2_parts(N)
    half = F.inv(F.from_int(2))
    om = F.add(F.add(F.kron(E1, F2), F.kron(F1, E2)), F.mul(F.kron(H1, H2), half))
    MN = tensor(M, N)
    return Morphism(MN, MN, Matrix(F, om))


def vzero_witness(p: int) -> Morphism:
    """The endomorphism f of V⊗V, V = V_{chi,0}, with Omega12 f = f Omega12 = 0
    and f(v0⊗v1) = f(v1⊗v0) = v0⊗v1 - v1⊗v0.

    Solved for inside End(V⊗V); the constraints pin f down uniquely.
    """
    V = sl2_baby_verma(p, ChiType("regular-nilpotent"), 0)
    F = V.field
    VV = tensor(V, V)
    n = p * p
    basis = hom_raw(VV, VV)
    om = omega12(V, V).data
    k = basis.shape[0]
    e01 = F.zeros(n)
    e01[0 * p + 1] = F.one
    e10 = F.zeros(n)
    e10[1 * p + 0] = F.one
    w = F.sub(e01, e10)
    blocks = [
        F.matmul(basis, om[None]).reshape(k, -1),
        F.matmul(om[None], basis).reshape(k, -1),
        F.matmul(basis, e01[:, None]).reshape(k, -1),
        F.matmul(basis, e10[:, None]).reshape(k, -1),
    ]
    A = np.concatenate(blocks, axis=1).T
    rhs = np.concatenate([F.zeros(n * n), F.zeros(n * n), w, w])[:, None]
    c = solve(F, A, rhs)
    if c is None:
        raise ArithmeticError("no endomorphism satisfies the witness constraints")
    if nullspace(F, A).shape[0]:
        raise ArithmeticError("witness constraints do not determine f")
    f = F.matmul(c[:, 0][None, :], basis.reshape(k, -1)).reshape(n, n)
    return Morphism(VV, VV, Matrix(F, f))


# ---------------------------------------------------------------------------
# gl(1|1)
# ---------------------------------------------------------------------------


def gl11_natural(field: FieldSpec = QQ) -> Rep:
    """Natural gl(1|1) supermodule: basis (even, odd), matrix units."""
    if field.p != 0:
        raise ValueError("the gl(1|1) demo works in characteristic zero")
    F = field
    gens = {}
    for name, (i, j) in {"E11": (0, 0), "E22": (1, 1), "E12": (0, 1), "E21": (1, 0)}.items():
        m = F.zeros((2, 2))
        m[i, j] = F.one
        gens[name] = m
    return Rep(F, Flavor.SUPER, gens, algebra="gl11", parity=(0, 1), label="C^{1|1}")


def projective_generator(category: str, p: int | None = None, field: FieldSpec | None = None) -> Rep:
    """Projective generator used for projectivity tests in each example category."""
    if category == "cyclic":
        return cyclic_module(p, p, field)
    if category == "klein":
        return klein_module("regular", field)
    if category == "sl2":
        return sl2_restricted_simple(p, p - 1, field)
    raise ValueError(f"no projective generator registered for {category!r}")
