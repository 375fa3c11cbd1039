"""Representations as a symmetric ribbon category.

Objects are :class:`Rep` values (generator matrices over an exact field),
arrows are :class:`Morphism` values. Tensor products use the Kronecker basis
order and are strictly associative; the twist is the identity.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Callable, Iterable

import numpy as np

from .kernel import FieldMismatchError, FieldSpec, Matrix, Scalar, det, inverse, nullspace, rref, _merge_rref

__all__ = [
    "clear_caches",
    "Flavor",
    "Algebra",
    "ALGEBRAS",
    "algebra",
    "Rep",
    "Morphism",
    "unit",
    "tensor",
    "dual",
    "direct_sum",
    "braiding",
    "twist",
    "identity",
    "coev",
    "ev",
    "coev_tw",
    "ev_tw",
    "hom_basis",
    "end_basis",
    "tr_L",
    "tr_R",
    "cat_trace",
    "cat_dim",
    "rep_from_json",
    "rep_to_json",
]


class Flavor(str, Enum):
    GROUP = "group"
    LIE = "lie"
    SUPER = "super-lie"


# ---------------------------------------------------------------------------
# algebras and their defining relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Algebra:
    """A named algebra: flavor, generator names/parities and a relation check."""

    name: str
    flavor: Flavor
    generators: tuple[str, ...]
    parities: tuple[int, ...] = ()
    check: Callable | None = dc_field(default=None, compare=False, hash=False)

    def parity_of(self, gen: str) -> int:
        if not self.parities:
            return 0
        return self.parities[self.generators.index(gen)]


def _bracket(F, a, b, sign=1):
    ab, ba = F.matmul(a, b), F.matmul(b, a)
    return F.sub(ab, ba) if sign > 0 else F.add(ab, ba)


def _check_cyclic(order):
    def check(rep):
        g = rep.action("g")
        if not np.array_equal(_mpow(rep.field, g, order), rep.field.eye(rep.dim)):
            raise ValueError(f"g^{order} is not the identity")

    return check


def _mpow(F, a, k):
    from .kernel import matpow

    return matpow(F, a, k)


def _check_klein(rep):
    F, n = rep.field, rep.dim
    g, h = rep.action("g"), rep.action("h")
    eye = F.eye(n)
    if not (np.array_equal(F.matmul(g, g), eye) and np.array_equal(F.matmul(h, h), eye)):
        raise ValueError("Klein generators must square to the identity")
    if not np.array_equal(F.matmul(g, h), F.matmul(h, g)):
        raise ValueError("Klein generators must commute")


def _check_sl2(rep):
    F = rep.field
    H, E, Fm = rep.action("H"), rep.action("E"), rep.action("F")
    two = F.from_int(2)
    if not np.array_equal(_bracket(F, H, E), F.mul(E, two)):
        raise ValueError("[H,E] != 2E")
    if not np.array_equal(_bracket(F, H, Fm), F.neg(F.mul(Fm, two))):
        raise ValueError("[H,F] != -2F")
    if not np.array_equal(_bracket(F, E, Fm), H):
        raise ValueError("[E,F] != H")


_GL11 = ("E11", "E22", "E12", "E21")


def _check_gl11(rep):
    F = rep.field
    idx = {"E11": (0, 0), "E22": (1, 1), "E12": (0, 1), "E21": (1, 0)}
    par = lambda i, j: (i != j)  # noqa: E731  odd iff off-diagonal
    for a in _GL11:
        for b in _GL11:
            (i, j), (k, l) = idx[a], idx[b]
            sa, sb = par(i, j), par(k, l)
            lhs = _bracket(F, rep.action(a), rep.action(b), sign=-1 if (sa and sb) else 1)
            rhs = F.zeros((rep.dim, rep.dim))
            if j == k:
                rhs = F.add(rhs, rep.action(_name_of(i, l)))
            if l == i:
                term = rep.action(_name_of(k, j))
                rhs = F.add(rhs, term) if (sa and sb) else F.sub(rhs, term)
            if not np.array_equal(lhs, rhs):
                raise ValueError(f"super bracket [{a},{b}] violated")


def _name_of(i, j):
    return f"E{i + 1}{j + 1}"


ALGEBRAS: dict[str, Algebra] = {
    "trivial": Algebra("trivial", Flavor.GROUP, ()),
    "klein": Algebra("klein", Flavor.GROUP, ("g", "h"), check=_check_klein),
    "sl2": Algebra("sl2", Flavor.LIE, ("H", "E", "F"), check=_check_sl2),
    "gl11": Algebra("gl11", Flavor.SUPER, _GL11, (0, 0, 1, 1), check=_check_gl11),
}


def algebra(name: str) -> Algebra:
    """Look up an algebra; ``cyclic-N`` names are generated on demand."""
    if name in ALGEBRAS:
        return ALGEBRAS[name]
    m = re.fullmatch(r"cyclic-(\d+)", name)
    if m:
        order = int(m.group(1))
        return Algebra(name, Flavor.GROUP, ("g",), check=_check_cyclic(order))
    raise ValueError(f"unknown algebra {name!r}")


# ---------------------------------------------------------------------------
# Rep
# ---------------------------------------------------------------------------


class Rep:
    """A finite-dimensional representation given by generator matrices.

    Generators missing from ``gens`` act trivially (identity for groups, zero
    for Lie flavors); this is how the unit object pairs with every algebra.
    """

    __slots__ = ("field", "flavor", "algebra", "dim", "gens", "parity", "label", "_cache")

    def __init__(
        self,
        field: FieldSpec,
        flavor: Flavor | str,
        gens: dict,
        *,
        dim: int | None = None,
        algebra: str = "trivial",
        parity: Iterable[int] | None = None,
        label: str = "",
        validate: bool = True,
    ):
        flavor = Flavor(flavor)
        raw = {}
        for name, mat in gens.items():
            arr = mat.data if isinstance(mat, Matrix) else field.array(mat)
            if isinstance(mat, Matrix) and mat.field != field:
                raise FieldMismatchError(f"generator {name} over {mat.field}, expected {field}")
            arr = np.array(arr, dtype=field.dtype)
            arr.setflags(write=False)
            raw[name] = arr
        if dim is None:
            if not raw:
                raise ValueError("dim is required when there are no generators")
            dim = next(iter(raw.values())).shape[0]
        par = tuple(int(x) % 2 for x in parity) if parity is not None else (0,) * dim
        if len(par) != dim:
            raise ValueError("parity vector has the wrong length")
        if flavor != Flavor.SUPER and any(par):
            raise ValueError("odd basis vectors need the super-lie flavor")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "flavor", flavor)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "gens", dict(sorted(raw.items(), key=lambda kv: _gen_order(algebra, kv[0]))))
        object.__setattr__(self, "parity", par)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_cache", {})
        if validate:
            self.validate()

    def __setattr__(self, name, value):
        raise AttributeError("Rep is immutable")

    # -- structure ---------------------------------------------------------
    @property
    def alg(self) -> Algebra:
        return algebra(self.algebra)

    def gen_parity(self, name: str) -> int:
        return self.alg.parity_of(name) if name in self.alg.generators else 0

    def action(self, name: str) -> np.ndarray:
        """Raw matrix of a generator (trivial action when absent)."""
        if name in self.gens:
            return self.gens[name]
        if self.flavor == Flavor.GROUP:
            return self.field.eye(self.dim)
        return self.field.zeros((self.dim, self.dim))

    def generator(self, name: str) -> Matrix:
        return Matrix(self.field, self.action(name))

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(self.gens)

    def validate(self):
        F, n = self.field, self.dim
        alg = self.alg
        if alg.name != "trivial" and alg.flavor != self.flavor:
            raise ValueError(f"algebra {alg.name} has flavor {alg.flavor.value}, not {self.flavor.value}")
        for name, a in self.gens.items():
            if a.shape != (n, n):
                raise ValueError(f"generator {name} is not {n}x{n}")
            if alg.generators and name not in alg.generators:
                raise ValueError(f"{name} is not a generator of {alg.name}")
            if self.flavor == Flavor.GROUP and det(F, a) == 0:
                raise ValueError(f"group generator {name} is not invertible")
            if self.flavor == Flavor.SUPER:
                gp = self.gen_parity(name)
                par = np.array(self.parity)
                bad = (par[:, None] + par[None, :] + gp) % 2 == 1
                if np.any(a[bad] != 0):
                    raise ValueError(f"generator {name} does not have parity {gp}")
        if alg.check is not None and n:
            alg.check(self)

    @property
    def key(self) -> tuple:
        """Hashable identity (field, flavor, algebra, parity, generator data)."""
        if "key" not in self._cache:
            data = tuple((k, v.tobytes() if self.field.p else repr(v.tolist())) for k, v in self.gens.items())
            self._cache["key"] = (self.field, self.flavor, self.algebra, self.dim, self.parity, data)
        return self._cache["key"]

    def __eq__(self, other):
        return isinstance(other, Rep) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        name = self.label or "Rep"
        return f"{name}[dim={self.dim}, {self.flavor.value}, {self.field}]"

    def relabel(self, label: str) -> Rep:
        """Same representation under another name (generator arrays are shared)."""
        out = object.__new__(Rep)
        for slot in ("field", "flavor", "algebra", "dim", "gens", "parity"):
            object.__setattr__(out, slot, getattr(self, slot))
        object.__setattr__(out, "label", label)
        object.__setattr__(out, "_cache", {k: v for k, v in self._cache.items() if k == "key"})
        return out

    def sdim(self) -> int:
        return self.dim - 2 * sum(self.parity)


def _gen_order(alg_name, gen):
    try:
        order = algebra(alg_name).generators
    except ValueError:
        order = ()
    return (order.index(gen) if gen in order else len(order), gen)


def _check_pair(M: Rep, N: Rep):
    if M.field != N.field:
        raise FieldMismatchError(f"{M.field} vs {N.field}")
    if M.flavor != N.flavor:
        raise ValueError(f"flavor mismatch: {M.flavor.value} vs {N.flavor.value}")
    if M.algebra != N.algebra and "trivial" not in (M.algebra, N.algebra):
        raise ValueError(f"algebra mismatch: {M.algebra} vs {N.algebra}")


def _joint_algebra(M: Rep, N: Rep) -> str:
    return N.algebra if M.algebra == "trivial" else M.algebra


def _names(*reps: Rep) -> list[str]:
    names: list[str] = []
    for r in reps:
        for k in r.gens:
            if k not in names:
                names.append(k)
    return names


def unit(field: FieldSpec, flavor: Flavor | str = Flavor.GROUP) -> Rep:
    """The one-dimensional trivial representation."""
    return Rep(field, flavor, {}, dim=1, label="1")


_MEMO: dict = {}
_MEMO_LIMIT = 4096


def _memo(kind, key, build):
    """Cache constructions on immutable Reps; labels are re-applied by the caller."""
    full = (kind,) + key
    if full not in _MEMO:
        if len(_MEMO) >= _MEMO_LIMIT:
            _MEMO.clear()
        _MEMO[full] = build()
    return _MEMO[full]


def clear_caches() -> None:
    """Drop memoized tensor products and duals."""
    _MEMO.clear()


def tensor(M: Rep, N: Rep, label: str | None = None) -> Rep:
    _check_pair(M, N)
    lab = label if label is not None else f"({M.label or 'M'}⊗{N.label or 'N'})"
    out = _memo("tensor", (M.key, N.key), lambda: _tensor(M, N))
    return out if out.label == lab else out.relabel(lab)


def _tensor(M: Rep, N: Rep) -> Rep:
    F = M.field
    gens = {}
    for name in _names(M, N):
        a, b = M.action(name), N.action(name)
        if M.flavor == Flavor.GROUP:
            gens[name] = F.kron(a, b)
            continue
        left = F.kron(a, F.eye(N.dim))
        # Koszul sign (-1)^{|x||m|} when an odd generator passes M
        koszul = F.eye(M.dim)
        if _gen_parity(M, N, name):
            for i, p in enumerate(M.parity):
                if p:
                    koszul[i, i] = F.neg(F.one)
        gens[name] = F.add(left, F.kron(koszul, b))
    parity = tuple((p + q) % 2 for p in M.parity for q in N.parity)
    return Rep(F, M.flavor, gens, dim=M.dim * N.dim, algebra=_joint_algebra(M, N), parity=parity, validate=False)


def _gen_parity(M, N, name):
    alg = algebra(_joint_algebra(M, N))
    return alg.parity_of(name) if name in alg.generators else 0


def dual(M: Rep, label: str | None = None) -> Rep:
    lab = label if label is not None else (f"{M.label}*" if M.label and M.label != "1" else M.label or "")
    out = _memo("dual", (M.key,), lambda: _dual(M))
    return out if out.label == lab else out.relabel(lab)


def _dual(M: Rep) -> Rep:
    F = M.field
    gens = {}
    for name, a in M.gens.items():
        if M.flavor == Flavor.GROUP:
            gens[name] = inverse(F, a).T.copy()
        elif M.flavor == Flavor.LIE:
            gens[name] = F.neg(a.T)
        else:
            gp = M.gen_parity(name)
            out = F.neg(a.T)
            if gp:
                odd = [i for i, p in enumerate(M.parity) if p]
                out = out.copy()
                out[:, odd] = F.neg(out[:, odd])
            gens[name] = out
    return Rep(F, M.flavor, gens, dim=M.dim, algebra=M.algebra, parity=M.parity, validate=False)


def direct_sum(*reps: Rep, label: str | None = None) -> Rep:
    if not reps:
        raise ValueError("empty direct sum")
    for r in reps[1:]:
        _check_pair(reps[0], r)
    F = reps[0].field
    n = sum(r.dim for r in reps)
    gens = {}
    for name in _names(*reps):
        out = F.zeros((n, n))
        o = 0
        for r in reps:
            out[o : o + r.dim, o : o + r.dim] = r.action(name)
            o += r.dim
        gens[name] = out
    alg = next((r.algebra for r in reps if r.algebra != "trivial"), "trivial")
    parity = tuple(p for r in reps for p in r.parity)
    lab = label if label is not None else "⊕".join(r.label or "M" for r in reps)
    return Rep(F, reps[0].flavor, gens, dim=n, algebra=alg, parity=parity, label=lab, validate=False)


# ---------------------------------------------------------------------------
# Morphism
# ---------------------------------------------------------------------------


class NotAMorphismError(ValueError):
    """A matrix fails the intertwining law or parity preservation."""


class Morphism:
    """An intertwiner ``source -> target`` stored as a ``Matrix``."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: Rep, target: Rep, matrix, *, validate: bool = True):
        _check_pair(source, target)
        F = source.field
        if not isinstance(matrix, Matrix):
            matrix = Matrix(F, matrix)
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match {target.dim}x{source.dim}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", matrix)
        if validate:
            self.validate()

    def __setattr__(self, name, value):
        raise AttributeError("Morphism is immutable")

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    @property
    def data(self) -> np.ndarray:
        return self.matrix.data

    def validate(self):
        F, X = self.field, self.data
        for name in _names(self.source, self.target):
            if not np.array_equal(F.matmul(X, self.source.action(name)), F.matmul(self.target.action(name), X)):
                raise NotAMorphismError(f"fails to intertwine generator {name}")
        if self.source.flavor == Flavor.SUPER:
            ps, pt = np.array(self.source.parity), np.array(self.target.parity)
            if X.size and np.any(X[(pt[:, None] + ps[None, :]) % 2 == 1] != 0):
                raise NotAMorphismError("not parity preserving")

    def __matmul__(self, other: Morphism) -> Morphism:
        """Composition ``self ∘ other``."""
        if other.target != self.source:
            raise ValueError("composition of non-composable morphisms")
        return Morphism(other.source, self.target, self.matrix @ other.matrix, validate=False)

    def compose(self, other: Morphism) -> Morphism:
        return self @ other

    def tensor(self, other: Morphism) -> Morphism:
        """``self ⊗ other`` (morphisms are even, so no Koszul sign appears)."""
        return Morphism(
            tensor(self.source, other.source),
            tensor(self.target, other.target),
            self.matrix.kron(other.matrix),
            validate=False,
        )

    def __add__(self, other: Morphism) -> Morphism:
        self._same(other)
        return Morphism(self.source, self.target, self.matrix + other.matrix, validate=False)

    def __sub__(self, other: Morphism) -> Morphism:
        self._same(other)
        return Morphism(self.source, self.target, self.matrix - other.matrix, validate=False)

    def __neg__(self) -> Morphism:
        return Morphism(self.source, self.target, -self.matrix, validate=False)

    def scale(self, c) -> Morphism:
        return Morphism(self.source, self.target, self.matrix.scale(c), validate=False)

    def __rmul__(self, c) -> Morphism:
        return self.scale(c)

    def _same(self, other):
        if other.source != self.source or other.target != self.target:
            raise ValueError("morphisms have different source or target")

    def __pow__(self, k: int) -> Morphism:
        if self.source != self.target:
            raise ValueError("powers need an endomorphism")
        return Morphism(self.source, self.target, self.matrix**k, validate=False)

    def is_endo(self) -> bool:
        return self.source == self.target

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and other.source == self.source
            and other.target == self.target
            and other.matrix == self.matrix
        )

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"


def identity(M: Rep) -> Morphism:
    return Morphism(M, M, Matrix.identity(M.field, M.dim), validate=False)


def _raw_braid(F, pm, pn):
    m, n = len(pm), len(pn)
    C = F.zeros((n * m, m * n))
    minus = F.neg(F.one)
    for i in range(m):
        for j in range(n):
            C[j * m + i, i * n + j] = minus if (pm[i] and pn[j]) else F.one
    return C


def braiding(M: Rep, N: Rep) -> Morphism:
    """``c_{M,N}: M⊗N -> N⊗M``, the signed flip."""
    _check_pair(M, N)
    return Morphism(tensor(M, N), tensor(N, M), Matrix(M.field, _raw_braid(M.field, M.parity, N.parity)), validate=False)


def twist(M: Rep) -> Morphism:
    """The twist; every implemented flavor is symmetric, so this is ``Id_M``."""
    return identity(M)


def _raw_coev(F, n):
    v = F.zeros((n * n, 1))
    for i in range(n):
        v[i * n + i, 0] = F.one
    return v


def _raw_coev_tw(F, parity):
    n = len(parity)
    v = F.zeros((n * n, 1))
    minus = F.neg(F.one)
    for i, p in enumerate(parity):
        v[i * n + i, 0] = minus if p else F.one
    return v


def coev(M: Rep) -> Morphism:
    """``b_M: 1 -> M⊗M*``."""
    return Morphism(unit(M.field, M.flavor), tensor(M, dual(M)), Matrix(M.field, _raw_coev(M.field, M.dim)), validate=False)


def ev(M: Rep) -> Morphism:
    """``d_M: M*⊗M -> 1``."""
    return Morphism(tensor(dual(M), M), unit(M.field, M.flavor), Matrix(M.field, _raw_coev(M.field, M.dim).T), validate=False)


def coev_tw(M: Rep) -> Morphism:
    """``b'_M = (Id_{M*}⊗θ_M)∘c_{M,M*}∘b_M: 1 -> M*⊗M``."""
    Md = dual(M)
    return (identity(Md).tensor(twist(M))) @ braiding(M, Md) @ coev(M)


def ev_tw(M: Rep) -> Morphism:
    """``d'_M = d_M∘c_{M,M*}∘(θ_M⊗Id_{M*}): M⊗M* -> 1``."""
    Md = dual(M)
    return ev(M) @ braiding(M, Md) @ (twist(M).tensor(identity(Md)))


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------


def _spin_basis(M: Rep, rng: np.random.Generator):
    """Spin a basis of M from few seeds.

    Returns (vectors, origins) where origin is ("seed", parity) or
    (generator index, parent index). Seeds are random homogeneous vectors.
    """
    F, n = M.field, M.dim
    names = list(M.gens)
    acts = [M.action(g) for g in names]
    R = F.zeros((0, n))
    piv: list[int] = []
    vecs: list[np.ndarray] = []
    origins: list[tuple] = []
    created: set = set()
    par = np.array(M.parity)

    def reduce(w):
        if not piv:
            return w
        return F.sub(w, F.matmul(w[piv][None, :], R)[0])

    def add(w, origin):
        nonlocal R, piv
        R, piv = _merge_rref(F, R, piv, w[None, :])
        vecs.append(w)
        origins.append(origin)

    while len(vecs) < n:
        seed = None
        classes = [0, 1] if M.flavor == Flavor.SUPER else [0]
        for attempt in range(4):
            for cls in classes:
                support = np.flatnonzero(par == cls) if M.flavor == Flavor.SUPER else np.arange(n)
                if support.size == 0:
                    continue
                w = F.zeros(n)
                w[support] = F.random(rng, support.size)
                if np.any(reduce(w) != 0):
                    seed, seed_par = w, cls
                    break
            if seed is not None:
                break
        if seed is None:
            for i in range(n):
                w = F.zeros(n)
                w[i] = F.one
                if np.any(reduce(w) != 0):
                    seed, seed_par = w, int(par[i])
                    break
        add(seed, ("seed", seed_par))
        j = len(vecs) - 1
        while j < len(vecs):
            for gi, a in enumerate(acts):
                w = F.matmul(a, vecs[j][:, None])[:, 0]
                if np.any(reduce(w) != 0):
                    add(w, (gi, j))
                    created.add((gi, j))
            j += 1
    return vecs, origins, created, names


def hom_raw(M: Rep, N: Rep, echelon: bool = True) -> np.ndarray:
    """Basis of Hom(M, N) as a raw array of shape (count, N.dim, M.dim)."""
    _check_pair(M, N)
    F = M.field
    n, m = M.dim, N.dim
    if n == 0 or m == 0:
        return F.zeros((0, m, n))
    rng = np.random.default_rng(7919 * n + m)
    vecs, origins, created, names = _spin_basis(M, rng)
    names = names + [g for g in N.gens if g not in names]
    src = [M.action(g) for g in names]
    tgt = [N.action(g) for g in names]
    P = np.stack(vecs, axis=1)
    Pinv = inverse(F, P)

    # unknowns: image of every seed, restricted to the seed's parity
    npar = np.array(N.parity)
    blocks = []
    offset = 0
    for k, o in enumerate(origins):
        if o[0] == "seed":
            allowed = np.flatnonzero(npar == o[1]) if M.flavor == Flavor.SUPER else np.arange(m)
            blocks.append((k, allowed, offset))
            offset += allowed.size
    U = offset
    if U == 0:
        return F.zeros((0, m, n))
    L = F.zeros((n, m, U))
    for k, allowed, off in blocks:
        L[k, allowed, off + np.arange(allowed.size)] = F.one
    for k, o in enumerate(origins):
        if o[0] != "seed":
            gi, parent = o
            L[k] = F.matmul(tgt[gi], L[parent])

    # relations: generator images that were not new basis vectors
    rels = [(gi, j) for j in range(n) for gi in range(len(names)) if (gi, j) not in created]
    R = F.zeros((0, U))
    piv: list[int] = []
    Lflat = L.reshape(n, m * U)
    chunk = max(1, 2048 // max(m, 1))
    for start in range(0, len(rels), chunk):
        part = rels[start : start + chunk]
        imgs = np.stack([F.matmul(src[gi], vecs[j][:, None])[:, 0] for gi, j in part])
        coeffs = F.matmul(imgs, Pinv.T)
        lhs = np.stack([F.matmul(tgt[gi], L[j]) for gi, j in part]).reshape(len(part), m * U)
        rows = F.sub(lhs, F.matmul(coeffs, Lflat)).reshape(len(part) * m, U)
        keep = np.flatnonzero(np.any(rows != 0, axis=1))
        if keep.size:
            R, piv = _merge_rref(F, R, piv, rows[keep])
        if len(piv) == U:
            return F.zeros((0, m, n))
    free = [c for c in range(U) if c not in set(piv)]
    Z = F.zeros((len(free), U))
    for k, c in enumerate(free):
        Z[k, c] = F.one
    if piv and free:
        Z[:, piv] = F.neg(R[:, free]).T
    T = Z.shape[0]
    # images of the spun basis, then change back to the standard basis
    Phi = F.zeros((T, m, n))
    for k, o in enumerate(origins):
        if o[0] == "seed":
            blk = next(b for b in blocks if b[0] == k)
            _, allowed, off = blk
            Phi[:, allowed, k] = Z[:, off : off + allowed.size]
        else:
            gi, parent = o
            Phi[:, :, k] = F.matmul(tgt[gi], Phi[:, :, parent].T).T
    X = F.matmul(Phi.reshape(T * m, n), Pinv).reshape(T, m, n)
    if echelon:
        X = canonical_rows(F, X.reshape(T, m * n)).reshape(-1, m, n)
    return X


def canonical_rows(F, X: np.ndarray) -> np.ndarray:
    """Canonical basis of a row space, as a row-major nullspace solve returns it.

    Each row has a 1 in its own "free" coordinate (its last nonzero entry)
    and 0 in the free coordinates of the other rows; rows are ordered by free
    coordinate. This is reduced echelon form computed from the right.
    """
    R, _ = rref(F, X[:, ::-1])
    return R[::-1, ::-1].copy()


def hom_basis(M: Rep, N: Rep) -> list[Morphism]:
    """Basis of Hom(M, N) in the canonical order of :func:`canonical_rows`.

    Matrices are flattened row-major for the normalization.
    """
    X = hom_raw(M, N)
    return [Morphism(M, N, Matrix(M.field, x), validate=False) for x in X]


def end_basis(M: Rep) -> list[Morphism]:
    return hom_basis(M, M)


# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------


def _kron_eye_right(F, a, k):
    """``a ⊗ Id_k`` as a raw matrix."""
    return F.kron(a, F.eye(k))


def _kron_eye_left(F, k, a):
    return F.kron(F.eye(k), a)


def tr_L_raw(F, f, V: Rep, W: Rep) -> np.ndarray:
    """Left partial trace of raw ``f`` (shape (..., vw, vw)) into End(W).

    Composite (d_V⊗Id_W)∘(Id_{V*}⊗f)∘(b'_V⊗Id_W); the middle factor is
    applied blockwise instead of forming the Kronecker product.
    """
    v, w = V.dim, W.dim
    step1 = _kron_eye_right(F, _raw_coev_tw(F, V.parity), w)  # W -> V*⊗V⊗W
    blocks = step1.reshape(v, v * w, w)  # leading index is the V* factor
    mid = F.matmul(f[..., None, :, :], blocks)  # Id_{V*}⊗f
    mid = mid.reshape(f.shape[:-2] + (v * v * w, w))
    step3 = _kron_eye_right(F, _raw_coev(F, v).T, w)  # V*⊗V⊗W -> W
    return F.matmul(step3, mid)


def tr_R_raw(F, f, V: Rep, W: Rep) -> np.ndarray:
    """Right partial trace of raw ``f`` into End(V).

    Composite (Id_V⊗d'_W)∘(f⊗Id_{W*})∘(Id_V⊗b_W).
    """
    v, w = V.dim, W.dim
    step1 = _kron_eye_left(F, v, _raw_coev(F, w))  # V -> V⊗W⊗W*
    cols = step1.reshape(v * w, w * v)  # rows: V⊗W, then the W* index
    mid = F.matmul(f, cols)  # f⊗Id_{W*}
    mid = mid.reshape(f.shape[:-2] + (v * w * w, v))
    step3 = _kron_eye_left(F, v, _raw_coev_tw(F, W.parity).T)  # V⊗W⊗W* -> V
    return F.matmul(step3, mid)


def _check_factorization(f: Morphism, V: Rep, W: Rep):
    if not f.is_endo():
        raise ValueError("partial traces need an endomorphism")
    if f.source.dim != V.dim * W.dim:
        raise ValueError(f"dimension {f.source.dim} does not factor as {V.dim}x{W.dim}")


def tr_L(f: Morphism, V: Rep, W: Rep) -> Morphism:
    """Left partial trace ``End(V⊗W) -> End(W)``."""
    _check_factorization(f, V, W)
    return Morphism(W, W, Matrix(f.field, tr_L_raw(f.field, f.data, V, W)), validate=False)


def tr_R(f: Morphism, V: Rep, W: Rep) -> Morphism:
    """Right partial trace ``End(V⊗W) -> End(V)``."""
    _check_factorization(f, V, W)
    return Morphism(V, V, Matrix(f.field, tr_R_raw(f.field, f.data, V, W)), validate=False)


def cat_trace(f: Morphism) -> Scalar:
    """``d'_V ∘ (f⊗Id_{V*}) ∘ b_V`` as an element of the ground field."""
    if not f.is_endo():
        raise ValueError("the categorical trace needs an endomorphism")
    V = f.source
    F = f.field
    b = _raw_coev(F, V.dim)
    mid = F.matmul(F.kron(f.data, F.eye(V.dim)), b)
    d = _raw_coev_tw(F, V.parity).T
    value = F.matmul(d, mid)[0, 0]
    return Scalar(F, value)


def cat_dim(M: Rep) -> Scalar:
    return cat_trace(identity(M))


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def rep_to_json(M: Rep) -> dict:
    doc = {
        "field": M.field.to_json(),
        "flavor": M.flavor.value,
        "dim": M.dim,
        "generators": {k: M.generator(k).tolist() for k in M.gens},
        "relations": M.algebra,
    }
    if M.flavor == Flavor.SUPER:
        doc["parity"] = list(M.parity)
    if M.field.p == 0:
        doc["generators"] = {k: [[str(x) for x in row] for row in v] for k, v in doc["generators"].items()}
    if M.label:
        doc["label"] = M.label
    return doc


def rep_from_json(doc: dict | str) -> Rep:
    """Build a Rep from the JSON document (or its text).

    Finite-field entries are integer codes; rational entries may be integers
    or strings such as ``"-1/2"``.
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    F = FieldSpec.from_json(doc["field"])
    gens = {k: F.array(v) if F.p else F.array([[F.parse(str(x)) for x in row] for row in v]) for k, v in doc["generators"].items()}
    return Rep(
        F,
        doc["flavor"],
        gens,
        dim=int(doc["dim"]),
        algebra=doc.get("relations", "trivial"),
        parity=doc.get("parity"),
        label=doc.get("label", ""),
    )
