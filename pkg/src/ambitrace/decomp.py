"""Endomorphism algebras: canonical scalars, summand splitting, retracts, ideals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel import FieldSpec, Matrix, Scalar, charpoly, fitting_parts, inverse, rank, row_space, solve
from .repcat import (
    Flavor,
    Morphism,
    Rep,
    _raw_coev,
    _raw_coev_tw,
    dual,
    hom_raw,
    identity,
    tensor,
)

__all__ = [
    "NotAbsolutelyIndecomposableError",
    "SplitSearchError",
    "RetractWitness",
    "Summand",
    "canonical_scalar",
    "canonical_functional",
    "is_absolutely_indecomposable",
    "split_indecomposables",
    "generalized_eigenspaces",
    "find_retract",
    "find_section",
    "in_ideal",
    "ideal_equal",
    "is_projective",
]

CANDIDATE_CAP = 200


class NotAbsolutelyIndecomposableError(ValueError):
    """No scalar c makes f - c nilpotent; the field is too small for this object."""


class SplitSearchError(RuntimeError):
    """The splitting search ended in an inconsistent state."""


@dataclass(frozen=True)
class RetractWitness:
    """``beta ∘ alpha = Id_V`` with ``alpha: V -> J⊗W``."""

    W: Rep
    alpha: Morphism
    beta: Morphism

    def check(self) -> bool:
        composite = self.beta @ self.alpha
        return composite == identity(self.alpha.source)


@dataclass(frozen=True)
class Summand:
    rep: Rep
    inclusion: Morphism
    projection: Morphism


# ---------------------------------------------------------------------------
# canonical scalar
# ---------------------------------------------------------------------------


def _is_nilpotent(F: FieldSpec, a: np.ndarray) -> bool:
    n = a.shape[0]
    g, k = a, 1
    while k < n:
        g = F.matmul(g, g)
        k *= 2
    return not np.any(g != 0)


def _shift(F, a, c):
    out = a.copy()
    for i in range(a.shape[0]):
        out[i, i] = F.sub(out[i, i], c)
    return out


def canonical_scalar_raw(F: FieldSpec, a: np.ndarray):
    """Raw code c with ``a - c`` nilpotent, or None."""
    n = a.shape[0]
    if n == 0:
        return None
    tr = F.trace(a)
    if F.p == 0 or n % F.p:
        c = F.div(tr, F.from_int(n))
        return c if _is_nilpotent(F, _shift(F, a, c)) else None
    # characteristic divides n: scan the field for the single root of char_poly
    for c in F.elements():
        if _is_nilpotent(F, _shift(F, a, c)):
            return c
    return None


def canonical_scalar(f: Morphism) -> Scalar:
    """The unique c with ``f - c·Id`` nilpotent."""
    if not f.is_endo():
        raise ValueError("canonical_scalar needs an endomorphism")
    c = canonical_scalar_raw(f.field, f.data)
    if c is None:
        raise NotAbsolutelyIndecomposableError(
            f"{f.source!r}: endomorphism is not scalar plus nilpotent over {f.field}"
        )
    return Scalar(f.field, c)


class CanonicalFunctional:
    """``⟨·⟩`` on End(J) as a linear functional on flattened matrices.

    The End(J) basis is canonical (see ``canonical_rows``), so the
    coordinates of an endomorphism are its entries at the free positions.
    """

    def __init__(self, J: Rep):
        F = J.field
        basis = hom_raw(J, J)
        flat = basis.reshape(basis.shape[0], -1)
        self.field = F
        self.pivots = np.array([int(np.flatnonzero(row)[-1]) for row in flat], dtype=np.int64)
        values = []
        for b in basis:
            c = canonical_scalar_raw(F, b)
            if c is None:
                raise NotAbsolutelyIndecomposableError(f"{J!r} is not absolutely indecomposable over {F}")
            values.append(c)
        self.values = F.array(values) if F.p else np.array(values, dtype=object)
        self.dim = J.dim

    def __call__(self, stack: np.ndarray):
        """Canonical scalars of a stack (..., n, n) of endomorphisms (raw)."""
        F = self.field
        flat = stack.reshape(stack.shape[:-2] + (-1,))
        coords = flat[..., self.pivots]
        return F.matmul(coords[..., None, :], self.values[:, None])[..., 0, 0]


def canonical_functional(J: Rep) -> CanonicalFunctional:
    return CanonicalFunctional(J)


# ---------------------------------------------------------------------------
# splitting
# ---------------------------------------------------------------------------


def _eigenvalue_in_field(F: FieldSpec, a: np.ndarray):
    """Some eigenvalue of ``a`` lying in F, or None."""
    n = a.shape[0]
    if F.p:
        for c in F.elements():
            if rank(F, _shift(F, a, c)) < n:
                return c
        return None
    coeffs = charpoly(F, a)
    return _rational_root(coeffs)


def _rational_root(coeffs):
    from fractions import Fraction
    from math import gcd

    # clear denominators
    den = 1
    for c in coeffs:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    if ints[0] == 0:
        return Fraction(0)
    lead, const = ints[-1], ints[0]

    def divisors(k):
        k = abs(k)
        return [d for d in range(1, k + 1) if k % d == 0]

    for num in divisors(const):
        for d in divisors(lead):
            for s in (1, -1):
                r = Fraction(s * num, d)
                if sum(c * r**i for i, c in enumerate(ints)) == 0:
                    return r
    return None


def _candidates(F: FieldSpec, basis: np.ndarray, rng: np.random.Generator):
    """Basis elements, then random combinations, then pairwise products."""
    k = basis.shape[0]
    for i in range(min(k, CANDIDATE_CAP)):
        yield basis[i]
    if k <= 1:
        return
    for _ in range(CANDIDATE_CAP):
        coeffs = F.random(rng, k)
        yield F.matmul(coeffs[None, :], basis.reshape(k, -1)).reshape(basis.shape[1:])
    count = 0
    for i in range(k):
        for j in range(k):
            if count >= CANDIDATE_CAP:
                return
            yield F.matmul(basis[i], basis[j])
            count += 1


def _restrict(M: Rep, cols: np.ndarray, rows: np.ndarray, label: str) -> Rep:
    F = M.field
    gens = {g: F.matmul(rows, F.matmul(a, cols)) for g, a in M.gens.items()}
    parity = None
    if M.flavor == Flavor.SUPER:
        # columns are homogeneous (see _homogeneous_basis)
        par = np.array(M.parity)
        parity = tuple(int(par[np.flatnonzero(c)[0]]) for c in cols.T)
    return Rep(F, M.flavor, gens, dim=cols.shape[1], algebra=M.algebra, parity=parity, label=label, validate=False)


def _homogeneous_basis(F, M: Rep, cols: np.ndarray) -> np.ndarray:
    """Re-pick a basis of a graded subspace so every column is homogeneous."""
    if M.flavor != Flavor.SUPER:
        return cols
    par = np.array(M.parity)
    pieces = []
    for cls in (0, 1):
        part = cols.copy()
        part[par != cls] = F.zero
        R, _ = row_space(F, part.T)
        pieces.append(R.T)
    return np.concatenate(pieces, axis=1)


def _split_once(M: Rep, rng: np.random.Generator):
    F, n = M.field, M.dim
    if n <= 1:
        return None
    basis = hom_raw(M, M)
    if basis.shape[0] <= 1:
        return None
    for f in _candidates(F, basis, rng):
        if canonical_scalar_raw(F, f) is not None:
            continue
        c = _eigenvalue_in_field(F, f)
        if c is None:
            continue
        ker, im = fitting_parts(F, _shift(F, f, c))
        if 0 < ker.shape[1] < n:
            return _homogeneous_basis(F, M, ker), _homogeneous_basis(F, M, im)
    return None


def split_indecomposables(M: Rep, seed: int = 0) -> list[Summand]:
    """Decompose ``M`` into indecomposable summands by Fitting splitting.

    The order of the result follows the recursion (kernel part first).
    """
    F = M.field
    rng = np.random.default_rng(seed)
    out: list[Summand] = []

    def recurse(R: Rep, inc: np.ndarray, proj: np.ndarray):
        parts = _split_once(R, rng)
        if parts is None:
            out.append(Summand(R, Morphism(R, M, Matrix(F, inc), validate=False), Morphism(M, R, Matrix(F, proj), validate=False)))
            return
        ker, im = parts
        S = np.concatenate([ker, im], axis=1)
        Sinv = inverse(F, S)
        k = ker.shape[1]
        for cols, rows in ((ker, Sinv[:k]), (im, Sinv[k:])):
            sub = _restrict(R, cols, rows, label=f"{R.label or 'M'}|{cols.shape[1]}")
            recurse(sub, F.matmul(inc, cols), F.matmul(rows, proj))

    recurse(M, F.eye(M.dim), F.eye(M.dim))
    if sum(s.rep.dim for s in out) != M.dim:
        raise SplitSearchError("summand dimensions do not add up")
    return out


def generalized_eigenspaces(f: Morphism) -> list[tuple[Scalar, Summand]]:
    """Split the source of an endomorphism ``f`` into its generalized eigenspaces.

    Each eigenspace is a summand when ``f`` is a morphism of representations.
    Eigenvalues outside the field raise ``NotAbsolutelyIndecomposableError``.
    """
    if not f.is_endo():
        raise ValueError("generalized_eigenspaces needs an endomorphism")
    M, F = f.source, f.field
    out = []
    rest, inc, proj = f.data, F.eye(M.dim), F.eye(M.dim)
    R = M
    while R.dim:
        c = _eigenvalue_in_field(F, rest)
        if c is None:
            raise NotAbsolutelyIndecomposableError("an eigenvalue lies outside the field")
        ker, im = fitting_parts(F, _shift(F, rest, c))
        ker, im = _homogeneous_basis(F, R, ker), _homogeneous_basis(F, R, im)
        S = np.concatenate([ker, im], axis=1)
        Sinv = inverse(F, S)
        k = ker.shape[1]
        sub = _restrict(R, ker, Sinv[:k], label=f"{M.label or 'M'}[{F.format(c)}]")
        out.append(
            (
                Scalar(F, c),
                Summand(
                    sub,
                    Morphism(sub, M, Matrix(F, F.matmul(inc, ker)), validate=False),
                    Morphism(M, sub, Matrix(F, F.matmul(Sinv[:k], proj)), validate=False),
                ),
            )
        )
        if k == R.dim:
            break
        R = _restrict(R, im, Sinv[k:], label=R.label)
        rest = F.matmul(Sinv[k:], F.matmul(rest, im))
        inc, proj = F.matmul(inc, im), F.matmul(Sinv[k:], proj)
    return out


def is_absolutely_indecomposable(M: Rep) -> bool:
    """End(M) is local with residue field K (checked on a basis plus a split search)."""
    if M.dim == 0:
        return False
    F = M.field
    basis = hom_raw(M, M)
    if any(canonical_scalar_raw(F, b) is None for b in basis):
        return False
    return len(split_indecomposables(M)) == 1


# ---------------------------------------------------------------------------
# retracts and ideals
# ---------------------------------------------------------------------------


def find_section(source: Rep, target: Rep, pi: np.ndarray) -> np.ndarray | None:
    """A morphism ``s: target -> source`` with ``pi ∘ s = Id``, if one exists.

    ``pi`` is a raw matrix of a morphism ``source -> target``.
    """
    F = source.field
    H = hom_raw(target, source, echelon=False)
    if H.shape[0] == 0:
        return None
    images = F.matmul(pi[None, :, :], H)  # (k, t, t)
    A = images.reshape(H.shape[0], -1).T
    b = F.eye(target.dim).reshape(-1, 1)
    c = solve(F, A, b)
    if c is None:
        return None
    return F.matmul(c[:, 0][None, :], H.reshape(H.shape[0], -1)).reshape(source.dim, target.dim)


def find_retract(V: Rep, J: Rep) -> RetractWitness | None:
    """Witness that V is a retract of J⊗(J*⊗V), or None if V is not in I_J."""
    F = J.field
    W = tensor(dual(J), V)
    JW = tensor(J, W)
    # pi = (d'_J ⊗ Id_V): J⊗J*⊗V -> V
    pi = F.kron(_raw_coev_tw(F, J.parity).T, F.eye(V.dim))
    sigma = find_section(JW, V, pi)
    if sigma is None:
        return None
    alpha = Morphism(V, JW, Matrix(F, sigma), validate=False)
    beta = Morphism(JW, V, Matrix(F, pi), validate=False)
    return RetractWitness(W, alpha, beta)


def in_ideal(V: Rep, J: Rep) -> bool:
    return find_retract(V, J) is not None


def ideal_equal(V: Rep, J: Rep) -> bool:
    return in_ideal(V, J) and in_ideal(J, V)


def is_projective(P: Rep, generator: Rep) -> bool:
    """Projectivity via membership in the ideal of a projective generator."""
    return in_ideal(P, generator)


def evaluation_splits(V: Rep, J: Rep) -> bool:
    """Whether ``d_V ⊗ Id_J: V*⊗V⊗J -> J`` has a section."""
    F = V.field
    source = tensor(tensor(dual(V), V), J)
    pi = F.kron(_raw_coev(F, V.dim).T, F.eye(J.dim))
    return find_section(source, J, pi) is not None
