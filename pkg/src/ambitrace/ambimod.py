"""Ambidexterity, traces induced on ideals, and modified dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .decomp import (
    NotAbsolutelyIndecomposableError,
    RetractWitness,
    canonical_functional,
    canonical_scalar,
    evaluation_splits,
    find_retract,
    is_absolutely_indecomposable,
)
from .kernel import Scalar
from .repcat import Morphism, Rep, hom_raw, identity, tensor, tr_L_raw, tr_R_raw

__all__ = [
    "clear_caches",
    "Verdict",
    "AmbiReport",
    "NotAmbidextrousError",
    "NotInIdealError",
    "ambi_check",
    "trace_on_ideal",
    "mod_dim",
    "check_split_canonical",
]


class Verdict(str, Enum):
    AMBIDEXTROUS = "ambidextrous"
    NOT_AMBIDEXTROUS = "not_ambidextrous"
    NOT_APPLICABLE = "not_applicable"


class NotAmbidextrousError(ValueError):
    pass


class NotInIdealError(ValueError):
    pass


@dataclass(frozen=True)
class AmbiReport:
    object: Rep
    verdict: Verdict
    basis_results: tuple = field(default=())  # (index, <tr_L h>, <tr_R h>)
    witness: int | None = None

    @property
    def ambidextrous(self) -> bool:
        return self.verdict == Verdict.AMBIDEXTROUS

    @property
    def witness_pair(self) -> tuple[Scalar, Scalar] | None:
        if self.witness is None:
            return None
        _, left, right = self.basis_results[self.witness]
        return left, right

    def to_json(self) -> dict:
        doc = {
            "object": self.object.label or "J",
            "dim": self.object.dim,
            "verdict": self.verdict.value,
            "basis_dim": len(self.basis_results),
            "pairs": [[str(left), str(right)] for _, left, right in self.basis_results],
        }
        if self.witness is not None:
            doc["witness_index"] = self.witness
        return doc


_AMBI_CACHE: dict = {}
_RETRACT_CACHE: dict = {}


def ambi_check(J: Rep) -> AmbiReport:
    """Compare ⟨tr_L(h)⟩ with ⟨tr_R(h)⟩ over a basis of End(J⊗J)."""
    if J.key in _AMBI_CACHE:
        report = _AMBI_CACHE[J.key]
        return report if report.object.label == J.label else AmbiReport(J, report.verdict, report.basis_results, report.witness)
    F = J.field
    if not is_absolutely_indecomposable(J):
        report = AmbiReport(J, Verdict.NOT_APPLICABLE)
    else:
        angle = canonical_functional(J)
        basis = hom_raw(tensor(J, J), tensor(J, J))
        left = angle(tr_L_raw(F, basis, J, J))
        right = angle(tr_R_raw(F, basis, J, J))
        results = tuple((i, Scalar(F, l), Scalar(F, r)) for i, (l, r) in enumerate(zip(left, right)))
        witness = next((i for i, l, r in results if l != r), None)
        verdict = Verdict.AMBIDEXTROUS if witness is None else Verdict.NOT_AMBIDEXTROUS
        report = AmbiReport(J, verdict, results, witness)
    _AMBI_CACHE[J.key] = report
    return report


def _require_ambidextrous(J: Rep):
    report = ambi_check(J)
    if report.verdict != Verdict.AMBIDEXTROUS:
        raise NotAmbidextrousError(f"{J!r} is {report.verdict.value}")


def trace_on_ideal(J: Rep, V: Rep, f: Morphism, witness: RetractWitness | None = None) -> Scalar:
    """``t_V(f) = ⟨tr_R(α∘f∘β)⟩`` for the trace induced by an ambidextrous J."""
    _require_ambidextrous(J)
    if not f.is_endo() or f.source != V:
        raise ValueError("f must be an endomorphism of V")
    if witness is None:
        key = (V.key, J.key)
        if key not in _RETRACT_CACHE:
            _RETRACT_CACHE[key] = find_retract(V, J)
        witness = _RETRACT_CACHE[key]
        if witness is None:
            raise NotInIdealError(f"{V!r} is not in the ideal of {J!r}")
    g = witness.alpha @ f @ witness.beta
    F = J.field
    reduced = tr_R_raw(F, g.data, J, witness.W)
    try:
        return canonical_scalar(Morphism(J, J, reduced, validate=False))
    except NotAbsolutelyIndecomposableError as exc:  # pragma: no cover - guarded by ambi_check
        raise NotAmbidextrousError(str(exc)) from exc


def mod_dim(J: Rep, V: Rep, witness: RetractWitness | None = None) -> Scalar:
    """Modified dimension d_J(V) = t_V(Id_V)."""
    return trace_on_ideal(J, V, identity(V), witness)


def check_split_canonical(V: Rep, J: Rep) -> bool:
    """Whether ``d_V ⊗ Id_J: V*⊗V⊗J -> J`` splits."""
    return evaluation_splits(V, J)


def clear_caches() -> None:
    """Forget cached ambidexterity reports and retract witnesses."""
    _AMBI_CACHE.clear()
    _RETRACT_CACHE.clear()
