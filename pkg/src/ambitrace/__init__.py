"""Exact computations of ambidextrous traces and modified dimensions.

Submodules: ``kernel`` (exact fields and matrices), ``repcat`` (representation
categories with duality and braiding), ``decomp`` (endomorphism analysis,
summands, ideals), ``ambimod`` (ambidexterity and modified dimensions), ``zoo``
(example modules), ``superk`` (gl(m|n) combinatorics) and ``cli``.
"""

from __future__ import annotations

from . import ambimod, decomp, kernel, repcat, superk, zoo
from .ambimod import Verdict, ambi_check, check_split_canonical, mod_dim, trace_on_ideal
from .decomp import canonical_scalar, ideal_equal, in_ideal, split_indecomposables
from .kernel import GF, QQ
from .repcat import Rep, cat_dim, dual, tensor, tr_L, tr_R

__all__ = [
    "GF",
    "QQ",
    "Rep",
    "Verdict",
    "ambi_check",
    "ambimod",
    "canonical_scalar",
    "cat_dim",
    "check_split_canonical",
    "decomp",
    "dual",
    "ideal_equal",
    "in_ideal",
    "kernel",
    "mod_dim",
    "repcat",
    "split_indecomposables",
    "superk",
    "tensor",
    "tr_L",
    "tr_R",
    "trace_on_ideal",
    "zoo",
]

__version__ = "0.1.0"
