"""Restricted sl2 in characteristic 5.

A baby Verma module with regular nilpotent character is not ambidextrous.
A semisimple character gives an ambidextrous one, and so do the restricted
simples.  The Steinberg module sits at the bottom of the ideal chain and has
modified dimension zero with respect to every other restricted simple.
"""

from __future__ import annotations

import numpy as np

from ambitrace import zoo
from ambitrace.ambimod import ambi_check, mod_dim
from ambitrace.decomp import generalized_eigenspaces, in_ideal, split_indecomposables
from ambitrace.kernel import GF
from ambitrace.repcat import tensor, tr_R

P = 5


def regular_nilpotent() -> None:
    V = zoo.sl2_baby_verma(P, zoo.ChiType("regular-nilpotent"), 0)
    VV = tensor(V, V)
    spaces = sorted(s.rep.dim for _, s in generalized_eigenspaces(zoo.omega12(V, V)))
    print("Omega12 generalized eigenspaces on V⊗V:", spaces)
    print("indecomposable summands:", sorted(s.rep.dim for s in split_indecomposables(VV)))
    f = zoo.vzero_witness(P)
    F = V.field
    print("witness has tr_R f = -Id:", np.array_equal(tr_R(f, V, V).data, F.neg(F.eye(P))))
    print("V_chi,0:", ambi_check(V).verdict.value)


def semisimple() -> None:
    F25 = GF(25)
    lam = F25.generator
    V = zoo.sl2_baby_verma(P, zoo.semisimple_chi(lam, F25), lam, F25)
    parts = split_indecomposables(tensor(V, V))
    print("semisimple V⊗V summand dims:", [s.rep.dim for s in parts])
    print("semisimple V:", ambi_check(V).verdict.value)


def restricted_block() -> None:
    St = zoo.sl2_restricted_simple(P, P - 1)
    V = zoo.sl2_baby_verma(P, zoo.ChiType("regular-nilpotent"), 0)
    k = zoo.sl2_restricted_simple(P, 0)
    for lam in range(P):
        L = zoo.sl2_restricted_simple(P, lam)
        line = f"L({lam}): {ambi_check(L).verdict.value}"
        if lam < P - 1:
            line += f", d_L({lam})(St) = {mod_dim(L, St)}"
        print(line)
    print("St in I_V:", in_ideal(St, V), " V in I_St:", in_ideal(V, St))
    print("V in I_k:", in_ideal(V, k), " k in I_V:", in_ideal(k, V))


if __name__ == "__main__":
    regular_nilpotent()
    semisimple()
    restricted_block()
