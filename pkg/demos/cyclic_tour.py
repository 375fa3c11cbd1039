"""Cyclic groups: where ambidexterity fails and where it holds.

Over a field of characteristic p the group C_p has exactly p indecomposable
modules, the Jordan blocks V1..Vp.  Blocks of size r < p have nonzero
categorical dimension r, so they are ambidextrous for free.  The free module
Vp has dimension zero, and this script shows it is not ambidextrous.
"""

from __future__ import annotations

from ambitrace import zoo
from ambitrace.ambimod import ambi_check, mod_dim
from ambitrace.decomp import canonical_scalar, split_indecomposables
from ambitrace.repcat import cat_dim, tensor, tr_L, tr_R


def characteristic_two() -> None:
    A = zoo.cyclic_module(2, 2)
    parts = split_indecomposables(tensor(A, A))
    print("C2: A⊗A splits into summands of dims", sorted(s.rep.dim for s in parts))
    f = zoo.cyclic2_witness()
    left, right = canonical_scalar(tr_L(f, A, A)), canonical_scalar(tr_R(f, A, A))
    print(f"    the witness endomorphism has <tr_L f> = {left} and <tr_R f> = {right}")
    print("    verdict for A:", ambi_check(A).verdict.value)


def odd_primes() -> None:
    for p in (3, 5, 7):
        verdicts = [ambi_check(zoo.cyclic_module(p, r)).verdict.value for r in range(1, p + 1)]
        dims = [str(cat_dim(zoo.cyclic_module(p, r))) for r in range(1, p + 1)]
        print(f"C{p}: cat_dim V1..V{p} = {', '.join(dims)}")
        print(f"     verdicts: {', '.join(verdicts)}")
        A = zoo.cyclic_regular(p)
        f = zoo.cyclic_regular_witness(p)
        L, R = tr_L(f, A, A), tr_R(f, A, A)
        print(f"     tr_R f = -tr_L f: {R == -L}")


def modified_dimensions() -> None:
    # inside the ideal of V2 over C3, the modified dimension rescales cat_dim
    J = zoo.cyclic_module(3, 2)
    for r in (1, 2, 3):
        V = zoo.cyclic_module(3, r)
        try:
            print(f"C3: d_V2(V{r}) = {mod_dim(J, V)}")
        except ValueError as exc:
            print(f"C3: d_V2(V{r}) undefined ({exc})")


if __name__ == "__main__":
    characteristic_two()
    odd_primes()
    modified_dimensions()
