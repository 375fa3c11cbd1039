"""Klein four group over GF(4): a trace that lives on a proper ideal.

V(1,a) is two dimensional with zero categorical dimension, yet it is
ambidextrous, so it carries a nonzero trace on its ideal.  Larger members of
the same family are not ambidextrous, and V(2,a) has modified dimension zero
with respect to V(1,a).
"""

from __future__ import annotations

from ambitrace import zoo
from ambitrace.ambimod import ambi_check, check_split_canonical, mod_dim
from ambitrace.decomp import ideal_equal, in_ideal
from ambitrace.kernel import GF
from ambitrace.repcat import cat_dim, end_basis, tensor

F = GF(4)


def module(name: str):
    return zoo.klein_from_string(name, F)


def main() -> None:
    V1, V2, V3 = module("V(1,a)"), module("V(2,a)"), module("V(3,a)")
    print("cat_dim V(1,a) =", cat_dim(V1))
    print("dim End(V(1,a)⊗V(1,a)) =", len(end_basis(tensor(V1, V1))))
    report = ambi_check(V1)
    print("V(1,a):", report.verdict.value)
    print("d_V(1,a)(V(2,a)) =", mod_dim(V1, V2))
    print("I_V(1,a) = I_V(2,a):", ideal_equal(V1, V2))
    print("V(1,a) in I_V(3,a):", in_ideal(V1, V3), " V(3,a) in I_V(1,a):", in_ideal(V3, V1))
    # the ideals agree, so the evaluation map of V(2,a) tensored with V(1,a) splits
    print("d_V(2,a) ⊗ Id_V(1,a) splits:", check_split_canonical(V2, V1))
    for name in ("V(2,a)", "V(3,a)", "V(4,a)", "V(1,inf)", "V(2,inf)"):
        print(f"{name}: {ambi_check(module(name)).verdict.value}")


if __name__ == "__main__":
    main()
