"""gl(m|n) combinatorics: atypicality, typical dimensions and hook chains."""

from __future__ import annotations

from ambitrace import superk as sk


def main() -> None:
    for m, n in ((1, 1), (2, 1), (2, 2), (3, 2)):
        print(f"gl({m}|{n}): atyp(0) = {sk.atypicality(sk.Weight.zero(m, n))}, defect {sk.defect(m, n)}")

    for text in ("1|0", "2,1|1", "3,1|2"):
        lam = sk.parse_weight(text)
        print(f"typical dimension of {text}: {sk.typical_dim(lam)}")
    try:
        sk.typical_dim(sk.parse_weight("1,0|0"))
    except sk.AtypicalWeightError as exc:
        print("refused:", exc)

    mu = sk.tau(sk.Partition((3, 2, 1, 1)), 2, 1)
    print(f"hook (3,2,1,1) over gl(2|1) is the weight {mu}, atypicality {sk.atypicality(mu)}")
    print("chain:", " -> ".join(str(w) for w in sk.atypicality_chain(mu)))

    print("LR square of (2,1):", {tuple(k): v for k, v in sk.lr_product((2, 1), (2, 1)).items()})
    J0 = sk.tau(sk.sigma(2, 1, 0), 2, 1)
    print("gkw verdict for L = 2,1|1 against J =", J0, ":", sk.gkw_check(sk.parse_weight("2,1|1"), J0).value)


if __name__ == "__main__":
    main()
