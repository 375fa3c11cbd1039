"""Combinatorics of polynomial gl(m|n) supermodules.

Weights are integer vectors on the basis eps_1..eps_{m+n}; the form pairs
eps_i with itself to +1 for i <= m and -1 for i > m. Everything here is exact
(integers and ``Fraction``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Weight",
    "Partition",
    "AtypicalWeightError",
    "ChainError",
    "GKWVerdict",
    "parse_weight",
    "parse_partition",
    "rho",
    "form",
    "odd_roots",
    "atypicality",
    "defect",
    "typical_dim",
    "mod_dim_ratio",
    "transpose",
    "tau",
    "is_hook",
    "is_polynomial",
    "hook_partitions",
    "lr_coeff",
    "lr_product",
    "hook_schur_product",
    "sigma",
    "is_rectangle",
    "atypicality_chain",
    "gkw_check",
]


class AtypicalWeightError(ValueError):
    """A weight pairs to zero with an odd root."""

    def __init__(self, weight: "Weight", root: tuple[int, int]):
        self.weight = weight
        self.root = root
        i, j = root
        super().__init__(f"{weight} is atypical: (lambda+rho, eps_{i}-eps_{j}) = 0")


class ChainError(RuntimeError):
    """No constant-atypicality chain was found; this signals a bug, not bad input."""


class GKWVerdict(str, Enum):
    NONZERO = "consistent-nonzero"
    ZERO = "consistent-zero"


@dataclass(frozen=True)
class Weight:
    m: int
    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if len(self.entries) != self.m + self.n:
            raise ValueError(f"expected {self.m + self.n} entries, got {len(self.entries)}")

    @property
    def even_part(self) -> tuple[int, ...]:
        return self.entries[: self.m]

    @property
    def odd_part(self) -> tuple[int, ...]:
        return self.entries[self.m :]

    def __add__(self, other: Weight) -> Weight:
        _same_shape(self, other)
        return Weight(self.m, self.n, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __str__(self) -> str:
        return ",".join(map(str, self.even_part)) + "|" + ",".join(map(str, self.odd_part))

    @classmethod
    def zero(cls, m: int, n: int) -> Weight:
        return cls(m, n, (0,) * (m + n))


class Partition(tuple):
    """Weakly decreasing nonnegative integers, trailing zeros dropped."""

    def __new__(cls, parts=()):
        parts = [int(x) for x in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        if any(x < 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{tuple(parts)} is not a partition")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        """The i-th part (0-based), zero past the end."""
        return self[i] if i < len(self) else 0

    def contains(self, other: Partition) -> bool:
        return all(self.part(i) >= x for i, x in enumerate(other))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def __str__(self) -> str:
        return ",".join(map(str, self)) if self else "()"


def _same_shape(a: Weight, b: Weight):
    if (a.m, a.n) != (b.m, b.n):
        raise ValueError(f"weights for gl({a.m}|{a.n}) and gl({b.m}|{b.n}) do not mix")


def _ints(text: str) -> list[int]:
    text = text.strip().strip("()")
    return [int(x) for x in text.split(",") if x.strip()] if text else []


def parse_weight(text: str, m: int | None = None, n: int | None = None) -> Weight:
    """Parse ``"3,2|2"``; short sides are padded with zeros when m, n are given."""
    if "|" not in text:
        raise ValueError(f"weight {text!r} needs a '|' between the two parts")
    left, right = text.split("|", 1)
    a, b = _ints(left), _ints(right)
    m = len(a) if m is None else m
    n = len(b) if n is None else n
    if len(a) > m or len(b) > n:
        raise ValueError(f"weight {text!r} does not fit gl({m}|{n})")
    return Weight(m, n, tuple(a + [0] * (m - len(a)) + b + [0] * (n - len(b))))


def parse_partition(text: str) -> Partition:
    return Partition(_ints(text))


# ---------------------------------------------------------------------------
# roots, form, atypicality
# ---------------------------------------------------------------------------


def rho(m: int, n: int) -> Weight:
    """(m-1, ..., 1, 0 | 0, -1, ..., -(n-1))."""
    return Weight(m, n, tuple(range(m - 1, -1, -1)) + tuple(-j for j in range(n)))


def form(mu: Weight, nu: Weight) -> int:
    _same_shape(mu, nu)
    return sum(a * b for a, b in zip(mu.even_part, nu.even_part)) - sum(
        a * b for a, b in zip(mu.odd_part, nu.odd_part)
    )


def _root_pairing(shifted: Weight, i: int, j: int) -> int:
    """(shifted, eps_i - eps_j) with 0-based indices."""
    m = shifted.m
    si = shifted.entries[i] if i < m else -shifted.entries[i]
    sj = shifted.entries[j] if j < m else -shifted.entries[j]
    return si - sj


def odd_roots(m: int, n: int) -> list[tuple[int, int]]:
    """Positive odd roots eps_i - eps_j as 1-based (i, j), i <= m < j."""
    return [(i + 1, j + 1) for i in range(m) for j in range(m, m + n)]


def _vanishing(lam: Weight) -> dict[int, list[int]]:
    shifted = lam + rho(lam.m, lam.n)
    return {
        i: [j for j in range(lam.m, lam.m + lam.n) if _root_pairing(shifted, i, j) == 0]
        for i in range(lam.m)
    }


def atypicality(lam: Weight) -> int:
    """Size of a maximum matching between even and odd indices whose root pairs to zero.

    Mutually orthogonal isotropic roots eps_i - eps_j use distinct i and
    distinct j, so they are exactly the matchings.
    """
    edges = _vanishing(lam)
    match: dict[int, int] = {}

    def augment(i, seen):
        for j in edges[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match or augment(match[j], seen):
                match[j] = i
                return True
        return False

    return sum(augment(i, set()) for i in range(lam.m))


def defect(m: int, n: int) -> int:
    return min(m, n)


def typical_dim(lam: Weight) -> Fraction:
    """prod_even (lam+rho, a)/(rho, a) divided by prod_odd (lam+rho, a)."""
    m, n = lam.m, lam.n
    r = rho(m, n)
    shifted = lam + r
    value = Fraction(1)
    for i, j in odd_roots(m, n):
        pairing = _root_pairing(shifted, i - 1, j - 1)
        if pairing == 0:
            raise AtypicalWeightError(lam, (i, j))
        value /= pairing
    blocks = (range(m), range(m, m + n))
    for block in blocks:
        for i, j in itertools.combinations(block, 2):
            value *= Fraction(_root_pairing(shifted, i, j), _root_pairing(r, i, j))
    return value


def mod_dim_ratio(lam_L: Weight, lam_J: Weight) -> Fraction:
    """d(L)/d(J) for typical weights of the same gl(m|n)."""
    _same_shape(lam_L, lam_J)
    return typical_dim(lam_L) / typical_dim(lam_J)


# ---------------------------------------------------------------------------
# partitions and the weight translation
# ---------------------------------------------------------------------------


def transpose(gamma) -> Partition:
    gamma = Partition(gamma)
    if not gamma:
        return gamma
    return Partition(sum(1 for x in gamma if x > c) for c in range(gamma[0]))


def is_hook(gamma, m: int, n: int) -> bool:
    """The (m+1, n+1) node is absent."""
    return Partition(gamma).part(m) <= n


def is_polynomial(lam: Weight) -> bool:
    a, b = lam.even_part, lam.odd_part
    try:
        Partition(a)
        Partition(b)
    except ValueError:
        return False
    if min(a) < 0 or min(b) < 0:
        return False
    return sum(1 for x in b if x) <= a[-1]


def tau(x, m: int | None = None, n: int | None = None):
    """Translate a polynomial weight to its hook partition, or back.

    Weights map to partitions; partitions need ``m`` and ``n``.
    """
    if isinstance(x, Weight):
        if not is_polynomial(x):
            raise ValueError(f"{x} is not the highest weight of a polynomial supermodule")
        return Partition(x.even_part + tuple(transpose(x.odd_part)))
    if m is None or n is None:
        raise ValueError("translating a partition needs m and n")
    gamma = Partition(x)
    if not is_hook(gamma, m, n):
        raise ValueError(f"{gamma} is not an ({m},{n}) hook partition")
    head = tuple(gamma.part(i) for i in range(m))
    tail = transpose(gamma[m:])
    return Weight(m, n, head + tuple(tail.part(j) for j in range(n)))


def hook_partitions(m: int, n: int, size: int):
    """All (m, n) hook partitions of the given size."""

    def gen(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    for parts in gen(size, size):
        gamma = Partition(parts)
        if is_hook(gamma, m, n):
            yield gamma


# ---------------------------------------------------------------------------
# Littlewood-Richardson
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _lr(outer: tuple, inner: tuple, content: tuple) -> int:
    outer_p, inner_p = Partition(outer), Partition(inner)
    if not outer_p.contains(inner_p) or outer_p.size - inner_p.size != sum(content):
        return 0
    rows = [(inner_p.part(r), outer_p.part(r)) for r in range(len(outer_p))]
    letters = len(content)
    count = 0

    # fill rows top to bottom; each row is weakly increasing, read right to left
    def fill_row(r, above, used):
        nonlocal count
        if r == len(rows):
            if tuple(used) == content:
                count += 1
            return
        lo, hi = rows[r]
        width = hi - lo
        row = [0] * width

        def place(c, used_row):
            # c runs right to left over the row so the reading word is built in order
            if c < 0:
                fill_row(r + 1, {lo + k: row[k] for k in range(width)}, used_row)
                return
            col = lo + c
            upper = row[c + 1] if c + 1 < width else letters
            below_of = above.get(col, 0)
            for v in range(below_of + 1, upper + 1):
                if used_row[v - 1] >= content[v - 1]:
                    continue
                if v > 1 and used_row[v - 1] >= used_row[v - 2]:
                    continue
                row[c] = v
                used_row[v - 1] += 1
                place(c - 1, used_row)
                used_row[v - 1] -= 1

        place(width - 1, list(used))

    fill_row(0, {}, [0] * letters)
    return count


def lr_coeff(gamma1, gamma2, mu) -> int:
    """Littlewood-Richardson coefficient of s_mu in s_gamma1 * s_gamma2."""
    return _lr(tuple(Partition(mu)), tuple(Partition(gamma1)), tuple(Partition(gamma2)))


def _strips(shape: list[int], count: int):
    """Ways to add a horizontal strip of ``count`` cells to ``shape``.

    Yields (new shape, cells added per row). Row r may grow up to the length
    of row r-1 in the old shape.
    """
    rows = len(shape) + 1
    base = shape + [0]

    def rec(r, left, acc):
        if r == rows:
            if left == 0:
                yield acc
            return
        cap = left if r == 0 else min(left, base[r - 1] - base[r])
        for add in range(cap, -1, -1):
            yield from rec(r + 1, left - add, acc + [add])

    for adds in rec(0, count, []):
        yield [b + a for b, a in zip(base, adds)], adds


def lr_product(gamma1, gamma2) -> dict[Partition, int]:
    """s_gamma1 * s_gamma2 expanded on Schur functions.

    Adds the letters of an LR filling one value at a time: the k's form a
    horizontal strip, and the reverse reading word stays a lattice word when
    the k's in rows 1..r never outnumber the (k-1)'s in rows 1..r-1.
    """
    g1, g2 = Partition(gamma1), Partition(gamma2)
    states = {(tuple(g1), ()): 1}
    for count in g2:
        nxt: dict = {}
        for (shape, prev), mult in states.items():
            for new, adds in _strips(list(shape), count):
                if prev:
                    above = 0
                    run = 0
                    ok = True
                    for r, a in enumerate(adds):
                        run += a
                        if run > above:
                            ok = False
                            break
                        above += prev[r] if r < len(prev) else 0
                    if not ok:
                        continue
                key = (tuple(Partition(new)), tuple(adds))
                nxt[key] = nxt.get(key, 0) + mult
        states = nxt
    out: dict[Partition, int] = {}
    for (shape, _), mult in states.items():
        mu = Partition(shape)
        out[mu] = out.get(mu, 0) + mult
    return dict(sorted(out.items(), key=lambda kv: (len(kv[0]), tuple(-x for x in kv[0]))))


def hook_schur_product(gamma1, gamma2, m: int, n: int) -> dict[Partition, int]:
    """Coefficients of HS_gamma1 * HS_gamma2 on hook Schur functions of gl(m|n).

    Non-hook shapes carry HS = 0 and are dropped.
    """
    return {mu: c for mu, c in lr_product(gamma1, gamma2).items() if is_hook(mu, m, n)}


# ---------------------------------------------------------------------------
# rectangles and chains
# ---------------------------------------------------------------------------


def sigma(m: int, n: int, k: int) -> Partition:
    """m-k rows of length n-k."""
    if not 0 <= k <= min(m, n):
        raise ValueError(f"k must lie in 0..{min(m, n)}")
    return Partition((n - k,) * (m - k))


def is_rectangle(gamma) -> bool:
    return len(set(Partition(gamma))) <= 1


def atypicality_chain(mu: Weight) -> list[Weight]:
    """Weights sigma(k) = g_1 ⊆ ... ⊆ g_l = mu, one node per step, all of atypicality k.

    Rows of the hook partition are filled in three passes (rows 1..m-k, then
    m-k+1..m, then the rest), as in the standard argument. Each step is
    checked; a depth-first search inside a pass covers the case where the
    greedy choice gets stuck.
    """
    m, n = mu.m, mu.n
    if not is_polynomial(mu):
        raise ValueError(f"{mu} is not the highest weight of a polynomial supermodule")
    k = atypicality(mu)
    target = tau(mu)
    start = sigma(m, n, k)
    if not target.contains(start):
        raise ChainError(f"sigma({k}) is not contained in {target}")
    length = max(len(target), 1)
    passes = [range(0, m - k), range(m - k, m), range(m, length)]

    def ok(parts):
        try:
            gamma = Partition(parts)
        except ValueError:
            return False
        return is_hook(gamma, m, n) and atypicality(tau(gamma, m, n)) == k

    chain = [start]
    current = [start.part(i) for i in range(length)]
    for rows in passes:
        goal = [target.part(i) if i in rows else current[i] for i in range(length)]
        steps = _fill(current, goal, list(rows), ok)
        if steps is None:
            raise ChainError(f"no constant-atypicality path through rows {list(rows)} for {mu}")
        for parts in steps:
            chain.append(Partition(parts))
        current = goal
    weights = [tau(g, m, n) for g in chain]
    for a, b in zip(chain, chain[1:]):
        if not (b.contains(a) and b.size == a.size + 1):
            raise ChainError("chain step does not add exactly one node")
    if any(atypicality(w) != k for w in weights) or weights[-1] != mu:
        raise ChainError("chain check failed")
    return weights


def _fill(current, goal, rows, ok):
    """Node-by-node path from ``current`` to ``goal`` inside ``rows``, or None."""
    seen = set()

    def dfs(state):
        if state == goal:
            return []
        key = tuple(state)
        if key in seen:
            return None
        seen.add(key)
        for r in rows:
            if state[r] < goal[r]:
                nxt = list(state)
                nxt[r] += 1
                if ok(nxt):
                    rest = dfs(nxt)
                    if rest is not None:
                        return [nxt] + rest
        return None

    return dfs(list(current))


def gkw_check(lam_L: Weight, lam_J: Weight) -> GKWVerdict:
    """Predicted vanishing of d_J(L) for polynomial L, J with atyp(L) <= atyp(J)."""
    _same_shape(lam_L, lam_J)
    for lam in (lam_L, lam_J):
        if not is_polynomial(lam):
            raise ValueError(f"{lam} is not the highest weight of a polynomial supermodule")
    a_L, a_J = atypicality(lam_L), atypicality(lam_J)
    if a_L > a_J:
        raise ValueError(f"atyp(L) = {a_L} exceeds atyp(J) = {a_J}")
    return GKWVerdict.NONZERO if a_L == a_J else GKWVerdict.ZERO
