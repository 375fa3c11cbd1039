"""Exact fields and dense linear algebra.

Finite field elements are stored as small integer codes: a prime field
element is its residue, and an element of GF(p^e) with coefficient vector
(c_0, ..., c_{e-1}) in the polynomial basis is stored as sum(c_i * p**i).
Rational entries are ``fractions.Fraction`` objects in object arrays.

Raw ``numpy`` arrays of codes are used by the hot loops in the rest of the
package. :class:`Matrix` and :class:`Scalar` wrap them for the public API.
"""

from __future__ import annotations

import itertools
import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

__all__ = [
    "FieldMismatchError",
    "FieldSpec",
    "GF",
    "QQ",
    "Scalar",
    "Matrix",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "inverse",
    "det",
    "charpoly",
    "solve_linear",
    "kernel_basis",
    "char_poly",
    "fitting_split",
]

_FLOAT_EXACT = 2.0**52


class FieldMismatchError(ValueError):
    """Operands live over different fields."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mulmod(a, b, mod, p):
    """Multiply coefficient lists (low degree first) modulo a monic ``mod``."""
    e = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for k in range(len(out) - 1, e - 1, -1):
        c = out[k]
        if c:
            for l in range(e + 1):
                out[k - e + l] = (out[k - e + l] - c * mod[l]) % p
    return out[:e] + [0] * (e - len(out[:e]))


def _irreducible(mod: tuple[int, ...], p: int) -> bool:
    """Irreducibility by checking for factors of degree <= e/2 (brute force)."""
    e = len(mod) - 1
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = list(tail) + [1]
            r = list(mod)
            # remainder of mod divided by cand
            while len(r) - 1 >= d:
                c = r[-1]
                if c:
                    shift = len(r) - 1 - d
                    for l in range(d + 1):
                        r[shift + l] = (r[shift + l] - c * cand[l]) % p
                r.pop()
            if not any(r):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``e`` over GF(p).

    Polynomials are ordered by their coefficient tuples read from degree
    ``e-1`` down to the constant term.
    """
    for head in itertools.product(range(p), repeat=e):
        mod = tuple(reversed(head)) + (1,)
        if mod[0] != 0 and _irreducible(mod, p):
            return mod
    raise ValueError(f"no irreducible polynomial of degree {e} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """An exact field: GF(p), GF(p^e) with a fixed modulus, or the rationals.

    ``p == 0`` denotes the rationals. ``modulus`` is monic, low degree first.
    """

    p: int
    e: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if self.p == 0:
            if self.e != 1 or self.modulus:
                raise ValueError("the rationals take no extension data")
            return
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not 1 <= self.e <= 8:
            raise ValueError("extension degree must lie in 1..8")
        if self.e == 1:
            if self.modulus:
                raise ValueError("prime fields take no modulus")
            if self.p >= 1 << 15:
                raise ValueError("prime fields are limited to p < 32768")
            return
        if self.p**self.e > 64:
            raise ValueError("extension fields are limited to p^e <= 64")
        mod = tuple(self.modulus)
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if any(not 0 <= c < self.p for c in mod) or not _irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is not irreducible over GF({self.p})")

    # -- basic descriptors -------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def is_prime(self) -> bool:
        return self.p > 0 and self.e == 1

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def q(self) -> int:
        """Field size (0 for the rationals)."""
        return self.p**self.e if self.p else 0

    @property
    def kind(self) -> str:
        if self.p == 0:
            return "rationals"
        return "prime-field" if self.e == 1 else "extension-field"

    def __str__(self) -> str:
        if self.p == 0:
            return "QQ"
        return f"GF({self.q})"

    def __repr__(self) -> str:
        return str(self)

    def to_json(self) -> dict:
        d = {"p": self.p, "e": self.e}
        if self.e > 1:
            d["modulus"] = list(self.modulus)
        return d

    @classmethod
    def from_json(cls, d: dict) -> FieldSpec:
        p, e = int(d["p"]), int(d.get("e", 1))
        if p == 0:
            return QQ
        if "modulus" in d and e > 1:
            return cls(p, e, tuple(int(c) for c in d["modulus"]))
        return GF(p, e)

    # -- tables for extension fields ---------------------------------------
    @cached_property
    def _tables(self):
        p, e, q = self.p, self.e, self.q
        digits = [[(c // p**i) % p for i in range(e)] for c in range(q)]
        pw = np.array([p**i for i in range(e)])
        dig = np.array(digits, dtype=np.int64)
        add = ((dig[:, None, :] + dig[None, :, :]) % p) @ pw
        neg = ((-dig) % p) @ pw
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                c = _poly_mulmod(digits[a], digits[b], self.modulus, p)
                mul[a, b] = mul[b, a] = int(np.dot(c, pw))
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        sub = add[:, neg]
        # reduction of beta^k, k < 2e-1, in the polynomial basis
        red = np.zeros((2 * e - 1, e), dtype=np.int64)
        for k in range(2 * e - 1):
            mono = [0] * k + [1]
            red[k] = _poly_mulmod(mono, [1], self.modulus, p) if k >= e else np.eye(e, dtype=np.int64)[k]
        return {"add": add, "neg": neg, "mul": mul, "inv": inv, "sub": sub, "red": red, "pw": pw}

    @cached_property
    def _prime_inv(self):
        p = self.p
        return np.array([0] + [pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)

    # -- element construction ------------------------------------------------
    @property
    def dtype(self):
        return object if self.p == 0 else np.int64

    def zeros(self, shape) -> np.ndarray:
        if self.p == 0:
            return np.full(shape, Fraction(0), dtype=object)
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    def from_int(self, k: int):
        """Raw code of the integer ``k`` viewed as a field element."""
        return Fraction(k) if self.p == 0 else k % self.p

    @property
    def generator(self):
        """Raw code of the class of ``x`` (the adjoined root); prime fields give 1."""
        if self.p == 0 or self.e == 1:
            raise ValueError(f"{self} has no adjoined root")
        return self.p

    def array(self, data) -> np.ndarray:
        """Coerce nested data to a raw array.

        Integers are read as raw codes over finite fields and as integers over
        the rationals. :class:`Scalar` entries and numeric strings are also
        accepted.
        """
        if isinstance(data, np.ndarray) and data.dtype != object and self.p:
            arr = data.astype(np.int64)
            if arr.size and (arr.min() < 0 or arr.max() >= self.q):
                if self.e == 1:
                    return arr % self.p
                raise ValueError(f"code outside 0..{self.q - 1} for {self}")
            return arr
        arr = np.array(data, dtype=object)
        out = self.zeros(arr.shape)
        flat_in, flat_out = arr.reshape(-1), out.reshape(-1)
        for i, v in enumerate(flat_in):
            flat_out[i] = self.coerce(v)
        return out

    def coerce(self, v):
        """Raw code for a single value (int code, Fraction, Scalar or string)."""
        if isinstance(v, Scalar):
            if v.field != self:
                raise FieldMismatchError(f"{v.field} vs {self}")
            return v.value
        if isinstance(v, str):
            return self.parse(v)
        if self.p == 0:
            return Fraction(v)
        if isinstance(v, Fraction):
            if v.denominator != 1:
                return self.div(self.from_int(v.numerator), self.from_int(v.denominator))
            v = v.numerator
        v = int(v)
        if self.e == 1:
            return v % self.p
        if not 0 <= v < self.q:
            raise ValueError(f"code {v} outside 0..{self.q - 1} for {self}")
        return v

    def random(self, rng: np.random.Generator, shape, nonzero: bool = False) -> np.ndarray:
        if self.p == 0:
            vals = rng.integers(-3, 4, size=shape)
            if nonzero:
                vals = np.where(vals == 0, 1, vals)
            return self.array(vals.tolist() if np.ndim(vals) else int(vals))
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.q, size=shape).astype(np.int64)

    # -- elementwise arithmetic on raw arrays or codes ------------------------
    def add(self, a, b):
        if self.p == 0:
            return a + b
        if self.e == 1:
            return (np.asarray(a) + b) % self.p
        return self._tables["add"][a, b]

    def sub(self, a, b):
        if self.p == 0:
            return a - b
        if self.e == 1:
            return (np.asarray(a) - b) % self.p
        return self._tables["sub"][a, b]

    def neg(self, a):
        if self.p == 0:
            return -a
        if self.e == 1:
            return (-np.asarray(a)) % self.p
        return self._tables["neg"][a]

    def mul(self, a, b):
        if self.p == 0:
            return a * b
        if self.e == 1:
            return (np.asarray(a) * b) % self.p
        return self._tables["mul"][a, b]

    def inv(self, a):
        if self.p == 0:
            if np.ndim(a) == 0:
                if a == 0:
                    raise ZeroDivisionError("inverse of zero")
                return 1 / Fraction(a)
            if any(x == 0 for x in np.asarray(a).reshape(-1)):
                raise ZeroDivisionError("inverse of zero")
            return np.vectorize(lambda x: 1 / Fraction(x), otypes=[object])(a)
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero")
        table = self._prime_inv if self.e == 1 else self._tables["inv"]
        return table[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, k: int):
        result = self.one
        base = a
        if k < 0:
            base, k = self.inv(a), -k
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_zero(self, a) -> bool:
        return not np.any(np.asarray(a) != 0)

    # -- matrix products ----------------------------------------------------
    def _digits(self, a: np.ndarray) -> np.ndarray:
        pw = self._tables["pw"]
        return (a[None, ...] // pw.reshape((-1,) + (1,) * a.ndim)) % self.p

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact product over the field; broadcasts like ``np.matmul``."""
        if self.p == 0:
            return _rational_matmul(a, b)
        inner = a.shape[-1]
        if inner == 0:
            shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
            return self.zeros(shape)
        p = self.p
        if inner * (p - 1) ** 2 * (2 * self.e - 1) >= _FLOAT_EXACT:
            mid = inner // 2
            return self.add(self.matmul(a[..., :mid], b[..., :mid, :]), self.matmul(a[..., mid:], b[..., mid:, :]))
        if self.e == 1:
            r = np.matmul(a.astype(np.float64), b.astype(np.float64))
            return np.fmod(r, p).astype(np.int64)
        e = self.e
        ad = self._digits(a).astype(np.float64)
        bd = self._digits(b).astype(np.float64)
        prods = [None] * (2 * e - 1)
        for i in range(e):
            for j in range(e):
                t = np.matmul(ad[i], bd[j])
                prods[i + j] = t if prods[i + j] is None else prods[i + j] + t
        red = self._tables["red"]
        out = [np.zeros_like(prods[0]) for _ in range(e)]
        for k in range(2 * e - 1):
            pk = np.fmod(prods[k], p)
            for l in range(e):
                if red[k, l]:
                    out[l] = out[l] + red[k, l] * pk
        pw = self._tables["pw"]
        code = np.zeros(out[0].shape, dtype=np.int64)
        for l in range(e):
            code += (np.fmod(out[l], p).astype(np.int64)) * pw[l]
        return code

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 0:
            return np.kron(a, b)
        if self.e == 1:
            return np.kron(a, b) % self.p
        prod = self._tables["mul"][a[:, None, :, None], b[None, :, None, :]]
        return prod.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    def trace(self, a: np.ndarray):
        acc = self.zero
        for i in range(a.shape[0]):
            acc = self.add(acc, a[i, i])
        return acc if self.p == 0 else int(acc)

    # -- text -----------------------------------------------------------------
    def format(self, v) -> str:
        if self.p == 0:
            return str(Fraction(v))
        v = int(v)
        if self.e == 1:
            return str(v)
        digits = [(v // self.p**i) % self.p for i in range(self.e)]
        terms = []
        for d in range(self.e - 1, -1, -1):
            c = digits[d]
            if not c:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                mono = "x" if d == 1 else f"x^{d}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def parse(self, text: str):
        """Inverse of :meth:`format`; also accepts ``-`` signs and spaces."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        if self.p == 0:
            return Fraction(s)
        if self.e == 1:
            return self.coerce(Fraction(s))
        coeffs = [0] * self.e
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            m = re.fullmatch(r"(\d*)(x(?:\^(\d+))?)?", body)
            if not m or (not m.group(1) and not m.group(2)):
                raise ValueError(f"cannot parse {text!r} over {self}")
            c = int(m.group(1)) if m.group(1) else 1
            deg = 0 if not m.group(2) else int(m.group(3) or 1)
            if sign == "-":
                c = -c
            mono = _poly_mulmod([0] * deg + [1], [1], self.modulus, self.p) if deg >= self.e else None
            if mono is None:
                coeffs[deg] = (coeffs[deg] + c) % self.p
            else:
                coeffs = [(x + c * y) % self.p for x, y in zip(coeffs, mono)]
        return int(sum(c * self.p**i for i, c in enumerate(coeffs)))

    def scalar(self, v) -> Scalar:
        return Scalar(self, self.coerce(v))

    def elements(self):
        """All raw codes of a finite field."""
        if self.p == 0:
            raise ValueError("the rationals are infinite")
        return range(self.q)


_FIELDS: dict = {}


def _common_denominator(a: np.ndarray) -> int:
    den = 1
    for x in a.flat:
        d = x.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    return den


@functools.lru_cache(maxsize=1 << 16)
def _int_fraction(n: int) -> Fraction:
    return Fraction(n)


def _scaled_numerators(a: np.ndarray, den: int) -> np.ndarray:
    if den == 1:
        vals = [x.numerator for x in a.flat]
    else:
        vals = [x.numerator * (den // x.denominator) for x in a.flat]
    return np.array(vals, dtype=object).reshape(a.shape)


def _rational_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Fraction matmul that clears denominators and multiplies integers.

    Falls back to the object-dtype product when int64 could overflow.
    """
    if a.size == 0 or b.size == 0:
        return np.matmul(a, b)
    da, db = _common_denominator(a), _common_denominator(b)
    ia, ib = _scaled_numerators(a, da), _scaled_numerators(b, db)
    bound = max(abs(x) for x in ia.flat) * max(abs(x) for x in ib.flat) * a.shape[-1]
    if bound < 2**62:
        prod = np.matmul(ia.astype(np.int64), ib.astype(np.int64))
    else:
        prod = np.matmul(ia, ib)
    den = da * db
    out = np.empty(prod.shape, dtype=object)
    if den == 1:
        out.flat[:] = [_int_fraction(int(x)) for x in prod.flat]
    else:
        out.flat[:] = [Fraction(int(x), den) for x in prod.flat]
    return out


def GF(p: int, e: int = 1) -> FieldSpec:
    """The finite field with ``p**e`` elements and the built-in modulus.

    ``GF(q)`` with a prime power ``q`` is also accepted.
    """
    if e == 1 and not _is_prime(p):
        base = next((d for d in range(2, p + 1) if p % d == 0), None) if p > 1 else None
        k, rest = 0, p
        while base and rest % base == 0:
            rest //= base
            k += 1
        if base is None or rest != 1:
            raise ValueError(f"{p} is not a prime power")
        p, e = base, k
    key = (p, e)
    if key not in _FIELDS:
        if e == 1:
            _FIELDS[key] = FieldSpec(p)
        else:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            if not 1 <= e <= 8 or p**e > 64:
                raise ValueError("extension fields are limited to p^e <= 64")
            _FIELDS[key] = FieldSpec(p, e, default_modulus(p, e))
    return _FIELDS[key]


QQ = FieldSpec(0)


class Scalar:
    """An immutable element of a :class:`FieldSpec`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        object.__setattr__(self, "field", field)
        if field.p == 0:
            value = Fraction(value)
        else:
            value = int(value)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction, np.integer)):
            return self.field.from_int(int(other)) if not isinstance(other, Fraction) else self.field.coerce(other)
        return NotImplemented

    def _wrap(self, v):
        return Scalar(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.field.power(self.value, k))

    def inverse(self) -> Scalar:
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        o = self._other(other)
        return False if o is NotImplemented else self.value == o

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self}, {self.field})"


# ---------------------------------------------------------------------------
# elimination on raw arrays
# ---------------------------------------------------------------------------


def _axpy_rows(F: FieldSpec, block: np.ndarray, factors: np.ndarray, row: np.ndarray) -> np.ndarray:
    """``block - factors[:, None] * row[None, :]`` over ``F``."""
    if F.p == 0:
        return block - np.multiply.outer(factors, row)
    if F.e == 1:
        return (block - factors[:, None] * row[None, :]) % F.p
    scaled = F._tables["mul"][:, row][factors]
    if F.p == 2:
        return block ^ scaled
    return F._tables["sub"][block, scaled]


def rref(F: FieldSpec, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns. ``A`` is not modified."""
    A = np.array(A, dtype=F.dtype, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        piv = A[r, c]
        if piv != F.one:
            A[r, c:] = F.mul(A[r, c:], F.inv(piv))
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            A[others, c:] = _axpy_rows(F, A[others, c:], A[others, c], A[r, c:])
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _merge_rref(F, R, piv, block):
    """Fold the rows of ``block`` into the reduced echelon pair ``(R, piv)``."""
    if R.shape[0]:
        block = F.sub(block, F.matmul(block[:, piv], R))
    keep = np.flatnonzero(np.any(block != 0, axis=1))
    if keep.size == 0:
        return R, piv
    Rn, pn = rref(F, block[keep])
    if R.shape[0]:
        R = F.sub(R, F.matmul(R[:, pn], Rn))
    allR = np.concatenate([R, Rn], axis=0)
    allp = list(piv) + list(pn)
    order = np.argsort(allp, kind="stable")
    return allR[order], [allp[i] for i in order]


def row_space(F: FieldSpec, A: np.ndarray, block: int = 256) -> tuple[np.ndarray, list[int]]:
    """RREF of a possibly tall matrix, processed in row blocks."""
    A = np.asarray(A)
    if A.shape[0] <= block:
        return rref(F, A)
    R = F.zeros((0, A.shape[1]))
    piv: list[int] = []
    for start in range(0, A.shape[0], block):
        R, piv = _merge_rref(F, R, piv, A[start : start + block])
        if len(piv) == A.shape[1]:
            break
    return R, piv


def rank(F: FieldSpec, A: np.ndarray) -> int:
    return len(row_space(F, A)[1])


def nullspace(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    """Rows form a basis of ``{v : A v = 0}`` (echelon in the free columns)."""
    A = np.asarray(A)
    n = A.shape[1]
    R, piv = row_space(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    K = F.zeros((len(free), n))
    for k, c in enumerate(free):
        K[k, c] = F.one
    if piv and free:
        K[:, piv] = F.neg(R[:, free]).T
    return K


def solve(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray | None:
    """Some ``X`` with ``A X = B``, or ``None`` when the system is inconsistent."""
    A, B = np.asarray(A), np.asarray(B)
    n = A.shape[1]
    R, piv = row_space(F, np.concatenate([A, B], axis=1))
    if piv and piv[-1] >= n:
        return None
    X = F.zeros((n, B.shape[1]))
    for i, c in enumerate(piv):
        X[c] = R[i, n:]
    return X


def inverse(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    R, piv = rref(F, np.concatenate([A, F.eye(n)], axis=1))
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def det(F: FieldSpec, A: np.ndarray):
    """Determinant by elimination (raw code)."""
    A = np.array(A, dtype=F.dtype, copy=True)
    n = A.shape[0]
    d = F.one
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            return F.zero
        i = c + int(nz[0])
        if i != c:
            A[[c, i]] = A[[i, c]]
            d = F.neg(d)
        piv = A[c, c]
        d = F.mul(d, piv)
        below = c + 1 + np.flatnonzero(A[c + 1 :, c])
        if below.size:
            f = F.mul(A[below, c], F.inv(piv))
            A[below, c:] = _axpy_rows(F, A[below, c:], f, A[c, c:])
    return d if F.p == 0 else int(d)


def matpow(F: FieldSpec, A: np.ndarray, k: int) -> np.ndarray:
    result = F.eye(A.shape[0])
    base = A
    while k:
        if k & 1:
            result = F.matmul(result, base)
        base = F.matmul(base, base)
        k >>= 1
    return result


# ---------------------------------------------------------------------------
# polynomials over F (lists of raw codes, low degree first)
# ---------------------------------------------------------------------------


def _ptrim(F, a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(F, a, b, sign=1):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.add(x, y) if sign > 0 else F.sub(x, y))
    return _ptrim(F, [v if F.p == 0 else int(v) for v in out])


def _pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _ptrim(F, [v if F.p == 0 else int(v) for v in out])


def _pdivexact(F, a, b):
    a = list(a)
    b = _ptrim(F, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    lead_inv = F.inv(b[-1])
    while len(a) >= len(b) and a:
        c = F.mul(a[-1], lead_inv)
        shift = len(a) - len(b)
        q[shift] = c
        for j, y in enumerate(b):
            a[shift + j] = F.sub(a[shift + j], F.mul(c, y))
        a = _ptrim(F, [v if F.p == 0 else int(v) for v in a])
    if a:
        raise ArithmeticError("inexact polynomial division")
    return _ptrim(F, [v if F.p == 0 else int(v) for v in q])


def charpoly(F: FieldSpec, A: np.ndarray) -> list:
    """Characteristic polynomial det(xI - A) as raw codes, low degree first.

    Fraction-free (Bareiss) elimination over F[x], which needs no division by
    field elements other than exact polynomial quotients and so works in every
    characteristic.
    """
    A = np.asarray(A)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ValueError("char_poly needs a square matrix")
    if n == 0:
        return [F.one]
    M = [[_ptrim(F, [F.neg(A[i, j])] + ([F.one] if i == j else [])) for j in range(n)] for i in range(n)]
    sign = 1
    prev = [F.one]
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                # det(xI - A) is monic of degree n, so this cannot happen
                raise ArithmeticError("degenerate characteristic matrix")
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = _padd(F, _pmul(F, M[k][k], M[i][j]), _pmul(F, M[i][k], M[k][j]), sign=-1)
                M[i][j] = _pdivexact(F, t, prev)
            M[i][k] = []
        prev = M[k][k]
    result = M[n - 1][n - 1]
    if sign < 0:
        result = [F.neg(c) for c in result]
        result = [c if F.p == 0 else int(c) for c in result]
    return result + [F.zero] * (n + 1 - len(result))


def poly_eval_matrix(F: FieldSpec, coeffs: list, A: np.ndarray) -> np.ndarray:
    """Evaluate a polynomial (raw codes, low degree first) at a square matrix."""
    n = A.shape[0]
    out = F.zeros((n, n))
    for c in reversed(coeffs):
        out = F.matmul(out, A)
        for i in range(n):
            out[i, i] = F.add(out[i, i], c)
    return out


# ---------------------------------------------------------------------------
# public Matrix wrapper
# ---------------------------------------------------------------------------


class Matrix:
    """An immutable matrix over a :class:`FieldSpec` backed by raw codes."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        arr = field.array(data) if not (isinstance(data, np.ndarray) and data.dtype == field.dtype) else data
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise ValueError("a Matrix is two dimensional")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        return cls(field, field.eye(n))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls(field, field.zeros((rows, cols)))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def _check(self, other: Matrix):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.field, self.data[i, j])

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix(self.field, self.field.sub(self.data, other.data))

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.field.neg(self.data))

    def scale(self, c) -> Matrix:
        c = self.field.coerce(c) if not isinstance(c, Scalar) else self.field.coerce(c)
        return Matrix(self.field, self.field.mul(self.data, c))

    def __rmul__(self, c) -> Matrix:
        return self.scale(c)

    def kron(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix(self.field, self.field.kron(self.data, other.data))

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, self.data.T)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.shape == self.shape
            and bool(np.all(self.data == other.data))
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.data.tobytes() if self.field.p else str(self.data.tolist())))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.data)

    def rank(self) -> int:
        return rank(self.field, self.data)

    def inverse(self) -> Matrix:
        return Matrix(self.field, inverse(self.field, self.data))

    def det(self) -> Scalar:
        return Scalar(self.field, det(self.field, self.data))

    def trace(self) -> Scalar:
        return Scalar(self.field, self.field.trace(self.data))

    def __pow__(self, k: int) -> Matrix:
        if k < 0:
            return self.inverse() ** (-k)
        return Matrix(self.field, matpow(self.field, self.data, k))

    def tolist(self) -> list[list]:
        """Entries as raw codes (ints) or Fractions."""
        return [[v if self.field.p == 0 else int(v) for v in row] for row in self.data]

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(v) for v in row] for row in self.data]

    def __repr__(self):
        body = "; ".join(" ".join(row) for row in self.to_strings())
        return f"Matrix[{self.field}]({body})"


# ---------------------------------------------------------------------------
# spec-level entry points on Matrix values
# ---------------------------------------------------------------------------


def solve_linear(A: Matrix, B: Matrix) -> Matrix | None:
    """Some X with ``A @ X == B``, or None."""
    A._check(B)
    if A.rows != B.rows:
        raise ValueError("row counts differ")
    X = solve(A.field, A.data, B.data)
    return None if X is None else Matrix(A.field, X)


def kernel_basis(A: Matrix) -> list[Matrix]:
    """Column vectors spanning the null space of ``A``."""
    K = nullspace(A.field, A.data)
    return [Matrix(A.field, row.reshape(-1, 1)) for row in K]


def char_poly(A: Matrix) -> list[Scalar]:
    """Coefficients of det(xI - A), constant term first."""
    return [Scalar(A.field, c) for c in charpoly(A.field, A.data)]


def fitting_parts(F: FieldSpec, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Column bases of ker(f^n) and im(f^n) for raw ``f``."""
    n = f.shape[0]
    g = f
    k = 1
    while k < n:
        g = F.matmul(g, g)
        k *= 2
    ker = nullspace(F, g).T
    R, _ = row_space(F, g.T)
    return ker, R.T


def fitting_split(f: Matrix) -> tuple[Matrix, Matrix]:
    """Bases (as columns) of the Fitting kernel part and image part of ``f``."""
    if f.rows != f.cols:
        raise ValueError("fitting_split needs a square matrix")
    ker, im = fitting_parts(f.field, f.data)
    return Matrix(f.field, ker.reshape(f.rows, -1)), Matrix(f.field, im.reshape(f.rows, -1))
