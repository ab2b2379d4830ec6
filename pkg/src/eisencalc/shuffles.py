"""Weyl shuffles of GL(m+n) and the character tuple they permute.

A shuffle is stored as its 1-based image tuple ``(w(1), ..., w(m+n))``,
increasing on positions ``1..m`` and on ``m+1..m+n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

DEFAULT_CAP = 22

CHI = "CHI"
MU = "MU"


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Shuffle:
    values: tuple
    m: int
    n: int

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        if len(values) != self.m + self.n or sorted(values) != list(range(1, self.m + self.n + 1)):
            raise ValueError(f"{list(values)} is not a permutation of 1..{self.m + self.n}")
        first, second = values[: self.m], values[self.m :]
        if any(a > b for a, b in zip(first, first[1:])) or any(a > b for a, b in zip(second, second[1:])):
            raise ValueError(f"{list(values)} is not increasing on both blocks (m={self.m})")

    @classmethod
    def identity(cls, m: int, n: int) -> "Shuffle":
        return cls(tuple(range(1, m + n + 1)), m, n)

    @classmethod
    def longest(cls, m: int, n: int) -> "Shuffle":
        """The block swap ``w(i) = n + i``, ``w(m + j) = j``."""
        return cls(tuple(range(n + 1, n + m + 1)) + tuple(range(1, n + 1)), m, n)

    @classmethod
    def parse(cls, text: str, m: int, n: int) -> "Shuffle":
        return cls(tuple(int(x) for x in text.replace(" ", "").strip("[]()").split(",")), m, n)

    def __call__(self, i: int) -> int:
        """w(i), 1-based."""
        return self.values[i - 1]

    def __len__(self):
        return self.m + self.n

    def is_identity(self) -> bool:
        return self.values == tuple(range(1, len(self.values) + 1))

    def to_json(self) -> list:
        return list(self.values)

    @classmethod
    def from_json(cls, data: Sequence[int], m: int) -> "Shuffle":
        return cls(tuple(data), m, len(data) - m)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.values)) + ")"


def is_shuffle(values: Sequence[int], m: int) -> bool:
    first, second = values[:m], values[m:]
    return all(a < b for a, b in zip(first, first[1:])) and all(a < b for a, b in zip(second, second[1:]))


def enumerate_shuffles(m: int, n: int, cap: int = DEFAULT_CAP) -> list:
    """All shuffles for the block sizes (m, n), lexicographic in their values."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if m + n > cap:
        raise EnumerationTooLarge(
            f"enumeration too large: m+n={m + n} exceeds cap {cap} "
            f"(binomial({m + n}, {m}) = {comb(m + n, m)} shuffles)"
        )
    total = m + n
    everything = range(1, total + 1)
    out = []
    for head in combinations(everything, m):
        chosen = set(head)
        tail = tuple(v for v in everything if v not in chosen)
        out.append(Shuffle(head + tail, m, n))
    return out


def m_w(w: Shuffle) -> int:
    """Least i <= m with w(i) > i; m + 1 for the identity."""
    for i in range(1, w.m + 1):
        if w(i) > i:
            return i
    return w.m + 1


def inversion_pairs(w: Shuffle) -> set:
    return {(i, j) for i in range(1, w.m + 1) for j in range(w.m + 1, w.m + w.n + 1) if w(i) > w(j)}


@dataclass(frozen=True, order=True)
class AffineExponent:
    """``s_coeff * s + constant`` with rational coefficients."""

    s_coeff: Fraction
    constant: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s_coeff", Fraction(self.s_coeff))
        object.__setattr__(self, "constant", Fraction(self.constant))

    @classmethod
    def const(cls, value) -> "AffineExponent":
        return cls(Fraction(0), Fraction(value))

    @property
    def is_numeric(self) -> bool:
        return self.s_coeff == 0

    def at(self, s) -> Fraction:
        return self.s_coeff * Fraction(s) + self.constant

    def substitute(self, s) -> "AffineExponent":
        return AffineExponent.const(self.at(s))

    def __add__(self, other) -> "AffineExponent":
        if isinstance(other, AffineExponent):
            return AffineExponent(self.s_coeff + other.s_coeff, self.constant + other.constant)
        return AffineExponent(self.s_coeff, self.constant + Fraction(other))

    def __str__(self) -> str:
        return format_affine(self.s_coeff, self.constant)


def format_rational(q: Fraction) -> str:
    """Exact ``p/q`` string used for every rational in JSON."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    return Fraction(str(text).strip())


def format_affine(s_coeff: Fraction, constant: Fraction) -> str:
    if s_coeff == 0:
        return str(constant)
    if s_coeff == 1:
        head = "s"
    elif s_coeff == -1:
        head = "-s"
    else:
        head = f"{s_coeff}*s"
    if constant == 0:
        return head
    sign = "+" if constant > 0 else "-"
    return f"{head} {sign} {abs(constant)}"


@dataclass(frozen=True)
class LambdaTuple:
    """The unramified character tuple: ``(tag, exponent)`` per diagonal slot."""

    entries: tuple

    @classmethod
    def build(cls, m: int, n: int) -> "LambdaTuple":
        half = Fraction(1, 2)
        entries = [(CHI, AffineExponent(half, Fraction(-(m - 1), 2) + i)) for i in range(m)]
        entries += [(MU, AffineExponent(-half, Fraction(-(n - 1), 2) + j)) for j in range(n)]
        return cls(tuple(entries))

    def substitute(self, s) -> "LambdaTuple":
        return LambdaTuple(tuple((tag, e.substitute(s)) for tag, e in self.entries))

    def __len__(self):
        return len(self.entries)

    def exponents(self) -> tuple:
        return tuple(e for _, e in self.entries)

    def key(self, identify_characters: bool) -> tuple:
        """Hashable form; with ``identify_characters`` the CHI/MU tags are dropped (chi = mu)."""
        if identify_characters:
            return tuple((e.s_coeff, e.constant) for _, e in self.entries)
        return tuple((tag, e.s_coeff, e.constant) for tag, e in self.entries)

    def to_json(self) -> list:
        return [
            {"tag": tag, "s_coeff": format_rational(e.s_coeff), "const": format_rational(e.constant)}
            for tag, e in self.entries
        ]

    @classmethod
    def from_json(cls, data: list) -> "LambdaTuple":
        return cls(
            tuple(
                (d["tag"], AffineExponent(parse_rational(d["s_coeff"]), parse_rational(d["const"])))
                for d in data
            )
        )


def apply_weyl(w, lam: LambdaTuple) -> LambdaTuple:
    """Permute the tuple so that ``result[i] = lam[w^{-1}(i)]``.

    ``w`` is a :class:`Shuffle` or any 1-based permutation sequence.
    """
    values = w.values if isinstance(w, Shuffle) else tuple(w)
    if len(values) != len(lam):
        raise ValueError(f"permutation of length {len(values)} applied to tuple of length {len(lam)}")
    out = [None] * len(values)
    for i, wi in enumerate(values):
        # result at position w(i) is the entry at i
        out[wi - 1] = lam.entries[i]
    return LambdaTuple(tuple(out))
