"""Inverse normalizing factors r(Lambda_s, w)^{-1} of the constant term.

Two independent constructions are provided: the product over inverted roots
and the telescoped product indexed by ``i = m_w .. m``.  Epsilon factors are
taken to be 1 throughout.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .laurent import LaurentSeries, series_product
from .shuffles import DEFAULT_CAP, AffineExponent, Shuffle, enumerate_shuffles, format_rational, inversion_pairs, m_w
from .zeta import NONTRIVIAL, TRIVIAL, LFactor, _expand_integer, _inverse_integer, order_at

EPSILON_ASSUMPTION = "epsilon factors are taken to be 1 (unramified data over Q)"


@dataclass(frozen=True)
class CriticalPoint:
    """``s = (m + n)/2 - alpha`` with ``m <= n`` and ``0 <= alpha <= floor((m + n)/2)``."""

    m: int
    n: int
    alpha: int
    char_equal: bool = True

    def __post_init__(self):
        if not (1 <= self.m <= self.n):
            raise ValueError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")
        if not (0 <= self.alpha <= (self.m + self.n) // 2):
            raise ValueError(f"alpha={self.alpha} outside [0, {(self.m + self.n) // 2}]")

    @property
    def s(self) -> Fraction:
        return Fraction(self.m + self.n, 2) - self.alpha

    @property
    def shift(self) -> int:
        """Position offset m + n - alpha pairing slot i with slot i + shift."""
        return self.m + self.n - self.alpha

    @property
    def char(self) -> str:
        return TRIVIAL if self.char_equal else NONTRIVIAL

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "alpha": self.alpha,
            "s": format_rational(self.s),
            "char_equal": self.char_equal,
        }

    def __str__(self) -> str:
        eq = "chi=mu" if self.char_equal else "chi!=mu"
        return f"m={self.m}, n={self.n}, alpha={self.alpha}, s={self.s}, {eq}"


def _sort(factors) -> tuple:
    return tuple(sorted(factors))


@dataclass(frozen=True)
class ZetaProduct:
    """Formal quotient of L-factor multisets, optionally evaluated at ``s = point``."""

    num: tuple
    den: tuple
    point: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "num", _sort(self.num))
        object.__setattr__(self, "den", _sort(self.den))

    def reduce(self) -> "ZetaProduct":
        """Cancel factors equal in character and argument.

        Arguments are compared exactly, also after substitution: as germs at
        the point, ``L(x + t)`` and ``L(1 - x + t)`` are different functions.
        """
        num, den = Counter(self.num), Counter(self.den)
        common = num & den
        return ZetaProduct(tuple((num - common).elements()), tuple((den - common).elements()), self.point)

    def substitute(self, s) -> "ZetaProduct":
        s = Fraction(s)
        return ZetaProduct(
            tuple(f.substitute(s) for f in self.num), tuple(f.substitute(s) for f in self.den), s
        )

    def is_one(self) -> bool:
        r = self.reduce()
        return not r.num and not r.den

    def __mul__(self, other: "ZetaProduct") -> "ZetaProduct":
        return ZetaProduct(self.num + other.num, self.den + other.den, self.point)

    def valuation_bound(self) -> int:
        """Sum of the factor valuations; equals the valuation of :meth:`expand`
        whenever the leading coefficients do not cancel."""
        return sum(order_at(f).order for f in self.num) - sum(order_at(f).order for f in self.den)

    def expand(self, trunc: int) -> LaurentSeries:
        """Laurent expansion at ``s = point + t`` through ``t^trunc``.

        Every factor is expanded far enough that the product is exact through
        ``t^trunc`` (precision of a product: ``min_i (T_i + sum_{j != i} v_j)``).
        """
        if self.point is None:
            raise ValueError("substitute a point before expanding")
        items = [(f, order_at(f).order, False) for f in self.num]
        items += [(f, -order_at(f).order, True) for f in self.den]
        total = sum(v for _, v, _ in items)
        series = []
        for f, v, inverted in items:
            need = max(trunc - (total - v), v)
            x = _integer_argument(f)
            series.append(_inverse_integer(x, need) if inverted else _expand_integer(x, need))
        return series_product(series, trunc)

    def __str__(self) -> str:
        def side(fs):
            return "*".join(str(f) for f in fs) if fs else "1"

        text = side(self.num)
        if self.den:
            text += " / " + (side(self.den) if len(self.den) == 1 else f"({side(self.den)})")
        return text

    def to_json(self) -> dict:
        return {
            "num": [f.to_json() for f in self.num],
            "den": [f.to_json() for f in self.den],
            "point": None if self.point is None else format_rational(self.point),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ZetaProduct":
        point = None if data["point"] is None else Fraction(data["point"])
        return cls(
            tuple(LFactor.from_json(d) for d in data["num"]),
            tuple(LFactor.from_json(d) for d in data["den"]),
            point,
        )


def _integer_argument(f: LFactor) -> int:
    if f.char != TRIVIAL:
        raise ValueError("expansion unsupported for nontrivial character")
    x = f.value
    if x.denominator != 1:
        raise ValueError(f"expansion needs an integer argument, got {x}")
    return int(x)


def _resolve(point, char_equal: bool):
    if isinstance(point, CriticalPoint):
        return point.s, point.char
    return (None if point is None else Fraction(point)), (TRIVIAL if char_equal else NONTRIVIAL)


def _finish(num, den, s) -> ZetaProduct:
    prod = ZetaProduct(tuple(num), tuple(den))
    return prod if s is None else prod.substitute(s)


def r_inverse_root_product(w: Shuffle, point=None, char_equal: bool = True) -> ZetaProduct:
    """Product over the inverted roots (i, j) of ``L(s + (m+n)/2 + i - j) / L(... + 1)``."""
    s, char = _resolve(point, char_equal)
    half = Fraction(w.m + w.n, 2)
    num, den = [], []
    for i, j in sorted(inversion_pairs(w)):
        arg = AffineExponent(1, half + i - j)
        num.append(LFactor(char, arg))
        den.append(LFactor(char, arg + 1))
    return _finish(num, den, s)


def r_inverse_telescoped(w: Shuffle, point=None, char_equal: bool = True) -> ZetaProduct:
    """``prod_{i=m_w}^{m} L(s + (n-m)/2 + 2i - w(i)) / L(s + (n-m)/2 + i)``."""
    s, char = _resolve(point, char_equal)
    offset = Fraction(w.n - w.m, 2)
    num, den = [], []
    for i in range(m_w(w), w.m + 1):
        num.append(LFactor(char, AffineExponent(1, offset + 2 * i - w(i))))
        den.append(LFactor(char, AffineExponent(1, offset + i)))
    return _finish(num, den, s)


def pole_order_at(w: Shuffle, pt: CriticalPoint) -> int:
    """Combinatorial pole order of r^{-1}(w) at the critical point.

    Counts ``i`` in ``[m_w, m]`` with ``n - alpha - 1 <= w(i) - 2i <= n - alpha``,
    less one for the denominator pole when ``alpha = m = n`` and ``m_w = 1``.
    """
    if not pt.char_equal:
        return 0
    lo, hi = pt.n - pt.alpha - 1, pt.n - pt.alpha
    start = m_w(w)
    count = sum(1 for i in range(start, w.m + 1) if lo <= w(i) - 2 * i <= hi)
    if pt.alpha == pt.m == pt.n and start == 1:
        count -= 1
    return count


class TruncationTooSmall(ArithmeticError):
    pass


def laurent_pole_order(w: Shuffle, pt: CriticalPoint, trunc: int = 0, max_trunc: int = 12) -> int:
    """Pole order read off the Laurent expansion of the telescoped factor (negative for zeros).

    For distinct characters no expansion exists; every factor is checked to
    be holomorphic and every denominator nonvanishing instead.
    """
    prod = r_inverse_telescoped(w, pt)
    if not pt.char_equal:
        if any(order_at(f).order for f in prod.num) or not all(order_at(f).nonzero for f in prod.den):
            raise AssertionError(f"unexpected pole or zero for chi != mu at {pt}, w={w}")
        return 0
    while trunc <= max_trunc:
        series = prod.expand(trunc)
        if not series.is_zero():
            return -series.valuation
        trunc += 2
    raise TruncationTooSmall(f"series for {w} at {pt} vanishes through t^{max_trunc}; increase truncation")


def min_alpha_bound(pt: CriticalPoint) -> int:
    return min(pt.m, pt.alpha + 1)


def b_alpha(pt: CriticalPoint) -> int:
    k = min_alpha_bound(pt)
    return k - 1 if pt.alpha == pt.m == pt.n else k


def _matches_pattern(w: Shuffle, pt: CriticalPoint, forced_upto: int) -> bool:
    """``w(i) = 2i + n - alpha - eps_i`` for ``i <= min(m, alpha+1)``, eps_i = 1 for ``i < forced_upto``."""
    base = pt.n - pt.alpha
    for i in range(1, min_alpha_bound(pt) + 1):
        eps = 2 * i + base - w(i)
        if eps not in (0, 1):
            return False
        if i < forced_upto and eps != 1:
            return False
    return True


def w_alpha_set(pt: CriticalPoint, cap: int = DEFAULT_CAP) -> set:
    if not pt.char_equal:
        raise ValueError("W_alpha is defined for chi = mu only")
    return {w for w in enumerate_shuffles(pt.m, pt.n, cap) if _matches_pattern(w, pt, 0)}


def w_alpha_zero_set(pt: CriticalPoint, cap: int = DEFAULT_CAP) -> set:
    if not pt.char_equal:
        raise ValueError("W_alpha^0 is defined for chi = mu only")
    k = min_alpha_bound(pt)
    return {w for w in enumerate_shuffles(pt.m, pt.n, cap) if _matches_pattern(w, pt, k)}


def swap_positions(w: Shuffle, indices, shift: int) -> tuple:
    """Image tuple of ``w_I``: exchange w at ``i`` and ``i + shift`` for ``i`` in I."""
    values = list(w.values)
    for i in indices:
        a, b = i - 1, i + shift - 1
        values[a], values[b] = values[b], values[a]
    return tuple(values)


def j_w_set(w: Shuffle, pt: CriticalPoint) -> set:
    """All ``w_I`` for ``I`` a subset of ``{1, ..., min(m, alpha+1) - 1}``."""
    from itertools import chain, combinations

    pool = range(1, min_alpha_bound(pt))
    subsets = chain.from_iterable(combinations(pool, r) for r in range(len(pool) + 1))
    return {Shuffle(swap_positions(w, I, pt.shift), w.m, w.n) for I in subsets}
