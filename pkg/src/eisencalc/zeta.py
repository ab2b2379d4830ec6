"""Completed global L-functions as formal symbols.

Only the analytic facts we rely on are encoded: for a unitary character
``lam`` the completed ``L(x, lam)`` on the real line is holomorphic except for
simple poles at ``x = 0, 1`` when ``lam`` is trivial, nonvanishing outside
``(0, 1)``, and the trivial-character function satisfies ``L(x) = L(1 - x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .laurent import LaurentSeries, SymbolFraction, SymbolPolynomial, ZetaSymbol
from .shuffles import AffineExponent, format_affine

TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"


class ExpansionUnsupported(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LFactor:
    """``L(argument, char)``, argument affine in s (or numeric after substitution)."""

    char: str
    argument: AffineExponent

    def __post_init__(self):
        if self.char not in (TRIVIAL, NONTRIVIAL):
            raise ValueError(f"unknown character kind {self.char!r}")

    @classmethod
    def at(cls, value, char: str = TRIVIAL) -> "LFactor":
        return cls(char, AffineExponent.const(value))

    @property
    def is_numeric(self) -> bool:
        return self.argument.is_numeric

    @property
    def value(self) -> Fraction:
        if not self.is_numeric:
            raise ValueError(f"{self} still depends on s")
        return self.argument.constant

    def substitute(self, s) -> "LFactor":
        return LFactor(self.char, self.argument.substitute(s))

    def __str__(self) -> str:
        label = "1" if self.is_numeric and self.char == TRIVIAL else "chi*mu^-1"
        return f"L({self.argument}, {label})"

    def to_json(self) -> dict:
        arg = format_affine(self.argument.s_coeff, self.argument.constant).replace(" ", "")
        return {"arg": arg, "char": self.char}

    @classmethod
    def from_json(cls, data: dict) -> "LFactor":
        return cls(data["char"], parse_affine(data["arg"]))


def parse_affine(text: str) -> AffineExponent:
    """Inverse of the ``arg`` strings: ``"s+3/2"``, ``"-s-1"``, ``"2*s"``, ``"5/2"``."""
    text = text.replace(" ", "")
    if "s" not in text:
        return AffineExponent.const(Fraction(text))
    head, _, tail = text.partition("s")
    head = head.rstrip("*")
    if head in ("", "+"):
        coeff = Fraction(1)
    elif head == "-":
        coeff = Fraction(-1)
    else:
        coeff = Fraction(head)
    const = Fraction(tail) if tail else Fraction(0)
    return AffineExponent(coeff, const)


class FactorOrder(NamedTuple):
    """Order at a real point: -1 for a simple pole, 0 for holomorphic.

    ``nonzero`` is True when the value there is known not to vanish and
    None when the model cannot decide (nontrivial character inside (0, 1)).
    """

    order: int
    nonzero: bool | None


def order_at(f: LFactor) -> FactorOrder:
    x = f.value
    if f.char == TRIVIAL:
        if x in (0, 1):
            return FactorOrder(-1, True)
        # the completed zeta function has no real zeros
        return FactorOrder(0, True)
    if 0 < x < 1:
        return FactorOrder(0, None)
    return FactorOrder(0, True)


def canonicalize_argument(x) -> tuple:
    """``(base, sign)`` with ``base = max(x, 1 - x)``; sign -1 when the functional
    equation was used to get there."""
    x = Fraction(x)
    if x >= 1 - x:
        return x, 1
    return 1 - x, -1


def laurent_expand(f: LFactor, trunc: int) -> LaurentSeries:
    """Expansion of ``L(x + t, 1)`` around t = 0 through ``t^trunc``."""
    if f.char != TRIVIAL:
        raise ExpansionUnsupported("expansion unsupported for nontrivial character")
    x = f.value
    if x.denominator != 1:
        raise ExpansionUnsupported(f"expansion needs an integer argument, got {x}")
    return _expand_integer(int(x), trunc)


@lru_cache(maxsize=None)
def _expand_integer(x: int, trunc: int) -> LaurentSeries:
    if x in (0, 1):
        sign = 1 if x == 0 else -1
        coeffs = [
            SymbolFraction(SymbolPolynomial.symbol(ZetaSymbol.c(k), sign**k if k >= 0 else sign))
            for k in range(-1, trunc + 1)
        ]
        return LaurentSeries(-1, coeffs, trunc)
    base, sign = canonicalize_argument(x)
    base = int(base)
    coeffs = [
        SymbolFraction(SymbolPolynomial.symbol(ZetaSymbol.v(base, k), sign**k)) for k in range(0, trunc + 1)
    ]
    return LaurentSeries(0, coeffs, trunc)


@lru_cache(maxsize=None)
def _inverse_integer(x: int, trunc: int) -> LaurentSeries:
    """``1 / L(x + t, 1)`` through ``t^trunc``."""
    val = -1 if x in (0, 1) else 0
    # inverse of a series known to T with valuation v is known to T - 2v
    inv = _expand_integer(x, max(trunc + 2 * val, val)).invert()
    return inv.truncate(trunc) if inv.trunc > trunc else inv


def laurent_expand_inverse(f: LFactor, trunc: int) -> LaurentSeries:
    if f.char != TRIVIAL:
        raise ExpansionUnsupported("expansion unsupported for nontrivial character")
    x = f.value
    if x.denominator != 1:
        raise ExpansionUnsupported(f"expansion needs an integer argument, got {x}")
    return _inverse_integer(int(x), trunc)


def expansion_valuation(f: LFactor) -> int:
    """Valuation of the expansion at t = 0 (trivial character, numeric argument)."""
    return order_at(f).order


def L_series(x: int, trunc: int) -> LaurentSeries:
    """Shorthand for the expansion of ``L(x + t, 1)``."""
    return _expand_integer(x, trunc)


def gamma_series(trunc: int) -> LaurentSeries:
    """``L(t, 1) + L(-t, 1)``, with ``L(-t, 1) = L(1 + t, 1)``."""
    return L_series(0, trunc) + L_series(1, trunc)
