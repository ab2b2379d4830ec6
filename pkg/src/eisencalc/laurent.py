"""Exact truncated Laurent series over a field of symbolic zeta constants.

Coefficients are fractions of polynomials with rational coefficients in
:class:`ZetaSymbol` indeterminates.  Everything is exact; nothing is ever
decided numerically.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, NamedTuple

INF = math.inf

CERTIFIED = "CERTIFIED"
SYMBOLIC = "SYMBOLIC"


class ZetaSymbol(NamedTuple):
    """An abstract constant attached to the completed Riemann zeta function.

    ``family == "c"``: Laurent coefficient ``c[index]`` of ``L(t, 1)`` at 0.
    ``family == "v"``: Taylor coefficient ``v[base][index]`` of ``L(base + t, 1)``.
    """

    family: str
    base: int
    index: int

    @classmethod
    def c(cls, k: int) -> "ZetaSymbol":
        if k < -1:
            raise ValueError("c-symbols start at index -1")
        return cls("c", 0, k)

    @classmethod
    def v(cls, base: int, k: int) -> "ZetaSymbol":
        if base < 2 or k < 0:
            raise ValueError("v-symbols need base >= 2 and order >= 0")
        return cls("v", base, k)

    @property
    def axiomatically_nonzero(self) -> bool:
        if self.family == "c":
            return self.index in (-1, 0)
        return self.index == 0

    def __str__(self) -> str:
        if self.family == "c":
            return f"c[{self.index}]"
        return f"v[{self.base}][{self.index}]"

    __repr__ = __str__


_SYMBOL_RE = re.compile(r"c\[(-?\d+)\]|v\[(\d+)\]\[(\d+)\]")


def parse_symbol(text: str) -> ZetaSymbol:
    match = _SYMBOL_RE.fullmatch(text.strip())
    if not match:
        raise ValueError(f"not a zeta symbol: {text!r}")
    if match.group(1) is not None:
        return ZetaSymbol.c(int(match.group(1)))
    return ZetaSymbol.v(int(match.group(2)), int(match.group(3)))


# A monomial is a sorted tuple of (symbol, positive exponent) pairs.
Monomial = tuple

ONE_MONOMIAL: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for sym, e in b:
        exps[sym] = exps.get(sym, 0) + e
    return tuple(sorted(exps.items()))


def _mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    if not b:
        return a
    exps = dict(a)
    for sym, e in b:
        left = exps[sym] - e
        if left:
            exps[sym] = left
        else:
            del exps[sym]
    return tuple(sorted(exps.items()))


def _mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    eb = dict(b)
    return tuple((s, min(e, eb[s])) for s, e in a if s in eb)


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for s, e in b:
        exps[s] = max(exps.get(s, 0), e)
    return tuple(sorted(exps.items()))


def _mono_str(mono: Monomial) -> str:
    return "*".join(str(s) if e == 1 else f"{s}^{e}" for s, e in mono)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class SymbolPolynomial:
    """Sparse polynomial over Q in :class:`ZetaSymbol` indeterminates."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def _raw(cls, terms: dict) -> "SymbolPolynomial":
        poly = cls.__new__(cls)
        poly.terms = terms
        return poly

    @classmethod
    def constant(cls, value) -> "SymbolPolynomial":
        value = Fraction(value)
        return cls._raw({ONE_MONOMIAL: value} if value else {})

    @classmethod
    def symbol(cls, sym: ZetaSymbol, coeff=1) -> "SymbolPolynomial":
        return cls._raw({((sym, 1),): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONOMIAL in self.terms)

    def is_term(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        return self.terms.get(ONE_MONOMIAL, Fraction(0))

    def symbols(self) -> set:
        return {s for mono in self.terms for s, _ in mono}

    def __add__(self, other: "SymbolPolynomial") -> "SymbolPolynomial":
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return SymbolPolynomial._raw(out)

    def __neg__(self) -> "SymbolPolynomial":
        return SymbolPolynomial._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "SymbolPolynomial") -> "SymbolPolynomial":
        return self + (-other)

    def __mul__(self, other: "SymbolPolynomial") -> "SymbolPolynomial":
        if not self.terms or not other.terms:
            return SymbolPolynomial._raw({})
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = _mono_mul(ma, mb)
                v = out.get(mono, 0) + ca * cb
                if v:
                    out[mono] = v
                else:
                    out.pop(mono, None)
        return SymbolPolynomial._raw(out)

    def scale(self, q) -> "SymbolPolynomial":
        q = Fraction(q)
        if not q:
            return SymbolPolynomial._raw({})
        return SymbolPolynomial._raw({k: v * q for k, v in self.terms.items()})

    def mono_mul(self, mono: Monomial) -> "SymbolPolynomial":
        return SymbolPolynomial._raw({_mono_mul(k, mono): v for k, v in self.terms.items()})

    def mono_div(self, mono: Monomial) -> "SymbolPolynomial":
        return SymbolPolynomial._raw({_mono_div(k, mono): v for k, v in self.terms.items()})

    def content_monomial(self) -> Monomial:
        """Largest monomial dividing every term."""
        it = iter(self.terms)
        g = next(it, ONE_MONOMIAL)
        for mono in it:
            if not g:
                break
            g = _mono_gcd(g, mono)
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list:
        def key(item):
            mono = item[0]
            return (-sum(e for _, e in mono), mono)

        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _frac_str(a)
            elif a == 1:
                body = _mono_str(mono)
            else:
                body = f"{_frac_str(a)}*{_mono_str(mono)}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "SymbolPolynomial":
        """Inverse of ``str``: e.g. ``"2*c[0]^2 - 1/3*c[-1]*v[2][1]"``."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls._raw({})
        terms: dict = {}
        for sign, body in _split_terms(text):
            coeff = Fraction(1)
            exps: dict = {}
            for factor in body.split("*"):
                if factor[0] in "cv":
                    sym_text, _, exp = factor.partition("^")
                    sym = parse_symbol(sym_text)
                    exps[sym] = exps.get(sym, 0) + (int(exp) if exp else 1)
                else:
                    coeff *= Fraction(factor)
            mono = tuple(sorted(exps.items()))
            terms[mono] = terms.get(mono, 0) + (-coeff if sign == "-" else coeff)
        return cls(terms)


def _split_terms(text: str) -> list:
    """Split at top-level signs, leaving ``c[-1]`` intact."""
    out, depth, sign, start = [], 0, "+", 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch in "+-" and depth == 0:
            if i > start:
                out.append((sign, text[start:i]))
            sign, start = ch, i + 1
    out.append((sign, text[start:]))
    return out


_ZERO = SymbolPolynomial._raw({})
_ONE = SymbolPolynomial.constant(1)


class SymbolFraction:
    """Quotient of two :class:`SymbolPolynomial`; equality by cross-multiplication.

    When the denominator is a single term the fraction is kept in a normal form
    (monic monomial denominator, common monomial factors cancelled), which is
    the shape every quotient arising from L-factor expansions takes.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SymbolPolynomial, den: SymbolPolynomial | None = None):
        if den is None:
            den = _ONE
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = _ZERO, _ONE
            return
        if den.is_term():
            ((dmono, dcoeff),) = den.terms.items()
            if dcoeff != 1:
                num = num.scale(1 / dcoeff)
            if dmono:
                g = _mono_gcd(dmono, num.content_monomial())
                if g:
                    num = num.mono_div(g)
                    dmono = _mono_div(dmono, g)
            den = SymbolPolynomial._raw({dmono: Fraction(1)})
        self.num, self.den = num, den

    @classmethod
    def from_value(cls, value) -> "SymbolFraction":
        if isinstance(value, SymbolFraction):
            return value
        if isinstance(value, SymbolPolynomial):
            return cls(value)
        if isinstance(value, ZetaSymbol):
            return cls(SymbolPolynomial.symbol(value))
        return cls(SymbolPolynomial.constant(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _monomial_den(self):
        if self.den.is_term():
            return next(iter(self.den.terms))
        return None

    def __add__(self, other: "SymbolFraction") -> "SymbolFraction":
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        ma, mb = self._monomial_den(), other._monomial_den()
        if ma is not None and mb is not None:
            if ma == mb:
                return SymbolFraction(self.num + other.num, self.den)
            lcm = _mono_lcm(ma, mb)
            num = self.num.mono_mul(_mono_div(lcm, ma)) + other.num.mono_mul(_mono_div(lcm, mb))
            return SymbolFraction(num, SymbolPolynomial._raw({lcm: Fraction(1)}))
        if self.den == other.den:
            return SymbolFraction(self.num + other.num, self.den)
        return SymbolFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "SymbolFraction":
        out = SymbolFraction.__new__(SymbolFraction)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other: "SymbolFraction") -> "SymbolFraction":
        return self + (-other)

    def __mul__(self, other: "SymbolFraction") -> "SymbolFraction":
        if self.num.is_zero() or other.num.is_zero():
            return SymbolFraction(_ZERO)
        return SymbolFraction(self.num * other.num, self.den * other.den)

    def scale(self, q) -> "SymbolFraction":
        return SymbolFraction(self.num.scale(q), self.den)

    def inverse(self) -> "SymbolFraction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        return SymbolFraction(self.den, self.num)

    def __truediv__(self, other: "SymbolFraction") -> "SymbolFraction":
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolFraction):
            other = SymbolFraction.from_value(other)
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("SymbolFraction is unhashable; compare with ==")

    def is_certified_nonzero(self) -> bool:
        """Nonzero numerator that is a rational multiple of one monomial in
        axiomatically nonzero symbols."""
        if not self.num.is_term():
            return False
        ((mono, _),) = self.num.terms.items()
        return all(s.axiomatically_nonzero for s, _ in mono)

    def __str__(self) -> str:
        if self.den == _ONE:
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den.terms) > 1 or next(iter(self.den.terms.values())) != 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"num": str(self.num), "den": str(self.den)}

    @classmethod
    def from_json(cls, data: dict) -> "SymbolFraction":
        return cls(SymbolPolynomial.parse(data["num"]), SymbolPolynomial.parse(data["den"]))


FRACTION_ZERO = SymbolFraction(_ZERO)
FRACTION_ONE = SymbolFraction(_ONE)


class LaurentSeries:
    """Truncated Laurent series ``sum_k a_k t^k + O(t^(trunc+1))``.

    ``trunc`` is the highest degree through which coefficients are known;
    it is ``INF`` for series with exactly known finite support.  The zero
    series (to the stated precision) has ``valuation == INF``.
    """

    __slots__ = ("valuation", "coeffs", "trunc")

    def __init__(self, valuation, coeffs: Iterable, trunc):
        coeffs = [SymbolFraction.from_value(c) for c in coeffs]
        self._set(valuation, coeffs, trunc)

    def _set(self, valuation, coeffs: list, trunc):
        # strip leading and (for exact series) trailing zeros
        lead = 0
        while lead < len(coeffs) and coeffs[lead].is_zero():
            lead += 1
        if trunc != INF:
            if valuation + len(coeffs) - 1 > trunc:
                coeffs = coeffs[: trunc - valuation + 1]
        if lead >= len(coeffs):
            self.valuation, self.coeffs, self.trunc = INF, [], trunc
            return
        coeffs = coeffs[lead:]
        valuation += lead
        if trunc == INF:
            while coeffs[-1].is_zero():
                coeffs.pop()
        self.valuation, self.coeffs, self.trunc = valuation, coeffs, trunc

    @classmethod
    def _make(cls, valuation, coeffs, trunc) -> "LaurentSeries":
        out = cls.__new__(cls)
        out._set(valuation, coeffs, trunc)
        return out

    @classmethod
    def constant(cls, value) -> "LaurentSeries":
        return cls._make(0, [SymbolFraction.from_value(value)], INF)

    @classmethod
    def zero(cls, trunc=INF) -> "LaurentSeries":
        return cls._make(0, [], trunc)

    @classmethod
    def monomial(cls, value, degree: int) -> "LaurentSeries":
        return cls._make(degree, [SymbolFraction.from_value(value)], INF)

    def is_zero(self) -> bool:
        return self.valuation == INF

    @property
    def top(self):
        """Highest degree with a stored coefficient (or trunc)."""
        if self.trunc != INF:
            return self.trunc
        if self.is_zero():
            return -INF
        return self.valuation + len(self.coeffs) - 1

    def coefficient(self, degree: int) -> SymbolFraction:
        if degree > self.trunc:
            raise ValueError(f"coefficient of t^{degree} is beyond truncation {self.trunc}")
        if self.is_zero() or degree < self.valuation:
            return FRACTION_ZERO
        idx = degree - self.valuation
        return self.coeffs[idx] if idx < len(self.coeffs) else FRACTION_ZERO

    def leading(self) -> SymbolFraction:
        if self.is_zero():
            raise ValueError("zero series has no leading coefficient")
        return self.coeffs[0]

    def __add__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        trunc = min(self.trunc, other.trunc)
        if self.is_zero() and other.is_zero():
            return LaurentSeries.zero(trunc)
        lo = min(self.valuation, other.valuation)
        hi = trunc if trunc != INF else max(self.top, other.top)
        if hi < lo:
            return LaurentSeries.zero(trunc)
        coeffs = [self.coefficient(d) + other.coefficient(d) for d in range(lo, int(hi) + 1)]
        return LaurentSeries._make(lo, coeffs, trunc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries._make(
            0 if self.is_zero() else self.valuation, [-c for c in self.coeffs], self.trunc
        )

    def __sub__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentSeries":
        return (-self) + other

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            other = LaurentSeries.constant(other)
        trunc = min(self.trunc + other.valuation, other.trunc + self.valuation)
        if isinstance(trunc, float) and math.isnan(trunc):
            trunc = INF
        if self.is_zero() or other.is_zero():
            return LaurentSeries.zero(trunc)
        val = self.valuation + other.valuation
        hi = trunc if trunc != INF else self.top + other.top
        if hi < val:
            return LaurentSeries.zero(trunc)
        a, b = self.coeffs, other.coeffs
        coeffs = []
        for k in range(int(hi) - val + 1):
            acc = FRACTION_ZERO
            for i in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
                acc = acc + a[i] * b[k - i]
            coeffs.append(acc)
        return LaurentSeries._make(val, coeffs, trunc)

    __rmul__ = __mul__

    def scale(self, q) -> "LaurentSeries":
        q = Fraction(q)
        if not q:
            return LaurentSeries.zero(self.trunc)
        return LaurentSeries._make(self.valuation, [c.scale(q) for c in self.coeffs], self.trunc)

    def invert(self, trunc=None) -> "LaurentSeries":
        """Multiplicative inverse.

        A series known to ``t^T`` with valuation ``v`` has an inverse known to
        ``t^(T - 2v)``.  Exactly known series with more than one term need an
        explicit ``trunc``.
        """
        if self.is_zero():
            raise ZeroDivisionError("division by zero series")
        v = self.valuation
        if self.trunc == INF:
            if len(self.coeffs) == 1 and trunc is None:
                return LaurentSeries._make(-v, [self.coeffs[0].inverse()], INF)
            if trunc is None:
                raise ValueError("inverse of an exact multi-term series needs trunc")
            out_trunc = trunc
        else:
            out_trunc = self.trunc - 2 * v
            if trunc is not None:
                out_trunc = min(out_trunc, trunc)
        n_terms = out_trunc + v + 1
        if n_terms <= 0:
            return LaurentSeries.zero(out_trunc)
        a = self.coeffs
        inv0 = a[0].inverse()
        b = [inv0]
        for k in range(1, n_terms):
            acc = FRACTION_ZERO
            for j in range(1, min(k, len(a) - 1) + 1):
                acc = acc + a[j] * b[k - j]
            b.append(-(acc * inv0))
        return LaurentSeries._make(-v, b, out_trunc)

    def __truediv__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        return self * other.invert()

    def __pow__(self, k: int) -> "LaurentSeries":
        if k < 0:
            return self.invert() ** (-k)
        out = LaurentSeries.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def negate_variable(self) -> "LaurentSeries":
        """The substitution t -> -t."""
        if self.is_zero():
            return LaurentSeries.zero(self.trunc)
        coeffs = [c if (self.valuation + i) % 2 == 0 else -c for i, c in enumerate(self.coeffs)]
        return LaurentSeries._make(self.valuation, coeffs, self.trunc)

    def truncate(self, trunc: int) -> "LaurentSeries":
        if trunc > self.trunc:
            raise ValueError("cannot raise the truncation of a series")
        if self.is_zero():
            return LaurentSeries.zero(trunc)
        return LaurentSeries._make(self.valuation, list(self.coeffs), trunc)

    def __eq__(self, other) -> bool:
        """Coefficient-wise equality through the common truncation degree."""
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        trunc = min(self.trunc, other.trunc)
        if trunc == INF:
            hi = max(self.top, other.top)
        else:
            hi = trunc
        lo = min(self.valuation, other.valuation)
        if lo == INF:
            return True
        return all(self.coefficient(d) == other.coefficient(d) for d in range(lo, int(hi) + 1))

    def __hash__(self):
        raise TypeError("LaurentSeries is unhashable")

    def pole_order(self) -> tuple:
        return pole_order(self)

    def __str__(self) -> str:
        pieces = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            d = self.valuation + i
            text = str(c)
            if d != 0 and (" " in text or "/" in text):
                text = f"({text})"
            if d == 0:
                pieces.append(text)
            elif text == "1":
                pieces.append("t" if d == 1 else f"t^{d}")
            elif text == "-1":
                pieces.append("-t" if d == 1 else f"-t^{d}")
            else:
                pieces.append(f"{text} * " + ("t" if d == 1 else f"t^{d}"))
        if self.trunc != INF:
            pieces.append(f"O(t^{self.trunc + 1})")
        if not pieces:
            return "0"
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "valuation": None if self.is_zero() else self.valuation,
            "coeffs": [c.to_json() for c in self.coeffs],
            "trunc": None if self.trunc == INF else self.trunc,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentSeries":
        trunc = INF if data["trunc"] is None else data["trunc"]
        val = 0 if data["valuation"] is None else data["valuation"]
        return cls._make(val, [SymbolFraction.from_json(c) for c in data["coeffs"]], trunc)


def series_add(x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    return x + y


def series_mul(x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    return x * y


def series_invert(x: LaurentSeries, trunc=None) -> LaurentSeries:
    return x.invert(trunc)


def series_product(factors, trunc) -> LaurentSeries:
    """Product through ``t^trunc``, truncating partial products as it goes.

    A partial product only has to be known to ``trunc`` minus the valuation
    of the factors still to come.
    """
    factors = list(factors)
    vals = [0 if f.is_zero() else f.valuation for f in factors]
    out = LaurentSeries.constant(1)
    for k, f in enumerate(factors):
        out = out * f
        need = trunc - sum(vals[k + 1 :])
        if out.trunc > need:
            out = out.truncate(need)
    return out


def pole_order(x: LaurentSeries) -> tuple:
    """``(order, certainty)`` of the pole at t = 0.

    A holomorphic series (valuation >= 0, or zero to its precision) reports
    order 0, which is always certain.  For a genuine pole the order is
    CERTIFIED only when the leading coefficient is a rational multiple of a
    monomial in the axiomatically nonzero constants.
    """
    if x.is_zero() or x.valuation >= 0:
        return 0, CERTIFIED
    certainty = CERTIFIED if x.leading().is_certified_nonzero() else SYMBOLIC
    return -x.valuation, certainty
