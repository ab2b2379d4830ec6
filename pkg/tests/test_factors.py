from fractions import Fraction

import pytest
import sympy

from eisencalc.factors import (
    CriticalPoint,
    ZetaProduct,
    b_alpha,
    j_w_set,
    laurent_pole_order,
    pole_order_at,
    r_inverse_root_product,
    r_inverse_telescoped,
    w_alpha_set,
    w_alpha_zero_set,
)
from eisencalc.shuffles import Shuffle, enumerate_shuffles
from eisencalc.zeta import LFactor, TRIVIAL


def _s(text, m, n):
    return Shuffle.parse(text, m, n)


def test_identity_is_one():
    w = Shuffle.identity(2, 3)
    assert r_inverse_root_product(w).is_one()
    assert r_inverse_telescoped(w).is_one()


def test_gl2_factor():
    assert str(r_inverse_root_product(_s("2,1", 1, 1))) == "L(s, chi*mu^-1) / L(s + 1, chi*mu^-1)"


def test_root_product_before_and_after_reduce():
    raw = r_inverse_root_product(_s("3,4,1,2", 2, 2))
    assert len(raw.num) == len(raw.den) == 4
    assert str(raw.reduce()) == "L(s - 1, chi*mu^-1)*L(s, chi*mu^-1) / (L(s + 1, chi*mu^-1)*L(s + 2, chi*mu^-1))"
    assert raw.reduce() == r_inverse_telescoped(_s("3,4,1,2", 2, 2))


def test_telescoped_half_integer_shift():
    prod = r_inverse_telescoped(_s("4,5,1,2,3", 2, 3))
    assert str(prod) == (
        "L(s - 3/2, chi*mu^-1)*L(s - 1/2, chi*mu^-1) / (L(s + 3/2, chi*mu^-1)*L(s + 5/2, chi*mu^-1))"
    )


def test_reduce_does_not_use_functional_equation():
    # L(0) and L(1) are equal as values of the completed function but not as germs
    prod = ZetaProduct((LFactor.at(0),), (LFactor.at(1),), Fraction(0))
    assert not prod.reduce().is_one()


def test_pole_order_examples():
    pt = CriticalPoint(2, 2, 1)
    assert pole_order_at(Shuffle.identity(2, 2), pt) == 0
    assert pole_order_at(_s("3,4,1,2", 2, 2), pt) == 2
    assert pole_order_at(_s("2,1", 1, 1), CriticalPoint(1, 1, 0)) == 1
    assert laurent_pole_order(_s("3,4,1,2", 2, 2), pt) == 2


def test_distinct_characters_are_holomorphic():
    pt = CriticalPoint(2, 2, 1, char_equal=False)
    for w in enumerate_shuffles(2, 2):
        assert pole_order_at(w, pt) == 0
        assert laurent_pole_order(w, pt) == 0


def _toy_order(w: Shuffle, pt: CriticalPoint) -> int:
    """Pole order of r^-1 with L(x) replaced by 1/(x(x-1)), computed by sympy."""
    t = sympy.Symbol("t")
    expr = sympy.Integer(1)
    prod = r_inverse_telescoped(w, pt)
    for f in prod.num:
        x = sympy.Rational(f.value.numerator, f.value.denominator) + t
        expr *= 1 / (x * (x - 1))
    for f in prod.den:
        x = sympy.Rational(f.value.numerator, f.value.denominator) + t
        expr *= x * (x - 1)
    num, den = sympy.fraction(sympy.factor(expr))
    order = 0
    while den.subs(t, 0) == 0:
        den = sympy.cancel(den / t)
        order += 1
    while num.subs(t, 0) == 0:
        num = sympy.cancel(num / t)
        order -= 1
    return order


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 2), (1, 4), (2, 3), (3, 3)])
def test_pole_order_against_toy_zeta(m, n):
    for alpha in range((m + n) // 2 + 1):
        pt = CriticalPoint(m, n, alpha)
        for w in enumerate_shuffles(m, n):
            assert pole_order_at(w, pt) == _toy_order(w, pt), (pt, w)


def test_w_alpha_examples():
    assert w_alpha_set(CriticalPoint(2, 2, 1)) == {_s("3,4,1,2", 2, 2), _s("2,4,1,3", 2, 2)}
    assert b_alpha(CriticalPoint(2, 2, 1)) == 2
    assert b_alpha(CriticalPoint(2, 2, 2)) == 1
    for m, n in [(1, 1), (2, 3), (3, 4)]:
        pt = CriticalPoint(m, n, 0)
        assert w_alpha_set(pt) == {Shuffle.longest(m, n)}
        assert w_alpha_zero_set(pt) == w_alpha_set(pt)
        assert b_alpha(pt) == 1


def test_w_alpha_zero_follows_the_epsilon_rule():
    # eps_1 = 1 forces w(1) = 2 + n - alpha - 1 = 2 when m = n = 2, alpha = 1
    assert w_alpha_zero_set(CriticalPoint(2, 2, 1)) == {_s("2,4,1,3", 2, 2)}
    assert len(w_alpha_zero_set(CriticalPoint(1, 3, 2))) == 2


def test_j_w_partition():
    pt = CriticalPoint(3, 4, 2)
    pieces = [j_w_set(w, pt) for w in w_alpha_zero_set(pt)]
    assert set().union(*pieces) == w_alpha_set(pt)
    assert sum(map(len, pieces)) == len(w_alpha_set(pt))


def test_expand_matches_pole_count():
    pt = CriticalPoint(3, 3, 2)
    for w in enumerate_shuffles(3, 3):
        series = r_inverse_telescoped(w, pt).expand(1)
        assert -series.valuation == pole_order_at(w, pt)
        # the identity gives the exact constant 1
        assert series.trunc == 1 or w.is_identity()


def test_critical_point_validation():
    with pytest.raises(ValueError):
        CriticalPoint(3, 2, 0)
    with pytest.raises(ValueError):
        CriticalPoint(2, 2, 3)
    assert CriticalPoint(2, 3, 1).s == Fraction(3, 2)
    assert CriticalPoint(2, 3, 1).to_json()["s"] == "3/2"


def test_zeta_product_json():
    w = _s("3,4,1,2", 2, 2)
    for prod in (r_inverse_telescoped(w), r_inverse_telescoped(w, CriticalPoint(2, 2, 1))):
        assert ZetaProduct.from_json(prod.to_json()) == prod
    assert r_inverse_telescoped(w, Fraction(1)).num[0].char == TRIVIAL
