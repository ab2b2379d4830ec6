from fractions import Fraction

import pytest

from eisencalc.laurent import CERTIFIED, pole_order
from eisencalc.shuffles import AffineExponent
from eisencalc.zeta import (
    NONTRIVIAL,
    TRIVIAL,
    ExpansionUnsupported,
    LFactor,
    L_series,
    canonicalize_argument,
    gamma_series,
    laurent_expand,
    laurent_expand_inverse,
    order_at,
    parse_affine,
)


def test_orders():
    assert order_at(LFactor.at(1)).order == -1
    assert order_at(LFactor.at(0)).order == -1
    assert order_at(LFactor.at(3)) == (0, True)
    assert order_at(LFactor.at(0, NONTRIVIAL)) == (0, True)
    assert order_at(LFactor.at(Fraction(1, 2), NONTRIVIAL)) == (0, None)
    assert order_at(LFactor.at(Fraction(1, 2))) == (0, True)


def test_canonicalize():
    assert canonicalize_argument(0) == (1, -1)
    assert canonicalize_argument(1) == (1, 1)
    assert canonicalize_argument(-2) == (3, -1)
    assert canonicalize_argument(4) == (4, 1)


def test_expansions():
    assert str(laurent_expand(LFactor.at(0), 1)) == "c[-1] * t^-1 + c[0] + c[1] * t + O(t^2)"
    assert str(laurent_expand(LFactor.at(1), 1)) == "-c[-1] * t^-1 + c[0] - c[1] * t + O(t^2)"
    assert str(laurent_expand(LFactor.at(-1), 1)) == "v[2][0] - v[2][1] * t + O(t^2)"
    assert str(laurent_expand(LFactor.at(2), 1)) == "v[2][0] + v[2][1] * t + O(t^2)"


def test_functional_equation_is_variable_flip():
    # L(1 - x + t) = L(x - t)
    for x in (-3, -1, 0, 2, 5):
        assert L_series(1 - x, 4) == L_series(x, 4).negate_variable()


def test_unsupported():
    with pytest.raises(ExpansionUnsupported):
        laurent_expand(LFactor.at(2, NONTRIVIAL), 2)
    with pytest.raises(ExpansionUnsupported):
        laurent_expand(LFactor.at(Fraction(1, 2)), 2)


def test_inverse_expansions():
    inv = laurent_expand_inverse(LFactor.at(2), 3)
    assert str(inv.leading()) == "1/v[2][0]"
    assert inv * L_series(2, 3) == 1
    inv0 = laurent_expand_inverse(LFactor.at(0), 3)
    assert inv0.valuation == 1 and str(inv0.leading()) == "1/c[-1]"
    assert inv0.trunc == 3


def test_gamma():
    g = gamma_series(5)
    assert g.valuation == 0
    assert str(g.leading()) == "2*c[0]"
    assert g == g.negate_variable()
    assert all(g.coefficient(d).is_zero() for d in (1, 3, 5))
    assert pole_order(g) == (0, CERTIFIED)
    sq = g * g
    assert sq.valuation == 0 and str(sq.leading()) == "4*c[0]^2"


def test_product_of_poles():
    prod = L_series(0, 2) * L_series(1, 2)
    assert prod.valuation == -2
    assert str(prod.leading()) == "-c[-1]^2"


def test_exact_cancellation():
    assert (L_series(0, 2) + L_series(1, 2)).coefficient(-1).is_zero()


def test_labels_and_json():
    f = LFactor(TRIVIAL, AffineExponent(1, Fraction(3, 2)))
    assert str(f) == "L(s + 3/2, chi*mu^-1)"
    assert str(f.substitute(1)) == "L(5/2, 1)"
    assert f.to_json() == {"arg": "s+3/2", "char": "trivial"}
    assert LFactor.from_json(f.to_json()) == f
    assert parse_affine("-s-1") == AffineExponent(-1, -1)
    assert parse_affine("5/2") == AffineExponent(0, Fraction(5, 2))
