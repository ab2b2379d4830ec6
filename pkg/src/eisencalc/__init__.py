"""Exact symbolic engine for the constant term of degenerate Eisenstein
series on GL(m+n): shuffles, normalizing factors, orbit sums, pole verdicts."""

from .factors import (
    CriticalPoint,
    ZetaProduct,
    b_alpha,
    laurent_pole_order,
    pole_order_at,
    r_inverse_root_product,
    r_inverse_telescoped,
    w_alpha_set,
    w_alpha_zero_set,
)
from .laurent import LaurentSeries, SymbolFraction, SymbolPolynomial, ZetaSymbol, pole_order
from .orbits import (
    ChangeInterval,
    Classification,
    OrbitReport,
    analyze_orbits,
    change_intervals,
    classify,
    classify_at,
    closed_form,
    closed_form_check,
    constant_term_report,
    constructive_orbit,
    orbit_brute_force,
    orbit_partition,
    orbit_sum,
)
from .shuffles import LambdaTuple, Shuffle, apply_weyl, enumerate_shuffles, inversion_pairs, m_w
from .zeta import LFactor, L_series, gamma_series, laurent_expand, order_at

__version__ = "0.1.0"
