from fractions import Fraction

import pytest

from eisencalc.factors import CriticalPoint
from eisencalc.laurent import CERTIFIED, LaurentSeries
from eisencalc.orbits import (
    AT_MOST_SIMPLE_POLE_NOT_REALIZED,
    AT_MOST_SIMPLE_POLE_REALIZED,
    CASE_BALANCED,
    CASE_LARGE_M,
    CASE_SMALL_M,
    HOLOMORPHIC_BY_CASE1,
    HOLOMORPHIC_NONZERO,
    ChangeInterval,
    Classification,
    OrbitReport,
    analyze_orbits,
    balanced_split,
    change_intervals,
    classify,
    classify_at,
    closed_form,
    closed_form_check,
    constant_term_report,
    constructive_orbit,
    critical_alpha,
    interval_layout,
    orbit_brute_force,
    orbit_partition,
    orbit_sum,
)
from eisencalc.shuffles import Shuffle, enumerate_shuffles
from eisencalc.zeta import L_series, _inverse_integer, gamma_series


def _s(text, m, n):
    return Shuffle.parse(text, m, n)


W0 = Shuffle.longest(2, 2)
PT = CriticalPoint(2, 2, 1)


def test_brute_force_orbits():
    assert orbit_brute_force(Shuffle.identity(2, 2), PT) == {Shuffle.identity(2, 2)}
    assert orbit_brute_force(W0, PT) == {W0, _s("2,4,1,3", 2, 2)}
    distinct = CriticalPoint(2, 2, 1, char_equal=False)
    for w in enumerate_shuffles(2, 2):
        assert orbit_brute_force(w, distinct) == {w}


def test_partition_covers_everything():
    pt = CriticalPoint(3, 4, 2)
    orbits = orbit_partition(pt)
    flat = [w for o in orbits for w in o]
    assert sorted(flat) == enumerate_shuffles(3, 4)


def test_change_intervals_of_w0():
    # the base is the member with w(i) < w(i + m + n - alpha) on each interval
    base, intervals = change_intervals(W0, PT)
    assert base == _s("2,4,1,3", 2, 2)
    assert intervals == [ChangeInterval(1, 1)]
    assert change_intervals(base, PT) == (base, intervals)
    assert constructive_orbit(base, intervals, PT) == {W0, base}


def test_identity_has_no_intervals():
    assert change_intervals(Shuffle.identity(2, 2), PT) == (Shuffle.identity(2, 2), [])


def test_w_alpha_zero_bases_have_singleton_intervals():
    from eisencalc.factors import min_alpha_bound, w_alpha_zero_set

    for pt in (CriticalPoint(3, 4, 2), CriticalPoint(3, 5, 3), CriticalPoint(2, 4, 1)):
        k = min_alpha_bound(pt)
        for w in w_alpha_zero_set(pt):
            base, intervals = change_intervals(w, pt)
            singles = [iv.start for iv in intervals if iv.length == 1]
            assert set(range(1, k)) <= set(singles)


def test_layout_of_longer_interval():
    # find an interval of length > 1 and check its layout runs A...B
    pt = CriticalPoint(3, 5, 2)
    seen = False
    for members in orbit_partition(pt):
        base, intervals = change_intervals(members[0], pt)
        for iv in intervals:
            t1, t2 = interval_layout(base, iv, pt)
            assert t1[-1] == t2[-1] == iv.length - 1
            assert all(b < a for a, b in zip(t1[1:], t2[:-1])) or len(t1) == 1
            seen = seen or iv.length > 1
    assert seen


def test_w0_orbit_sum():
    trunc = 3
    got = orbit_sum([W0, _s("2,4,1,3", 2, 2)], PT, trunc)
    work = trunc + 4
    expected = L_series(1, work) * gamma_series(work) * _inverse_integer(2, work) * _inverse_integer(3, work)
    assert got == expected.truncate(trunc)
    assert got.valuation == -1
    assert str(got.leading()) == "-2*c[-1]*c[0]/(v[2][0]*v[3][0])"


def test_balanced_gl2_orbit_vanishes():
    pt = CriticalPoint(1, 1, 1)
    (report,) = [r for r in analyze_orbits(pt) if len(r.members) == 2]
    work = 8
    one_plus = LaurentSeries.constant(1) + L_series(0, work) * _inverse_integer(1, work)
    assert report.sum == one_plus.truncate(report.sum.trunc)
    assert report.sum.valuation >= 1
    without, with_first = balanced_split(report, pt, report.sum.trunc)
    assert without + with_first == report.sum


@pytest.mark.parametrize(
    "m,n,alpha,case",
    [(2, 2, 1, CASE_LARGE_M), (1, 3, 2, CASE_SMALL_M), (1, 1, 1, CASE_BALANCED), (3, 3, 3, CASE_BALANCED),
     (2, 4, 3, CASE_SMALL_M), (3, 4, 1, CASE_LARGE_M)],
)
def test_closed_forms(m, n, alpha, case):
    report = closed_form_check(CriticalPoint(m, n, alpha))
    assert report.case == case
    assert report.equal


def test_closed_form_small_example():
    work = 6
    expected = gamma_series(work) * _inverse_integer(2, work)
    assert closed_form(CriticalPoint(1, 3, 2), 2) == expected.truncate(2)


def test_classify_examples():
    gl2 = classify(CriticalPoint(1, 1, 0))
    assert gl2.verdict == AT_MOST_SIMPLE_POLE_REALIZED
    assert [list(r.members) for r in gl2.witnesses] == [[_s("2,1", 1, 1)]]
    assert any(f.startswith("alpha-discrepancy") for f in gl2.flags)

    c = classify(PT)
    assert c.verdict == AT_MOST_SIMPLE_POLE_REALIZED
    assert any(W0 in r.members for r in c.witnesses)
    assert not c.flags

    assert classify(CriticalPoint(2, 4, 2)).verdict == AT_MOST_SIMPLE_POLE_NOT_REALIZED
    assert classify(CriticalPoint(2, 2, 1, char_equal=False)).verdict == HOLOMORPHIC_BY_CASE1


def test_s_zero_is_annotated():
    c = classify(CriticalPoint(2, 2, 2))
    assert any("s = 0" in note for note in c.annotations)


def test_classify_at():
    assert critical_alpha(2, 3, Fraction(3, 2)) == 1
    assert critical_alpha(2, 3, 1) is None
    assert classify_at(2, 3, Fraction(1, 3)).verdict == HOLOMORPHIC_NONZERO
    assert classify_at(1, 1, 1).verdict == AT_MOST_SIMPLE_POLE_REALIZED
    with pytest.raises(ValueError):
        classify_at(1, 1, -1)


def test_witness_poles_are_certified():
    for r in classify(CriticalPoint(3, 4, 1)).witnesses:
        assert r.pole == (1, CERTIFIED)


def test_json_round_trips():
    c = constant_term_report(PT)
    data = c.to_json(include_orbits=True)
    back = Classification.from_json(data)
    assert back.to_json(include_orbits=True) == data
    r = c.orbits[0]
    assert OrbitReport.from_json(r.to_json(), 2).to_json() == r.to_json()
    assert set(data) >= {"verdict", "witnesses", "orbits"}
    assert set(data["orbits"][0]) >= {"base", "intervals", "members", "sum", "pole"}


def test_symbolic_witness_is_annotated():
    c = classify(CriticalPoint(3, 3, 2))
    assert c.verdict == AT_MOST_SIMPLE_POLE_REALIZED
    assert any(r.pole == (1, "SYMBOLIC") for r in c.witnesses)
    assert any(r.pole == (1, CERTIFIED) for r in c.witnesses)
    assert any("SYMBOLIC" in note for note in c.annotations)
    assert not any(f.startswith("uncertified-pole") for f in c.flags)
