"""Acceptance criteria 1-10, one test each; every check is exact."""

import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from eisencalc.factors import CriticalPoint
from eisencalc.laurent import CERTIFIED
from eisencalc.orbits import AT_MOST_SIMPLE_POLE_REALIZED, classify, orbit_brute_force
from eisencalc.shuffles import Shuffle
from eisencalc.verify import (
    check_alpha_zero,
    check_closed_forms,
    check_max_order,
    check_gl2,
    check_orbits,
    check_pole_orders,
    check_polestogether,
    check_structure,
    check_telescoping,
    check_witness,
)
from eisencalc.zeta import L_series, _inverse_integer, gamma_series


@pytest.fixture
def record():
    def _record(number, passed, detail):
        ACCEPTANCE_LINES.append(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")

    return _record


def _detail(result):
    return f"{result.name} ({result.checked} checked)"


def _assert(record, number, result):
    record(number, result.passed, _detail(result))
    assert result.passed, result.failures[:5]


def test_criterion_01_telescoping_oracle(record):
    _assert(record, 1, check_telescoping(10))


def test_criterion_02_pole_order_oracle(record):
    _assert(record, 2, check_pole_orders(10))


def test_criterion_03_maximal_order_and_argmax(record):
    _assert(record, 3, check_max_order(10))


def test_criterion_04_alpha_zero_singleton(record):
    _assert(record, 4, check_alpha_zero(10))


def test_criterion_05_orbit_oracle(record):
    orbits, structure = check_orbits(8), check_structure(8)
    passed = orbits.passed and structure.passed
    record(5, passed, f"{_detail(orbits)}; {_detail(structure)}")
    assert passed, (orbits.failures + structure.failures)[:5]


def test_criterion_06_closed_forms(record):
    _assert(record, 6, check_closed_forms(8))


def test_criterion_07_orbit_sums_at_most_simple(record):
    _assert(record, 7, check_polestogether(8))


def test_criterion_08_w0_witness(record):
    pt = CriticalPoint(2, 2, 1)
    w0 = Shuffle.longest(2, 2)
    assert w0.values == (3, 4, 1, 2)
    cls = classify(pt)
    orbit = next(r for r in cls.orbits if w0 in r.members)
    assert set(orbit.members) == orbit_brute_force(w0, pt)
    work = orbit.sum.trunc + 4
    expected = L_series(1, work) * gamma_series(work) * _inverse_integer(2, work) * _inverse_integer(3, work)
    ok = (
        orbit.sum == expected.truncate(orbit.sum.trunc)
        and orbit.pole == (1, CERTIFIED)
        and cls.verdict == AT_MOST_SIMPLE_POLE_REALIZED
        and check_witness().passed
    )
    record(8, ok, f"orbit {{{', '.join(map(str, orbit.members))}}} sum leading {orbit.sum.leading()} t^-1")
    assert ok


def test_criterion_09_gl2(record):
    _assert(record, 9, check_gl2())


@pytest.mark.parametrize("rank,budget", [(8, 60), (10, 600)])
def test_criterion_10_verify_runtime(record, rank, budget):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "eisencalc", "verify", "--max-rank", str(rank), "--no-header"],
        capture_output=True, text=True, check=False,
    )
    elapsed = time.perf_counter() - start
    ok = proc.returncode == 0 and elapsed < budget
    record(10, ok, f"verify --max-rank {rank}: exit {proc.returncode} in {elapsed:.1f}s (budget {budget}s)")
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert elapsed < budget
