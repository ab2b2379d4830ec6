"""Desk-scale verification suite over a grid of (m, n, alpha)."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .factors import (
    CriticalPoint,
    b_alpha,
    j_w_set,
    laurent_pole_order,
    pole_order_at,
    r_inverse_root_product,
    r_inverse_telescoped,
    w_alpha_set,
    w_alpha_zero_set,
)
from .orbits import (
    AT_MOST_SIMPLE_POLE_REALIZED,
    admissible,
    admissible_by_swap,
    analyze_orbits,
    change_intervals,
    classify,
    closed_form_check,
    constructive_orbit,
    interval_layout,
    interval_pole_ledger,
    is_minimal,
    orbit_partition,
    scan_intervals,
    unit_argument_multisets,
)
from .laurent import CERTIFIED
from .shuffles import Shuffle, enumerate_shuffles, m_w
from .zeta import L_series, _inverse_integer, gamma_series


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name}  ({self.checked} checked)"
        if self.failures:
            text += "  first failure: " + str(self.failures[0])
        return text

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked, "failures": self.failures[:5]}


def pairs(max_rank: int, ordered: bool = True):
    """(m, n) with m + n <= max_rank, and m <= n when ``ordered``."""
    for total in range(2, max_rank + 1):
        for m in range(1, total):
            n = total - m
            if ordered and m > n:
                continue
            yield m, n


def points(max_rank: int, char_equal: bool = True):
    for m, n in pairs(max_rank):
        for alpha in range((m + n) // 2 + 1):
            yield CriticalPoint(m, n, alpha, char_equal)


def _result(name, checked, failures) -> CheckResult:
    return CheckResult(name, not failures, checked, failures)


# -- per-cell workers (top level so they can be shipped to worker processes) --


def _telescoping_cell(mn):
    m, n = mn
    fails, count = [], 0
    for w in enumerate_shuffles(m, n):
        count += 1
        if r_inverse_root_product(w).reduce() != r_inverse_telescoped(w).reduce():
            fails.append(f"m={m} n={n} w={w}")
    return count, fails


def _pole_cell(pt):
    fails, count = [], 0
    for w in enumerate_shuffles(pt.m, pt.n):
        count += 1
        a, b = pole_order_at(w, pt), laurent_pole_order(w, pt)
        if a != b:
            fails.append(f"{pt} w={w}: count {a} vs expansion {b}")
    return count, fails


def _max_order_cell(pt):
    orders = {w: pole_order_at(w, pt) for w in enumerate_shuffles(pt.m, pt.n)}
    top = max(orders.values())
    argmax = {w for w, o in orders.items() if o == top}
    fails = []
    if top != b_alpha(pt):
        fails.append(f"{pt}: max order {top} != b_alpha {b_alpha(pt)}")
    if argmax != w_alpha_set(pt):
        fails.append(f"{pt}: argmax set differs from W_alpha")
    return 1, fails


def _orbit_cell(pt):
    fails, count = [], 0
    for members in orbit_partition(pt):
        count += 1
        try:
            base, intervals = change_intervals(members[0], pt)
        except AssertionError as exc:
            fails.append(f"{pt}: {exc}")
            continue
        built = constructive_orbit(base, intervals, pt)
        if built != set(members):
            fails.append(f"{pt} orbit of {members[0]}: constructive {sorted(map(str, built))} vs {sorted(map(str, members))}")
        if len(members) != 2 ** len(intervals):
            fails.append(f"{pt} orbit of {members[0]}: size {len(members)} is not 2^{len(intervals)}")
    return count, fails


def _structure_cell(pt):
    fails, count = [], 0
    for w in enumerate_shuffles(pt.m, pt.n):
        count += 1
        for start in range(1, pt.m + 1):
            for k in range(1, pt.m - start + 2):
                if admissible(w, start, k, pt) != admissible_by_swap(w, start, k, pt):
                    fails.append(f"{pt} w={w}: admissibility routes disagree on ({start}, {k})")
        for iv in scan_intervals(w, pt):
            if not is_minimal(w, iv, pt):
                fails.append(f"{pt} w={w}: interval {iv} not minimal")
    for members in orbit_partition(pt):
        try:
            base, intervals = change_intervals(members[0], pt)
            for iv in intervals:
                interval_layout(base, iv, pt)
                ledger = interval_pole_ledger(base, iv, pt)
                # one L(1 + t) pole factor before the swap, one L(t) after
                got = ([a for _, a in ledger["base"]], [a for _, a in ledger["swapped"]])
                if got != ([1], [0]):
                    fails.append(f"{pt} base {base} {iv}: pole ledger {ledger}")
                a, b = unit_argument_multisets(base, iv, pt)
                if a != b:
                    fails.append(f"{pt} base {base} {iv}: unit factors {a} vs {b}")
        except AssertionError as exc:
            fails.append(f"{pt}: {exc}")
    if pt.char_equal:
        full = w_alpha_set(pt)
        pieces = [j_w_set(w, pt) for w in w_alpha_zero_set(pt)]
        if set().union(*pieces) != full or sum(map(len, pieces)) != len(full):
            fails.append(f"{pt}: W_alpha is not the disjoint union of the J_w")
        if any(m_w(w) not in (1, 2) for w in full):
            fails.append(f"{pt}: m_w outside {{1, 2}} on W_alpha")
    return count, fails


def _closed_form_cell(pt):
    report = closed_form_check(pt, trunc=2)
    return 1, ([] if report.equal else [f"{pt} ({report.case}): direct != closed form"])


def _polestogether_cell(pt):
    fails, count = [], 0
    # coefficients through t^0 settle both the pole order and vanishing at t = 0
    reports = analyze_orbits(pt, trunc=0)
    simple = [r for r in reports if r.pole[0] == 1]
    if simple and not any(r.pole[1] == CERTIFIED for r in simple):
        fails.append(f"{pt}: no simple pole is certified")
    for r in reports:
        count += 1
        order = r.pole[0]
        if order > 1:
            fails.append(f"{pt} orbit {r.base}: pole order {order}")
        if pt.n > pt.alpha and pt.alpha + 1 > pt.m and order != 0:
            fails.append(f"{pt} orbit {r.base}: expected holomorphic, order {order}")
        if pt.m == pt.n == pt.alpha and not r.sum.valuation >= 1:
            fails.append(f"{pt} orbit {r.base}: sum does not vanish at t=0")
    return count, fails


def _workers() -> int:
    env = os.environ.get("EISENCALC_THREADS")
    limit = len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)
    if env:
        limit = max(1, min(limit, int(env)))
    return limit


def _map(func, cells, workers):
    cells = list(cells)
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, cells))
    return [func(c) for c in cells]


def _gather(name, func, cells, workers) -> CheckResult:
    count, fails = 0, []
    for c, f in _map(func, cells, workers):
        count += c
        fails.extend(f)
    return _result(name, count, fails)


def check_telescoping(max_rank: int = 10, workers: int = 1) -> CheckResult:
    return _gather("telescoping oracle", _telescoping_cell, pairs(max_rank, ordered=False), workers)


def check_pole_orders(max_rank: int = 10, workers: int = 1) -> CheckResult:
    cells = list(points(max_rank)) + list(points(max_rank, char_equal=False))
    return _gather("pole-order oracle", _pole_cell, cells, workers)


def check_max_order(max_rank: int = 10, workers: int = 1) -> CheckResult:
    return _gather("maximal pole order b_alpha on W_alpha", _max_order_cell, points(max_rank), workers)


def check_alpha_zero(max_rank: int = 10) -> CheckResult:
    fails, count = [], 0
    for m, n in pairs(max_rank):
        count += 1
        got = w_alpha_set(CriticalPoint(m, n, 0))
        if got != {Shuffle.longest(m, n)}:
            fails.append(f"m={m} n={n}: W_0 = {sorted(map(str, got))}")
    return _result("alpha = 0 gives the singleton block swap", count, fails)


def check_orbits(max_rank: int = 8, workers: int = 1) -> CheckResult:
    return _gather("orbit oracle", _orbit_cell, points(max_rank), workers)


def check_structure(max_rank: int = 8, workers: int = 1) -> CheckResult:
    return _gather("interval and W_alpha structure", _structure_cell, points(max_rank), workers)


def check_closed_forms(max_rank: int = 8, workers: int = 1) -> CheckResult:
    return _gather("closed forms over W_alpha", _closed_form_cell, points(max_rank), workers)


def check_polestogether(max_rank: int = 8, workers: int = 1) -> CheckResult:
    return _gather("orbit sums have at most simple poles", _polestogether_cell, points(max_rank), workers)


def check_witness() -> CheckResult:
    pt = CriticalPoint(2, 2, 1)
    w0 = Shuffle.longest(2, 2)
    fails = []
    cls = classify(pt)
    orbit = next(r for r in cls.orbits if w0 in r.members)
    trunc = orbit.sum.trunc
    work = trunc + 4
    expected = L_series(1, work) * gamma_series(work) * _inverse_integer(2, work) * _inverse_integer(3, work)
    if not orbit.sum == expected.truncate(trunc):
        fails.append("orbit sum of w0 differs from L(1+t)gamma(t)/(L(2+t)L(3+t))")
    if orbit.pole != (1, CERTIFIED):
        fails.append(f"orbit of w0 has pole {orbit.pole}")
    if cls.verdict != AT_MOST_SIMPLE_POLE_REALIZED:
        fails.append(f"verdict {cls.verdict}")
    if orbit not in cls.witnesses:
        fails.append("w0's orbit is not a witness")
    return _result("w0 witness at m=n=2, alpha=1", 1, fails)


def check_gl2() -> CheckResult:
    cls = classify(CriticalPoint(1, 1, 0))
    fails = []
    if cls.verdict != AT_MOST_SIMPLE_POLE_REALIZED:
        fails.append(f"verdict {cls.verdict}")
    if [list(r.members) for r in cls.witnesses] != [[Shuffle((2, 1), 1, 1)]]:
        fails.append("witness is not the orbit {(2,1)}")
    if not any(f.startswith("alpha-discrepancy") for f in cls.flags):
        fails.append("alpha = 0 discrepancy flag missing")
    return _result("GL2 simple pole at alpha = 0", 1, fails)


def run_suite(max_rank: int = 8, workers: int | None = None, timings: bool = False) -> list:
    """Every check on the grid ``m + n <= max_rank``."""
    if workers is None:
        workers = _workers()
    r = max_rank
    steps = [
        lambda: check_telescoping(r, workers),
        lambda: check_pole_orders(r, workers),
        lambda: check_max_order(r, workers),
        lambda: check_alpha_zero(r),
        lambda: check_orbits(r, workers),
        lambda: check_structure(r, workers),
        lambda: check_closed_forms(r, workers),
        lambda: check_polestogether(r, workers),
        check_witness,
        check_gl2,
    ]
    results = []
    for step in steps:
        start = time.perf_counter()
        res = step()
        if timings:
            res.name += f" [{time.perf_counter() - start:.1f}s]"
        results.append(res)
    return results
