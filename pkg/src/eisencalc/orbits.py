"""Orbits of shuffles under equality of the permuted character tuple, their
change intervals, orbit-summed Laurent expansions, and the pole verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, combinations

from .factors import (
    EPSILON_ASSUMPTION,
    CriticalPoint,
    TruncationTooSmall,
    b_alpha,
    r_inverse_telescoped,
    swap_positions,
    w_alpha_set,
)
from .laurent import CERTIFIED, LaurentSeries, pole_order, series_product
from .shuffles import DEFAULT_CAP, LambdaTuple, Shuffle, apply_weyl, enumerate_shuffles, format_rational, is_shuffle, m_w
from .zeta import L_series, canonicalize_argument, gamma_series, _inverse_integer

HOLOMORPHIC_NONZERO = "HOLOMORPHIC_NONZERO"
AT_MOST_SIMPLE_POLE_REALIZED = "AT_MOST_SIMPLE_POLE_REALIZED"
AT_MOST_SIMPLE_POLE_NOT_REALIZED = "AT_MOST_SIMPLE_POLE_NOT_REALIZED"
HOLOMORPHIC_BY_CASE1 = "HOLOMORPHIC_BY_CASE1"

MAX_TRUNC = 16


class OrbitMismatch(AssertionError):
    pass


def default_truncation(pt: CriticalPoint) -> int:
    return max(2, b_alpha(pt) if pt.char_equal else 0) + 1


# -- orbits -----------------------------------------------------------------


def orbit_key(w: Shuffle, pt: CriticalPoint) -> tuple:
    lam = LambdaTuple.build(pt.m, pt.n).substitute(pt.s)
    return apply_weyl(w, lam).key(identify_characters=pt.char_equal)


def orbit_brute_force(w: Shuffle, pt: CriticalPoint, cap: int = DEFAULT_CAP) -> set:
    """Every shuffle sending the character tuple to the same place as ``w``."""
    lam = LambdaTuple.build(pt.m, pt.n).substitute(pt.s)
    target = apply_weyl(w, lam).key(pt.char_equal)
    return {v for v in enumerate_shuffles(pt.m, pt.n, cap) if apply_weyl(v, lam).key(pt.char_equal) == target}


def orbit_partition(pt: CriticalPoint, cap: int = DEFAULT_CAP) -> list:
    """All orbits as sorted tuples, ordered by their smallest member."""
    lam = LambdaTuple.build(pt.m, pt.n).substitute(pt.s)
    groups: dict = {}
    for w in enumerate_shuffles(pt.m, pt.n, cap):
        groups.setdefault(apply_weyl(w, lam).key(pt.char_equal), []).append(w)
    return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])


# -- change intervals -------------------------------------------------------


@dataclass(frozen=True, order=True)
class ChangeInterval:
    start: int
    length: int

    @property
    def indices(self) -> range:
        return range(self.start, self.start + self.length)

    @property
    def end(self) -> int:
        return self.start + self.length - 1

    def to_json(self) -> dict:
        return {"start": self.start, "len": self.length}

    @classmethod
    def from_json(cls, data: dict) -> "ChangeInterval":
        return cls(data["start"], data["len"])


def admissible(w: Shuffle, start: int, length: int, pt: CriticalPoint) -> bool:
    """Whether swapping the block ``start..start+length-1`` with its shifted
    partner keeps both blocks increasing (boundary comparisons only)."""
    d, m, total = pt.shift, pt.m, pt.m + pt.n
    end = start + length - 1
    if start < 1 or end > m or end + d > total or start + d <= m:
        return False
    # shifted block lands between w(start-1) and w(end+1)
    if start > 1 and not w(start - 1) < w(d + start):
        return False
    if end + 1 <= m and not w(d + end) < w(end + 1):
        return False
    # original block lands between w(d+start-1) and w(d+end+1)
    if d + start - 1 > m and not w(d + start - 1) < w(start):
        return False
    if d + end + 1 <= total and not w(end) < w(d + end + 1):
        return False
    return True


def admissible_by_swap(w: Shuffle, start: int, length: int, pt: CriticalPoint) -> bool:
    """Same predicate as :func:`admissible`, decided by building the swap."""
    end = start + length - 1
    if start < 1 or end > pt.m or end + pt.shift > pt.m + pt.n or start + pt.shift <= pt.m:
        return False
    return is_shuffle(swap_positions(w, range(start, end + 1), pt.shift), pt.m)


def scan_intervals(w: Shuffle, pt: CriticalPoint) -> list:
    """Minimal admissible blocks, scanned left to right."""
    out, i = [], 1
    while i <= pt.m:
        for k in range(1, pt.m - i + 2):
            if admissible(w, i, k, pt):
                out.append(ChangeInterval(i, k))
                i += k
                break
        else:
            i += 1
    return out


def is_minimal(w: Shuffle, interval: ChangeInterval, pt: CriticalPoint) -> bool:
    """No proper prefix of the block is admissible: for each ``0 <= j <= k-2``,
    ``w(d+i+j) > w(i+j+1)`` or ``w(i+j) > w(d+i+j+1)``."""
    d, i = pt.shift, interval.start
    return all(
        w(d + i + j) > w(i + j + 1) or w(i + j) > w(d + i + j + 1) for j in range(interval.length - 1)
    )


def apply_intervals(w: Shuffle, intervals, pt: CriticalPoint) -> Shuffle:
    idx = chain.from_iterable(iv.indices for iv in intervals)
    return Shuffle(swap_positions(w, idx, pt.shift), w.m, w.n)


def change_intervals(w: Shuffle, pt: CriticalPoint) -> tuple:
    """``(base, intervals)``: the orbit member with ``w(i_j) < w(i_j + shift)``
    on every interval, and its minimal change intervals."""
    if not pt.char_equal:
        return w, []
    intervals = scan_intervals(w, pt)
    flipped = [iv for iv in intervals if w(iv.start) > w(iv.start + pt.shift)]
    base = apply_intervals(w, flipped, pt)
    base_intervals = scan_intervals(base, pt)
    if base_intervals != intervals:
        raise OrbitMismatch(f"interval structure of {w} and its base {base} differ at {pt}")
    return base, intervals


def constructive_orbit(base: Shuffle, intervals, pt: CriticalPoint) -> set:
    subsets = chain.from_iterable(combinations(intervals, r) for r in range(len(intervals) + 1))
    return {apply_intervals(base, c, pt) for c in subsets}


def interval_layout(base: Shuffle, interval: ChangeInterval, pt: CriticalPoint) -> tuple:
    """Run structure of the merged values of a block and its shifted partner.

    Returns the cumulative end offsets ``(t', t'')`` of the alternating runs
    from the block (``t'``) and from the partner (``t''``).  Raises if the
    values are not consecutive or the runs do not alternate starting with the
    block and ending with the partner.
    """
    d = pt.shift
    labelled = [(base(i), "A") for i in interval.indices] + [(base(i + d), "B") for i in interval.indices]
    labelled.sort()
    values = [v for v, _ in labelled]
    if values != list(range(values[0], values[0] + len(values))):
        raise OrbitMismatch(f"values of interval {interval} of {base} are not consecutive")
    runs = []
    for _, tag in labelled:
        if runs and runs[-1][0] == tag:
            runs[-1][1] += 1
        else:
            runs.append([tag, 1])
    if runs[0][0] != "A" or runs[-1][0] != "B":
        raise OrbitMismatch(f"interval {interval} of {base} does not run A...B")
    t1, t2, a, b = [], [], 0, 0
    for tag, size in runs:
        if tag == "A":
            a += size
            t1.append(a - 1)
        else:
            b += size
            t2.append(b - 1)
    return t1, t2


def numerator_argument(w: Shuffle, i: int, pt: CriticalPoint) -> int:
    """Argument at t = 0 of the i-th numerator factor: ``n - alpha + 2i - w(i)``."""
    return pt.n - pt.alpha + 2 * i - w(i)


def interval_pole_ledger(base: Shuffle, interval: ChangeInterval, pt: CriticalPoint) -> dict:
    """Pole-carrying numerator arguments inside one interval, for the base point
    and for the fully swapped element."""
    swapped = apply_intervals(base, [interval], pt)
    out = {}
    for label, w in (("base", base), ("swapped", swapped)):
        out[label] = [(i, numerator_argument(w, i, pt)) for i in interval.indices if numerator_argument(w, i, pt) in (0, 1)]
    return out


def unit_argument_multisets(base: Shuffle, interval: ChangeInterval, pt: CriticalPoint) -> tuple:
    """Canonical bases of the non-pole numerator factors of ``a_j`` and ``b_j``."""
    swapped = apply_intervals(base, [interval], pt)
    result = []
    for w in (base, swapped):
        args = [numerator_argument(w, i, pt) for i in interval.indices]
        result.append(sorted(canonicalize_argument(x)[0] for x in args if x not in (0, 1)))
    return tuple(result)


# -- sums -------------------------------------------------------------------


def orbit_sum(members, pt: CriticalPoint, trunc: int) -> LaurentSeries:
    """Sum of the expanded telescoped factors over the orbit at ``s = pt.s + t``."""
    if not pt.char_equal:
        raise ValueError("orbit sums are only expanded for chi = mu")
    total = LaurentSeries.zero(trunc)
    for w in members:
        total = total + r_inverse_telescoped(w, pt).expand(trunc)
    if total.is_zero():
        raise TruncationTooSmall(f"orbit sum vanishes through t^{trunc}; increase truncation")
    return total


def orbit_sum_auto(members, pt: CriticalPoint, trunc: int) -> LaurentSeries:
    while True:
        try:
            return orbit_sum(members, pt, trunc)
        except TruncationTooSmall:
            if trunc >= MAX_TRUNC:
                raise
            trunc += 2


def operator_label(w: Shuffle, pt: CriticalPoint) -> str:
    """Opaque name of the local operators attached to the orbit's common image."""
    lam = apply_weyl(w, LambdaTuple.build(pt.m, pt.n).substitute(pt.s))
    exps = ",".join(str(e.constant) for e in lam.exponents())
    return f"N(Lambda_s, w~)[{exps}]"


@dataclass
class OrbitReport:
    base: Shuffle
    intervals: list
    members: tuple
    sum: LaurentSeries | None
    pole: tuple
    label: str = ""

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "intervals": [iv.to_json() for iv in self.intervals],
            "members": [w.to_json() for w in self.members],
            "sum": None if self.sum is None else self.sum.to_json(),
            "pole": {"order": self.pole[0], "certainty": self.pole[1]},
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data: dict, m: int) -> "OrbitReport":
        return cls(
            base=Shuffle.from_json(data["base"], m),
            intervals=[ChangeInterval.from_json(d) for d in data["intervals"]],
            members=tuple(Shuffle.from_json(d, m) for d in data["members"]),
            sum=None if data["sum"] is None else LaurentSeries.from_json(data["sum"]),
            pole=(data["pole"]["order"], data["pole"]["certainty"]),
            label=data.get("label", ""),
        )


def analyze_orbits(pt: CriticalPoint, trunc: int | None = None, cap: int = DEFAULT_CAP) -> list:
    """One :class:`OrbitReport` per orbit, in the order of their smallest member."""
    if trunc is None:
        trunc = default_truncation(pt)
    reports = []
    for members in orbit_partition(pt, cap):
        base, intervals = change_intervals(members[0], pt)
        if pt.char_equal:
            total = orbit_sum_auto(members, pt, trunc)
            pole = pole_order(total)
        else:
            total, pole = None, (0, CERTIFIED)
        reports.append(OrbitReport(base, intervals, members, total, pole, operator_label(base, pt)))
    return reports


# -- closed forms -----------------------------------------------------------

CASE_SMALL_M = "m < alpha+1 <= n"
CASE_LARGE_M = "alpha+1 <= m <= n"
CASE_BALANCED = "m = n = alpha"


def closed_form_case(pt: CriticalPoint) -> str:
    if pt.m == pt.n == pt.alpha:
        return CASE_BALANCED
    if pt.alpha + 1 <= pt.m:
        return CASE_LARGE_M
    return CASE_SMALL_M


def closed_form(pt: CriticalPoint, trunc: int) -> LaurentSeries:
    """The closed expression for the sum over W_alpha, built from gamma, A, A_1, B."""
    m, n, a = pt.m, pt.n, pt.alpha
    work = trunc + 2 * m + 4
    gamma = gamma_series(work)
    inv_A = [_inverse_integer(n - a + i, work) for i in range(1, m + 1)]
    case = closed_form_case(pt)
    if case == CASE_SMALL_M:
        parts = [gamma] * m + inv_A
    elif case == CASE_LARGE_M:
        B = [L_series(i, work) for i in range(2, m - a + 1)]
        parts = B + inv_A + [L_series(1, work)] + [gamma] * a
    else:
        inv_A1 = inv_A[1:]
        # L(-t) = L(1 + t)
        ratio = L_series(0, work) * _inverse_integer(1, work)
        parts = [gamma] * (m - 1) + inv_A1 + [LaurentSeries.constant(1) + ratio]
    out = series_product(parts, trunc)
    if out.trunc < trunc:
        raise TruncationTooSmall("closed form lost precision")
    return out


@dataclass
class ClosedFormReport:
    point: CriticalPoint
    case: str
    members: list
    direct: LaurentSeries
    closed: LaurentSeries
    equal: bool

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "case": self.case,
            "members": [w.to_json() for w in self.members],
            "direct": self.direct.to_json(),
            "closed": self.closed.to_json(),
            "equal": self.equal,
        }


def closed_form_check(pt: CriticalPoint, trunc: int = 2, cap: int = DEFAULT_CAP) -> ClosedFormReport:
    members = sorted(w_alpha_set(pt, cap))
    direct = LaurentSeries.zero(trunc)
    for w in members:
        direct = direct + r_inverse_telescoped(w, pt).expand(trunc)
    closed = closed_form(pt, trunc)
    return ClosedFormReport(pt, closed_form_case(pt), members, direct, closed, direct == closed)


def balanced_split(report: OrbitReport, pt: CriticalPoint, trunc: int) -> tuple:
    """For ``m = n = alpha``: partial sums over the members not containing the
    first interval and over those containing it."""
    if not report.intervals:
        raise ValueError("orbit has no change intervals")
    first = report.intervals[0]
    rest = report.intervals[1:]
    subsets = list(chain.from_iterable(combinations(rest, r) for r in range(len(rest) + 1)))
    without = [apply_intervals(report.base, c, pt) for c in subsets]
    with_first = [apply_intervals(report.base, (first,) + c, pt) for c in subsets]

    def total(ws):
        out = LaurentSeries.zero(trunc)
        for w in ws:
            out = out + r_inverse_telescoped(w, pt).expand(trunc)
        return out

    return total(without), total(with_first)


# -- classification ---------------------------------------------------------

CRITICAL_POINTS = "s in {(m+n)/2 - alpha : alpha integer, 0 <= alpha < (m+n)/2}"


@dataclass
class Classification:
    m: int
    n: int
    s: Fraction
    alpha: int | None
    char_equal: bool
    verdict: str
    max_order: int
    witnesses: list = field(default_factory=list)
    orbits: list = field(default_factory=list)
    annotations: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def to_json(self, include_orbits: bool = False) -> dict:
        out = {
            "point": {
                "m": self.m,
                "n": self.n,
                "alpha": self.alpha,
                "s": format_rational(self.s),
                "char_equal": self.char_equal,
            },
            "verdict": self.verdict,
            "max_order": self.max_order,
            "witnesses": [r.to_json() for r in self.witnesses],
            "annotations": list(self.annotations),
            "flags": list(self.flags),
        }
        if include_orbits:
            out["orbits"] = [r.to_json() for r in self.orbits]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Classification":
        p = data["point"]
        m = p["m"]
        return cls(
            m=m,
            n=p["n"],
            s=Fraction(p["s"]),
            alpha=p["alpha"],
            char_equal=p["char_equal"],
            verdict=data["verdict"],
            max_order=data["max_order"],
            witnesses=[OrbitReport.from_json(d, m) for d in data["witnesses"]],
            orbits=[OrbitReport.from_json(d, m) for d in data.get("orbits", [])],
            annotations=list(data["annotations"]),
            flags=list(data["flags"]),
        )


def classify(pt: CriticalPoint, trunc: int | None = None, cap: int = DEFAULT_CAP) -> Classification:
    notes = [EPSILON_ASSUMPTION]
    if not pt.char_equal:
        notes.append(
            "every normalizing factor is holomorphic at real s when chi != mu; "
            "unverified archimedean caveat: holomorphic if chi_inf*mu_inf^-1 is not a sign "
            "character, or if alpha <= m"
        )
        return Classification(pt.m, pt.n, pt.s, pt.alpha, False, HOLOMORPHIC_BY_CASE1, 0, annotations=notes)
    reports = analyze_orbits(pt, trunc, cap)
    labels = [r.label for r in reports]
    if len(set(labels)) != len(labels):
        raise OrbitMismatch("two orbits share an operator label")
    max_order = max(r.pole[0] for r in reports)
    if max_order > 1:
        raise OrbitMismatch(f"orbit sum with pole of order {max_order} at {pt}")
    if max_order == 1:
        verdict = AT_MOST_SIMPLE_POLE_REALIZED
        witnesses = [r for r in reports if r.pole[0] == 1]
    else:
        verdict = AT_MOST_SIMPLE_POLE_NOT_REALIZED
        witnesses = [r for r in reports if r.sum is not None and r.sum.valuation == 0]
    flags = []
    if max_order == 1:
        symbolic = sum(1 for r in witnesses if r.pole[1] != CERTIFIED)
        if symbolic == len(witnesses):
            flags.append("uncertified-pole: every simple-pole witness has a non-monomial leading coefficient")
        elif symbolic:
            notes.append(f"{symbolic} of {len(witnesses)} witness poles are SYMBOLIC (leading coefficient not a monomial)")
    in_stated_range = 2 * pt.alpha < pt.m + pt.n
    if not in_stated_range:
        notes.append(f"s = 0 lies outside the stated point set {CRITICAL_POINTS}")
    else:
        stated = 1 <= pt.alpha <= pt.m - 1
        if stated != (max_order == 1):
            flags.append(
                f"alpha-discrepancy: computed pole order {max_order} at alpha={pt.alpha}, while the "
                "stated pole range is exactly 1 <= alpha <= m-1"
            )
    return Classification(pt.m, pt.n, pt.s, pt.alpha, True, verdict, max_order, witnesses, reports, notes, flags)


def critical_alpha(m: int, n: int, s) -> int | None:
    """alpha with s = (m+n)/2 - alpha in the admissible range, else None."""
    a = Fraction(m + n, 2) - Fraction(s)
    if a.denominator != 1 or not (0 <= a <= (m + n) // 2):
        return None
    return int(a)


def classify_at(m: int, n: int, s, char_equal: bool = True, trunc=None, cap: int = DEFAULT_CAP) -> Classification:
    s = Fraction(s)
    if s < 0:
        raise ValueError("only s >= 0 is supported")
    alpha = critical_alpha(m, n, s)
    if alpha is None:
        if not (1 <= m <= n):
            raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
        return Classification(
            m, n, s, None, char_equal, HOLOMORPHIC_NONZERO, 0,
            annotations=[f"s is not a critical point; holomorphic and nonzero off {CRITICAL_POINTS}"],
        )
    return classify(CriticalPoint(m, n, alpha, char_equal), trunc, cap)


def constant_term_report(pt: CriticalPoint, trunc: int | None = None, cap: int = DEFAULT_CAP) -> Classification:
    """Classification carrying every orbit row of the grouped constant term."""
    cls = classify(pt, trunc, cap)
    if not cls.orbits:
        cls.orbits = analyze_orbits(pt, trunc, cap)
    return cls
