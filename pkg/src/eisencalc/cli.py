"""eisencalc command line.

Exit codes: 0 success, 1 invariant or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

from .factors import (
    CriticalPoint,
    TruncationTooSmall,
    laurent_pole_order,
    pole_order_at,
    r_inverse_root_product,
    r_inverse_telescoped,
)
from .orbits import (
    analyze_orbits,
    classify_at,
    closed_form_check,
    constant_term_report,
    critical_alpha,
    default_truncation,
)
from .report import classification_text, closed_form_text, constant_term_markdown, orbit_table
from .shuffles import DEFAULT_CAP, EnumerationTooLarge, Shuffle, enumerate_shuffles
from .verify import run_suite


class UsageError(ValueError):
    pass


def _emit(data, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _point_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--alpha", type=int)
    group.add_argument("--s", type=Fraction, help="rational, e.g. 3/2")
    chars = p.add_mutually_exclusive_group()
    chars.add_argument("--char-equal", dest="char_equal", action="store_true", default=True)
    chars.add_argument("--char-distinct", dest="char_equal", action="store_false")
    p.add_argument("--truncation", type=int)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--format", choices=("json", "text"), default="text")


def _check_mn(args) -> None:
    if not (1 <= args.m <= args.n):
        raise UsageError(f"need 1 <= m <= n, got m={args.m}, n={args.n}")


def _alpha(args, required: bool = True):
    _check_mn(args)
    if args.alpha is not None:
        alpha = args.alpha
    elif args.s is not None:
        if args.s < 0:
            raise UsageError("only s >= 0 is supported")
        alpha = critical_alpha(args.m, args.n, args.s)
        if alpha is None:
            if required:
                raise UsageError(f"s={args.s} is not a critical point (m+n)/2 - alpha")
            return None
    elif required:
        raise UsageError("give --alpha or --s")
    else:
        return None
    if not (0 <= alpha <= (args.m + args.n) // 2):
        raise UsageError(f"alpha={alpha} outside [0, {(args.m + args.n) // 2}]")
    return alpha


def _point(args) -> CriticalPoint:
    return CriticalPoint(args.m, args.n, _alpha(args), args.char_equal)


def _truncation(args, pt) -> int:
    if args.truncation is None:
        return default_truncation(pt)
    if args.truncation < 0:
        raise UsageError("--truncation must be >= 0")
    return args.truncation


def cmd_shuffles(args) -> int:
    _check_mn(args)
    ws = enumerate_shuffles(args.m, args.n, args.cap)
    data = {"m": args.m, "n": args.n, "count": len(ws), "shuffles": [w.to_json() for w in ws]}
    _emit(data, "\n".join(str(w) for w in ws) + f"\n{len(ws)} shuffles", args.format)
    return 0


def cmd_factor(args) -> int:
    alpha = _alpha(args, required=False)
    if args.w is None:
        raise UsageError("factor needs --w")
    try:
        w = Shuffle.parse(args.w, args.m, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    root, tele = r_inverse_root_product(w).reduce(), r_inverse_telescoped(w).reduce()
    data = {
        "w": w.to_json(),
        "root_product": root.to_json(),
        "telescoped": tele.to_json(),
        "equal": root == tele,
    }
    lines = [f"w = {w}", f"root product: {root}", f"telescoped:   {tele}", f"equal: {root == tele}"]
    if alpha is not None:
        pt = CriticalPoint(args.m, args.n, alpha, args.char_equal)
        at_root = r_inverse_root_product(w, pt).reduce()
        at_tele = r_inverse_telescoped(w, pt).reduce()
        count = pole_order_at(w, pt)
        data["point"] = pt.to_json()
        data["at_point"] = {"root_product": at_root.to_json(), "telescoped": at_tele.to_json()}
        data["pole_order"] = count
        lines += [f"at {pt}:", f"  root product: {at_root}", f"  telescoped:   {at_tele}", f"pole order: {count}"]
        if pt.char_equal:
            trunc = _truncation(args, pt)
            series = at_tele.expand(trunc)
            expanded = laurent_pole_order(w, pt)
            if expanded != count:
                raise AssertionError(f"pole-order oracle: count {count} vs expansion {expanded} for {w}")
            data["expansion"] = series.to_json()
            lines.append(f"expansion: {series}")
    _emit(data, "\n".join(lines), args.format)
    return 0


def cmd_orbits(args) -> int:
    from .orbits import change_intervals, operator_label, orbit_partition

    pt = _point(args)
    rows, lines = [], [str(pt)]
    for members in orbit_partition(pt, args.cap):
        base, intervals = change_intervals(members[0], pt)
        rows.append(
            {
                "base": base.to_json(),
                "intervals": [iv.to_json() for iv in intervals],
                "members": [w.to_json() for w in members],
                "label": operator_label(base, pt),
            }
        )
        ivs = " ".join(f"[{iv.start}..{iv.end}]" for iv in intervals) or "-"
        lines.append(f"{base}  intervals {ivs}  members {{{', '.join(map(str, members))}}}")
    lines.append(f"{len(rows)} orbits")
    _emit({"point": pt.to_json(), "orbits": rows}, "\n".join(lines), args.format)
    return 0


def cmd_sum(args) -> int:
    pt = _point(args)
    if not pt.char_equal:
        raise UsageError("orbit sums are expanded for chi = mu only")
    reports = analyze_orbits(pt, _truncation(args, pt), args.cap)
    data = {"point": pt.to_json(), "orbits": [r.to_json() for r in reports]}
    _emit(data, str(pt) + "\n" + orbit_table(reports), args.format)
    return 0


def cmd_closed_form(args) -> int:
    pt = _point(args)
    if not pt.char_equal:
        raise UsageError("closed forms exist for chi = mu only")
    trunc = 2 if args.truncation is None else _truncation(args, pt)
    report = closed_form_check(pt, trunc, args.cap)
    _emit(report.to_json(), closed_form_text(report), args.format)
    return 0 if report.equal else 1


def _classification(args):
    _check_mn(args)
    if args.alpha is None and args.s is None:
        raise UsageError("give --alpha or --s")
    if args.truncation is not None and args.truncation < 0:
        raise UsageError("--truncation must be >= 0")
    s = args.s
    if args.alpha is not None:
        _alpha(args)
        s = Fraction(args.m + args.n, 2) - args.alpha
    if s < 0:
        raise UsageError("only s >= 0 is supported")
    return s


def cmd_classify(args) -> int:
    s = _classification(args)
    cls = classify_at(args.m, args.n, s, args.char_equal, args.truncation, args.cap)
    _emit(cls.to_json(), classification_text(cls), args.format)
    return 0


def cmd_report(args) -> int:
    s = _classification(args)
    alpha = critical_alpha(args.m, args.n, s)
    if alpha is None:
        cls = classify_at(args.m, args.n, s, args.char_equal)
    else:
        cls = constant_term_report(CriticalPoint(args.m, args.n, alpha, args.char_equal), args.truncation, args.cap)
    _emit(cls.to_json(include_orbits=True), constant_term_markdown(cls), args.format)
    return 0


def cmd_verify(args) -> int:
    if args.max_rank < 2:
        raise UsageError("--max-rank must be >= 2")
    results = run_suite(args.max_rank)
    passed = all(r.passed for r in results)
    data = {"max_rank": args.max_rank, "passed": passed, "checks": [r.to_json() for r in results]}
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    if not args.no_header:
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        data = {"generated": stamp, **data}
        lines.insert(0, f"# eisencalc verify --max-rank {args.max_rank}  {stamp}")
    _emit(data, "\n".join(lines), args.format)
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eisencalc",
        description="Normalizing factors, orbit sums and pole orders of degenerate Eisenstein series on GL(m+n).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shuffles", help="enumerate shuffles")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_shuffles)

    for name, func, text in (
        ("factor", cmd_factor, "both forms of r^-1 for one shuffle"),
        ("orbits", cmd_orbits, "orbit partition with change intervals"),
        ("sum", cmd_sum, "orbit-summed Laurent expansions"),
        ("closed-form", cmd_closed_form, "closed form of the sum over W_alpha"),
        ("classify", cmd_classify, "pole verdict"),
        ("report", cmd_report, "constant-term table"),
    ):
        p = sub.add_parser(name, help=text)
        _point_args(p)
        if name == "factor":
            p.add_argument("--w", help="comma-separated images, e.g. 3,4,1,2")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--no-header", action="store_true", help="omit the timestamp line")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, EnumerationTooLarge) as exc:
        parser.error(str(exc))
    except ValueError as exc:
        # input validation inside the engine
        print(f"eisencalc: error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, TruncationTooSmall) as exc:
        print(f"eisencalc: invariant failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
