"""Plain-text and markdown renderings of the reports."""

from __future__ import annotations

from .orbits import Classification, ClosedFormReport, OrbitReport
from .shuffles import format_rational


def _intervals(report: OrbitReport) -> str:
    if not report.intervals:
        return "-"
    return " ".join(f"[{iv.start}..{iv.end}]" for iv in report.intervals)


def _cell(text: str) -> str:
    return text.replace("|", "\\|")


def orbit_table(reports) -> str:
    """Markdown table, one row per orbit: the grouped constant term."""
    rows = [
        "| representative | intervals | size | orbit sum | pole | operator |",
        "|---|---|---|---|---|---|",
    ]
    for r in reports:
        total = "(not expanded)" if r.sum is None else str(r.sum)
        rows.append(
            f"| {r.base} | {_intervals(r)} | {len(r.members)} | {_cell(total)} | "
            f"{r.pole[0]} ({r.pole[1]}) | {_cell(r.label)} |"
        )
    return "\n".join(rows)


def classification_text(cls: Classification) -> str:
    alpha = "-" if cls.alpha is None else str(cls.alpha)
    eq = "chi = mu" if cls.char_equal else "chi != mu"
    lines = [
        f"m={cls.m} n={cls.n} s={format_rational(cls.s)} alpha={alpha} ({eq})",
        f"verdict: {cls.verdict}",
        f"max orbit pole order: {cls.max_order}",
    ]
    for r in cls.witnesses:
        lines.append(f"witness: {{{', '.join(map(str, r.members))}}}  sum = {r.sum}")
    for flag in cls.flags:
        lines.append(f"flag: {flag}")
    for note in cls.annotations:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def constant_term_markdown(cls: Classification) -> str:
    alpha = "-" if cls.alpha is None else str(cls.alpha)
    head = [
        f"## Constant term, m={cls.m}, n={cls.n}, s={format_rational(cls.s)}, alpha={alpha}",
        "",
        "Sum over orbits [w] of (sum over w' in [w] of r(Lambda_s, w')^-1) * N(Lambda_s, w~) f_s.",
        "",
    ]
    body = orbit_table(cls.orbits) if cls.orbits else "(no orbit expansion for chi != mu)"
    tail = ["", f"**Verdict:** {cls.verdict}"]
    tail += [f"- flag: {f}" for f in cls.flags]
    tail += [f"- note: {n}" for n in cls.annotations]
    return "\n".join(head) + "\n" + body + "\n" + "\n".join(tail)


def closed_form_text(report: ClosedFormReport) -> str:
    return "\n".join(
        [
            f"{report.point}  case: {report.case}",
            f"W_alpha: {{{', '.join(map(str, report.members))}}}",
            f"direct sum : {report.direct}",
            f"closed form: {report.closed}",
            f"equal: {report.equal}",
        ]
    )
