"""Stable text/CSV rendering of results."""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Any

from .alpha import AlphaExpr, Ordering
from .density import Bounds, Exact, UnknownDensity, density_csv, density_text
from .numerosity import ExactNum, NoSuper, RangeNum, Super, UnknownNum, numerosity_text, supervaluation_text
from .seqcore import EventualComparison
from .setmodel import CoFinite, Finite, InfiniteCoInfinite, UnknownFiniteness
from .sizescales import LotteryValue, SizeReport

FORMATS = ("text", "csv")


def _row(*cells: Any) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(cells)
    return buf.getvalue()


def _tri(x: bool | None) -> str:
    return "unknown" if x is None else str(x).lower()


def finiteness_text(fc) -> tuple[str, str]:
    if isinstance(fc, Finite):
        return "finite", str(fc.k)
    if isinstance(fc, CoFinite):
        return "cofinite", str(fc.k)
    if isinstance(fc, InfiniteCoInfinite):
        return "infinite-coinfinite", ""
    return "unknown", ""


def comparison_lines(cmp: EventualComparison, notes: list[str]) -> list[str]:
    lines = [
        f"verdict {cmp.verdict}",
        f"leq {_tri(cmp.leq_eventually)}",
        f"geq {_tri(cmp.geq_eventually)}",
        f"eq {_tri(cmp.eq_eventually)}",
    ]
    lines += [f"note {n}" for n in notes]
    for w in cmp.witnesses:
        samples = " ".join(f"(n={n}, a={a}, b={b})" for n, a, b in w.samples)
        lines.append(f"witness a {w.relation} b along {w.family}" + (f": {samples}" if samples else ""))
    if cmp.evidence:
        lines.append(f"evidence {cmp.evidence}")
    return lines


def format_output(obj: Any, fmt: str = "text") -> str:
    """Render a result value deterministically as text or CSV."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    csvf = fmt == "csv"
    if isinstance(obj, (Exact, Bounds, UnknownDensity)):
        return (density_csv(obj) if csvf else density_text(obj)) + "\n"
    if isinstance(obj, SizeReport):
        return obj.to_csv() if csvf else obj.to_text()
    if isinstance(obj, (ExactNum, RangeNum, UnknownNum)):
        if not csvf:
            return numerosity_text(obj) + "\n"
        if isinstance(obj, ExactNum):
            return _row("exact", str(obj.value))
        if isinstance(obj, RangeNum):
            return _row("range", *map(str, (*obj.lower, *obj.upper)))
        return _row("unknown")
    if isinstance(obj, (Super, NoSuper)):
        if not csvf:
            return supervaluation_text(obj) + "\n"
        if isinstance(obj, Super):
            return _row("super", str(obj.value))
        return "nosuper," + format_output(obj.free, "csv")
    if isinstance(obj, (Finite, CoFinite, InfiniteCoInfinite, UnknownFiniteness)):
        kind, k = finiteness_text(obj)
        return _row(kind, k) if csvf else (f"{kind} {k}".rstrip() + "\n")
    if isinstance(obj, EventualComparison):
        if csvf:
            return _row("verdict", "leq", "geq", "eq") + _row(
                obj.verdict, _tri(obj.leq_eventually), _tri(obj.geq_eventually), _tri(obj.eq_eventually))
        return "".join(line + "\n" for line in comparison_lines(obj, []))
    if isinstance(obj, (Ordering, LotteryValue, AlphaExpr, Fraction, int, str)):
        return (_row(str(obj)) if csvf else f"{obj}\n")
    raise TypeError(f"no output format for {type(obj).__name__}")
