"""Cardinality, infinite-lottery valuations and a combined per-set report."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Optional

from .alpha import ALPHA, AlphaExpr, Ordering
from .density import DensityValue, Exact, density_text, generalized_hull, natural_density
from .errors import UnclassifiableError
from .numerosity import (
    ExactNum,
    NumerosityAnswer,
    Profile,
    alpha_numerosity,
    cnum,
    cnum_compare,
    numerosity_text,
)
from .setmodel import (
    EMPTY,
    EVENS,
    ODDS,
    CoFinite,
    Finite,
    Full,
    InfiniteCoInfinite,
    SetExpr,
    classify_finiteness,
    finite,
)
from .seqcore import Verdict

# ---------------------------------------------------------------------------
# cardinality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteCard:
    k: int

    def __str__(self) -> str:
        return str(self.k)


@dataclass(frozen=True)
class Aleph0:
    def __str__(self) -> str:
        return "aleph0"


CardinalityClass = FiniteCard | Aleph0


def _classified(expr: SetExpr):
    fc = classify_finiteness(expr)
    if not isinstance(fc, (Finite, CoFinite, InfiniteCoInfinite)):
        raise UnclassifiableError("cannot classify: finiteness is not decided symbolically")
    return fc


def cardinality(expr: SetExpr) -> CardinalityClass:
    fc = _classified(expr)
    return FiniteCard(fc.k) if isinstance(fc, Finite) else Aleph0()


# ---------------------------------------------------------------------------
# infinite lottery logic
# ---------------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class LotteryValue:
    """``V_n`` (n elements), ``V_inf`` (infinite, co-infinite) or ``V_-n`` (n missing)."""

    kind: str  # "V", "Vinf", "Vminus"
    n: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("V", "Vinf", "Vminus") or self.n < 0:
            raise ValueError(f"bad lottery value {self.kind} {self.n}")
        if self.kind == "Vinf" and self.n:
            raise ValueError("V_inf carries no index")

    @property
    def _key(self) -> tuple[int, int]:
        if self.kind == "V":
            return (0, self.n)
        if self.kind == "Vinf":
            return (1, 0)
        return (2, -self.n)

    def __lt__(self, other: LotteryValue) -> bool:
        return self._key < other._key

    def mirror(self) -> LotteryValue:
        if self.kind == "V":
            return Vminus(self.n)
        if self.kind == "Vminus":
            return V(self.n)
        return self

    def __str__(self) -> str:
        if self.kind == "V":
            return f"V_{self.n}"
        if self.kind == "Vinf":
            return "V_inf"
        return f"V_-{self.n}"


def V(n: int) -> LotteryValue:
    return LotteryValue("V", n)


def Vminus(n: int) -> LotteryValue:
    return LotteryValue("Vminus", n)


VINF = LotteryValue("Vinf")


def lottery_value(expr: SetExpr) -> LotteryValue:
    fc = _classified(expr)
    if isinstance(fc, Finite):
        return V(fc.k)
    if isinstance(fc, CoFinite):
        return Vminus(fc.k)
    return VINF


def lottery_compare(u: LotteryValue, v: LotteryValue) -> Ordering:
    return Ordering.of((u > v) - (u < v))


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

REFERENCES: tuple[tuple[str, SetExpr], ...] = (
    ("empty", EMPTY),
    ("{1}", finite(1)),
    ("{1..10}", finite(*range(1, 11))),
    ("E", EVENS),
    ("O", ODDS),
    ("N", Full()),
)

REPORT_FIELDS = (
    "expr", "cardinality", "lottery", "density", "hull",
    "alpha_canonical", "alpha_free", "cnum_notes",
)


@dataclass(frozen=True)
class SizeReport:
    expr: str
    cardinality: Optional[CardinalityClass]
    lottery: Optional[LotteryValue]
    density: DensityValue
    hull: DensityValue
    alpha_canonical: NumerosityAnswer
    alpha_free: NumerosityAnswer
    cnum_notes: tuple[str, ...] = field(default=())

    def cells(self) -> list[str]:
        return [
            self.expr,
            "unknown" if self.cardinality is None else str(self.cardinality),
            "unknown" if self.lottery is None else str(self.lottery),
            density_text(self.density),
            density_text(self.hull),
            _alpha_cell(self.alpha_canonical),
            _alpha_cell(self.alpha_free),
            "; ".join(self.cnum_notes),
        ]

    def to_text(self) -> str:
        return "".join(f"{k}: {v}\n" for k, v in zip(REPORT_FIELDS, self.cells()))

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(REPORT_FIELDS)
        w.writerow(self.cells())
        return buf.getvalue()


def _alpha_cell(ans: NumerosityAnswer) -> str:
    text = numerosity_text(ans)
    return text[len("exact "):] if isinstance(ans, ExactNum) else text


def _require(ok: bool, r: SizeReport) -> None:
    if not ok:
        raise RuntimeError(f"inconsistent size report: {r}")


def _check_consistency(r: SizeReport) -> None:
    if isinstance(r.cardinality, FiniteCard):
        k = r.cardinality.k
        _require(r.lottery == V(k), r)
        _require(r.density == Exact(0), r)
        _require(r.alpha_canonical == ExactNum(AlphaExpr.const(k)), r)
    if r.lottery is not None and r.lottery.kind == "Vminus":
        _require(r.density == Exact(1), r)
        _require(r.alpha_canonical == ExactNum(ALPHA - r.lottery.n), r)
    _require(r.hull == r.density, r)


def size_report(expr: SetExpr, horizon: int = 1 << 16) -> SizeReport:
    from .dsl import to_text

    try:
        text = to_text(expr)
    except ValueError:
        text = repr(expr)
    try:
        card: Optional[CardinalityClass] = cardinality(expr)
        lot: Optional[LotteryValue] = lottery_value(expr)
    except UnclassifiableError:
        card = lot = None
    mine = cnum(expr)
    notes = []
    for name, ref in REFERENCES:
        v = cnum_compare(mine, cnum(ref), horizon).verdict
        if v is not Verdict.UNKNOWN:
            notes.append(f"vs {name}: {v}")
    report = SizeReport(
        text, card, lot, natural_density(expr), generalized_hull(expr),
        alpha_numerosity(expr, Profile.CANONICAL), alpha_numerosity(expr, Profile.FREE),
        tuple(notes),
    )
    _check_consistency(report)
    return report
