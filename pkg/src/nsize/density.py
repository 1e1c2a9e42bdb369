"""Natural density, lower/upper density and the generalised-density hull."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PreconditionError
from .seqcore import descriptor, partial_sums
from .setmodel import SetExpr


@dataclass(frozen=True)
class Exact:
    value: Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.value <= 1:
            raise ValueError("density must lie in [0, 1]")

    def complement(self) -> Exact:
        return Exact(1 - self.value)


@dataclass(frozen=True)
class Bounds:
    lower: Fraction
    upper: Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.lower < self.upper <= 1:
            raise ValueError("bounds need 0 <= lower < upper <= 1 (equal bounds are Exact)")

    def complement(self) -> Bounds:
        return Bounds(1 - self.upper, 1 - self.lower)


@dataclass(frozen=True)
class UnknownDensity:
    def complement(self) -> UnknownDensity:
        return self


DensityValue = Exact | Bounds | UnknownDensity


def make_density(lower: Fraction | None, upper: Fraction | None) -> DensityValue:
    if lower is None or upper is None:
        return UnknownDensity()
    if lower == upper:
        return Exact(Fraction(lower))
    return Bounds(Fraction(lower), Fraction(upper))


def natural_density(expr: SetExpr) -> DensityValue:
    """``Exact`` when the limit exists, else the exact lower/upper limits, else Unknown."""
    d = descriptor(expr)
    return make_density(d.liminf_density, d.limsup_density)


def generalized_hull(expr: SetExpr) -> DensityValue:
    """Interval of all values a free-ultrafilter limit of f_n/n can take.

    Every such limit is a limit point of f_n/n, and every limit point is
    reached by some free ultrafilter, so the hull is exactly
    ``[lower density, upper density]``; it collapses to the natural density
    when that exists.
    """
    return natural_density(expr)


def density_text(d: DensityValue) -> str:
    if isinstance(d, Exact):
        return f"exact {d.value}"
    if isinstance(d, Bounds):
        return f"bounds {d.lower} {d.upper}"
    return "unknown"


def density_csv(d: DensityValue) -> str:
    if isinstance(d, Exact):
        return f"exact,{d.value.numerator},{d.value.denominator}"
    if isinstance(d, Bounds):
        lo, hi = d.lower, d.upper
        return f"bounds,{lo.numerator},{lo.denominator},{hi.numerator},{hi.denominator}"
    return "unknown"


def decimal_text(q: Fraction, digits: int = 12) -> str:
    """``q`` rounded to the given number of significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        return format(Decimal(q.numerator) / Decimal(q.denominator), "g")


@dataclass(frozen=True)
class ProfileRow:
    n: int
    f_n: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.f_n, self.n)


def density_profile(expr: SetExpr, checkpoints: Iterable[int]) -> list[ProfileRow]:
    """Exact f_n and f_n/n at each checkpoint (closed forms where available)."""
    cps = list(checkpoints)
    if not cps:
        raise PreconditionError("at least one checkpoint is required")
    if any(n < 1 for n in cps):
        raise PreconditionError("checkpoints must be >= 1")
    seq = partial_sums(expr)
    return [ProfileRow(n, seq.eval(n)) for n in cps]


PROFILE_HEADER = ("n", "f_n", "density_num", "density_den", "density_decimal")


def profile_csv(rows: Sequence[ProfileRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PROFILE_HEADER)
    for r in rows:
        q = r.ratio
        w.writerow((r.n, r.f_n, q.numerator, q.denominator, decimal_text(q)))
    return buf.getvalue()


def profile_text(rows: Sequence[ProfileRow]) -> str:
    return "".join(f"n={r.n} f_n={r.f_n} f_n/n={r.ratio} ({decimal_text(r.ratio)})\n" for r in rows)
