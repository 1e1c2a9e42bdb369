"""c-Numerosity classes and symbolic α-numerosity.

c-numerosity
    The class of f(S) modulo eventual equality. Classes add componentwise and
    are partially ordered by eventual ``<=``; there is no subtraction.

α-numerosity
    ``num(S)`` is the value of f_α(S) at an infinite hypernatural α, read as an
    :class:`~nsize.alpha.AlphaExpr`. Which α is used depends on a free
    ultrafilter that cannot be exhibited, so a value is *exact* only when every
    admissible choice agrees; otherwise a ``Range`` records what all choices
    share. The *canonical* profile adds the usual stipulations
    ``num(M_{a,i}) = α/a`` (α divisible by every a) and ``num(powers p) = α^(1/p)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, ceil
from typing import Optional

from .alpha import ALPHA, AlphaExpr, Ordering, root
from .config import DEFAULT_HORIZON
from .errors import PreconditionError
from .seqcore import (
    EventualComparison,
    Linear,
    Sequence,
    SumSequence,
    compare_eventually,
    partial_sums,
)
from .setmodel import (
    BlockSet,
    CoFinite,
    Complement,
    Difference,
    Finite,
    Full,
    Intersection,
    Periodic,
    Powers,
    SetExpr,
    Union,
    classify_finiteness,
    structure,
)

# ---------------------------------------------------------------------------
# c-numerosity
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CnumClass:
    """``[f]`` modulo the Fréchet filter, held through one representative."""

    representative: Sequence

    @classmethod
    def constant(cls, k: int) -> CnumClass:
        return cls(SumSequence((), k))

    def __add__(self, other: CnumClass) -> CnumClass:
        return cnum_add(self, other)

    def __sub__(self, other: object):
        raise TypeError("c-numerosities form a semiring: subtraction is not defined")

    __rsub__ = __sub__

    def with_prefix(self, values: dict[int, int]) -> CnumClass:
        """Same class, different representative: the listed leading values replaced."""
        rep = self.representative
        if isinstance(rep, SumSequence):
            merged = dict(rep.overrides)
            merged.update(values)
            return CnumClass(SumSequence(rep.terms, rep.constant, tuple(sorted(merged.items()))))
        return CnumClass(SumSequence((rep,), 0, tuple(sorted(values.items()))))

    def value_at(self, n: int) -> int:
        return self.representative.eval(n)

    @property
    def label(self) -> str:
        return self.representative.label


def cnum(expr: SetExpr) -> CnumClass:
    return CnumClass(partial_sums(expr))


def _terms(c: CnumClass) -> tuple[tuple[Sequence, ...], int, tuple]:
    rep = c.representative
    if isinstance(rep, SumSequence):
        return rep.terms, rep.constant, rep.overrides
    return (rep,), 0, ()


def cnum_add(a: CnumClass, b: CnumClass) -> CnumClass:
    ta, ka, oa = _terms(a)
    tb, kb, ob = _terms(b)
    overrides = ()
    if oa or ob:
        # keep the sum pointwise exact on the perturbed indices
        idx = sorted({n for n, _ in oa} | {n for n, _ in ob})
        overrides = tuple((n, a.value_at(n) + b.value_at(n)) for n in idx)
    return CnumClass(SumSequence(ta + tb, ka + kb, overrides))


ALPHA_CLASS_EXPR = Full()


def cnum_compare(a: CnumClass, b: CnumClass, horizon: int = DEFAULT_HORIZON) -> EventualComparison:
    return compare_eventually(a.representative, b.representative, horizon)


_SHORT = {"mod 2 0": "E", "mod 2 1": "O", "superexp": "S", "all": "N"}


def short_name(expr: SetExpr, default: str) -> str:
    from .dsl import to_text

    try:
        return _SHORT.get(to_text(expr), default)
    except ValueError:
        return default


def cnum_notes(a: SetExpr, b: SetExpr, result: EventualComparison) -> list[str]:
    """Human-readable consequences of a c-numerosity comparison."""
    na, nb = short_name(a, "A"), short_name(b, "B")
    notes = []
    rng = result.difference_range
    if rng is not None and not result.eq_eventually:
        lo, hi = rng
        if hi <= 0:
            notes.append(f"cnum({na}) ≤ cnum({nb}) ≤ cnum({na})+{-lo}")
        elif lo >= 0:
            notes.append(f"cnum({nb}) ≤ cnum({na}) ≤ cnum({nb})+{hi}")
    if classify_finiteness(Intersection(a, b)) == Finite(0):
        total = compare_eventually(
            SumSequence((partial_sums(a), partial_sums(b))), partial_sums(Full())
        )
        if total.eq_eventually:
            notes.append("sum = a")
    return ["; ".join(notes)] if notes else []


# ---------------------------------------------------------------------------
# α-numerosity
# ---------------------------------------------------------------------------


def alpha_compare(x: AlphaExpr, y: AlphaExpr) -> Ordering:
    return Ordering.of(AlphaExpr.coerce(x).compare(y))


def standard_part_ratio(x: AlphaExpr) -> Fraction:
    """st(x/α): the α coefficient, for values of at most linear order."""
    x = AlphaExpr.coerce(x)
    if x.degree is not None and x.degree > 1:
        raise PreconditionError(f"{x} / a is infinite; no standard part")
    return x.coefficient(1)


class Profile(enum.Enum):
    CANONICAL = "canonical"
    FREE = "free"


@dataclass(frozen=True)
class ExactNum:
    value: AlphaExpr

    def shifted(self, k: AlphaExpr | int) -> ExactNum:
        return ExactNum(self.value + k)

    def reflected(self) -> ExactNum:
        return ExactNum(ALPHA - self.value)


@dataclass(frozen=True)
class RangeNum:
    """Every admissible value lies between a value in ``lower`` and a value in ``upper``.

    ``admissible`` optionally lists the exact values all admissible
    assignments are drawn from, when that set is known and finite.
    """

    lower: tuple[AlphaExpr, AlphaExpr]
    upper: tuple[AlphaExpr, AlphaExpr]
    admissible: tuple[AlphaExpr, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.lower[0] > self.lower[1] or self.upper[0] > self.upper[1]:
            raise ValueError("bracket endpoints out of order")
        if self.lower[0] > self.upper[0] or self.lower[1] > self.upper[1]:
            raise ValueError("lower bracket must not exceed upper bracket")

    @property
    def hull(self) -> tuple[AlphaExpr, AlphaExpr]:
        return self.lower[0], self.upper[1]

    def shifted(self, k: AlphaExpr | int) -> RangeNum:
        return RangeNum(
            (self.lower[0] + k, self.lower[1] + k),
            (self.upper[0] + k, self.upper[1] + k),
            tuple(v + k for v in self.admissible),
        )

    def reflected(self) -> RangeNum:
        return RangeNum(
            (ALPHA - self.upper[1], ALPHA - self.upper[0]),
            (ALPHA - self.lower[1], ALPHA - self.lower[0]),
            tuple(sorted(ALPHA - v for v in self.admissible)),
        )


@dataclass(frozen=True)
class UnknownNum:
    def shifted(self, k) -> UnknownNum:
        return self

    def reflected(self) -> UnknownNum:
        return self


NumerosityAnswer = ExactNum | RangeNum | UnknownNum


def numerosity_text(ans: NumerosityAnswer) -> str:
    if isinstance(ans, ExactNum):
        return f"exact {ans.value}"
    if isinstance(ans, RangeNum):
        return f"range [{ans.lower[0]}, {ans.lower[1]}] [{ans.upper[0]}, {ans.upper[1]}]"
    return "unknown"


def _block_range(sch) -> RangeNum:
    fam = sorted(sch.family_brackets().values(), key=lambda b: (b.lower, b.upper))
    lo, hi = fam[0], fam[-1]
    return RangeNum((lo.lower, lo.upper), (hi.lower, hi.upper))


def _free_periodic(s) -> RangeNum:
    lin = Linear.of_structure(s)
    ns, vals = lin.rest_window()
    P, g = lin.period, lin.gain
    offsets = sorted({Fraction(v * P - g * int(n), P) for n, v in zip(ns, vals)})
    slope = ALPHA * Fraction(g, P)
    lo, hi = floor(offsets[0]), ceil(offsets[-1])
    return RangeNum((slope + lo, slope + lo), (slope + hi, slope + hi),
                    tuple(slope + c for c in offsets))


def _structural(expr: SetExpr, profile: Profile) -> Optional[NumerosityAnswer]:
    s = structure(expr)
    if s is None:
        return None
    base = s.base
    if isinstance(base, Periodic):
        if profile is Profile.CANONICAL:
            return ExactNum(ALPHA * base.density + s.offset)
        return _free_periodic(s)
    atom = base.atom
    if isinstance(atom, Powers):
        r = root(atom.p)
        # floor(α^(1/p)) is α^(1/p) itself only under the stipulation
        ans: NumerosityAnswer = ExactNum(r) if profile is Profile.CANONICAL else RangeNum((r - 1, r - 1), (r, r))
    elif isinstance(atom, BlockSet):
        ans = _block_range(atom.schedule)
    else:
        return UnknownNum()
    if base.negated:
        ans = ans.reflected()
    return ans.shifted(s.offset)


def _disjoint(x: SetExpr, y: SetExpr) -> bool:
    return classify_finiteness(Intersection(x, y)) == Finite(0)


def _add(a: NumerosityAnswer, b: NumerosityAnswer) -> NumerosityAnswer:
    if isinstance(a, ExactNum) and not isinstance(b, UnknownNum):
        return b.shifted(a.value)
    if isinstance(b, ExactNum) and not isinstance(a, UnknownNum):
        return a.shifted(b.value)
    return UnknownNum()


def alpha_numerosity(expr: SetExpr, profile: Profile = Profile.CANONICAL) -> NumerosityAnswer:
    fc = classify_finiteness(expr)
    if isinstance(fc, Finite):
        return ExactNum(AlphaExpr.const(fc.k))
    if isinstance(fc, CoFinite):
        return ExactNum(ALPHA - fc.k)
    ans = _structural(expr, profile)
    if ans is not None:
        return ans
    if isinstance(expr, Complement):
        return alpha_numerosity(expr.inner, profile).reflected()
    if isinstance(expr, Union) and _disjoint(expr.left, expr.right):
        return _add(alpha_numerosity(expr.left, profile), alpha_numerosity(expr.right, profile))
    if isinstance(expr, Difference) and classify_finiteness(Difference(expr.right, expr.left)) == Finite(0):
        # right is a subset of left: num(left) = num(left \ right) + num(right)
        whole = alpha_numerosity(expr.left, profile)
        part = alpha_numerosity(expr.right, profile)
        if isinstance(part, ExactNum) and not isinstance(whole, UnknownNum):
            return whole.shifted(-part.value)
    return UnknownNum()


@dataclass(frozen=True)
class Super:
    value: AlphaExpr


@dataclass(frozen=True)
class NoSuper:
    free: NumerosityAnswer


def supervaluation(expr: SetExpr) -> Super | NoSuper:
    """The value shared by all admissible assignments, which exists only for finite and co-finite sets."""
    fc = classify_finiteness(expr)
    if isinstance(fc, Finite):
        return Super(AlphaExpr.const(fc.k))
    if isinstance(fc, CoFinite):
        return Super(ALPHA - fc.k)
    return NoSuper(alpha_numerosity(expr, Profile.FREE))


def supervaluation_text(v: Super | NoSuper) -> str:
    if isinstance(v, Super):
        return f"super {v.value}"
    return f"nosuper {numerosity_text(v.free)}"
