"""Finite sums of rational multiples of rational powers of an infinite unit.

An :class:`AlphaExpr` denotes ``sum(c * a**q)``. The same algebra serves two
readings: with ``a`` the numerosity of the naturals it holds α-numerosity
values; with ``a`` a real variable tending to infinity it holds asymptotic
bounds on counting functions. In both readings the order is the leading-term
order, so comparisons agree.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping, Union

from .primes import iroot

Number = Union[int, Fraction]
MINUS = "−"


def _frac(x: Number | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@total_ordering
@dataclass(frozen=True)
class AlphaExpr:
    """Normalized term: exponents descending, no zero coefficients."""

    terms: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for q, c in self.terms:
            if not isinstance(q, Fraction) or not isinstance(c, Fraction):
                raise TypeError("exponents and coefficients must be Fractions")
            if q < 0:
                raise ValueError("negative exponents are not representable")
            if c == 0:
                raise ValueError("zero coefficient in normal form")
            if prev is not None and q >= prev:
                raise ValueError("exponents must be strictly descending")
            prev = q

    # construction -----------------------------------------------------

    @classmethod
    def from_map(cls, m: Mapping[Fraction, Fraction] | Iterable[tuple[Number, Number]]) -> AlphaExpr:
        acc: dict[Fraction, Fraction] = {}
        items = m.items() if isinstance(m, Mapping) else m
        for q, c in items:
            q, c = _frac(q), _frac(c)
            acc[q] = acc.get(q, Fraction(0)) + c
        return cls(tuple(sorted(((q, c) for q, c in acc.items() if c != 0), reverse=True)))

    @classmethod
    def const(cls, c: Number) -> AlphaExpr:
        return cls.from_map({Fraction(0): c})

    @classmethod
    def power(cls, q: Number, c: Number = 1) -> AlphaExpr:
        """``c * a**q``."""
        return cls.from_map({q: c})

    @classmethod
    def coerce(cls, x: AlphaExpr | Number) -> AlphaExpr:
        return x if isinstance(x, AlphaExpr) else cls.const(x)

    # inspection -------------------------------------------------------

    def as_map(self) -> dict[Fraction, Fraction]:
        return dict(self.terms)

    def coefficient(self, q: Number) -> Fraction:
        return self.as_map().get(_frac(q), Fraction(0))

    @property
    def degree(self) -> Fraction | None:
        return self.terms[0][0] if self.terms else None

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not a standard constant")
        return self.coefficient(0)

    def sign(self) -> int:
        return 0 if not self.terms else (1 if self.terms[0][1] > 0 else -1)

    # arithmetic -------------------------------------------------------

    def __add__(self, other: AlphaExpr | Number) -> AlphaExpr:
        other = AlphaExpr.coerce(other)
        return AlphaExpr.from_map(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self) -> AlphaExpr:
        return AlphaExpr(tuple((q, -c) for q, c in self.terms))

    def __sub__(self, other: AlphaExpr | Number) -> AlphaExpr:
        return self + (-AlphaExpr.coerce(other))

    def __rsub__(self, other: AlphaExpr | Number) -> AlphaExpr:
        return AlphaExpr.coerce(other) - self

    def __mul__(self, other: AlphaExpr | Number) -> AlphaExpr:
        other = AlphaExpr.coerce(other)
        return AlphaExpr.from_map(
            [(q1 + q2, c1 * c2) for q1, c1 in self.terms for q2, c2 in other.terms]
        )

    __rmul__ = __mul__

    def __truediv__(self, k: Number) -> AlphaExpr:
        k = _frac(k)
        return AlphaExpr(tuple((q, c / k) for q, c in self.terms))

    # order --------------------------------------------------------------

    def compare(self, other: AlphaExpr | Number) -> int:
        """-1, 0 or 1 by leading-term dominance of the difference."""
        return (self - AlphaExpr.coerce(other)).sign()

    def __lt__(self, other: AlphaExpr | Number) -> bool:
        return self.compare(other) < 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlphaExpr.const(other)
        if not isinstance(other, AlphaExpr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    # evaluation -----------------------------------------------------------

    def sign_at(self, n: int, max_bits: int = 1 << 14) -> int:
        """Exact sign of the expression with the unit replaced by the integer n >= 1.

        Rational powers of n are bracketed by integer roots at growing
        precision until the sign is certain.
        """
        if n < 1:
            raise ValueError("evaluation point must be positive")
        exact = Fraction(0)
        irrational: list[tuple[Fraction, Fraction]] = []
        for q, c in self.terms:
            num, den = q.numerator, q.denominator
            base = n**num
            root = iroot(base, den)
            if root**den == base:
                exact += c * root
            else:
                irrational.append((q, c))
        if not irrational:
            return (exact > 0) - (exact < 0)
        bits = 64
        while bits <= max_bits:
            scale = 1 << bits
            lo = hi = exact
            for q, c in irrational:
                r = iroot(n**q.numerator * scale**q.denominator, q.denominator)
                # r/scale < n**q < (r+1)/scale
                a, b = c * Fraction(r, scale), c * Fraction(r + 1, scale)
                lo += min(a, b)
                hi += max(a, b)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
        raise ArithmeticError(f"could not determine the sign of {self} at {n}")

    # rendering ------------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"AlphaExpr({render(self)!r})"


def _power_text(q: Fraction) -> str:
    if q == 1:
        return "a"
    if q == Fraction(1, 2):
        return "sqrt(a)"
    if q.denominator == 1:
        return f"a^{q.numerator}"
    return f"a^({q.numerator}/{q.denominator})"


def _coef_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(x: AlphaExpr) -> str:
    """Descending terms joined by `` + `` / `` − ``; e.g. ``a − sqrt(a) + a^(1/4)``."""
    if not x.terms:
        return "0"
    parts: list[str] = []
    for k, (q, c) in enumerate(x.terms):
        mag = abs(c)
        if q == 0:
            body = _coef_text(mag)
        elif mag == 1:
            body = _power_text(q)
        else:
            body = f"{_coef_text(mag)} {_power_text(q)}"
        if k == 0:
            parts.append(body if c > 0 else MINUS + body)
        else:
            parts.append((" + " if c > 0 else f" {MINUS} ") + body)
    return "".join(parts)


_TERM = re.compile(
    r"\s*(?:(?P<coef>\d+(?:/\d+)?)\s*)?"
    r"(?P<pow>a\^\((?P<pn>\d+)/(?P<pd>\d+)\)|a\^(?P<pi>\d+)|sqrt\(a\)|a)?\s*"
)


def parse_alpha(text: str) -> AlphaExpr:
    """Inverse of :func:`render` (accepts ASCII ``-`` as well as U+2212)."""
    s = text.replace(MINUS, "-").strip()
    if s == "0":
        return AlphaExpr()
    pos, sign = 0, 1
    acc: list[tuple[Fraction, Fraction]] = []
    if s.startswith("-"):
        sign, pos = -1, 1
    while True:
        m = _TERM.match(s, pos)
        if not m or (m.group("coef") is None and m.group("pow") is None):
            raise ValueError(f"cannot parse alpha term at {pos} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        p = m.group("pow")
        if p is None:
            q = Fraction(0)
        elif p == "a":
            q = Fraction(1)
        elif p == "sqrt(a)":
            q = Fraction(1, 2)
        elif m.group("pi"):
            q = Fraction(int(m.group("pi")))
        else:
            q = Fraction(int(m.group("pn")), int(m.group("pd")))
        acc.append((q, sign * coef))
        pos = m.end()
        if pos >= len(s):
            break
        if s[pos] == "+":
            sign = 1
        elif s[pos] == "-":
            sign = -1
        else:
            raise ValueError(f"unexpected {s[pos]!r} in {text!r}")
        pos += 1
    return AlphaExpr.from_map(acc)


ALPHA = AlphaExpr.power(1)
ZERO = AlphaExpr()
ONE = AlphaExpr.const(1)


def root(p: int) -> AlphaExpr:
    """``a**(1/p)``."""
    return AlphaExpr.power(Fraction(1, p))


@dataclass(frozen=True)
class Bracket:
    """``lower (<|<=) f(n) (<|<=) upper`` for all large n in some index family."""

    lower: AlphaExpr
    upper: AlphaExpr
    strict_lower: bool = False
    strict_upper: bool = False

    @classmethod
    def exact(cls, value: AlphaExpr) -> Bracket:
        return cls(value, value)

    def __add__(self, other: Bracket | AlphaExpr | Number) -> Bracket:
        if isinstance(other, Bracket):
            return Bracket(
                self.lower + other.lower,
                self.upper + other.upper,
                self.strict_lower or other.strict_lower,
                self.strict_upper or other.strict_upper,
            )
        return Bracket(self.lower + other, self.upper + other, self.strict_lower, self.strict_upper)

    __radd__ = __add__

    def complement(self) -> Bracket:
        """Bracket of ``n - f(n)``."""
        return Bracket(ALPHA - self.upper, ALPHA - self.lower, self.strict_upper, self.strict_lower)

    def above(self, other: Bracket) -> bool:
        """True when every large value bounded by self exceeds every one bounded by other."""
        c = self.lower.compare(other.upper)
        return c > 0 or (c == 0 and (self.strict_lower or other.strict_upper))

    def __str__(self) -> str:
        lo = "<" if self.strict_lower else "<="
        hi = "<" if self.strict_upper else "<="
        return f"{self.lower} {lo} f {hi} {self.upper}"


class Ordering(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"

    @classmethod
    def of(cls, sign: int) -> Ordering:
        return cls.LESS if sign < 0 else cls.GREATER if sign > 0 else cls.EQUAL

    def __str__(self) -> str:
        return self.value
