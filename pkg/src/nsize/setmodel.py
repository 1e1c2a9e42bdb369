"""Symbolic subsets of the positive integers.

Every expression has exact, total membership. ``N`` starts at 1 throughout,
so ``ArithProg(2, 0)`` (the evens) begins at 2 and ``ArithProg(2, 1)`` (the
odds) at 1.
"""

from __future__ import annotations

import operator
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterator

import numpy as np

from .alpha import ALPHA, Bracket, root
from .config import MAX_PERIOD, max_enum
from .errors import PreconditionError, ResourceError
from .primes import iroot, is_perfect_power, is_prime, sieve


# ---------------------------------------------------------------------------
# block schedules
# ---------------------------------------------------------------------------


class BlockSchedule:
    """Membership alternating over consecutive index blocks.

    Block ``t`` is ``(boundary(t-1), boundary(t)]`` with ``boundary(-1) = 0``.
    Subclasses supply the boundaries, which blocks are included, and the
    asymptotic count brackets along the two families of block ends.
    """

    geometry: tuple

    def boundary(self, t: int) -> int:
        raise NotImplementedError

    def included(self, t: int) -> bool:
        raise NotImplementedError

    def contains(self, n: int) -> bool:
        return self.included(self.block_index(n))

    def block_index(self, n: int) -> int:
        t = 0
        while n > self.boundary(t):
            t += 1
        return t

    def count(self, n: int) -> int:
        """Members in ``1..n`` by summing whole blocks."""
        total, prev, t = 0, 0, 0
        while True:
            b = self.boundary(t)
            if n <= b:
                return total + (n - prev if self.included(t) else 0)
            if self.included(t):
                total += b - prev
            prev, t = b, t + 1

    def blocks(self, n: int) -> Iterator[tuple[int, int, bool]]:
        """(start, end, included) for blocks meeting ``1..n``."""
        prev, t = 0, 0
        while prev < n:
            b = self.boundary(t)
            if b > prev:
                yield prev + 1, min(b, n), self.included(t)
            prev, t = b, t + 1

    # asymptotics ------------------------------------------------------------

    def _odd_brackets(self) -> tuple[dict[int, Bracket], Bracket]:
        """Brackets for the number of members of odd-indexed blocks."""
        raise NotImplementedError

    @property
    def _includes_odd(self) -> bool:
        return self.included(1)

    def family_brackets(self) -> dict[int, Bracket]:
        """Count bracket at the ends of blocks of each index parity."""
        fam, _ = self._odd_brackets()
        if self._includes_odd:
            return fam
        return {k: b.complement() for k, b in fam.items()}

    def envelope(self) -> Bracket:
        _, env = self._odd_brackets()
        return env if self._includes_odd else env.complement()

    def family_points(self, parity: int, start: int = 1) -> Iterator[int]:
        t = start + ((start - parity) % 2)
        while True:
            yield self.boundary(t)
            t += 2

    def family_description(self, parity: int) -> str:
        raise NotImplementedError

    def density_limits(self) -> tuple[Fraction, Fraction]:
        """(lower, upper) density, read off the family brackets."""
        ratios = [b.lower.coefficient(1) for b in self.family_brackets().values()]
        return min(ratios), max(ratios)


def _parity_word(p: int) -> str:
    return "odd" if p % 2 else "even"


class _TowerMixin:
    base: int

    def boundary(self, t: int) -> int:
        return self.base ** (self.base**t)

    def block_index(self, n: int) -> int:
        t, thr = 0, self.base
        while n > thr:
            thr = thr**self.base
            t += 1
        return t

    def _odd_brackets(self) -> tuple[dict[int, Bracket], Bracket]:
        r = self.base
        n, a1, a2 = ALPHA, root(r), root(r * r)
        fam = {
            1: Bracket(n - a1, n - a1 + a2, True, True),
            0: Bracket(a1 - a2, a1, True, True),
        }
        return fam, Bracket(a1 - a2, n - a1 + a2)

    def family_description(self, parity: int) -> str:
        r = self.base
        return f"n = {r}^({r}^k), k {_parity_word(parity)}"


class _GeometricMixin:
    base: int

    def boundary(self, t: int) -> int:
        return self.base**t - 1

    def block_index(self, n: int) -> int:
        if self.base == 2:
            return n.bit_length()
        t, p = 0, 1
        while p <= n:
            p *= self.base
            t += 1
        return t

    def _odd_brackets(self) -> tuple[dict[int, Bracket], Bracket]:
        r = self.base
        hi = (ALPHA * r + (r - 1)) / (r + 1)
        lo = ALPHA / (r + 1)
        return {1: Bracket.exact(hi), 0: Bracket.exact(lo)}, Bracket(lo, hi)

    def family_description(self, parity: int) -> str:
        return f"n = {self.base}^m - 1, m {_parity_word(parity)}"


@dataclass(frozen=True)
class SuperExp(_TowerMixin, BlockSchedule):
    """n is a member iff the smallest k with n <= 2^(2^k) is odd."""

    base: int = field(default=2, init=False, repr=False)

    @property
    def geometry(self) -> tuple:
        return ("tower", 2)

    def included(self, t: int) -> bool:
        return t % 2 == 1


@dataclass(frozen=True)
class BitLengthParity(_GeometricMixin, BlockSchedule):
    """n is a member iff its binary expansion has odd length."""

    base: int = field(default=2, init=False, repr=False)

    @property
    def geometry(self) -> tuple:
        return ("geometric", 2)

    def included(self, t: int) -> bool:
        return t % 2 == 1

    def contains(self, n: int) -> bool:
        return n.bit_length() % 2 == 1


@dataclass(frozen=True)
class LeadingDecimal(BlockSchedule):
    """n is a member iff its decimal expansion starts with ``digit``."""

    digit: int = 1

    def __post_init__(self) -> None:
        if not 1 <= self.digit <= 9:
            raise PreconditionError("leading digit must be in 1..9")

    @property
    def geometry(self) -> tuple:
        return ("leading", self.digit)

    def boundary(self, t: int) -> int:
        j, odd = divmod(t, 2)
        return (self.digit + odd) * 10**j - 1

    def included(self, t: int) -> bool:
        return t % 2 == 1

    def contains(self, n: int) -> bool:
        return str(n)[0] == str(self.digit)

    def _odd_brackets(self) -> tuple[dict[int, Bracket], Bracket]:
        d = self.digit
        hi = ALPHA * Fraction(10, 9 * (d + 1)) + Fraction(10, 9 * (d + 1)) - Fraction(1, 9)
        lo = ALPHA * Fraction(1, 9 * d) + Fraction(1, 9 * d) - Fraction(1, 9)
        return {1: Bracket.exact(hi), 0: Bracket.exact(lo)}, Bracket(lo, hi)

    def family_description(self, parity: int) -> str:
        lead = self.digit + 1 if parity else self.digit
        return "n = 10^m - 1" if lead in (1, 10) else f"n = {lead}*10^m - 1"


@dataclass(frozen=True)
class GeneralBlocks(BlockSchedule):
    """Alternating blocks with tower (``base^(base^t)``) or geometric (``base^t - 1``) ends."""

    growth: str
    base: int
    parity: str = "odd"

    def __post_init__(self) -> None:
        if self.growth not in ("tower", "geometric"):
            raise PreconditionError("growth must be 'tower' or 'geometric'")
        if self.base < 2:
            raise PreconditionError("block base must be >= 2")
        if self.parity not in ("odd", "even"):
            raise PreconditionError("parity must be 'odd' or 'even'")

    @property
    def _impl(self):
        return _TOWER if self.growth == "tower" else _GEOMETRIC

    @property
    def geometry(self) -> tuple:
        return (self.growth, self.base)

    def boundary(self, t: int) -> int:
        return self._impl.boundary(self, t)

    def block_index(self, n: int) -> int:
        return self._impl.block_index(self, n)

    def included(self, t: int) -> bool:
        return (t % 2 == 1) == (self.parity == "odd")

    def _odd_brackets(self):
        return self._impl._odd_brackets(self)

    def family_description(self, parity: int) -> str:
        return self._impl.family_description(self, parity)


_TOWER = _TowerMixin
_GEOMETRIC = _GeometricMixin


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------


class SetExpr:
    """Base class; ``|``, ``&``, ``-`` and ``~`` build Boolean combinations."""

    __slots__ = ()

    def __or__(self, other: SetExpr) -> SetExpr:
        return Union(self, other)

    def __and__(self, other: SetExpr) -> SetExpr:
        return Intersection(self, other)

    def __sub__(self, other: SetExpr) -> SetExpr:
        return Difference(self, other)

    def __invert__(self) -> SetExpr:
        return Complement(self)

    def __contains__(self, n: int) -> bool:
        return membership(self, n) == 1


def _check_increasing(xs: tuple[int, ...], what: str) -> None:
    for k, x in enumerate(xs):
        if not isinstance(x, int) or x < 1:
            raise PreconditionError(f"{what} elements must be positive integers")
        if k and x <= xs[k - 1]:
            raise PreconditionError(f"{what} elements must be strictly increasing")


@dataclass(frozen=True)
class Empty(SetExpr):
    pass


@dataclass(frozen=True)
class Full(SetExpr):
    pass


@dataclass(frozen=True)
class FiniteSet(SetExpr):
    elements: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _check_increasing(self.elements, "FiniteSet")


@dataclass(frozen=True)
class CoFiniteSet(SetExpr):
    excluded: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _check_increasing(self.excluded, "CoFiniteSet")


@dataclass(frozen=True)
class ArithProg(SetExpr):
    """``{n : n mod a == i}``."""

    a: int
    i: int

    def __post_init__(self) -> None:
        if self.a < 1 or not 0 <= self.i < self.a:
            raise PreconditionError("ArithProg needs a >= 1 and 0 <= i < a")


@dataclass(frozen=True)
class Powers(SetExpr):
    p: int

    def __post_init__(self) -> None:
        if self.p < 2:
            raise PreconditionError("Powers needs p >= 2")


@dataclass(frozen=True)
class Primes(SetExpr):
    pass


@dataclass(frozen=True)
class BlockSet(SetExpr):
    schedule: BlockSchedule


@dataclass(frozen=True)
class Union(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Intersection(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Difference(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Complement(SetExpr):
    inner: SetExpr


def finite(*elements: int) -> FiniteSet:
    return FiniteSet(tuple(sorted(set(elements))))


def cofinite(*excluded: int) -> CoFiniteSet:
    return CoFiniteSet(tuple(sorted(set(excluded))))


EVENS = ArithProg(2, 0)
ODDS = ArithProg(2, 1)
SUPEREXP = BlockSet(SuperExp())
BITODD = BlockSet(BitLengthParity())
LEADING1 = BlockSet(LeadingDecimal(1))

_BINARY = (Union, Intersection, Difference)
_OPS: dict[type, Callable[[bool, bool], bool]] = {
    Union: operator.or_,
    Intersection: operator.and_,
    Difference: lambda x, y: x and not y,
}


# ---------------------------------------------------------------------------
# membership and enumeration
# ---------------------------------------------------------------------------


def _member(expr: SetExpr, n: int) -> bool:
    if isinstance(expr, Empty):
        return False
    if isinstance(expr, Full):
        return True
    if isinstance(expr, FiniteSet):
        k = bisect_right(expr.elements, n)
        return k > 0 and expr.elements[k - 1] == n
    if isinstance(expr, CoFiniteSet):
        k = bisect_right(expr.excluded, n)
        return not (k > 0 and expr.excluded[k - 1] == n)
    if isinstance(expr, ArithProg):
        return n % expr.a == expr.i
    if isinstance(expr, Powers):
        return is_perfect_power(n, expr.p)
    if isinstance(expr, Primes):
        return is_prime(n)
    if isinstance(expr, BlockSet):
        return expr.schedule.contains(n)
    if isinstance(expr, Complement):
        return not _member(expr.inner, n)
    if isinstance(expr, _BINARY):
        return _OPS[type(expr)](_member(expr.left, n), _member(expr.right, n))
    raise TypeError(f"not a set expression: {expr!r}")


def membership(expr: SetExpr, n: int) -> int:
    """Characteristic bit of n in expr."""
    if n < 1:
        raise PreconditionError("membership is defined for n >= 1")
    return int(_member(expr, n))


def _mask(expr: SetExpr, n: int) -> np.ndarray:
    if isinstance(expr, Empty):
        return np.zeros(n + 1, dtype=bool)
    if isinstance(expr, Full):
        m = np.ones(n + 1, dtype=bool)
    elif isinstance(expr, FiniteSet):
        m = np.zeros(n + 1, dtype=bool)
        m[[x for x in expr.elements if x <= n]] = True
    elif isinstance(expr, CoFiniteSet):
        m = np.ones(n + 1, dtype=bool)
        m[[x for x in expr.excluded if x <= n]] = False
    elif isinstance(expr, ArithProg):
        m = np.zeros(n + 1, dtype=bool)
        m[expr.i :: expr.a] = True
    elif isinstance(expr, Powers):
        m = np.zeros(n + 1, dtype=bool)
        k = np.arange(1, iroot(n, expr.p) + 1, dtype=object) ** expr.p
        m[k.astype(np.int64)] = True
    elif isinstance(expr, Primes):
        m = sieve(n)
    elif isinstance(expr, BlockSet):
        m = np.zeros(n + 1, dtype=bool)
        for lo, hi, inc in expr.schedule.blocks(n):
            if inc:
                m[lo : hi + 1] = True
    elif isinstance(expr, Complement):
        m = ~_mask(expr.inner, n)
    elif isinstance(expr, Union):
        m = _mask(expr.left, n) | _mask(expr.right, n)
    elif isinstance(expr, Intersection):
        m = _mask(expr.left, n) & _mask(expr.right, n)
    elif isinstance(expr, Difference):
        m = _mask(expr.left, n) & ~_mask(expr.right, n)
    else:
        raise TypeError(f"not a set expression: {expr!r}")
    m[0] = False
    return m


def mask(expr: SetExpr, n: int) -> np.ndarray:
    """Boolean array of length n+1; index k holds membership of k (index 0 is False)."""
    if n < 1:
        raise PreconditionError("prefix length must be >= 1")
    cap = max_enum()
    if n > cap:
        raise ResourceError(f"enumeration up to {n} exceeds cap {cap} (set NSIZE_MAX_ENUM)")
    return _mask(expr, n)


def enumerate_prefix(expr: SetExpr, n: int) -> list[int]:
    """Members of expr in ``1..n``, increasing."""
    return [int(k) for k in np.flatnonzero(mask(expr, n))]


# ---------------------------------------------------------------------------
# structure: eventually periodic or single-atom base plus finite exceptions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Periodic:
    """Membership decided by ``n mod period`` alone."""

    period: int
    residues: frozenset[int]

    @property
    def gain(self) -> int:
        return len(self.residues)

    @property
    def density(self) -> Fraction:
        return Fraction(self.gain, self.period)

    def contains(self, n: int) -> bool:
        return n % self.period in self.residues

    def count(self, n: int) -> int:
        q, r = divmod(n, self.period)
        return q * self.gain + bisect_right(self._positive, r)

    @property
    def _positive(self) -> tuple[int, ...]:
        return tuple(sorted(x for x in self.residues if x > 0))

    def complement(self) -> Periodic:
        return Periodic(self.period, frozenset(range(self.period)) - self.residues)

    @property
    def is_empty(self) -> bool:
        return not self.residues

    @property
    def is_full(self) -> bool:
        return len(self.residues) == self.period


@dataclass(frozen=True)
class AtomBase:
    """A non-periodic atom (powers, primes, block set), possibly complemented."""

    atom: SetExpr
    negated: bool = False

    def contains(self, n: int) -> bool:
        return _member(self.atom, n) != self.negated

    def atom_count(self, n: int) -> int:
        a = self.atom
        if isinstance(a, Powers):
            return iroot(n, a.p)
        if isinstance(a, Primes):
            from .primes import prime_pi

            return prime_pi(n)
        return a.schedule.count(n)

    def count(self, n: int) -> int:
        c = self.atom_count(n)
        return n - c if self.negated else c

    def complement(self) -> AtomBase:
        return AtomBase(self.atom, not self.negated)


@dataclass(frozen=True)
class Structure:
    """Base membership rule plus the finite set where actual membership differs."""

    base: Periodic | AtomBase
    flips: frozenset[int] = frozenset()

    def contains(self, n: int) -> bool:
        return self.base.contains(n) != (n in self.flips)

    @property
    def added(self) -> tuple[int, ...]:
        return tuple(sorted(x for x in self.flips if not self.base.contains(x)))

    @property
    def removed(self) -> tuple[int, ...]:
        return tuple(sorted(x for x in self.flips if self.base.contains(x)))

    @property
    def offset(self) -> int:
        """Eventual difference between the count and the base count."""
        return len(self.added) - len(self.removed)

    @property
    def preperiod(self) -> int:
        return max(self.flips, default=0)

    def correction(self, n: int) -> int:
        return sum((-1 if self.base.contains(x) else 1) for x in self.flips if x <= n)

    def count(self, n: int) -> int:
        return self.base.count(n) + self.correction(n)


def _reduce_period(p: Periodic) -> Periodic:
    if p.is_empty:
        return Periodic(1, frozenset())
    if p.is_full:
        return Periodic(1, frozenset({0}))
    P = p.period
    for d in range(1, P):
        if P % d:
            continue
        if all(((r + d) % P in p.residues) for r in p.residues):
            return Periodic(d, frozenset(r % d for r in p.residues))
    return p


def _combine_bases(op, bx, by):
    """Base of ``op(x, y)`` when expressible, else None."""
    if isinstance(bx, Periodic) and isinstance(by, Periodic):
        P = bx.period * by.period // gcd(bx.period, by.period)
        if P > MAX_PERIOD:
            return None
        r = np.arange(P)
        mx = np.isin(r % bx.period, list(bx.residues))
        my = np.isin(r % by.period, list(by.residues))
        if op is _OPS[Union]:
            m = mx | my
        elif op is _OPS[Intersection]:
            m = mx & my
        else:
            m = mx & ~my
        return _reduce_period(Periodic(P, frozenset(int(k) for k in np.flatnonzero(m))))
    if isinstance(bx, AtomBase) and isinstance(by, AtomBase):
        if bx.atom != by.atom:
            return None
        table = [op(v != bx.negated, v != by.negated) for v in (False, True)]
        return _classify_table(table, bx.atom, None)
    if isinstance(bx, Periodic):
        per, atom, swap = bx, by, False
    else:
        per, atom, swap = by, bx, True
    # per residue, the result as a function of the atom's raw membership v
    kinds: dict[int, object] = {}
    for r in range(per.period):
        c = r in per.residues
        table = [op(v != atom.negated, c) if swap else op(c, v != atom.negated) for v in (False, True)]
        kinds[r] = tuple(table)
    distinct = set(kinds.values())
    if all(t[0] == t[1] for t in distinct):
        return _reduce_period(Periodic(per.period, frozenset(r for r, t in kinds.items() if t[0])))
    if len(distinct) == 1:
        return _classify_table(list(distinct.pop()), atom.atom, None)
    return None


def _classify_table(table, atom, _):
    if table[0] == table[1]:
        return Periodic(1, frozenset({0}) if table[0] else frozenset())
    return AtomBase(atom, negated=table[0])


@lru_cache(maxsize=4096)
def structure(expr: SetExpr) -> Structure | None:
    """Exact structural description of expr, or None when outside the rule table."""
    if isinstance(expr, Empty):
        return Structure(Periodic(1, frozenset()))
    if isinstance(expr, Full):
        return Structure(Periodic(1, frozenset({0})))
    if isinstance(expr, FiniteSet):
        return Structure(Periodic(1, frozenset()), frozenset(expr.elements))
    if isinstance(expr, CoFiniteSet):
        return Structure(Periodic(1, frozenset({0})), frozenset(expr.excluded))
    if isinstance(expr, ArithProg):
        return Structure(_reduce_period(Periodic(expr.a, frozenset({expr.i}))))
    if isinstance(expr, (Powers, Primes, BlockSet)):
        return Structure(AtomBase(expr))
    if isinstance(expr, Complement):
        s = structure(expr.inner)
        return None if s is None else Structure(s.base.complement(), s.flips)
    if isinstance(expr, _BINARY):
        sx, sy = structure(expr.left), structure(expr.right)
        if sx is None or sy is None:
            return None
        op = _OPS[type(expr)]
        base = _combine_bases(op, sx.base, sy.base)
        if base is None:
            return None
        flips = frozenset(
            c for c in sx.flips | sy.flips if op(sx.contains(c), sy.contains(c)) != base.contains(c)
        )
        return Structure(base, flips)
    raise TypeError(f"not a set expression: {expr!r}")


# ---------------------------------------------------------------------------
# finiteness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Finite:
    k: int


@dataclass(frozen=True)
class CoFinite:
    k: int


@dataclass(frozen=True)
class InfiniteCoInfinite:
    pass


@dataclass(frozen=True)
class UnknownFiniteness:
    pass


def classify_finiteness(expr: SetExpr) -> "Finite | CoFinite | InfiniteCoInfinite | UnknownFiniteness":
    s = structure(expr)
    if s is None:
        return UnknownFiniteness()
    if isinstance(s.base, Periodic):
        if s.base.is_empty:
            return Finite(len(s.flips))
        if s.base.is_full:
            return CoFinite(len(s.flips))
    return InfiniteCoInfinite()


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

EMPTY, FULL = Empty(), Full()


def _complement(x: SetExpr) -> SetExpr:
    if isinstance(x, Empty):
        return FULL
    if isinstance(x, Full):
        return EMPTY
    if isinstance(x, FiniteSet):
        return CoFiniteSet(x.elements) if x.elements else FULL
    if isinstance(x, CoFiniteSet):
        return FiniteSet(x.excluded) if x.excluded else EMPTY
    if isinstance(x, Complement):
        return x.inner
    if isinstance(x, Union):
        return _intersect(_complement(x.left), _complement(x.right))
    if isinstance(x, Intersection):
        return _union(_complement(x.left), _complement(x.right))
    if isinstance(x, Difference):
        return _union(_complement(x.left), x.right)
    return Complement(x)


def _finite_filter(f: FiniteSet, keep: Callable[[int], bool]) -> SetExpr:
    xs = tuple(e for e in f.elements if keep(e))
    return FiniteSet(xs) if xs else EMPTY


def _union(x: SetExpr, y: SetExpr) -> SetExpr:
    if isinstance(x, Empty):
        return y
    if isinstance(y, Empty):
        return x
    if isinstance(x, Full) or isinstance(y, Full):
        return FULL
    if x == y:
        return x
    if isinstance(x, FiniteSet) and isinstance(y, FiniteSet):
        return finite(*x.elements, *y.elements)
    if isinstance(x, CoFiniteSet) and isinstance(y, CoFiniteSet):
        ex = tuple(sorted(set(x.excluded) & set(y.excluded)))
        return CoFiniteSet(ex) if ex else FULL
    if isinstance(x, FiniteSet) and isinstance(y, CoFiniteSet):
        x, y = y, x
    if isinstance(x, CoFiniteSet) and isinstance(y, FiniteSet):
        ex = tuple(e for e in x.excluded if e not in set(y.elements))
        return CoFiniteSet(ex) if ex else FULL
    return Union(x, y)


def _intersect(x: SetExpr, y: SetExpr) -> SetExpr:
    if isinstance(x, Full):
        return y
    if isinstance(y, Full):
        return x
    if isinstance(x, Empty) or isinstance(y, Empty):
        return EMPTY
    if x == y:
        return x
    if isinstance(x, CoFiniteSet) and isinstance(y, CoFiniteSet):
        return CoFiniteSet(tuple(sorted(set(x.excluded) | set(y.excluded))))
    if isinstance(y, FiniteSet):
        x, y = y, x
    if isinstance(x, FiniteSet):
        return _finite_filter(x, lambda e: _member(y, e))
    return Intersection(x, y)


def _difference(x: SetExpr, y: SetExpr) -> SetExpr:
    if isinstance(x, Empty) or isinstance(y, Full):
        return EMPTY
    if isinstance(y, Empty):
        return x
    if x == y:
        return EMPTY
    if isinstance(x, Full):
        return _complement(y)
    if isinstance(x, FiniteSet):
        return _finite_filter(x, lambda e: not _member(y, e))
    if isinstance(x, CoFiniteSet) and isinstance(y, FiniteSet):
        return CoFiniteSet(tuple(sorted(set(x.excluded) | set(y.elements))))
    return Difference(x, y)


def _normalize_once(expr: SetExpr) -> SetExpr:
    if isinstance(expr, FiniteSet) and not expr.elements:
        return EMPTY
    if isinstance(expr, CoFiniteSet) and not expr.excluded:
        return FULL
    if isinstance(expr, ArithProg) and expr.a == 1:
        return FULL
    if isinstance(expr, Complement):
        return _complement(_normalize_once(expr.inner))
    if isinstance(expr, Union):
        return _union(_normalize_once(expr.left), _normalize_once(expr.right))
    if isinstance(expr, Intersection):
        return _intersect(_normalize_once(expr.left), _normalize_once(expr.right))
    if isinstance(expr, Difference):
        return _difference(_normalize_once(expr.left), _normalize_once(expr.right))
    return expr


def normalize(expr: SetExpr) -> SetExpr:
    """Semantics-preserving Boolean simplification, iterated to a fixpoint."""
    for _ in range(64):
        nxt = _normalize_once(expr)
        if nxt == expr:
            return expr
        expr = nxt
    return expr


def atoms(expr: SetExpr) -> Iterator[SetExpr]:
    if isinstance(expr, Complement):
        yield from atoms(expr.inner)
    elif isinstance(expr, _BINARY):
        yield from atoms(expr.left)
        yield from atoms(expr.right)
    else:
        yield expr


def depth(expr: SetExpr) -> int:
    if isinstance(expr, Complement):
        return 1 + depth(expr.inner)
    if isinstance(expr, _BINARY):
        return 1 + max(depth(expr.left), depth(expr.right))
    return 0

