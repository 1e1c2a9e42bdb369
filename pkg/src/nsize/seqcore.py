"""Partial-sum sequences f_n(S) and their comparison modulo finite prefixes.

Two sequences are compared "eventually": a relation holds if it holds for all
but finitely many n. Verdicts are only ever issued with a certificate:

* an exact *linear* decomposition ``f = sum(c_j * A_j) + r`` into atom counts
  ``A_j`` (powers, primes, block sets) and an eventually periodic rest ``r``;
  when the atoms cancel, one period of the rest decides everything;
* asymptotic *brackets* valid for all large n (globally, or along the block
  ends of a schedule), compared by leading-term order;
* lower/upper *density* limits.

Anything else is scanned up to a horizon and reported as ``Unknown`` with the
scan as evidence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .alpha import ALPHA, Bracket, root
from .config import DEFAULT_HORIZON, MAX_PERIOD, max_enum
from .errors import PreconditionError, ResourceError
from .primes import iroot, prime_pi
from .setmodel import (
    AtomBase,
    BlockSchedule,
    BlockSet,
    Complement,
    Difference,
    Intersection,
    Periodic,
    Powers,
    Primes,
    SetExpr,
    Structure,
    Union,
    mask,
    normalize,
    structure,
)

# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


class ClosedForm:
    def __call__(self, n: int) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class FloorLinear(ClosedForm):
    """Count of ``{m <= n : m mod a == i}``."""

    a: int
    i: int

    def __call__(self, n: int) -> int:
        if self.i == 0:
            return n // self.a
        return (n - self.i) // self.a + 1 if n >= self.i else 0


@dataclass(frozen=True)
class PeriodicTable(ClosedForm):
    period: int
    residues: tuple[int, ...]

    def __call__(self, n: int) -> int:
        return Periodic(self.period, frozenset(self.residues)).count(n)


@dataclass(frozen=True)
class RootFloor(ClosedForm):
    """``floor(n ** (1/p))``, the number of p-th powers up to n."""

    p: int

    def __call__(self, n: int) -> int:
        return iroot(n, self.p)


@dataclass(frozen=True)
class PrimePi(ClosedForm):
    def __call__(self, n: int) -> int:
        return prime_pi(n)


@dataclass(frozen=True)
class BlockSum(ClosedForm):
    """Alternating sum of whole blocks plus the partial current block."""

    schedule: BlockSchedule

    def __call__(self, n: int) -> int:
        return self.schedule.count(n)


@dataclass(frozen=True)
class Complemented(ClosedForm):
    inner: ClosedForm

    def __call__(self, n: int) -> int:
        return n - self.inner(n)


@dataclass(frozen=True)
class Adjusted(ClosedForm):
    """``inner(n)`` corrected by +1/-1 for each listed exception ``x <= n``."""

    inner: ClosedForm
    corrections: tuple[tuple[int, int], ...]

    def __call__(self, n: int) -> int:
        return self.inner(n) + sum(d for x, d in self.corrections if x <= n)


def closed_form_of(s: Structure) -> ClosedForm:
    base = s.base
    if isinstance(base, Periodic):
        if len(base.residues) == 1:
            (r,) = base.residues
            cf: ClosedForm = FloorLinear(base.period, r)
        else:
            cf = PeriodicTable(base.period, tuple(sorted(base.residues)))
    else:
        atom = base.atom
        if isinstance(atom, Powers):
            cf = RootFloor(atom.p)
        elif isinstance(atom, Primes):
            cf = PrimePi()
        else:
            cf = BlockSum(atom.schedule)
        if base.negated:
            cf = Complemented(cf)
    if s.flips:
        cf = Adjusted(cf, tuple((x, -1 if base.contains(x) else 1) for x in sorted(s.flips)))
    return cf


# ---------------------------------------------------------------------------
# growth descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EventualPeriod:
    """For n > preperiod, membership repeats with this period, gaining ``gain`` per period."""

    preperiod: int
    period: int
    gain: int


@dataclass(frozen=True)
class GrowthDescriptor:
    liminf_density: Optional[Fraction] = None
    limsup_density: Optional[Fraction] = None
    eventually_periodic: Optional[EventualPeriod] = None

    def __post_init__(self) -> None:
        li, ls = self.liminf_density, self.limsup_density
        if li is not None and ls is not None and not 0 <= li <= ls <= 1:
            raise ValueError(f"inconsistent density limits {li}, {ls}")

    @property
    def exact(self) -> Optional[Fraction]:
        li, ls = self.liminf_density, self.limsup_density
        return li if li is not None and li == ls else None

    @property
    def known(self) -> bool:
        return self.liminf_density is not None and self.limsup_density is not None

    def complement(self) -> GrowthDescriptor:
        li, ls = self.liminf_density, self.limsup_density
        return GrowthDescriptor(
            None if ls is None else 1 - ls,
            None if li is None else 1 - li,
            None,
        )


_UNKNOWN = GrowthDescriptor()


def _from_structure(s: Structure) -> GrowthDescriptor:
    base = s.base
    if isinstance(base, Periodic):
        d = base.density
        return GrowthDescriptor(d, d, EventualPeriod(s.preperiod, base.period, base.gain))
    atom = base.atom
    if isinstance(atom, BlockSet):
        li, ls = atom.schedule.density_limits()
    else:  # powers and primes (the latter by the prime number theorem)
        li = ls = Fraction(0)
    if base.negated:
        li, ls = 1 - ls, 1 - li
    return GrowthDescriptor(li, ls)


def descriptor(expr: SetExpr) -> GrowthDescriptor:
    """Exact lower/upper density limits where the rule table decides them."""
    s = structure(expr)
    if s is not None:
        return _from_structure(s)
    if isinstance(expr, Complement):
        return descriptor(expr.inner).complement()
    if isinstance(expr, Difference):
        return descriptor(Intersection(expr.left, Complement(expr.right)))
    if isinstance(expr, (Union, Intersection)):
        dx, dy = descriptor(expr.left), descriptor(expr.right)
        if isinstance(expr, Union):
            # a density-zero part changes no limit; a density-one part absorbs
            for p, q in ((dx, dy), (dy, dx)):
                if p.limsup_density == 0:
                    return GrowthDescriptor(q.liminf_density, q.limsup_density)
                if p.liminf_density == 1:
                    return GrowthDescriptor(Fraction(1), Fraction(1))
        else:
            for p, q in ((dx, dy), (dy, dx)):
                if p.limsup_density == 0:
                    return GrowthDescriptor(Fraction(0), Fraction(0))
                if p.liminf_density == 1:
                    return GrowthDescriptor(q.liminf_density, q.limsup_density)
    return _UNKNOWN


# ---------------------------------------------------------------------------
# linear decomposition
# ---------------------------------------------------------------------------


def _atom_count(atom: SetExpr, n: int) -> int:
    return AtomBase(atom).atom_count(n)


@dataclass(eq=False)
class Linear:
    """``f(n) = sum(coef * count_atom(n)) + rest(n)``.

    For n > preperiod, ``rest(n) - rest(n - 1) = step(n)`` with ``step``
    periodic of the given period and summing to ``gain`` per period.
    """

    atoms: dict
    rest: Callable[[int], int]
    step: Callable[[np.ndarray], np.ndarray]
    preperiod: int
    period: int
    gain: int

    @classmethod
    def constant(cls, k: int) -> Linear:
        return cls({}, lambda n: k, lambda ns: np.zeros(len(ns), dtype=np.int64), 0, 1, 0)

    @classmethod
    def of_structure(cls, s: Structure) -> Linear:
        base = s.base
        if isinstance(base, Periodic):
            res = np.array(sorted(base.residues), dtype=np.int64)
            P = base.period
            return cls({}, s.count, lambda ns: np.isin(ns % P, res).astype(np.int64),
                       s.preperiod, P, base.gain)
        if base.negated:
            return cls({base.atom: -1}, lambda n: n + s.correction(n),
                       lambda ns: np.ones(len(ns), dtype=np.int64), s.preperiod, 1, 1)
        return cls({base.atom: 1}, s.correction,
                   lambda ns: np.zeros(len(ns), dtype=np.int64), s.preperiod, 1, 0)

    def atoms_value(self, n: int) -> int:
        return sum(c * _atom_count(a, n) for a, c in self.atoms.items())

    def __call__(self, n: int) -> int:
        return self.atoms_value(n) + self.rest(n)

    def scaled(self, k: int) -> Linear:
        return Linear(
            {a: k * c for a, c in self.atoms.items() if k * c},
            lambda n: k * self.rest(n),
            lambda ns: k * self.step(ns),
            self.preperiod, self.period, k * self.gain,
        )

    def __add__(self, other: Linear) -> Optional[Linear]:
        P = self.period * other.period // gcd(self.period, other.period)
        if P > MAX_PERIOD:
            return None
        atoms = dict(self.atoms)
        for a, c in other.atoms.items():
            atoms[a] = atoms.get(a, 0) + c
        atoms = {a: c for a, c in atoms.items() if c}
        return Linear(
            atoms,
            lambda n: self.rest(n) + other.rest(n),
            lambda ns: self.step(ns) + other.step(ns),
            max(self.preperiod, other.preperiod),
            P,
            self.gain * (P // self.period) + other.gain * (P // other.period),
        )

    def with_overrides(self, overrides: dict[int, int]) -> Linear:
        if not overrides:
            return self
        rest = self.rest

        def patched(n: int) -> int:
            if n in overrides:
                return overrides[n] - self.atoms_value(n)
            return rest(n)

        return Linear(self.atoms, patched, self.step,
                      max(self.preperiod, max(overrides)), self.period, self.gain)

    def rest_window(self) -> tuple[np.ndarray, list[int]]:
        """(n values, exact rest values) over one period just past the preperiod."""
        start = self.preperiod + 1
        ns = np.arange(start, start + self.period, dtype=np.int64)
        steps = self.step(ns[1:]).astype(object)
        vals = [self.rest(start)]
        for s in steps:
            vals.append(vals[-1] + int(s))
        return ns, vals

    def rest_bracket(self) -> Bracket:
        ns, vals = self.rest_window()
        P, g = self.period, self.gain
        offs = [Fraction(v * P - g * int(n), P) for n, v in zip(ns, vals)]
        slope = ALPHA * Fraction(g, P)
        return Bracket(slope + min(offs), slope + max(offs))


# ---------------------------------------------------------------------------
# brackets for atoms
# ---------------------------------------------------------------------------

FamilyKey = tuple  # (geometry, parity of block index)


def _prime_factors(n: int) -> set[int]:
    out, f = set(), 2
    while f * f <= n:
        while n % f == 0:
            out.add(f)
            n //= f
        f += 1
    if n > 1:
        out.add(n)
    return out


def _scale(b: Bracket, c: int | Fraction) -> Bracket:
    if c >= 0:
        return Bracket(b.lower * c, b.upper * c, b.strict_lower, b.strict_upper)
    return Bracket(b.upper * c, b.lower * c, b.strict_upper, b.strict_lower)


def atom_bracket(atom: SetExpr, family: Optional[FamilyKey] = None) -> Optional[Bracket]:
    """Bracket on the atom's count, for all large n or along a block-end family."""
    if isinstance(atom, Powers):
        r = root(atom.p)
        if family is not None and family[0][0] == "tower":
            base = family[0][1]
            if _prime_factors(atom.p) <= _prime_factors(base):
                return Bracket.exact(r)
        return Bracket(r - 1, r, strict_lower=True)
    if isinstance(atom, BlockSet):
        sch = atom.schedule
        if family is not None and family[0] == sch.geometry:
            return sch.family_brackets()[family[1]]
        return sch.envelope()
    return None  # no elementary bracket on the prime counting function


def linear_bracket(lin: Linear, family: Optional[FamilyKey] = None) -> Optional[Bracket]:
    total = lin.rest_bracket()
    for atom, c in lin.atoms.items():
        b = atom_bracket(atom, family)
        if b is None:
            return None
        total = total + _scale(b, c)
    return total


def block_families(lin: Linear) -> dict[FamilyKey, BlockSchedule]:
    fams: dict[FamilyKey, BlockSchedule] = {}
    for atom in lin.atoms:
        if isinstance(atom, BlockSet):
            for parity in (1, 0):
                fams.setdefault((atom.schedule.geometry, parity), atom.schedule)
    return fams


# ---------------------------------------------------------------------------
# sequences
# ---------------------------------------------------------------------------


class Sequence:
    """Common interface of comparable non-decreasing integer sequences."""

    label: str

    def eval(self, n: int) -> int:
        raise NotImplementedError

    def prefix(self, n: int) -> np.ndarray:
        """Array of f_0 .. f_n (f_0 = 0)."""
        raise NotImplementedError

    def linear(self) -> Optional[Linear]:
        return None

    @property
    def growth(self) -> GrowthDescriptor:
        return _UNKNOWN

    def identity_key(self):
        """Hashable key; equal keys guarantee identical sequences."""
        return None

    def __call__(self, n: int) -> int:
        return self.eval(n)


@dataclass(frozen=True, eq=False)
class SizeSequence(Sequence):
    """f_n(source) with its best known closed form and growth descriptor."""

    source: SetExpr
    closed_form: Optional[ClosedForm] = None
    descriptor: GrowthDescriptor = field(default_factory=GrowthDescriptor)

    @property
    def label(self) -> str:
        from .dsl import to_text

        try:
            return to_text(self.source)
        except ValueError:
            return repr(self.source)

    def eval(self, n: int) -> int:
        if n < 1:
            raise PreconditionError("f_n is defined for n >= 1")
        if self.closed_form is not None:
            return self.closed_form(n)
        return int(np.count_nonzero(mask(self.source, n)))

    def prefix(self, n: int) -> np.ndarray:
        return np.cumsum(mask(self.source, n), dtype=np.int64)

    def linear(self) -> Optional[Linear]:
        s = structure(self.source)
        return None if s is None else Linear.of_structure(s)

    @property
    def growth(self) -> GrowthDescriptor:
        return self.descriptor

    def identity_key(self):
        return ("set", normalize(self.source))


@dataclass(frozen=True, eq=False)
class SumSequence(Sequence):
    """Pointwise sum of sequences plus a constant, with finitely many overridden values."""

    terms: tuple[Sequence, ...]
    constant: int = 0
    overrides: tuple[tuple[int, int], ...] = ()

    @property
    def label(self) -> str:
        parts = [t.label for t in self.terms]
        if self.constant or not parts:
            parts.append(str(self.constant))
        s = " + ".join(parts)
        return s + (" (perturbed)" if self.overrides else "")

    def eval(self, n: int) -> int:
        if n < 1:
            raise PreconditionError("f_n is defined for n >= 1")
        ov = dict(self.overrides)
        if n in ov:
            return ov[n]
        return sum(t.eval(n) for t in self.terms) + self.constant

    def prefix(self, n: int) -> np.ndarray:
        out = np.zeros(n + 1, dtype=np.int64)
        for t in self.terms:
            out += t.prefix(n)
        out[1:] += self.constant
        for k, v in self.overrides:
            if k <= n:
                out[k] = v
        return out

    def linear(self) -> Optional[Linear]:
        acc = Linear.constant(self.constant)
        for t in self.terms:
            lt = t.linear()
            if lt is None:
                return None
            acc = acc + lt
            if acc is None:
                return None
        return acc.with_overrides(dict(self.overrides))

    @property
    def growth(self) -> GrowthDescriptor:
        exact = Fraction(0)
        loose: list[GrowthDescriptor] = []
        for t in self.terms:
            g = t.growth
            if g.exact is not None:
                exact += g.exact
            elif g.known:
                loose.append(g)
            else:
                return _UNKNOWN
        if len(loose) > 1:
            return _UNKNOWN
        if loose:
            li, ls = exact + loose[0].liminf_density, exact + loose[0].limsup_density
        else:
            li = ls = exact
        if ls > 1:  # sums of sets need not be sizes of subsets of N
            return _UNKNOWN
        return GrowthDescriptor(li, ls)

    def identity_key(self):
        keys = tuple(sorted((repr(t.identity_key()) for t in self.terms)))
        if any(t.identity_key() is None for t in self.terms):
            return None
        return ("sum", keys, self.constant, tuple(sorted(self.overrides)))


def partial_sums(expr: SetExpr) -> SizeSequence:
    s = structure(expr)
    cf = None if s is None else closed_form_of(s)
    return SizeSequence(expr, cf, descriptor(expr))


def eval_f(seq: Sequence, n: int) -> int:
    return seq.eval(n)


# ---------------------------------------------------------------------------
# eventual comparison
# ---------------------------------------------------------------------------


class Verdict(enum.Enum):
    EQUAL = "Equal"
    STRICT_LESS = "StrictLess"
    STRICT_GREATER = "StrictGreater"
    WEAK_LESS = "WeakLess"
    WEAK_GREATER = "WeakGreater"
    INCOMPARABLE = "Incomparable"
    UNKNOWN = "Unknown"

    def swapped(self) -> Verdict:
        return _SWAP.get(self, self)

    def __str__(self) -> str:
        return self.value


_SWAP = {
    Verdict.STRICT_LESS: Verdict.STRICT_GREATER,
    Verdict.STRICT_GREATER: Verdict.STRICT_LESS,
    Verdict.WEAK_LESS: Verdict.WEAK_GREATER,
    Verdict.WEAK_GREATER: Verdict.WEAK_LESS,
}


@dataclass(frozen=True)
class Witness:
    """An index family along which ``a_n <relation> b_n`` infinitely often."""

    relation: str  # ">" or "<"
    family: str
    samples: tuple[tuple[int, int, int], ...] = ()  # (n, a_n, b_n)

    def swapped(self) -> Witness:
        rel = "<" if self.relation == ">" else ">"
        return Witness(rel, self.family, tuple((n, b, a) for n, a, b in self.samples))


@dataclass(frozen=True)
class EventualComparison:
    """Facts about two sequences modulo finite prefixes; None means undetermined."""

    leq_eventually: Optional[bool] = None
    geq_eventually: Optional[bool] = None
    eq_eventually: Optional[bool] = None
    lt_eventually: Optional[bool] = None
    gt_eventually: Optional[bool] = None
    witnesses: tuple[Witness, ...] = ()
    route: str = ""
    evidence: str = ""
    difference_range: Optional[tuple[int, int]] = None  # eventual range of a_n - b_n

    @property
    def verdict(self) -> Verdict:
        if self.eq_eventually:
            return Verdict.EQUAL
        if self.lt_eventually:
            return Verdict.STRICT_LESS
        if self.gt_eventually:
            return Verdict.STRICT_GREATER
        if self.leq_eventually and self.eq_eventually is False and self.lt_eventually is False:
            return Verdict.WEAK_LESS
        if self.geq_eventually and self.eq_eventually is False and self.gt_eventually is False:
            return Verdict.WEAK_GREATER
        if self.leq_eventually is False and self.geq_eventually is False:
            return Verdict.INCOMPARABLE
        return Verdict.UNKNOWN

    def swapped(self) -> EventualComparison:
        return EventualComparison(
            self.geq_eventually, self.leq_eventually, self.eq_eventually,
            self.gt_eventually, self.lt_eventually,
            tuple(w.swapped() for w in self.witnesses), self.route, self.evidence,
            None if self.difference_range is None
            else (-self.difference_range[1], -self.difference_range[0]),
        )


PartialOrderResult = EventualComparison

_STRICT_LESS = dict(leq_eventually=True, geq_eventually=False, eq_eventually=False,
                    lt_eventually=True, gt_eventually=False)
_STRICT_GREATER = dict(leq_eventually=False, geq_eventually=True, eq_eventually=False,
                       lt_eventually=False, gt_eventually=True)


def _residue_family(r: int, P: int, N0: int) -> str:
    return f"n = {r} mod {P}, n > {N0}" if P > 1 else f"n > {N0}"


def _compare_linear(a: Sequence, b: Sequence, la: Linear, lb: Linear) -> Optional[EventualComparison]:
    d = la + lb.scaled(-1)
    if d is None or d.atoms:
        return None
    if d.gain > 0:
        return EventualComparison(**_STRICT_GREATER, route="periodic",
                                  evidence=f"difference gains {d.gain} per period {d.period}")
    if d.gain < 0:
        return EventualComparison(**_STRICT_LESS, route="periodic",
                                  evidence=f"difference loses {-d.gain} per period {d.period}")
    ns, vals = d.rest_window()
    lo, hi = min(vals), max(vals)
    ev = f"difference periodic past {d.preperiod} with period {d.period}, range [{lo}, {hi}]"
    wit = []
    for rel, pick in ((">", lambda v: v > 0), ("<", lambda v: v < 0)):
        for n, v in zip(ns, vals):
            if pick(v):
                n = int(n)
                wit.append(Witness(rel, _residue_family(n % d.period, d.period, d.preperiod),
                                   ((n, a.eval(n), b.eval(n)),)))
                break
    facts = dict(
        leq_eventually=hi <= 0, geq_eventually=lo >= 0, eq_eventually=lo == hi == 0,
        lt_eventually=hi < 0, gt_eventually=lo > 0,
    )
    if facts["lt_eventually"] or facts["gt_eventually"] or facts["eq_eventually"]:
        wit = []
    return EventualComparison(**facts, witnesses=tuple(wit), route="periodic", evidence=ev,
                              difference_range=(lo, hi))


def _family_samples(a: Sequence, b: Sequence, sch: BlockSchedule, parity: int, rel: str,
                    limit: int = 4, max_bits: int = 1 << 9) -> tuple:
    out = []
    for k, n in enumerate(sch.family_points(parity)):
        if n.bit_length() > max_bits or k > 24 or len(out) >= limit:
            break
        try:
            x, y = a.eval(n), b.eval(n)
        except ResourceError:
            break
        if (x > y) if rel == ">" else (x < y):
            out.append((n, x, y))
    return tuple(out)


def _compare_brackets(a: Sequence, b: Sequence, la: Linear, lb: Linear) -> dict:
    ga, gb = linear_bracket(la), linear_bracket(lb)
    if ga is None or gb is None:
        return {}
    if ga.above(gb):
        return dict(**_STRICT_GREATER, route="bracket", evidence=f"{ga} versus {gb}")
    if gb.above(ga):
        return dict(**_STRICT_LESS, route="bracket", evidence=f"{ga} versus {gb}")
    facts: dict = {}
    wit = []
    fams = {**block_families(la), **block_families(lb)}
    for key, sch in sorted(fams.items(), key=lambda kv: (repr(kv[0][0]), -kv[0][1])):
        fa, fb = linear_bracket(la, key), linear_bracket(lb, key)
        if fa is None or fb is None:
            continue
        for rel, (x, y) in ((">", (fa, fb)), ("<", (fb, fa))):
            if x.above(y):
                facts["leq_eventually" if rel == ">" else "geq_eventually"] = False
                facts["eq_eventually"] = False
                facts["lt_eventually" if rel == ">" else "gt_eventually"] = False
                wit.append(Witness(rel, sch.family_description(key[1]),
                                   _family_samples(a, b, sch, key[1], rel)))
    if facts:
        facts["witnesses"] = tuple(wit)
        facts["route"] = "bracket"
    return facts


def _compare_density(da: GrowthDescriptor, db: GrowthDescriptor) -> dict:
    if not (da.known and db.known):
        return {}
    if da.limsup_density < db.liminf_density:
        return dict(**_STRICT_LESS, route="density",
                    evidence=f"upper density {da.limsup_density} < lower density {db.liminf_density}")
    if da.liminf_density > db.limsup_density:
        return dict(**_STRICT_GREATER, route="density",
                    evidence=f"lower density {da.liminf_density} > upper density {db.limsup_density}")
    facts: dict = {}
    wit = []
    # limsup (a - b)/n >= max(ls_a - ls_b, li_a - li_b), and symmetrically
    up = max(da.limsup_density - db.limsup_density, da.liminf_density - db.liminf_density)
    down = max(db.limsup_density - da.limsup_density, db.liminf_density - da.liminf_density)
    if up > 0:
        facts.update(leq_eventually=False, eq_eventually=False, lt_eventually=False)
        wit.append(Witness(">", f"limsup (a_n - b_n)/n >= {up}"))
    if down > 0:
        facts.update(geq_eventually=False, eq_eventually=False, gt_eventually=False)
        wit.append(Witness("<", f"limsup (b_n - a_n)/n >= {down}"))
    if facts:
        facts["witnesses"] = tuple(wit)
        facts["route"] = "density"
    return facts


def _merge(base: dict, extra: dict) -> dict:
    out = dict(base)
    for k, v in extra.items():
        if k == "witnesses":
            out[k] = tuple(out.get(k, ())) + tuple(v)
        elif k in ("route", "evidence"):
            out[k] = "+".join(x for x in (out.get(k, ""), v) if x)
        elif out.get(k) is None:
            out[k] = v
    return out


def scan_evidence(a: Sequence, b: Sequence, horizon: int) -> str:
    H = min(horizon, max_enum())
    try:
        d = a.prefix(H)[1:] - b.prefix(H)[1:]
    except ResourceError as exc:  # pragma: no cover - guarded by H <= cap
        return f"scan unavailable: {exc}"
    pos, neg, zero = int((d > 0).sum()), int((d < 0).sum()), int((d == 0).sum())
    sign = np.sign(d)
    changes = np.flatnonzero(sign[1:] != sign[:-1])
    last = int(changes[-1]) + 2 if len(changes) else 1
    return (f"scan n <= {H}: a > b at {pos}, a < b at {neg}, equal at {zero}; "
            f"sign constant from n = {last} (tentative, not a verdict)")


def compare_eventually(a: Sequence, b: Sequence, horizon: int = DEFAULT_HORIZON) -> EventualComparison:
    """Decide how a_n and b_n compare for all sufficiently large n, where certifiable."""
    if horizon < 1:
        raise PreconditionError("horizon must be >= 1")
    ka, kb = a.identity_key(), b.identity_key()
    if ka is not None and ka == kb:
        return EventualComparison(True, True, True, False, False, route="identical")
    la, lb = a.linear(), b.linear()
    if la is not None and lb is not None:
        res = _compare_linear(a, b, la, lb)
        if res is not None:
            return res
    facts: dict = {}
    if la is not None and lb is not None:
        facts = _merge(facts, _compare_brackets(a, b, la, lb))
    if EventualComparison(**facts).verdict is Verdict.UNKNOWN:
        facts = _merge(facts, _compare_density(a.growth, b.growth))
    res = EventualComparison(**facts)
    if res.verdict is Verdict.UNKNOWN:
        facts = _merge(facts, {"evidence": scan_evidence(a, b, horizon)})
        res = EventualComparison(**facts)
    return res


def sequence_for(x: SetExpr | Sequence) -> Sequence:
    return x if isinstance(x, Sequence) else partial_sums(x)


def samples(seq: Sequence, ns: Iterable[int]) -> Iterator[tuple[int, int]]:
    for n in ns:
        yield n, seq.eval(n)
