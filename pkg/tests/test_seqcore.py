from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nsize.seqcore import (
    BlockSum, FloorLinear, PrimePi, RootFloor, SumSequence, Verdict,
    compare_eventually, descriptor, eval_f, partial_sums,
)
from nsize.setmodel import (
    BITODD, EVENS, LEADING1, ODDS, SUPEREXP,
    ArithProg, Complement, Difference, Full, Intersection, Powers, Primes, Union,
    cofinite, finite, mask,
)
from tests.oracles import superexp_block_sum
from tests.strategies import exprs, periodic_exprs

f = partial_sums


# --- evaluation -----------------------------------------------------------------

@pytest.mark.parametrize("expr,n,value", [
    (EVENS, 7, 3), (SUPEREXP, 4, 2), (SUPEREXP, 256, 242), (Primes(), 10, 4),
    (Full(), 17, 17), (cofinite(1), 10, 9), (SUPEREXP, 2**32, 4294902002),
])
def test_eval_examples(expr, n, value):
    assert eval_f(f(expr), n) == value


def test_closed_forms_attached():
    assert f(ArithProg(5, 2)).closed_form == FloorLinear(5, 2)
    assert f(Powers(3)).closed_form == RootFloor(3)
    assert isinstance(f(Primes()).closed_form, PrimePi)
    assert isinstance(f(SUPEREXP).closed_form, BlockSum)
    assert f(Intersection(SUPEREXP, EVENS)).closed_form is None


@pytest.mark.parametrize("k", range(1, 9))
def test_superexp_closed_form_at_boundaries(k):
    assert eval_f(f(SUPEREXP), 2 ** (2**k)) == superexp_block_sum(k)


@settings(max_examples=80, deadline=None)
@given(exprs(4))
def test_closed_form_matches_enumeration(e):
    seq = f(e)
    prefix = np.cumsum(mask(e, 3000))
    for n in (1, 2, 3, 17, 64, 257, 1000, 2999, 3000):
        assert seq.eval(n) == prefix[n]


@settings(max_examples=60, deadline=None)
@given(exprs(4), st.integers(1, 10**4))
def test_complement_counts_sum_to_n(e, n):
    assert eval_f(f(e), n) + eval_f(f(Complement(e)), n) == n


@settings(max_examples=40, deadline=None)
@given(exprs(3))
def test_unit_steps_and_cesaro_identity(e):
    p = f(e).prefix(5000)
    steps = np.diff(p)
    assert set(np.unique(steps)) <= {0, 1}
    chi = mask(e, 5000).astype(int)
    for n in (1, 10, 999, 5000):
        assert Fraction(int(chi[1:n + 1].sum()), n) == Fraction(int(p[n]), n)


# --- descriptors --------------------------------------------------------------

@pytest.mark.parametrize("expr,li,ls", [
    (SUPEREXP, 0, 1), (BITODD, Fraction(1, 3), Fraction(2, 3)), (LEADING1, Fraction(1, 9), Fraction(5, 9)),
    (Complement(SUPEREXP), 0, 1), (Complement(LEADING1), Fraction(4, 9), Fraction(8, 9)),
    (ArithProg(7, 3), Fraction(1, 7), Fraction(1, 7)), (Primes(), 0, 0), (Complement(Powers(2)), 1, 1),
    (Union(SUPEREXP, Primes()), 0, 1), (Intersection(BITODD, Complement(Primes())), Fraction(1, 3), Fraction(2, 3)),
    (Union(finite(3), BITODD), Fraction(1, 3), Fraction(2, 3)),
])
def test_descriptor_examples(expr, li, ls):
    d = descriptor(expr)
    assert (d.liminf_density, d.limsup_density) == (li, ls)


def test_eventually_periodic_descriptor():
    d = descriptor(Difference(Union(ArithProg(4, 0), ArithProg(4, 1)), finite(1, 5, 100)))
    assert d.eventually_periodic.period == 4 and d.eventually_periodic.gain == 2
    assert d.exact == Fraction(1, 2)


def test_unknown_descriptor():
    d = descriptor(Intersection(SUPEREXP, EVENS))
    assert d.liminf_density is None and d.limsup_density is None


# --- eventual comparison ---------------------------------------------------------

def verdict(a, b, **kw):
    return compare_eventually(f(a), f(b), **kw).verdict


def test_evens_odds_weakless():
    r = compare_eventually(f(EVENS), f(ODDS))
    assert r.verdict is Verdict.WEAK_LESS
    assert (r.leq_eventually, r.geq_eventually, r.eq_eventually) == (True, False, False)
    assert r.difference_range == (-1, 0)


def test_superexp_evens_incomparable_with_witnesses():
    r = compare_eventually(f(SUPEREXP), f(EVENS))
    assert r.verdict is Verdict.INCOMPARABLE
    assert not r.leq_eventually and not r.geq_eventually
    fams = {w.relation: w for w in r.witnesses}
    assert fams[">"].family == "n = 2^(2^k), k odd"
    assert fams["<"].family == "n = 2^(2^k), k even"
    for n, a, b in fams[">"].samples:
        assert a > b and a == eval_f(f(SUPEREXP), n) and b == n // 2
    for n, a, b in fams["<"].samples:
        assert a < b


@pytest.mark.parametrize("a,b,v", [
    (ArithProg(4, 0), EVENS, Verdict.STRICT_LESS),
    (EVENS, Difference(EVENS, finite(2)), Verdict.STRICT_GREATER),
    (SUPEREXP, SUPEREXP, Verdict.EQUAL),
    (Intersection(SUPEREXP, EVENS), Intersection(SUPEREXP, EVENS), Verdict.EQUAL),
    (Primes(), EVENS, Verdict.STRICT_LESS),
    (SUPEREXP, Full(), Verdict.STRICT_LESS),
    (BITODD, EVENS, Verdict.INCOMPARABLE),
    (LEADING1, EVENS, Verdict.INCOMPARABLE),
    (SUPEREXP, Powers(2), Verdict.INCOMPARABLE),
    (Union(SUPEREXP, finite(2)), SUPEREXP, Verdict.STRICT_GREATER),
    (Union(SUPEREXP, finite(3)), SUPEREXP, Verdict.EQUAL),
    (Union(ArithProg(4, 0), ArithProg(4, 2)), EVENS, Verdict.EQUAL),
    (Powers(2), Powers(3), Verdict.STRICT_GREATER),
    (Complement(Powers(2)), Full(), Verdict.STRICT_LESS),
])
def test_comparison_table(a, b, v):
    assert verdict(a, b) is v
    assert verdict(b, a) is v.swapped()


def test_unknown_carries_scan_evidence():
    r = compare_eventually(f(Primes()), f(Powers(2)), horizon=10**4)
    assert r.verdict is Verdict.UNKNOWN
    assert "scan n <= 10000" in r.evidence and "tentative" in r.evidence


def test_sum_of_complements_is_identity():
    s = SumSequence((f(SUPEREXP), f(Complement(SUPEREXP))))
    assert compare_eventually(s, f(Full())).verdict is Verdict.EQUAL
    s2 = SumSequence((f(EVENS), f(ODDS)))
    assert compare_eventually(s2, f(Full())).verdict is Verdict.EQUAL


@settings(max_examples=60, deadline=None)
@given(periodic_exprs(3), periodic_exprs(3))
def test_periodic_pairs_are_decided_and_consistent_with_scan(a, b):
    r = compare_eventually(f(a), f(b), horizon=10**4)
    assert r.verdict is not Verdict.UNKNOWN
    assert r.verdict is compare_eventually(f(b), f(a)).verdict.swapped()
    d = f(a).prefix(10**4)[1:] - f(b).prefix(10**4)[1:]
    tail = d[-2000:]
    if r.verdict is Verdict.EQUAL:
        assert (tail == 0).all()
    if r.verdict in (Verdict.WEAK_LESS, Verdict.STRICT_LESS):
        assert (tail <= 0).all()
    if r.verdict is Verdict.STRICT_LESS:
        assert (tail < 0).all()
    if r.verdict in (Verdict.WEAK_GREATER, Verdict.STRICT_GREATER):
        assert (tail >= 0).all()
    if r.verdict is Verdict.INCOMPARABLE:
        assert (tail > 0).any() and (tail < 0).any()


@settings(max_examples=30, deadline=None)
@given(periodic_exprs(2), periodic_exprs(2), periodic_exprs(2))
def test_order_properties_on_triples(a, b, c):
    ab, bc, ac = verdict(a, b), verdict(b, c), verdict(a, c)
    assert verdict(a, a) is Verdict.EQUAL
    if ab is Verdict.EQUAL and bc is Verdict.EQUAL:
        assert ac is Verdict.EQUAL
    if ab is Verdict.STRICT_LESS and bc is Verdict.STRICT_LESS:
        assert ac is Verdict.STRICT_LESS


@settings(max_examples=60, deadline=None)
@given(exprs(3), exprs(3))
def test_verdicts_never_contradict_the_tail(a, b):
    """Whatever is certified must be consistent with a long finite scan's tail."""
    r = compare_eventually(f(a), f(b), horizon=4096)
    if r.verdict in (Verdict.UNKNOWN, Verdict.INCOMPARABLE):
        return
    d = f(a).prefix(20000)[1:] - f(b).prefix(20000)[1:]
    tail = d[-100:]
    if r.verdict is Verdict.STRICT_LESS and r.route == "periodic":
        assert (tail < 0).all()
    if r.verdict is Verdict.EQUAL:
        assert (tail == 0).all()
