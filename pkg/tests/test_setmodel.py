from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nsize.alpha import root
from nsize.errors import PreconditionError, ResourceError
from nsize.setmodel import (
    EVENS, ODDS, SUPEREXP,
    ArithProg, BitLengthParity, BlockSet, CoFinite, CoFiniteSet, Complement, Empty,
    Finite, FiniteSet, Full, GeneralBlocks, InfiniteCoInfinite, Intersection, LeadingDecimal,
    Powers, Primes, SuperExp, Union, UnknownFiniteness, classify_finiteness, cofinite,
    enumerate_prefix, finite, mask, membership, normalize, structure,
)
from tests.oracles import (
    bitodd_member, leading_member, naive_power, naive_prime, superexp_member,
)
from tests.strategies import exprs


def brute_member(e, n):
    """Membership straight from the definitions, independent of the library."""
    if isinstance(e, Empty):
        return False
    if isinstance(e, Full):
        return True
    if isinstance(e, FiniteSet):
        return n in e.elements
    if isinstance(e, CoFiniteSet):
        return n not in e.excluded
    if isinstance(e, ArithProg):
        return n % e.a == e.i
    if isinstance(e, Powers):
        return naive_power(n, e.p)
    if isinstance(e, Primes):
        return naive_prime(n)
    if isinstance(e, BlockSet):
        s = e.schedule
        if isinstance(s, SuperExp):
            return superexp_member(n)
        if isinstance(s, BitLengthParity):
            return bitodd_member(n)
        return leading_member(n, s.digit)
    if isinstance(e, Complement):
        return not brute_member(e.inner, n)
    l, r = brute_member(e.left, n), brute_member(e.right, n)
    if isinstance(e, Union):
        return l or r
    if isinstance(e, Intersection):
        return l and r
    return l and not r


# --- membership -------------------------------------------------------------

@pytest.mark.parametrize("expr,n,bit", [
    (SUPEREXP, 3, 1), (SUPEREXP, 2, 0), (EVENS, 7, 0), (Complement(EVENS), 7, 1),
    (SUPEREXP, 4, 1), (SUPEREXP, 5, 0), (SUPEREXP, 16, 0), (SUPEREXP, 17, 1),
    (SUPEREXP, 256, 1), (SUPEREXP, 257, 0), (SUPEREXP, 1, 0),
])
def test_membership_examples(expr, n, bit):
    assert membership(expr, n) == bit


def test_membership_rejects_zero():
    with pytest.raises(PreconditionError):
        membership(EVENS, 0)


def test_superexp_threshold_rule_matches_exact_loglog():
    m = mask(SUPEREXP, 2**17)
    assert all(bool(m[n]) == superexp_member(n) for n in range(1, 2**17 + 1))


@pytest.mark.parametrize("k", range(1, 9))
def test_superexp_boundaries(k):
    n = 2 ** (2**k)
    assert membership(SUPEREXP, n) == k % 2
    assert membership(SUPEREXP, n + 1) == 1 - k % 2


@settings(max_examples=60, deadline=None)
@given(exprs(4), st.integers(1, 3000))
def test_complement_law(e, n):
    assert membership(Complement(e), n) == 1 - membership(e, n)


@settings(max_examples=60, deadline=None)
@given(exprs(4))
def test_enumerate_prefix_matches_brute_force(e):
    n = 400
    assert enumerate_prefix(e, n) == [m for m in range(1, n + 1) if brute_member(e, m)]


# --- enumeration ------------------------------------------------------------

def test_enumerate_examples():
    assert enumerate_prefix(SUPEREXP, 20) == [3, 4, 17, 18, 19, 20]
    assert enumerate_prefix(ArithProg(3, 1), 10) == [1, 4, 7, 10]
    assert enumerate_prefix(Union(finite(5, 9), Powers(2)), 10) == [1, 4, 5, 9]


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("NSIZE_MAX_ENUM", "1000")
    assert len(enumerate_prefix(EVENS, 1000)) == 500
    with pytest.raises(ResourceError):
        enumerate_prefix(EVENS, 1001)


def test_constructor_invariants():
    with pytest.raises(PreconditionError):
        FiniteSet((3, 2))
    with pytest.raises(PreconditionError):
        FiniteSet((0,))
    with pytest.raises(PreconditionError):
        ArithProg(3, 3)
    with pytest.raises(PreconditionError):
        Powers(1)
    with pytest.raises(PreconditionError):
        LeadingDecimal(0)


# --- schedules --------------------------------------------------------------

SCHEDULES = [SuperExp(), BitLengthParity(), LeadingDecimal(1), LeadingDecimal(7),
             GeneralBlocks("tower", 3, "odd"), GeneralBlocks("tower", 2, "even"),
             GeneralBlocks("geometric", 3, "odd"), GeneralBlocks("geometric", 10, "even")]


@pytest.mark.parametrize("sch", SCHEDULES, ids=repr)
def test_schedule_count_matches_membership(sch):
    n = 5000
    running = 0
    for m in range(1, n + 1):
        running += sch.contains(m)
        if m % 97 == 0 or m == n:
            assert sch.count(m) == running


@pytest.mark.parametrize("sch", SCHEDULES, ids=repr)
def test_boundaries_strictly_increase(sch):
    b = [sch.boundary(t) for t in range(8)]
    assert all(x < y for x, y in zip(b, b[1:]))


@pytest.mark.parametrize("sch", SCHEDULES, ids=repr)
def test_family_brackets_hold_at_block_ends(sch):
    from nsize.alpha import AlphaExpr

    for parity, br in sch.family_brackets().items():
        for t, n in zip(range(3, 30), sch.family_points(parity, start=3)):
            if n.bit_length() > 2000:
                break
            f = AlphaExpr.const(sch.count(n))
            lo, hi = (f - br.lower).sign_at(n), (br.upper - f).sign_at(n)
            assert lo > 0 if br.strict_lower else lo >= 0, (parity, n)
            assert hi > 0 if br.strict_upper else hi >= 0, (parity, n)


@pytest.mark.parametrize("sch", SCHEDULES, ids=repr)
def test_envelope_holds_everywhere(sch):
    from nsize.alpha import AlphaExpr

    env = sch.envelope()
    # the envelope is asymptotic: start past the first few blocks
    for n in list(range(300, 3000)) + [sch.boundary(t) + d for t in range(2, 6) for d in (-1, 0, 1)]:
        f = AlphaExpr.const(sch.count(n))
        assert (f - env.lower).sign_at(n) >= 0 and (env.upper - f).sign_at(n) >= 0, n


def test_density_limits_from_brackets():
    assert SuperExp().density_limits() == (0, 1)
    assert BitLengthParity().density_limits() == (Fraction(1, 3), Fraction(2, 3))
    assert LeadingDecimal(1).density_limits() == (Fraction(1, 9), Fraction(5, 9))
    assert LeadingDecimal(9).density_limits() == (Fraction(1, 81), Fraction(1, 9))
    assert GeneralBlocks("geometric", 3, "odd").density_limits() == (Fraction(1, 4), Fraction(3, 4))


def test_superexp_family_brackets_are_the_three_term_bounds():
    fam = SuperExp().family_brackets()
    assert str(fam[1]) == "a − sqrt(a) < f < a − sqrt(a) + a^(1/4)"
    assert fam[0].lower == root(2) - root(4) and fam[0].upper == root(2)


# --- classification -----------------------------------------------------------

@pytest.mark.parametrize("expr,cls", [
    (finite(1, 2), Finite(2)), (Intersection(EVENS, ODDS), Finite(0)), (cofinite(5), CoFinite(1)),
    (SUPEREXP, InfiniteCoInfinite()), (Union(EVENS, ODDS), CoFinite(0)), (Primes(), InfiniteCoInfinite()),
    (Complement(Powers(2)), InfiniteCoInfinite()), (Intersection(Primes(), Powers(2)), UnknownFiniteness()),
    (Intersection(SUPEREXP, EVENS), UnknownFiniteness()), (Union(SUPEREXP, Complement(SUPEREXP)), CoFinite(0)),
    (Intersection(finite(2, 3, 4), Primes()), Finite(2)), (Union(cofinite(1, 2), finite(2)), CoFinite(1)),
])
def test_classify_examples(expr, cls):
    assert classify_finiteness(expr) == cls


@settings(max_examples=80, deadline=None)
@given(exprs(4))
def test_classification_is_sound(e):
    c = classify_finiteness(e)
    n = 2000
    members = enumerate_prefix(e, n)
    if isinstance(c, Finite):
        assert len(members) == c.k and all(m <= 60 for m in members)
    elif isinstance(c, CoFinite):
        assert n - len(members) == c.k


@settings(max_examples=80, deadline=None)
@given(exprs(5))
def test_structure_membership_agrees(e):
    s = structure(e)
    if s is not None:
        m = mask(e, 1500)
        assert all(s.contains(k) == bool(m[k]) for k in range(1, 1501))
        assert s.count(1500) == int(m.sum())


# --- normalization ------------------------------------------------------------

def test_normalize_examples():
    assert normalize(Complement(Complement(Primes()))) == Primes()
    assert normalize(Union(finite(2), finite(3, 5))) == finite(2, 3, 5)
    assert normalize(Intersection(SUPEREXP, Full())) == SUPEREXP
    assert normalize(Intersection(finite(1, 2, 3, 4), EVENS)) == finite(2, 4)
    assert normalize(Complement(Union(EVENS, Empty()))) == Complement(EVENS)


@settings(max_examples=150, deadline=None)
@given(exprs(6))
def test_normalize_preserves_membership(e):
    n = 10**4
    assert (mask(normalize(e), n) == mask(e, n)).all()


@settings(max_examples=60, deadline=None)
@given(exprs(5))
def test_normalize_is_idempotent(e):
    once = normalize(e)
    assert normalize(once) == once
