from fractions import Fraction
from math import log

import pytest
from hypothesis import assume, given, settings, strategies as st

from nsize.density import (
    Bounds, Exact, UnknownDensity, density_csv, density_profile, density_text,
    generalized_hull, make_density, natural_density, profile_csv,
)
from nsize.errors import PreconditionError
from nsize.primes import iroot
from nsize.seqcore import eval_f, partial_sums
from nsize.setmodel import (
    BITODD, EVENS, LEADING1, SUPEREXP, ArithProg, BlockSet, Complement, Difference,
    GeneralBlocks, atoms, Intersection, LeadingDecimal, Powers, Primes, Union, cofinite, finite,
)
from tests.oracles import superexp_block_sum
from tests.strategies import exprs, periodic_exprs

F = Fraction


@pytest.mark.parametrize("expr,value", [
    (EVENS, Exact(F(1, 2))), (ArithProg(5, 3), Exact(F(1, 5))), (finite(1, 2, 3), Exact(F(0))),
    (cofinite(7), Exact(F(1))), (Powers(2), Exact(F(0))), (Primes(), Exact(F(0))),
    (SUPEREXP, Bounds(F(0), F(1))), (BITODD, Bounds(F(1, 3), F(2, 3))),
    (LEADING1, Bounds(F(1, 9), F(5, 9))),
    (BlockSet(LeadingDecimal(2)), Bounds(F(1, 18), F(10, 27))),
    (BlockSet(GeneralBlocks("geometric", 3, "odd")), Bounds(F(1, 4), F(3, 4))),
    (Union(ArithProg(3, 0), ArithProg(5, 0)), Exact(F(7, 15))),
    (Intersection(SUPEREXP, EVENS), UnknownDensity()),
])
def test_density_examples(expr, value):
    assert natural_density(expr) == value
    assert generalized_hull(expr) == value


def test_value_invariants():
    with pytest.raises(ValueError):
        Bounds(F(1, 2), F(1, 2))
    with pytest.raises(ValueError):
        Exact(F(3, 2))
    assert make_density(F(1, 3), F(1, 3)) == Exact(F(1, 3))
    assert make_density(None, F(1)) == UnknownDensity()


def test_text_and_csv():
    assert density_text(Exact(F(1, 5))) == "exact 1/5"
    assert density_text(Bounds(F(0), F(1))) == "bounds 0 1"
    assert density_csv(Bounds(F(1, 9), F(5, 9))) == "bounds,1,9,5,9"
    assert density_csv(UnknownDensity()) == "unknown"


@settings(max_examples=150, deadline=None)
@given(exprs(4))
def test_complement_law(e):
    d, c = natural_density(e), natural_density(Complement(e))
    if isinstance(d, UnknownDensity):
        assert isinstance(c, UnknownDensity)
    else:
        assert c == d.complement()


@settings(max_examples=100, deadline=None)
@given(periodic_exprs(3), periodic_exprs(3))
def test_additivity_on_disjoint_parts(a, b):
    b = Difference(b, a)
    u, da, db = natural_density(Union(a, b)), natural_density(a), natural_density(b)
    assert u.value == da.value + db.value


@settings(max_examples=60, deadline=None)
@given(exprs(3))
def test_density_zero_parts_are_absorbed(e):
    for z in (Primes(), Powers(2), finite(1, 9)):
        d = natural_density(e)
        if isinstance(d, UnknownDensity):
            continue
        assert natural_density(Union(e, z)) == d
        assert natural_density(Difference(e, z)) == d


@settings(max_examples=60, deadline=None)
@given(exprs(3))
def test_reported_limits_bracket_late_ratios(e):
    """Certified bounds contain f_n/n at a large n, up to slowly vanishing terms."""
    assume(not any(isinstance(a, Primes) for a in atoms(e)))
    d = natural_density(e)
    if isinstance(d, UnknownDensity):
        return
    lo, hi = (d.value, d.value) if isinstance(d, Exact) else (d.lower, d.upper)
    n = 10**6
    q = F(eval_f(partial_sums(e), n), n)
    assert lo - F(1, 100) <= q <= hi + F(1, 100)


@pytest.mark.parametrize("k", range(3, 10))
def test_superexp_sandwich_strict_for_k_at_least_3(k):
    n = 2 ** (2**k)
    f = eval_f(partial_sums(SUPEREXP), n)
    assert f == superexp_block_sum(k)
    r2, r4 = iroot(n, 2), iroot(n, 4)
    if k % 2:
        assert n - r2 < f < n - r2 + r4
    else:
        assert r2 - r4 < f < r2


@pytest.mark.parametrize("k,f", [(1, 2), (2, 2)])
def test_superexp_sandwich_touches_lower_end_for_small_k(k, f):
    n = 2 ** (2**k)
    r2, r4 = iroot(n, 2), iroot(n, 4)
    assert eval_f(partial_sums(SUPEREXP), n) == f
    assert f == (n - r2 if k % 2 else r2 - r4)


@pytest.mark.parametrize("n", [10**5, 10**6])
def test_prime_density_decays_like_inverse_log(n):
    q = eval_f(partial_sums(Primes()), n) / n
    assert 0.9 <= q * log(n) <= 1.3


def test_profile_rows_and_csv():
    rows = density_profile(SUPEREXP, [4, 16, 256])
    assert [(r.n, r.f_n) for r in rows] == [(4, 2), (16, 2), (256, 242)]
    assert profile_csv(rows).splitlines()[0] == "n,f_n,density_num,density_den,density_decimal"
    assert profile_csv(rows).splitlines()[3] == "256,242,121,128,0.9453125"
    with pytest.raises(PreconditionError):
        density_profile(SUPEREXP, [0])
    with pytest.raises(PreconditionError):
        density_profile(SUPEREXP, [])


@given(st.integers(1, 40))
def test_bitodd_block_end_ratios(m):
    n = 2**m - 1
    q = F(eval_f(partial_sums(BITODD), n), n)
    assert q == (F(2 * n + 1, 3 * n) if m % 2 else F(n, 3 * n)) or abs(q - (F(2, 3) if m % 2 else F(1, 3))) < F(1, 2**(m - 2))
