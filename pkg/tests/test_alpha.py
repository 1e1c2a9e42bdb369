from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nsize.alpha import ALPHA, AlphaExpr, Bracket, Ordering, parse_alpha, render, root

exponents = st.sampled_from([Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 4),
                             Fraction(3, 4), Fraction(1, 3), Fraction(2)])
coefs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
alpha_exprs = st.lists(st.tuples(exponents, coefs), max_size=4).map(AlphaExpr.from_map)


def test_rendering_grammar():
    assert render(ALPHA - root(2) + root(4)) == "a − sqrt(a) + a^(1/4)"
    assert render(ALPHA / 2 - 1) == "1/2 a − 1"
    assert render(AlphaExpr.power(Fraction(2, 3), Fraction(-3, 2))) == "−3/2 a^(2/3)"
    assert render(AlphaExpr()) == "0"
    assert render(AlphaExpr.power(2)) == "a^2"


@given(alpha_exprs)
def test_render_parse_roundtrip(x):
    assert parse_alpha(render(x)) == x


@given(alpha_exprs, alpha_exprs, alpha_exprs)
def test_order_total_and_transitive(x, y, z):
    assert sum([x < y, x == y, y < x]) == 1
    if x <= y and y <= z:
        assert x <= z


@given(alpha_exprs, alpha_exprs)
def test_order_is_translation_invariant(x, y):
    assert (x < y) == (x + 7 < y + 7) == (x - ALPHA < y - ALPHA)


def test_leading_term_order():
    assert ALPHA / 2 - 1 < ALPHA / 2
    assert ALPHA / 3 < ALPHA / 2
    assert ALPHA - root(2) > root(2)
    assert Ordering.of((ALPHA - 3).compare(ALPHA)) is Ordering.LESS


@pytest.mark.parametrize("k", [1, 10, 10**6, 10**30])
def test_non_archimedean(k):
    assert AlphaExpr.const(k) < ALPHA
    assert AlphaExpr.const(k) < root(4)


def test_sign_at_exact_and_irrational():
    # a^(3/4) at a = 4 is irrational; 4 - 2 = 2 > 4^(3/4) - ... check both signs
    assert (ALPHA - root(2) - 2).sign_at(4) == 0
    assert (AlphaExpr.power(Fraction(3, 4)) - 2).sign_at(4) == 1  # 2.828...
    assert (AlphaExpr.power(Fraction(3, 4)) - 3).sign_at(4) == -1


def test_bracket_helpers():
    b = Bracket(ALPHA - root(2), ALPHA - root(2) + root(4), True, True)
    c = b.complement()
    assert c.lower == root(2) - root(4) and c.upper == root(2)
    assert c.strict_lower and c.strict_upper
    assert b.above(Bracket.exact(ALPHA / 2))
    assert not Bracket.exact(ALPHA / 2).above(b)
    # touching bounds are separated only by strictness
    assert Bracket(ALPHA, ALPHA, True).above(Bracket.exact(ALPHA))
    assert not Bracket.exact(ALPHA).above(Bracket.exact(ALPHA))
