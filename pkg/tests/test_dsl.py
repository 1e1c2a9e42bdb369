import pytest
from hypothesis import given, settings

from nsize.dsl import ParseError, SourceSpan, parse, render, to_text
from nsize.setmodel import (
    BITODD, LEADING1, SUPEREXP, ArithProg, CoFiniteSet, Complement, Difference, Empty, FiniteSet,
    Full, Intersection, Powers, Primes, Union, finite, normalize,
)
from tests.strategies import exprs


@pytest.mark.parametrize("text,tree", [
    ("mod 2 0", ArithProg(2, 0)),
    ("~(powers 2) & cofinite{1}", Intersection(Complement(Powers(2)), CoFiniteSet((1,)))),
    ("empty | all", Union(Empty(), Full())),
    ("superexp \\ bitodd | leading1", Union(Difference(SUPEREXP, BITODD), LEADING1)),
    ("primes | mod 3 1 & finite{ 3, 1 ,3}", Union(Primes(), Intersection(ArithProg(3, 1), FiniteSet((1, 3))))),
    ("~~primes", Complement(Complement(Primes()))),
    ("  ( mod 1 0 )\n", ArithProg(1, 0)),
])
def test_parse_examples(text, tree):
    assert parse(text) == tree


@pytest.mark.parametrize("text,span,fragment", [
    ("mod 2", (5, 5), "second integer"),
    ("mod 2 2", (4, 7), "0 <= i < a"),
    ("powers 1", (7, 8), ">= 2"),
    ("finite{0,2}", (6, 11), ">= 1"),
    ("primes primes", (7, 13), "trailing"),
    ("(primes", (7, 7), "')'"),
    ("primes # 2", (7, 8), "unexpected character"),
    ("pr1mes", (0, 6), "set expression"),
    ("", (0, 0), "set expression"),
    ("é", (0, 2), "unexpected character 'é'"),
])
def test_parse_errors(text, span, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    err = info.value
    assert (err.span.start, err.span.end) == span
    assert fragment in err.message
    assert err.expected
    assert 0 <= err.span.start <= err.span.end <= len(text.encode())
    assert str(err).startswith(f"parse error at bytes {span[0]}-{span[1]}: ")


def test_span_is_bytes_not_characters():
    with pytest.raises(ParseError) as info:
        parse("𝕊")
    assert info.value.span == SourceSpan(0, 4)


@settings(max_examples=500, deadline=None)
@given(exprs(5))
def test_to_text_round_trip(e):
    assert parse(to_text(e)) == e


@settings(max_examples=500, deadline=None)
@given(exprs(5))
def test_render_round_trip(e):
    assert parse(render(e)) == normalize(e)


def test_render_examples():
    assert render(Union(finite(2), finite(3, 5))) == "finite{2,3,5}"
    assert render(Intersection(SUPEREXP, Full())) == "superexp"
    assert render(Complement(Complement(SUPEREXP))) == "superexp"
    assert to_text(Difference(Primes(), Union(Empty(), Full()))) == "primes \\ (empty | all)"
