"""Text syntax for set expressions.

Grammar (whitespace insignificant)::

    expr   := term { ("|" | "\\") term }
    term   := factor { "&" factor }
    factor := "~" factor | "(" expr ")" | atom
    atom   := "empty" | "all" | "finite" "{" ints "}" | "cofinite" "{" ints "}"
            | "mod" int int | "powers" int | "primes" | "superexp"
            | "bitodd" | "leading1"

``~`` binds tightest, then ``&``; ``|`` and ``\\`` share the lowest level.
All binary operators associate to the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NsizeError
from .setmodel import (
    ArithProg,
    BitLengthParity,
    BlockSet,
    CoFiniteSet,
    Complement,
    Difference,
    Empty,
    FiniteSet,
    Full,
    Intersection,
    LeadingDecimal,
    Powers,
    Primes,
    SetExpr,
    SuperExp,
    Union,
    normalize,
)


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets ``[start, end)`` into the UTF-8 input."""

    start: int
    end: int


@dataclass
class ParseError(NsizeError):
    span: SourceSpan
    message: str
    expected: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        super().__init__(self.message)

    def __str__(self) -> str:
        return f"parse error at bytes {self.span.start}-{self.span.end}: {self.message}"


_TOKEN = re.compile(rb"\s*(?:(?P<int>\d+)|(?P<word>[a-z][a-z0-9]*)|(?P<sym>[|\\&~(){},]))")
_KEYWORDS = {"empty", "all", "finite", "cofinite", "mod", "powers", "primes",
             "superexp", "bitodd", "leading1"}
_ATOM_START = sorted(_KEYWORDS) + ["~", "("]


@dataclass(frozen=True)
class _Tok:
    kind: str  # int | word | sym | eof
    text: str
    start: int
    end: int


def _tokenize(data: bytes) -> list[_Tok]:
    out, pos = [], 0
    while True:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= len(data):
            out.append(_Tok("eof", "end of input", pos, pos))
            return out
        m = _TOKEN.match(data, pos)
        if not m or m.end() == pos:
            # span the whole UTF-8 sequence of the offending character
            end = pos + 1
            while end < len(data) and data[end] & 0xC0 == 0x80:
                end += 1
            bad = data[pos:end].decode("utf-8", "replace")
            raise ParseError(SourceSpan(pos, end), f"unexpected character {bad!r}",
                             ["integer", "keyword", "one of | \\ & ~ ( ) { } ,"])
        kind = m.lastgroup
        start = m.start(kind)
        out.append(_Tok(kind, m.group(kind).decode(), start, m.end()))
        pos = m.end()


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = _tokenize(text.encode("utf-8"))
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, message: str, expected: list[str]) -> ParseError:
        t = self.cur
        return ParseError(SourceSpan(t.start, max(t.end, t.start)), message, expected)

    def take(self) -> _Tok:
        t = self.cur
        self.i += 1
        return t

    def expect_sym(self, s: str) -> _Tok:
        if self.cur.kind == "sym" and self.cur.text == s:
            return self.take()
        raise self.fail(f"expected {s!r}, found {self.cur.text!r}", [repr(s)])

    def integer(self, what: str) -> int:
        if self.cur.kind != "int":
            raise self.fail(f"expected {what}, found {self.cur.text!r}", [what])
        return int(self.take().text)

    def expr(self) -> SetExpr:
        node = self.term()
        while self.cur.kind == "sym" and self.cur.text in ("|", "\\"):
            op = self.take().text
            rhs = self.term()
            node = Union(node, rhs) if op == "|" else Difference(node, rhs)
        return node

    def term(self) -> SetExpr:
        node = self.factor()
        while self.cur.kind == "sym" and self.cur.text == "&":
            self.take()
            node = Intersection(node, self.factor())
        return node

    def factor(self) -> SetExpr:
        t = self.cur
        if t.kind == "sym" and t.text == "~":
            self.take()
            return Complement(self.factor())
        if t.kind == "sym" and t.text == "(":
            self.take()
            node = self.expr()
            self.expect_sym(")")
            return node
        return self.atom()

    def intlist(self) -> tuple[int, ...]:
        start = self.expect_sym("{")
        vals = [self.integer("positive integer")]
        while self.cur.kind == "sym" and self.cur.text == ",":
            self.take()
            vals.append(self.integer("positive integer"))
        end = self.expect_sym("}")
        if min(vals) < 1:
            raise ParseError(SourceSpan(start.start, end.end), "elements must be >= 1",
                             ["positive integer"])
        return tuple(sorted(set(vals)))

    def atom(self) -> SetExpr:
        t = self.cur
        if t.kind != "word" or t.text not in _KEYWORDS:
            raise self.fail(f"expected a set expression, found {t.text!r}", _ATOM_START)
        self.take()
        w = t.text
        if w == "empty":
            return Empty()
        if w == "all":
            return Full()
        if w == "primes":
            return Primes()
        if w == "superexp":
            return BlockSet(SuperExp())
        if w == "bitodd":
            return BlockSet(BitLengthParity())
        if w == "leading1":
            return BlockSet(LeadingDecimal(1))
        if w in ("finite", "cofinite"):
            vals = self.intlist()
            return FiniteSet(vals) if w == "finite" else CoFiniteSet(vals)
        if w == "powers":
            start = self.cur.start
            p = self.integer("exponent")
            if p < 2:
                raise ParseError(SourceSpan(start, self.toks[self.i - 1].end),
                                 "powers needs an exponent >= 2", ["integer >= 2"])
            return Powers(p)
        # mod a i
        start = self.cur.start
        a = self.integer("modulus")
        i = self.integer("second integer (residue)")
        if a < 1 or i >= a:
            raise ParseError(SourceSpan(start, self.toks[self.i - 1].end),
                             "mod a i needs a >= 1 and 0 <= i < a", ["residue below modulus"])
        return ArithProg(a, i)


def parse(text: str) -> SetExpr:
    p = _Parser(text)
    node = p.expr()
    if p.cur.kind != "eof":
        raise p.fail(f"unexpected trailing input {p.cur.text!r}", ["end of input", "|", "\\", "&"])
    return node


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _ints(xs) -> str:
    return "{" + ",".join(str(x) for x in xs) + "}"


def _atom_text(e: SetExpr) -> str:
    if isinstance(e, Empty):
        return "empty"
    if isinstance(e, Full):
        return "all"
    if isinstance(e, Primes):
        return "primes"
    if isinstance(e, FiniteSet):
        if not e.elements:
            return "empty"
        return "finite" + _ints(e.elements)
    if isinstance(e, CoFiniteSet):
        if not e.excluded:
            return "all"
        return "cofinite" + _ints(e.excluded)
    if isinstance(e, ArithProg):
        return f"mod {e.a} {e.i}"
    if isinstance(e, Powers):
        return f"powers {e.p}"
    if isinstance(e, BlockSet):
        s = e.schedule
        if isinstance(s, SuperExp):
            return "superexp"
        if isinstance(s, BitLengthParity):
            return "bitodd"
        if isinstance(s, LeadingDecimal) and s.digit == 1:
            return "leading1"
    raise ValueError(f"no textual form for {e!r}")


def to_text(e: SetExpr) -> str:
    """Text that parses back to exactly this tree."""
    if isinstance(e, (Union, Difference)):
        op = " | " if isinstance(e, Union) else " \\ "
        right = to_text(e.right)
        if isinstance(e.right, (Union, Difference)):
            right = f"({right})"
        return to_text(e.left) + op + right
    if isinstance(e, Intersection):
        left, right = to_text(e.left), to_text(e.right)
        if isinstance(e.left, (Union, Difference)):
            left = f"({left})"
        if isinstance(e.right, (Union, Difference, Intersection)):
            right = f"({right})"
        return f"{left} & {right}"
    if isinstance(e, Complement):
        inner = to_text(e.inner)
        if isinstance(e.inner, (Union, Difference, Intersection)):
            inner = f"({inner})"
        return "~" + inner
    return _atom_text(e)


def render(e: SetExpr) -> str:
    """Canonical text: the normalized tree, printed."""
    return to_text(normalize(e))
