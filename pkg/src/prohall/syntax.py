"""Concrete syntax for group terms and ring exponents.

    word  := term {term}
    term  := atom ["^" ["-"] rprim]
    atom  := GEN | "1" | "(" word ")" | "[" word "," word "]"
    rexpr := rsum ;  rsum := rprod {("+"|"-") rprod} ;  rprod := rneg {"*" rneg}
    rneg  := "-" rneg | rprim
    rprim := INT | "t" | "C(" rexpr "," NAT ")" | "(" rexpr ")"

Generators are a letter optionally followed by digits, so "ab" reads as a b.
Products associate to the left; "^" binds tighter than juxtaposition.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .elements import Comm, Gen, Inv, Mul, One, Pow, Term
from .errors import ContextMismatch, ProHallError
from .rings import BinomialPoly, Padic, PolyRing, binomial_coeff


@dataclass(frozen=True)
class Span:
    start: int
    end: int

    @property
    def column(self) -> int:
        return self.start + 1


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    span: Span

    def render(self, source: str = "") -> str:
        head = f"{self.severity}: column {self.span.column}: {self.message}"
        if not source:
            return head
        marker = " " * self.span.start + "^" * max(1, self.span.end - self.span.start)
        return f"{head}\n  {source}\n  {marker}"


class ParseError(ProHallError, ValueError):
    def __init__(self, diagnostic: Diagnostic, source: str = ""):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic
        self.source = source

    @property
    def column(self) -> int:
        return self.diagnostic.span.column

    def __str__(self):
        return self.diagnostic.render(self.source)


def _error(msg: str, start: int, end: int | None = None, source: str = "") -> ParseError:
    return ParseError(Diagnostic("error", msg, Span(start, start + 1 if end is None else end)), source)


# -- AST ----------------------------------------------------------------------------
# spans are excluded from equality so that re-parsed trees compare equal

@dataclass(frozen=True)
class AGen:
    name: str
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AOne:
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AWord:
    items: tuple
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AComm:
    left: object
    right: object
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class APow:
    base: object
    exponent: object
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class RInt:
    value: int
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class RVar:
    name: str = "t"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class RBinom:
    arg: object
    n: int
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class RBin:
    op: str
    left: object
    right: object
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class RNeg:
    arg: object
    span: Span = field(default=None, compare=False, repr=False)


# -- lexer ----------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]\d*)|(?P<op>[\^\[\](),+\-*]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


def tokenize(source: str) -> list:
    out = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if not m or m.end() == pos:
            rest = source[pos:]
            if rest.strip() == "":
                break
            start = pos + len(rest) - len(rest.lstrip())
            raise _error(f"unexpected character {source[start]!r}", start, source=source)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind), m.end()))
        pos = m.end()
    out.append(Token("eof", "", len(source), len(source)))
    return out


class Parser:
    def __init__(self, source: str, var: str = "t"):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0
        self.var = var

    # helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.fail(f"expected {text!r}")
        return self.advance()

    def fail(self, msg: str) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return _error(f"{msg}, found {found}", t.start, max(t.end, t.start + 1), self.source)

    # group words
    def parse_word_top(self):
        w = self.word()
        if self.tok.kind != "eof":
            raise self.fail("unexpected input")
        return w

    def word(self):
        start = self.tok.start
        items = [self.term()]
        while self._starts_atom():
            items.append(self.term())
        if len(items) == 1:
            return items[0]
        return AWord(tuple(items), Span(start, self.tokens[self.i - 1].end))

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind == "name" or (t.kind == "int" and t.text == "1") or self.at("(") or self.at("[")

    def term(self):
        start = self.tok.start
        base = self.atom()
        if self.at("^"):
            self.advance()
            if self.at("-"):
                s = self.advance().start
                arg = self.rprim()
                exponent = RNeg(arg, Span(s, arg.span.end))
            else:
                exponent = self.rprim()
            return APow(base, exponent, Span(start, exponent.span.end))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "name":
            self.advance()
            return AGen(t.text, Span(t.start, t.end))
        if t.kind == "int":
            if t.text != "1":
                raise self.fail("only 1 may appear as a group element")
            self.advance()
            return AOne(Span(t.start, t.end))
        if self.at("("):
            self.advance()
            w = self.word()
            self.expect(")")
            return w
        if self.at("["):
            s = self.advance().start
            left = self.word()
            self.expect(",")
            right = self.word()
            e = self.expect("]").end
            return AComm(left, right, Span(s, e))
        raise self.fail("expected a generator, 1, '(' or '['")

    # ring expressions
    def parse_rexpr_top(self):
        r = self.rexpr()
        if self.tok.kind != "eof":
            raise self.fail("unexpected input")
        return r

    def rexpr(self):
        left = self.rprod()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.rprod()
            left = RBin(op, left, right, Span(left.span.start, right.span.end))
        return left

    def rprod(self):
        left = self.rneg()
        while self.at("*"):
            self.advance()
            right = self.rneg()
            left = RBin("*", left, right, Span(left.span.start, right.span.end))
        return left

    def rneg(self):
        if self.at("-"):
            s = self.advance().start
            arg = self.rneg()
            return RNeg(arg, Span(s, arg.span.end))
        return self.rprim()

    def rprim(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return RInt(int(t.text), Span(t.start, t.end))
        if t.kind == "name" and t.text == "C" and self.tokens[self.i + 1].kind == "op" and self.tokens[self.i + 1].text == "(":
            self.advance()
            self.advance()
            arg = self.rexpr()
            self.expect(",")
            nt = self.tok
            if nt.kind != "int":
                raise self.fail("expected a natural number")
            self.advance()
            e = self.expect(")").end
            return RBinom(arg, int(nt.text), Span(t.start, e))
        if t.kind == "name" and t.text == self.var:
            self.advance()
            return RVar(t.text, Span(t.start, t.end))
        if self.at("("):
            self.advance()
            r = self.rexpr()
            self.expect(")")
            return r
        raise self.fail("expected an exponent")


def parse(source: str, var: str = "t"):
    """Parse a group word into an AST (raises ParseError with a span)."""
    return Parser(source, var).parse_word_top()


def parse_rexpr(source: str, var: str = "t"):
    return Parser(source, var).parse_rexpr_top()


# -- printer ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2}


def print_rexpr(r) -> str:
    if isinstance(r, RInt):
        return str(r.value)
    if isinstance(r, RVar):
        return r.name
    if isinstance(r, RBinom):
        return f"C({print_rexpr(r.arg)},{r.n})"
    if isinstance(r, RNeg):
        inner = print_rexpr(r.arg)
        return "-" + (f"({inner})" if isinstance(r.arg, RBin) else inner)
    if isinstance(r, RBin):
        p = _PREC[r.op]
        left = print_rexpr(r.left)
        if isinstance(r.left, RBin) and _PREC[r.left.op] < p:
            left = f"({left})"
        right = print_rexpr(r.right)
        if isinstance(r.right, RBin) and _PREC[r.right.op] <= p:
            right = f"({right})"
        elif isinstance(r.right, RNeg) and r.op != "*":
            right = f"({right})"
        sep = "*" if r.op == "*" else f" {r.op} "
        return f"{left}{sep}{right}"
    raise TypeError(f"not a ring expression: {r!r}")


def _exponent_text(r) -> str:
    if isinstance(r, (RInt, RVar, RBinom)):
        return print_rexpr(r)
    if isinstance(r, RNeg) and isinstance(r.arg, (RInt, RVar, RBinom)):
        return print_rexpr(r)
    return f"({print_rexpr(r)})"


def print_ast(node) -> str:
    if isinstance(node, AGen):
        return node.name
    if isinstance(node, AOne):
        return "1"
    if isinstance(node, AComm):
        return f"[{print_ast(node.left)},{print_ast(node.right)}]"
    if isinstance(node, AWord):
        return " ".join(f"({print_ast(x)})" if isinstance(x, AWord) else print_ast(x) for x in node.items)
    if isinstance(node, APow):
        base = print_ast(node.base)
        if isinstance(node.base, (AWord, APow)):
            base = f"({base})"
        return f"{base}^{_exponent_text(node.exponent)}"
    raise TypeError(f"not a word: {node!r}")


# -- AST <-> terms ------------------------------------------------------------------------

def eval_rexpr(r, ring, source: str = ""):
    """Value of a ring expression in ``ring``."""
    if isinstance(r, RInt):
        return ring.coerce(r.value)
    if isinstance(r, RVar):
        if not isinstance(ring, PolyRing):
            raise _error(f"variable {r.name!r} needs a polynomial exponent ring (zt or zpt)",
                         r.span.start, r.span.end, source)
        return ring.variable()
    if isinstance(r, RBinom):
        return binomial_coeff(eval_rexpr(r.arg, ring, source), r.n)
    if isinstance(r, RNeg):
        return -eval_rexpr(r.arg, ring, source)
    if isinstance(r, RBin):
        a = eval_rexpr(r.left, ring, source)
        b = eval_rexpr(r.right, ring, source)
        return a + b if r.op == "+" else a - b if r.op == "-" else a * b
    raise TypeError(f"not a ring expression: {r!r}")


def to_term(node, ring, alphabet=None, source: str = "") -> Term:
    if isinstance(node, AGen):
        if alphabet is not None and node.name not in alphabet:
            raise ParseError(Diagnostic("error", f"unbound generator {node.name!r}", node.span), source)
        return Gen(node.name)
    if isinstance(node, AOne):
        return One()
    if isinstance(node, AComm):
        return Comm(to_term(node.left, ring, alphabet, source), to_term(node.right, ring, alphabet, source))
    if isinstance(node, AWord):
        out = to_term(node.items[0], ring, alphabet, source)
        for x in node.items[1:]:
            out = Mul(out, to_term(x, ring, alphabet, source))
        return out
    if isinstance(node, APow):
        return Pow(to_term(node.base, ring, alphabet, source), eval_rexpr(node.exponent, ring, source))
    raise TypeError(f"not a word: {node!r}")


def parse_term(source: str, ring, alphabet=None) -> Term:
    var = ring.var if isinstance(ring, PolyRing) else "t"
    return to_term(parse(source, var), ring, alphabet, source)


def _symmetric(n: int, m: int) -> int:
    return n - m if 2 * n > m else n


def exponent_ast(e):
    """A ring expression denoting the ring element ``e``."""
    if isinstance(e, bool):
        raise TypeError("bool is not a ring element")
    if isinstance(e, int):
        return RInt(e) if e >= 0 else RNeg(RInt(-e))
    if isinstance(e, Padic):
        if e.shift:
            raise ContextMismatch(f"{e} is not integral")
        return exponent_ast(_symmetric(e.num, e.p ** e.prec))
    if isinstance(e, BinomialPoly):
        if not e.is_integral():
            raise ContextMismatch(f"{e} is not integer-valued")
        nums = e.nums
        if e.prec is not None:
            nums = [_symmetric(n, e.ring.base.p ** e.prec) for n in nums]
        out = None
        for k, c in enumerate(nums):
            if c == 0:
                continue
            mono = RInt(abs(c)) if k == 0 else RBinom(RVar(e.ring.var), k) if k > 1 else RVar(e.ring.var)
            if k > 0 and abs(c) != 1:
                mono = RBin("*", RInt(abs(c)), mono)
            if out is None:
                out = mono if c > 0 else RNeg(mono)
            else:
                out = RBin("+" if c > 0 else "-", out, mono)
        return out if out is not None else RInt(0)
    raise TypeError(f"cannot print exponent {e!r}")


def term_ast(term: Term):
    if isinstance(term, Gen):
        return AGen(term.name)
    if isinstance(term, One):
        return AOne()
    if isinstance(term, Comm):
        return AComm(term_ast(term.left), term_ast(term.right))
    if isinstance(term, Mul):
        items = []
        for side in (term.left, term.right):
            a = term_ast(side)
            # left-nested products flatten; a right operand that is a product keeps its parentheses
            if isinstance(a, AWord) and side is term.left:
                items.extend(a.items)
            else:
                items.append(a)
        return AWord(tuple(items))
    if isinstance(term, Inv):
        return APow(term_ast(term.arg), RNeg(RInt(1)))
    if isinstance(term, Pow):
        return APow(term_ast(term.base), exponent_ast(term.exponent))
    raise TypeError(f"not a term: {term!r}")


def print_term(term: Term) -> str:
    return print_ast(term_ast(term))


__all__ = [
    "Span", "Diagnostic", "ParseError", "parse", "parse_rexpr", "print_ast", "print_rexpr", "eval_rexpr",
    "to_term", "parse_term", "print_term", "term_ast", "exponent_ast", "tokenize",
    "AGen", "AOne", "AWord", "AComm", "APow", "RInt", "RVar", "RBinom", "RBin", "RNeg",
]
