"""Parser for weight polynomials such as ``"k1^2*k2 + 1/2*k1 - 3"``.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | var | '(' expr ')' | '-' factor
    rational := int ('/' uint)?
    var      := 'k' uint

Exponents must be literal integers and division only appears inside a
rational literal.  Whitespace is ignored between tokens.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .poly import MultiPoly

MAX_EXPONENT = 64


class ParseError(ValueError):
    def __init__(self, offset: int, message: str) -> None:
        self.offset = offset
        self.message = message
        super().__init__(f"at offset {offset}: {message}")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, Neg, BinOp, Pow]


class _Parser:
    def __init__(self, src: str, n: int) -> None:
        self.src = src
        self.n = n
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def error(self, message: str, offset: int | None = None) -> ParseError:
        return ParseError(self.pos if offset is None else offset, message)

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an unsigned integer")
        return int(self.src[start : self.pos])

    def parse(self) -> Expr:
        node = self.expr()
        self.skip_ws()
        if self.pos != len(self.src):
            raise self.error(f"unexpected character {self.src[self.pos]!r}")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.src[self.pos]
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek() == "*":
            self.pos += 1
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.base()
        if self.peek() == "^":
            self.pos += 1
            ch = self.peek()
            if not ch or ch not in "0123456789":
                raise self.error("exponent must be a nonnegative integer literal")
            start = self.pos
            e = self.uint()
            if e > MAX_EXPONENT:
                raise self.error(f"exponent {e} exceeds the limit {MAX_EXPONENT}", start)
            node = Pow(node, e)
        return node

    def base(self) -> Expr:
        ch = self.peek()
        if not ch:
            raise self.error("unexpected end of input")
        if ch == "(":
            self.pos += 1
            node = self.expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return node
        if ch == "-":
            self.pos += 1
            return Neg(self.factor())
        if ch in "0123456789":
            num = self.uint()
            if self.peek() == "/":
                self.pos += 1
                start = self.pos
                den = self.uint()
                if den == 0:
                    raise self.error("zero denominator", start)
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if ch == "k":
            start = self.pos
            self.pos += 1
            if self.pos >= len(self.src) or self.src[self.pos] not in "0123456789":
                raise self.error("expected a variable index after 'k'", start)
            idx = self.uint()
            if idx < 1:
                raise self.error("variable indices start at 1", start)
            if idx > self.n:
                raise self.error(f"variable k{idx} exceeds the arity {self.n}", start)
            return Var(idx)
        if ch.isalpha() or ch == "_":
            raise self.error(f"unknown variable starting with {ch!r}")
        raise self.error(f"unexpected character {ch!r}")


def parse(src: str | bytes, n: int) -> Expr:
    """Parse ``src`` over variables k1..kn; raises :class:`ParseError`."""
    if n < 1:
        raise ValueError("arity must be >= 1")
    if isinstance(src, bytes):
        try:
            src = src.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(exc.start, "input is not valid UTF-8") from None
    try:
        return _Parser(src, n).parse()
    except RecursionError:
        raise ParseError(0, "expression nested too deeply") from None


def lower(ast: Expr, n: int) -> MultiPoly:
    """Expand an AST into a canonical :class:`MultiPoly`."""
    if isinstance(ast, Num):
        return MultiPoly.constant(n, ast.value)
    if isinstance(ast, Var):
        return MultiPoly.var(n, ast.index)
    if isinstance(ast, Neg):
        return -lower(ast.operand, n)
    if isinstance(ast, Pow):
        return lower(ast.base, n) ** ast.exponent
    left, right = lower(ast.left, n), lower(ast.right, n)
    if ast.op == "+":
        return left + right
    if ast.op == "-":
        return left - right
    return left * right


def parse_poly(src: str | bytes, n: int) -> MultiPoly:
    return lower(parse(src, n), n)
