"""Entry expressions for matrix input.

Grammar (lowest to highest binding)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | 'i' | 'z' | '(' expr ')'

Written as a Pratt loop: each binary operator has a left binding power and
``^`` binds tighter than prefix minus, so ``-z^2`` reads as ``-(z^2)``.
Rational literals ``p/q`` are just integer division and need no token.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, ParseError
from .exactalg import GaussRat, Poly, RatFun

__all__ = [
    "Num",
    "Imag",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "tokenize",
    "parse_entry",
    "evaluate",
    "parse_ratfun",
    "to_source",
]


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Var:
    name: str = "z"


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    offset: int


_OPS = "+-*/^()"
_NAMES = ("z", "i")


def tokenize(src: str) -> list:
    out = []
    pos = 0
    n = len(src)
    while pos < n:
        c = src[pos]
        if c.isspace():
            pos += 1
        elif c.isdigit():
            start = pos
            while pos < n and src[pos].isdigit():
                pos += 1
            out.append(Token("int", src[start:pos], start))
        elif c in _OPS:
            out.append(Token("op", c, pos))
            pos += 1
        elif c in _NAMES:
            if pos + 1 < n and (src[pos + 1].isalnum() or src[pos + 1] == "_"):
                raise ParseError("unknown identifier", pos, ("z", "i"))
            out.append(Token("name", c, pos))
            pos += 1
        else:
            raise ParseError(f"unexpected character {c!r}", pos, ("number", "z", "i", "(", "-"))
    out.append(Token("end", "", n))
    return out


_INFIX = {"+": 10, "-": 10, "*": 20, "/": 20}
_PREFIX_BP = 30
_POW_BP = 40
_OPERAND_START = ("number", "z", "i", "(", "-", "+")


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.k = 0

    def peek(self) -> Token:
        return self.toks[self.k]

    def next(self) -> Token:
        t = self.toks[self.k]
        self.k += 1
        return t

    def fail(self, tok: Token, expected):
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"unexpected {what}", tok.offset, tuple(expected))

    def expr(self, min_bp: int = 0):
        left = self.prefix()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "^":
                if _POW_BP < min_bp:
                    break
                self.next()
                left = Pow(left, self.exponent())
                continue
            if tok.kind == "op" and tok.text in _INFIX:
                bp = _INFIX[tok.text]
                if bp <= min_bp:
                    break
                self.next()
                left = BinOp(tok.text, left, self.expr(bp))
                continue
            if tok.kind in ("end",) or (tok.kind == "op" and tok.text == ")"):
                break
            self.fail(tok, ("+", "-", "*", "/", "^", ")", "end of input"))
        return left

    def exponent(self) -> int:
        sign = 1
        tok = self.next()
        if tok.kind == "op" and tok.text == "-":
            sign = -1
            tok = self.next()
        elif tok.kind == "op" and tok.text == "(":
            inner = self.exponent()
            close = self.next()
            if close.kind != "op" or close.text != ")":
                self.fail(close, (")",))
            return inner
        if tok.kind != "int":
            self.fail(tok, ("integer exponent",))
        return sign * int(tok.text)

    def prefix(self):
        tok = self.next()
        if tok.kind == "int":
            return Num(int(tok.text))
        if tok.kind == "name":
            return Imag() if tok.text == "i" else Var(tok.text)
        if tok.kind == "op" and tok.text in "-+":
            operand = self.expr(_PREFIX_BP)
            return Neg(operand) if tok.text == "-" else operand
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr(0)
            close = self.next()
            if close.kind != "op" or close.text != ")":
                self.fail(close, (")",))
            return inner
        self.fail(tok, _OPERAND_START)


def parse_entry(src: str):
    """Parse one matrix entry into an expression tree."""
    if not isinstance(src, str):
        raise ParseError("entry must be a string", 0, ("string",))
    p = _Parser(src)
    tree = p.expr(0)
    tok = p.peek()
    if tok.kind != "end":
        p.fail(tok, ("end of input",))
    return tree


def evaluate(tree) -> RatFun:
    if isinstance(tree, Num):
        return RatFun.coerce(tree.value)
    if isinstance(tree, Imag):
        return RatFun(Poly.const(GaussRat(0, 1)))
    if isinstance(tree, Var):
        return RatFun(Poly.monomial(1))
    if isinstance(tree, Neg):
        return -evaluate(tree.operand)
    if isinstance(tree, Pow):
        return evaluate(tree.base) ** tree.exponent
    a, b = evaluate(tree.left), evaluate(tree.right)
    if tree.op == "+":
        return a + b
    if tree.op == "-":
        return a - b
    if tree.op == "*":
        return a * b
    return a / b


def parse_ratfun(src) -> RatFun:
    """String (or plain number) to an exact rational function."""
    if isinstance(src, bool):
        raise ParseError("booleans are not matrix entries", 0, ("string", "integer"))
    if isinstance(src, int):
        return RatFun.coerce(src)
    tree = parse_entry(src)
    try:
        return evaluate(tree)
    except ZeroDivisionError as exc:
        raise InputError(f"division by zero in {src!r}") from exc


def to_source(r: RatFun) -> str:
    """Canonical printed form that parses back to ``r``."""
    return str(RatFun.coerce(r))
