"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('-' | '+') unary | factor
    factor := atom ('^' ['-'] INT)?
    atom   := rational | ident | '(' expr ')'

A rational literal is ``INT`` or ``INT/INT``.  Exponents must be integer
literals; identifiers are resolved against a :class:`VarTable` only when the
tree is evaluated.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .ring import LaurentPoly, VarTable


class ParseError(ValueError):
    """Syntax error; ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at byte {offset}{detail}")


class UnknownVariable(ParseError):
    """An identifier that the variable table does not contain."""


@dataclass(frozen=True)
class Num:
    value: Fraction
    offset: int = 0


@dataclass(frozen=True)
class Ident:
    name: str
    offset: int = 0


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    offset: int = 0


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"
    offset: int = 0


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"
    offset: int = 0


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"
    offset: int = 0


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    offset: int = 0


@dataclass(frozen=True)
class Paren:
    inner: "Node"
    offset: int = 0


Node = Union[Num, Ident, Neg, Add, Sub, Mul, Pow, Paren]

_TOKEN = re.compile(r"(?P<num>[0-9]+(?:/[0-9]+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()])")
_SPACE = " \t\r\n\f\v"
_END = "end of input"


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "ident", "op" or "end"
    text: str
    offset: int  # byte offset


def _tokenize(text: str) -> list[_Tok]:
    data = text.encode("utf-8")
    toks = []
    pos = 0
    # one char per byte, so string positions are byte offsets
    src = data.decode("latin-1")
    while True:
        while pos < len(src) and src[pos] in _SPACE:
            pos += 1
        if pos == len(src):
            toks.append(_Tok("end", "", pos))
            return toks
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {data[pos:pos + 1]!r}", pos,
                             ("number", "identifier", "'('", "'-'"))
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def at(self, op: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == op

    def fail(self, expected):
        t = self.tok
        found = _END if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {found}", t.offset, expected)

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            self.fail(("'+'", "'-'", "'*'", "'^'", _END))
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok
            self.i += 1
            right = self.term()
            node = (Add if op.text == "+" else Sub)(node, right, op.offset)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at("*"):
            op = self.tok
            self.i += 1
            node = Mul(node, self.unary(), op.offset)
        return node

    def unary(self) -> Node:
        if self.at("-") or self.at("+"):
            op = self.tok
            self.i += 1
            inner = self.unary()
            return Neg(inner, op.offset) if op.text == "-" else inner
        return self.factor()

    def factor(self) -> Node:
        base = self.atom()
        if not self.at("^"):
            return base
        op = self.tok
        self.i += 1
        sign = 1
        if self.at("-"):
            sign = -1
            self.i += 1
        if self.tok.kind != "num" or "/" in self.tok.text:
            self.fail(("integer exponent",) if sign < 0 else ("integer exponent", "'-'"))
        exp = sign * int(self.tok.text)
        self.i += 1
        return Pow(base, exp, op.offset)

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            num, _, den = t.text.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator in rational literal", t.offset)
            return Num(Fraction(int(num), int(den) if den else 1), t.offset)
        if t.kind == "ident":
            self.i += 1
            return Ident(t.text, t.offset)
        if self.at("("):
            self.i += 1
            inner = self.expr()
            if not self.at(")"):
                self.fail(("')'", "'+'", "'-'", "'*'", "'^'"))
            self.i += 1
            return Paren(inner, t.offset)
        self.fail(("number", "identifier", "'('", "'-'"))


def parse_expr(text: str) -> Node:
    """Parse ``text`` into an expression tree; raises :class:`ParseError`."""
    return _Parser(text).parse()


def identifiers(node: Node) -> set[str]:
    if isinstance(node, Ident):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, (Neg,)):
        return identifiers(node.operand)
    if isinstance(node, Paren):
        return identifiers(node.inner)
    if isinstance(node, Pow):
        return identifiers(node.base)
    return identifiers(node.left) | identifiers(node.right)


def evaluate(node: Node, table: VarTable) -> LaurentPoly:
    """Build the polynomial denoted by ``node`` over ``table``.

    Negative powers are only defined for monomials (units of the Laurent ring).
    """
    if isinstance(node, Num):
        return table.const(node.value)
    if isinstance(node, Ident):
        if node.name not in table:
            raise UnknownVariable(f"unknown variable {node.name!r}", node.offset,
                                  tuple(table.names))
        return table.var(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.operand, table)
    if isinstance(node, Paren):
        return evaluate(node.inner, table)
    if isinstance(node, Pow):
        base = evaluate(node.base, table)
        if node.exponent < 0 and not base.is_monomial():
            raise ValueError(f"negative power of non-monomial {base}")
        return base ** node.exponent
    left, right = evaluate(node.left, table), evaluate(node.right, table)
    if isinstance(node, Add):
        return left + right
    if isinstance(node, Sub):
        return left - right
    return left * right


def parse_poly(text: str, table: VarTable) -> LaurentPoly:
    return evaluate(parse_expr(text), table)
