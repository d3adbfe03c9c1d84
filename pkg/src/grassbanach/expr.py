"""Expression language for the command line.

Grammar (whitespace-insensitive)::

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | primary ('^' uint)?
    primary := scalar | 'e' uint | 'e' | '(' expr ')' | fn '(' expr ')'
    fn      := inv | norm | body | soul | even | odd | parity

``*`` is the Grassmann product and ``^`` a repeated product.  A bare ``e`` is
the unit.  ``parity(...)`` yields a label rather than an element, so it may
only appear as the whole expression.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .algebra import GrassmannAlgebra, GrassmannElement, Parity
from .errors import ParseError
from .fields import RATIONAL, NormedField, Real64Field
from .monomial import CANONICAL, OrderingFunction

FUNCTIONS = ("inv", "norm", "body", "soul", "even", "odd", "parity")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?)
  | (?P<gen>e\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


# -- AST ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    text: str
    pos: int


@dataclass(frozen=True)
class Gen:
    label: int
    pos: int


@dataclass(frozen=True)
class Unit:
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: int


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"
    pos: int


Node = Union[Num, Gen, Unit, BinOp, Neg, Pow, Call]


# -- parsing -------------------------------------------------------------------------


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int  # byte offset


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", _byte_offset(text, i))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), _byte_offset(text, i)))
        i = m.end()
    toks.append(_Tok("end", "", _byte_offset(text, len(text))))
    return toks


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def _expect(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind not in ("op",):
            raise ParseError(f"expected {text!r}, found {self._describe()}", self.tok.pos)
        return self._advance()

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"expected operator or end of input, found {self._describe()}", self.tok.pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self._advance()
            node = BinOp(op.text, node, self.term(), op.pos)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text == "*":
            op = self._advance()
            node = BinOp("*", node, self.factor(), op.pos)
        return node

    def factor(self) -> Node:
        if self.tok.kind == "op" and self.tok.text == "-":
            op = self._advance()
            return Neg(self.factor(), op.pos)
        node = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            op = self._advance()
            if self.tok.kind != "num" or not self.tok.text.isdigit():
                raise ParseError(f"expected a non-negative integer exponent, found {self._describe()}", self.tok.pos)
            node = Pow(node, int(self._advance().text), op.pos)
        return node

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self._advance()
            return Num(t.text, t.pos)
        if t.kind == "gen":
            self._advance()
            return Gen(int(t.text[1:]), t.pos)
        if t.kind == "name":
            if t.text == "e":
                self._advance()
                return Unit(t.pos)
            if t.text not in FUNCTIONS:
                raise ParseError(f"unknown function {t.text!r}", t.pos)
            self._advance()
            self._expect("(")
            arg = self.expr()
            self._expect(")")
            return Call(t.text, arg, t.pos)
        if t.kind == "op" and t.text == "(":
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        raise ParseError(f"expected expression, found {self._describe()}", t.pos)


def _children(node: Node):
    if isinstance(node, BinOp):
        return (node.left, node.right)
    if isinstance(node, (Neg,)):
        return (node.operand,)
    if isinstance(node, Pow):
        return (node.base,)
    if isinstance(node, Call):
        return (node.arg,)
    return ()


def parse_expression(text: str) -> Node:
    root = _Parser(text).parse()
    stack = list(_children(root)) if isinstance(root, Call) and root.fn == "parity" else [root]
    while stack:
        node = stack.pop()
        if isinstance(node, Call) and node.fn == "parity":
            raise ParseError("parity(...) must be the whole expression", node.pos)
        stack.extend(_children(node))
    return root


# -- evaluation ------------------------------------------------------------------------


@dataclass(frozen=True)
class SessionConfig:
    field: NormedField = RATIONAL
    norm: str = "l1"
    ordering: OrderingFunction = CANONICAL
    output: str = "text"

    def algebra(self) -> GrassmannAlgebra:
        return GrassmannAlgebra(self.field, self.ordering, self.norm)


@dataclass(frozen=True)
class NormValue:
    """Result of ``norm(...)``: a Fraction over exact fields, a float over real64."""

    value: Union[Fraction, float]
    ring: NormedField = field(repr=False)

    def as_element(self, algebra: GrassmannAlgebra) -> GrassmannElement:
        return algebra.scalar(self.value)

    def __str__(self):
        if isinstance(self.value, float):
            return Real64Field().format(self.value)
        return str(self.value)


Value = Union[GrassmannElement, NormValue, Parity]


def evaluate(node: Node, cfg: SessionConfig, algebra: GrassmannAlgebra | None = None) -> Value:
    alg = algebra if algebra is not None else cfg.algebra()
    return _eval(node, alg)


def _elem(v: Value, alg: GrassmannAlgebra) -> GrassmannElement:
    if isinstance(v, NormValue):
        return v.as_element(alg)
    return v


def _eval(node: Node, alg: GrassmannAlgebra) -> Value:
    if isinstance(node, Num):
        try:
            c = alg.ring.parse(node.text)
        except ParseError as exc:
            raise ParseError(exc.message, node.pos + exc.position) from None
        return alg._new({} if alg.ring.is_zero(c) else {(): c})
    if isinstance(node, Gen):
        return alg.gen(node.label)
    if isinstance(node, Unit):
        return alg.one()
    if isinstance(node, Neg):
        return -_elem(_eval(node.operand, alg), alg)
    if isinstance(node, BinOp):
        left = _elem(_eval(node.left, alg), alg)
        right = _elem(_eval(node.right, alg), alg)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    if isinstance(node, Pow):
        return _elem(_eval(node.base, alg), alg) ** node.exponent
    if isinstance(node, Call):
        arg = _elem(_eval(node.arg, alg), alg)
        fn = node.fn
        if fn == "inv":
            return arg.inverse()
        if fn == "norm":
            exact = not isinstance(alg.ring, Real64Field)
            return NormValue(arg.norm(exact=exact), alg.ring)
        if fn == "body":
            return alg.scalar(arg.body())
        if fn == "soul":
            return arg.soul()
        if fn == "even":
            return arg.even()
        if fn == "odd":
            return arg.odd()
        if fn == "parity":
            return arg.parity()
    raise TypeError(f"unknown node {node!r}")


# -- rendering ---------------------------------------------------------------------------


def render(value: Value, cfg: SessionConfig) -> str:
    """Text or JSON form of an evaluation result (no trailing newline)."""
    if cfg.output == "json":
        if isinstance(value, GrassmannElement):
            return value.dumps()
        if isinstance(value, NormValue):
            return json.dumps({"norm": str(value)})
        return json.dumps({"parity": str(value)})
    return str(value)


def run(text: str, cfg: SessionConfig) -> str:
    """Parse, evaluate and render one expression."""
    return render(evaluate(parse_expression(text), cfg), cfg)
