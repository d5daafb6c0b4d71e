"""A small expression language for tetrad components, scale factors, gauge
spinor entries and potentials.

Grammar (``^`` binds tighter than unary minus, and is right associative)::

    expr  := term (("+"|"-") term)*
    term  := unary (("*"|"/") unary)*
    unary := "-" unary | power
    power := atom ("^" unary)?
    atom  := number | ident | ident "(" expr ")" | "(" expr ")" | "pi" | "i"

Parsing is a Pratt loop over binding powers. Expressions are evaluated over
:class:`~tetradcalc.jet.Jet` values, so every evaluation also returns the
exact first partials with respect to the four chart coordinates.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from . import jet as J
from .jet import DomainError, Jet

DEFAULT_COORDS = ("x0", "x1", "x2", "x3")
RESERVED = {"pi", "i"}
FUNCTION_NAMES = tuple(J.FUNCTIONS)


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, offset: int, expected: Sequence[str] = ()):
        self.offset = offset
        self.expected = tuple(expected)
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnknownIdentifierError(ExprError):
    pass


class EvalDomainError(ExprError):
    """Raised when evaluation leaves the domain of an elementary function."""

    def __init__(self, message: str, node: "Expr", point):
        self.node = node
        self.point = tuple(point)
        super().__init__(f"{message} in '{to_source(node)}' at point {self.point}")


# AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Coord:
    index: int


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Coord, Param, Pi, ImagUnit, Neg, BinOp, Call]


def Add(a, b):
    return BinOp("+", a, b)


def Sub(a, b):
    return BinOp("-", a, b)


def Mul(a, b):
    return BinOp("*", a, b)


def Div(a, b):
    return BinOp("/", a, b)


def Pow(a, b):
    return BinOp("^", a, b)


def Sin(a):
    return Call("sin", a)


def Cos(a):
    return Call("cos", a)


# tokenizer ------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),−])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # number | ident | op | end
    text: str
    offset: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", _byte_offset(source, pos))
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            if text == "−":
                text = "-"
            tokens.append(Token(kind, text, _byte_offset(source, pos)))
        pos = m.end()
    tokens.append(Token("end", "", _byte_offset(source, len(source))))
    return tokens


def _byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode("utf-8"))


# parser ---------------------------------------------------------------------

_INFIX = {"+": (10, 11), "-": (10, 11), "*": (20, 21), "/": (20, 21), "^": (41, 30)}
_PREFIX_MINUS = 30
_ATOM_START = ("number", "identifier", "(", "-", "pi", "i")


class _Parser:
    def __init__(self, source: str, coords: Sequence[str]):
        self.tokens = tokenize(source)
        self.pos = 0
        self.coords = {name: k for k, name in enumerate(DEFAULT_COORDS)}
        self.coords.update({name: k for k, name in enumerate(coords)})

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "end":
            raise ExprSyntaxError(f"unexpected {_describe(tok)}", tok.offset, (text,))
        return self.advance()

    def parse(self) -> Expr:
        expr = self.expression(0)
        tok = self.peek()
        if tok.kind != "end":
            expected = ("+", "-", "*", "/", "^", "end of input")
            raise ExprSyntaxError(f"unexpected {_describe(tok)}", tok.offset, expected)
        return expr

    def expression(self, min_bp: int) -> Expr:
        lhs = self.prefix()
        while True:
            tok = self.peek()
            if tok.kind != "op" or tok.text not in _INFIX:
                break
            left_bp, right_bp = _INFIX[tok.text]
            if left_bp < min_bp:
                break
            self.advance()
            rhs = self.expression(right_bp)
            lhs = BinOp(tok.text, lhs, rhs)
        return lhs

    def prefix(self) -> Expr:
        tok = self.advance()
        if tok.kind == "number":
            return Num(float(tok.text))
        if tok.kind == "ident":
            return self.identifier(tok)
        if tok.text == "-":
            return Neg(self.expression(_PREFIX_MINUS))
        if tok.text == "(":
            inner = self.expression(0)
            self.expect(")")
            return inner
        raise ExprSyntaxError(f"unexpected {_describe(tok)}", tok.offset, _ATOM_START)

    def identifier(self, tok: Token) -> Expr:
        name = tok.text
        if self.peek().text == "(" and self.peek().kind == "op":
            if name not in J.FUNCTIONS:
                raise ExprSyntaxError(f"unknown function {name!r}", tok.offset, FUNCTION_NAMES)
            self.advance()
            arg = self.expression(0)
            self.expect(")")
            return Call(name, arg)
        if name in J.FUNCTIONS:
            raise ExprSyntaxError(f"function {name!r} needs an argument", tok.offset + len(name), ("(",))
        if name == "pi":
            return Pi()
        if name == "i":
            return ImagUnit()
        if name in self.coords:
            return Coord(self.coords[name])
        return Param(name)


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "end" else repr(tok.text)


def parse(source: str, coords: Sequence[str] = DEFAULT_COORDS) -> Expr:
    """Parse ``source`` into an AST.

    ``x0..x3`` always name coordinates; ``coords`` adds chart aliases (e.g.
    ``("t", "r", "th", "ph")``). Every other identifier becomes a
    :class:`Param` and must be supplied when the expression is bound.
    """
    if not source or not source.strip():
        raise ExprSyntaxError("empty expression", 0, _ATOM_START)
    return _Parser(source, coords).parse()


def parameters(expr: Expr) -> set[str]:
    if isinstance(expr, Param):
        return {expr.name}
    if isinstance(expr, Neg):
        return parameters(expr.operand)
    if isinstance(expr, BinOp):
        return parameters(expr.left) | parameters(expr.right)
    if isinstance(expr, Call):
        return parameters(expr.arg)
    return set()


def bind(expr: Expr, params: Mapping[str, float]) -> Expr:
    """Check that every parameter of ``expr`` is declared; returns ``expr``."""
    missing = sorted(parameters(expr) - set(params))
    if missing:
        raise UnknownIdentifierError(f"unknown identifier(s): {', '.join(missing)}")
    return expr


# printing -------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def to_source(expr: Expr, coords: Sequence[str] = DEFAULT_COORDS) -> str:
    """Render ``expr`` with the minimal parentheses needed to parse back identically."""
    return _show(expr, coords)


def _prec(expr: Expr) -> int:
    if isinstance(expr, BinOp):
        return _PREC[expr.op]
    if isinstance(expr, Neg):
        return _PREC["neg"]
    return 5


def _show(expr: Expr, coords) -> str:
    if isinstance(expr, Num):
        text = repr(expr.value)
        return text[:-2] if text.endswith(".0") and "e" not in text else text
    if isinstance(expr, Coord):
        return coords[expr.index]
    if isinstance(expr, Param):
        return expr.name
    if isinstance(expr, Pi):
        return "pi"
    if isinstance(expr, ImagUnit):
        return "i"
    if isinstance(expr, Call):
        return f"{expr.func}({_show(expr.arg, coords)})"
    if isinstance(expr, Neg):
        inner = _show(expr.operand, coords)
        # -(a+b) and -(a*b) need parens; -(a^b) and atoms do not
        if _prec(expr.operand) < _PREC["neg"] + 1 and not isinstance(expr.operand, Neg):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(expr, BinOp):
        p = _PREC[expr.op]
        left = _show(expr.left, coords)
        right = _show(expr.right, coords)
        if expr.op == "^":
            if _prec(expr.left) <= p:
                left = f"({left})"
            if _prec(expr.right) < p and not isinstance(expr.right, Neg):
                right = f"({right})"
        else:
            if _prec(expr.left) < p:
                left = f"({left})"
            if _prec(expr.right) <= p:
                right = f"({right})"
        return f"{left}{expr.op}{right}"
    raise TypeError(f"not an expression node: {expr!r}")


# evaluation -----------------------------------------------------------------


def eval_jet(expr: Expr, point: Sequence[float], params: Mapping[str, float] | None = None) -> Jet:
    """Evaluate ``expr`` at ``point`` returning its value and exact partials."""
    params = params or {}
    return _eval(expr, point, params)


def evaluate(expr: Expr, point: Sequence[float], params: Mapping[str, float] | None = None) -> complex:
    return eval_jet(expr, point, params).value


def _eval(expr: Expr, point, params) -> Jet:
    if isinstance(expr, Num):
        return Jet(expr.value)
    if isinstance(expr, Coord):
        return Jet.coordinate(expr.index, point[expr.index])
    if isinstance(expr, Param):
        if expr.name not in params:
            raise UnknownIdentifierError(f"unknown identifier: {expr.name}")
        return Jet(params[expr.name])
    if isinstance(expr, Pi):
        return Jet(math.pi)
    if isinstance(expr, ImagUnit):
        return Jet(1j)
    if isinstance(expr, Neg):
        return -_eval(expr.operand, point, params)
    try:
        if isinstance(expr, Call):
            return J.FUNCTIONS[expr.func](_eval(expr.arg, point, params))
        if isinstance(expr, BinOp):
            a = _eval(expr.left, point, params)
            b = _eval(expr.right, point, params)
            if expr.op == "+":
                return a + b
            if expr.op == "-":
                return a - b
            if expr.op == "*":
                return a * b
            if expr.op == "/":
                return a / b
            return J.power(a, b)
    except DomainError as exc:
        raise EvalDomainError(str(exc), expr, point) from None
    raise TypeError(f"not an expression node: {expr!r}")


def constant_value(source: str) -> complex:
    """Evaluate a coordinate-free expression such as ``"pi/2"``."""
    return evaluate(parse(source), (0.0, 0.0, 0.0, 0.0))
