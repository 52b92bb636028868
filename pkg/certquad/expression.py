"""
certquad Expressions
Tokenizer, recursive-descent parser, evaluator and printer for integrand expressions in t

Grammar, loosest binding first:
    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' unary)?
    atom  := NUMBER | 't' | 'pi' | 'e' | NAME '(' expr (',' expr)* ')' | '(' expr ')'
"""

import math
import re
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple, Union

from certquad.errors import DomainError, ExprSyntaxError
from certquad.transforms import MapPoint, saturating_exp

FUNCTIONS = {"log": 1, "exp": 1, "sqrt": 1, "sin": 1, "cos": 1, "abs": 1, "pow": 2}
CONSTANTS = {"pi": math.pi, "e": math.e}
VARIABLE = "t"

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str  # number, name, op, end
    text: str
    offset: int  # byte offset into the UTF-8 source


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    name: str


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
    name: str
    args: Tuple["Expr", ...]


Expr = Union[Num, Var, Const, Neg, BinOp, Call]


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    byte_pos = 0
    while pos < len(src):
        match = _TOKEN_RE.match(src, pos)
        if match is None:
            raise ExprSyntaxError(byte_pos, "a number, name, operator or parenthesis", src)
        kind = match.lastgroup
        text = match.group()
        if kind != "ws":
            tokens.append(Token(kind, text, byte_pos))
        pos = match.end()
        byte_pos += len(text.encode("utf-8"))
    tokens.append(Token("end", "", byte_pos))
    return tokens


class ExpressionParser:
    """Recursive-descent parser over the token list of one source string."""

    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _fail(self, expected: str):
        raise ExprSyntaxError(self.current.offset, expected, self.src)

    def _expect(self, text: str) -> Token:
        if self.current.kind == "op" and self.current.text == text:
            return self._advance()
        self._fail(f"'{text}'")

    def _at(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def parse(self) -> Expr:
        if self.current.kind == "end":
            self._fail("an expression")
        node = self.expr()
        if self.current.kind != "end":
            self._fail("an operator or end of input")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self._at("+", "-"):
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self._at("*", "/"):
            op = self._advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self._at("-"):
            self._advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self._at("^"):
            self._advance()
            # right operand re-enters unary, so 2^3^2 = 2^(3^2) and 2^-1 parses
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Num(float(token.text))
        if token.kind == "name":
            self._advance()
            if token.text == VARIABLE:
                return Var()
            if token.text in CONSTANTS:
                return Const(token.text)
            if token.text in FUNCTIONS:
                return self._call(token)
            raise ExprSyntaxError(token.offset, "t, pi, e or a function name", self.src)
        if self._at("("):
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        self._fail("a number, t, pi, e, a function call or '('")

    def _call(self, name: Token) -> Call:
        self._expect("(")
        args = [self.expr()]
        while self._at(","):
            self._advance()
            args.append(self.expr())
        arity = FUNCTIONS[name.text]
        if len(args) != arity:
            self._fail(f"{arity} argument{'s' if arity > 1 else ''} to {name.text}")
        self._expect(")")
        return Call(name.text, tuple(args))


def parse(src: str) -> Expr:
    """Parse `src` into an AST; raises ExprSyntaxError with the byte offset of the problem."""
    return ExpressionParser(src).parse()


def _divide(a: float, b: float) -> float:
    try:
        return a / b
    except ZeroDivisionError:
        if a == 0.0 or math.isnan(a):
            return math.nan
        return math.copysign(math.inf, a) * math.copysign(1.0, b)


def _power(a: float, b: float) -> float:
    try:
        return math.pow(a, b)
    except OverflowError:
        if a < 0.0 and b == math.floor(b) and b % 2 == 1:
            return -math.inf
        return math.inf
    except ValueError:
        if a == 0.0:
            return math.inf
        return math.nan


def _log(x: float) -> float:
    if x < 0.0:
        raise DomainError(f"log of negative number {x!r}")
    if x == 0.0:
        return -math.inf
    return math.log(x)


def _sqrt(x: float) -> float:
    if x < 0.0:
        raise DomainError(f"sqrt of negative number {x!r}")
    return math.sqrt(x)


def _trig(fn):
    def apply(x: float) -> float:
        return math.nan if math.isinf(x) else fn(x)

    return apply


_APPLY = {
    "log": _log,
    "exp": saturating_exp,
    "sqrt": _sqrt,
    "sin": _trig(math.sin),
    "cos": _trig(math.cos),
    "abs": abs,
    "pow": _power,
}

_BINARY = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": _divide,
    "^": _power,
}


def evaluate(expr: Expr, point: MapPoint) -> float:
    """Value of `expr` at t = point.t.

    log(t) is taken from point.log_t, which stays accurate after t itself
    has underflowed.
    """
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Var):
        return point.t
    if isinstance(expr, Const):
        return CONSTANTS[expr.name]
    if isinstance(expr, Neg):
        return -evaluate(expr.operand, point)
    if isinstance(expr, BinOp):
        return _BINARY[expr.op](evaluate(expr.left, point), evaluate(expr.right, point))
    if isinstance(expr, Call):
        if expr.name == "log" and isinstance(expr.args[0], Var):
            return point.log_t
        return _APPLY[expr.name](*(evaluate(arg, point) for arg in expr.args))
    raise TypeError(f"Not an expression node: {expr!r}")


def to_source(expr: Expr) -> str:
    """Fully parenthesised source text that parses back to an equal tree."""
    if isinstance(expr, Num):
        return "1e999" if math.isinf(expr.value) else repr(expr.value)
    if isinstance(expr, Var):
        return VARIABLE
    if isinstance(expr, Const):
        return expr.name
    if isinstance(expr, Neg):
        return f"(-{to_source(expr.operand)})"
    if isinstance(expr, BinOp):
        return f"({to_source(expr.left)} {expr.op} {to_source(expr.right)})"
    if isinstance(expr, Call):
        return f"{expr.name}({', '.join(to_source(arg) for arg in expr.args)})"
    raise TypeError(f"Not an expression node: {expr!r}")
