"""Polynomial expressions: parser, symbolic derivatives and evaluation.

Grammar (lowest to highest precedence)::

    sum     := product (('+' | '-') product)*
    product := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ('^' INTEGER)*
    atom    := NUMBER ['/' NUMBER] | VARIABLE | '(' sum ')'

``NUMBER '/' NUMBER`` is a rational constant and is folded into one Constant.
Variables are named ``x1`` .. ``xn``.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
from numpy.typing import NDArray

from scalebb.core.errors import ExpressionSyntaxError, VariableIndexError
from scalebb.core.interval import (
    Box,
    Interval,
    iv_add,
    iv_int_pow,
    iv_intersect,
    iv_mul,
    iv_neg,
    iv_sub,
)


@dataclass(frozen=True, slots=True)
class Constant:
    value: Fraction

    def __str__(self) -> str:
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"({self.value.numerator}/{self.value.denominator})"


@dataclass(frozen=True, slots=True)
class Variable:
    index: int  # 1-based, as in the name x<index>

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True, slots=True)
class Add:
    left: "Expr"
    right: "Expr"

    def __str__(self) -> str:
        return f"{self.left} + {self.right}"


@dataclass(frozen=True, slots=True)
class Sub:
    left: "Expr"
    right: "Expr"

    def __str__(self) -> str:
        right = f"({self.right})" if isinstance(self.right, (Add, Sub)) else str(self.right)
        return f"{self.left} - {right}"


@dataclass(frozen=True, slots=True)
class Mul:
    left: "Expr"
    right: "Expr"

    def __str__(self) -> str:
        return f"{_factor_str(self.left)}*{_factor_str(self.right)}"


@dataclass(frozen=True, slots=True)
class Neg:
    child: "Expr"

    def __str__(self) -> str:
        return f"-{_factor_str(self.child)}"


@dataclass(frozen=True, slots=True)
class IntPow:
    child: "Expr"
    exponent: int

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError(f"exponent must be nonnegative, got {self.exponent}")

    def __str__(self) -> str:
        base = str(self.child)
        if not isinstance(self.child, Variable):
            base = f"({base})"
        return f"{base}^{self.exponent}"


Expr = Constant | Variable | Add | Sub | Mul | Neg | IntPow

ZERO = Constant(Fraction(0))
ONE = Constant(Fraction(1))


def _factor_str(e: Expr) -> str:
    if isinstance(e, (Add, Sub, Neg)):
        return f"({e})"
    return str(e)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<number>\d+(?:\.\d+)?|\.\d+)
  | (?P<variable>x(?P<index>\d+))
  | (?P<op>[-+*^/()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = match.lastgroup
        if kind == "index":
            kind = "variable"
        if kind != "space":
            tokens.append(_Token(str(kind), match.group(), pos))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser over the token list."""

    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self.pos += 1
            return True
        return False

    def _error(self, message: str) -> ExpressionSyntaxError:
        return ExpressionSyntaxError(message, self.current.position, self.text)

    def parse(self) -> Expr:
        expr = self._sum()
        if self.current.kind != "end":
            raise self._error(f"unexpected token {self.current.text!r}")
        return expr

    def _sum(self) -> Expr:
        expr = self._product()
        while True:
            if self._accept("+"):
                expr = Add(expr, self._product())
            elif self._accept("-"):
                expr = Sub(expr, self._product())
            else:
                return expr

    def _product(self) -> Expr:
        expr = self._unary()
        while self._accept("*"):
            expr = Mul(expr, self._unary())
        return expr

    def _unary(self) -> Expr:
        if self._accept("-"):
            return Neg(self._unary())
        return self._power()

    def _power(self) -> Expr:
        expr = self._atom()
        while self._accept("^"):
            token = self.current
            if token.kind != "number" or not token.text.isdigit():
                raise self._error("exponent must be a nonnegative integer literal")
            self._advance()
            expr = IntPow(expr, int(token.text))
        return expr

    def _atom(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self._advance()
            value = Fraction(token.text)
            if self._accept("/"):
                denominator = self.current
                if denominator.kind != "number":
                    raise self._error("division is only allowed between number literals")
                self._advance()
                divisor = Fraction(denominator.text)
                if divisor == 0:
                    raise ExpressionSyntaxError("division by zero", denominator.position, self.text)
                value /= divisor
            return Constant(value)
        if token.kind == "variable":
            self._advance()
            index = int(token.text[1:])
            if not 1 <= index <= self.n:
                raise VariableIndexError(
                    f"variable {token.text} at position {token.position} is outside x1..x{self.n}"
                )
            return Variable(index)
        if self._accept("("):
            expr = self._sum()
            if not self._accept(")"):
                raise self._error("expected ')'")
            return expr
        if token.kind == "end":
            raise self._error("unexpected end of expression")
        raise self._error(f"unexpected token {token.text!r}")


def parse(text: str, n: int) -> Expr:
    """Parse ``text`` into an expression over the variables x1..xn."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    return _Parser(text, n).parse()


def load_expression(text: str) -> tuple[int, Expr]:
    """Read an expression file: ``n=<dim>`` on the first line, the expression on the second."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if len(lines) != 2:
        raise ExpressionSyntaxError("expected two lines: 'n=<dim>' and the expression", 0, text)
    header = re.fullmatch(r"n\s*=\s*(\d+)", lines[0])
    if header is None:
        raise ExpressionSyntaxError("first line must read 'n=<dim>'", 0, lines[0])
    n = int(header.group(1))
    return n, parse(lines[1], n)


# ---------------------------------------------------------------------------
# Constant-folding constructors
# ---------------------------------------------------------------------------


def _split_coefficient(e: Expr) -> tuple[Fraction, Expr | None]:
    match e:
        case Constant(value):
            return value, None
        case Mul(Constant(value), rest):
            return value, rest
        case _:
            return Fraction(1), e


def add(a: Expr, b: Expr) -> Expr:
    match a, b:
        case Constant(x), Constant(y):
            return Constant(x + y)
        case Constant(x), _ if x == 0:
            return b
        case _, Constant(y) if y == 0:
            return a
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    match a, b:
        case Constant(x), Constant(y):
            return Constant(x - y)
        case _, Constant(y) if y == 0:
            return a
        case Constant(x), _ if x == 0:
            return neg(b)
    return Sub(a, b)


def neg(a: Expr) -> Expr:
    match a:
        case Constant(x):
            return Constant(-x)
        case Neg(child):
            return child
    return Neg(a)


def mul(a: Expr, b: Expr) -> Expr:
    ca, ra = _split_coefficient(a)
    cb, rb = _split_coefficient(b)
    coefficient = ca * cb
    if coefficient == 0:
        return ZERO
    if ra is None and rb is None:
        return Constant(coefficient)
    if ra is None:
        rest = rb
    elif rb is None:
        rest = ra
    else:
        rest = Mul(ra, rb)
    assert rest is not None
    return rest if coefficient == 1 else Mul(Constant(coefficient), rest)


def power(a: Expr, k: int) -> Expr:
    if k == 0:
        return ONE
    if k == 1:
        return a
    if isinstance(a, Constant):
        return Constant(a.value**k)
    return IntPow(a, k)


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------


def differentiate(e: Expr, i: int) -> Expr:
    """Partial derivative of ``e`` with respect to x_i (1-based)."""
    match e:
        case Constant():
            return ZERO
        case Variable(index):
            return ONE if index == i else ZERO
        case Add(left, right):
            return add(differentiate(left, i), differentiate(right, i))
        case Sub(left, right):
            return sub(differentiate(left, i), differentiate(right, i))
        case Mul(left, right):
            return add(
                mul(differentiate(left, i), right),
                mul(left, differentiate(right, i)),
            )
        case Neg(child):
            return neg(differentiate(child, i))
        case IntPow(child, k):
            if k == 0:
                return ZERO
            return mul(mul(Constant(Fraction(k)), power(child, k - 1)), differentiate(child, i))
    raise TypeError(f"not an expression: {e!r}")


def hessian(e: Expr, n: int) -> list[list[Expr]]:
    """Symbolic Hessian; entry [i][j] is d2e / dx_{i+1} dx_{j+1}."""
    gradient = [differentiate(e, i + 1) for i in range(n)]
    return [[differentiate(gradient[i], j + 1) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _evaluate(e: Expr, x: Any, constant: Any) -> Any:
    match e:
        case Constant(value):
            return constant(value)
        case Variable(index):
            return x[index - 1]
        case Add(left, right):
            return _evaluate(left, x, constant) + _evaluate(right, x, constant)
        case Sub(left, right):
            return _evaluate(left, x, constant) - _evaluate(right, x, constant)
        case Mul(left, right):
            return _evaluate(left, x, constant) * _evaluate(right, x, constant)
        case Neg(child):
            return -_evaluate(child, x, constant)
        case IntPow(child, k):
            return _evaluate(child, x, constant) ** k
    raise TypeError(f"not an expression: {e!r}")


def eval_point(e: Expr, x: Any) -> Any:
    """Evaluate at a point.

    Constants stay rational, so integer or Fraction coordinates give an exact
    Fraction result; float coordinates give a float.
    """
    if isinstance(x, np.ndarray):
        x = x.tolist()
    return _evaluate(e, x, lambda value: value)


def eval_batch(e: Expr, points: NDArray[np.float64]) -> NDArray[np.float64]:
    """Evaluate at every row of an (m, n) array of points."""
    points = np.asarray(points, dtype=float)
    columns = points.T
    result = _evaluate(e, columns, float)
    return np.broadcast_to(np.asarray(result, dtype=float), (points.shape[0],)).copy()


def eval_interval(e: Expr, b: Box) -> Interval:
    """Natural interval extension over the box ``b``."""
    match e:
        case Constant(value):
            return Interval.point(float(value))
        case Variable(index):
            return b[index - 1]
        case Add(left, right):
            return iv_add(eval_interval(left, b), eval_interval(right, b))
        case Sub(left, right):
            return iv_sub(eval_interval(left, b), eval_interval(right, b))
        case Mul(left, right):
            return iv_mul(eval_interval(left, b), eval_interval(right, b))
        case Neg(child):
            return iv_neg(eval_interval(child, b))
        case IntPow(child, k):
            return iv_int_pow(eval_interval(child, b), k)
    raise TypeError(f"not an expression: {e!r}")


def interval_hessian(e: Expr, b: Box) -> list[list[Interval]]:
    """Entrywise interval enclosure of the Hessian, symmetrized by intersection."""
    n = b.dims
    entries = [[eval_interval(h, b) for h in row] for row in hessian(e, n)]
    for i in range(n):
        for j in range(i + 1, n):
            both = iv_intersect(entries[i][j], entries[j][i])
            entries[i][j] = entries[j][i] = both
    return entries
