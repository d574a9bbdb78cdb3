"""Commutative polynomial and differential-operator expressions.

Grammar, loosest binding first::

    sum     := product (("+" | "-") product)*
    product := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" INTEGER)*
    atom    := NUMBER | NAME | "d/d" NAME | "(" sum ")"

NUMBER is an integer or a fraction ``n/d``. Exponents are non-negative
integer literals only.
"""

from dataclasses import dataclass, field
import logging
import re

from sympy.polys.domains import QQ

from libstarprod.glue.operators import DifferentialOperator
from libstarprod.poly import PolyContext

parent_logger = logging.getLogger(__name__)

TOKEN = re.compile(
    r"(?P<space>[ \t]+)|(?P<newline>\n)|(?P<derivative>d/d(?P<target>[A-Za-z_]\w*))"
    r"|(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^()])"
)

SUM, PRODUCT, UNARY, POWER, ATOM = range(1, 6)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class Number:
    value: object

    def __str__(self):
        numerator, denominator = int(QQ.numer(self.value)), int(QQ.denom(self.value))
        return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"


@dataclass(frozen=True)
class Variable:
    name: str
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Derivative:
    name: str
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)

    def __str__(self):
        return f"d/d{self.name}"


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


def _precedence(node) -> int:
    if isinstance(node, (Add, Sub)):
        return SUM
    if isinstance(node, Mul):
        return PRODUCT
    if isinstance(node, Neg):
        return UNARY
    if isinstance(node, Pow):
        return POWER
    return ATOM


def _wrap(node, minimum: int) -> str:
    text = to_text(node)
    return f"({text})" if _precedence(node) < minimum else text


def to_text(node) -> str:
    """Canonical text with the fewest parentheses that parse back to ``node``."""
    if isinstance(node, Add):
        return f"{_wrap(node.left, SUM)} + {_wrap(node.right, PRODUCT)}"
    if isinstance(node, Sub):
        return f"{_wrap(node.left, SUM)} - {_wrap(node.right, PRODUCT)}"
    if isinstance(node, Mul):
        return f"{_wrap(node.left, PRODUCT)}*{_wrap(node.right, UNARY)}"
    if isinstance(node, Neg):
        return f"-{_wrap(node.operand, UNARY)}"
    if isinstance(node, Pow):
        return f"{_wrap(node.base, POWER)}^{node.exponent}"
    return str(node)


def tokenize(src: str) -> list:
    tokens = []
    line, start, position = 1, 0, 0
    while position < len(src):
        match = TOKEN.match(src, position)
        column = position - start + 1
        if match is None:
            reason = f"unexpected character {src[position]!r}"
            raise ExpressionSyntaxError(reason, line, column)
        kind = match.lastgroup
        if kind == "newline":
            line, start = line + 1, match.end()
        elif kind != "space":
            text = match.group("target") if kind == "derivative" else match.group()
            tokens.append(Token(kind, text, line, column))
        position = match.end()
    tokens.append(Token("end", "", line, len(src) - start + 1))
    return tokens


class Parser:
    """Recursive-descent parser over the token list of one expression."""

    def __init__(self, src: str, variables=None):
        self.tokens = tokenize(src)
        self.position = 0
        self.variables = None if variables is None else set(variables)

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def _advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def _accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.position += 1
            return True
        return False

    def _fail(self, expected: str):
        token = self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise ExpressionSyntaxError(
            f"expected {expected}, found {found}", token.line, token.column
        )

    def parse(self):
        node = self._sum()
        if self.current.kind != "end":
            self._fail("an operator")
        return node

    def _sum(self):
        node = self._product()
        while True:
            if self._accept("+"):
                node = Add(node, self._product())
            elif self._accept("-"):
                node = Sub(node, self._product())
            else:
                return node

    def _product(self):
        node = self._unary()
        while self._accept("*"):
            node = Mul(node, self._unary())
        return node

    def _unary(self):
        if self._accept("-"):
            return Neg(self._unary())
        return self._power()

    def _power(self):
        node = self._atom()
        while self._accept("^"):
            token = self.current
            if token.kind != "number" or "/" in token.text:
                self._fail("a non-negative integer exponent")
            self._advance()
            node = Pow(node, int(token.text))
        return node

    def _atom(self):
        token = self.current
        if token.kind == "number":
            self._advance()
            numerator, _, denominator = token.text.partition("/")
            if denominator and not int(denominator):
                raise ExpressionSyntaxError(
                    "zero denominator", token.line, token.column
                )
            return Number(QQ(int(numerator), int(denominator or 1)))
        if token.kind in ("name", "derivative"):
            self._advance()
            if self.variables is not None and token.text not in self.variables:
                raise UnknownVariable(token.text, token.line, token.column)
            if token.kind == "name":
                return Variable(token.text, token.line, token.column)
            return Derivative(token.text, token.line, token.column)
        if self._accept("("):
            node = self._sum()
            if not self._accept(")"):
                self._fail("')'")
            return node
        self._fail("a number, a variable or '('")


def parse_expression(src: str, variables=None):
    """Parse ``src``; names must be among ``variables`` when given."""
    return Parser(src, variables).parse()


def to_polynomial(node, context: PolyContext):
    """Evaluate an expression tree as a polynomial of ``context``."""
    if isinstance(node, Number):
        return context.constant(node.value)
    if isinstance(node, Variable):
        if node.name not in context.names:
            raise UnknownVariable(node.name, node.line, node.column)
        return context.var(node.name)
    if isinstance(node, Derivative):
        reason = f"derivative d/d{node.name} in a polynomial"
        raise ExpressionError(reason, node.line, node.column)
    if isinstance(node, Neg):
        return -to_polynomial(node.operand, context)
    if isinstance(node, Add):
        return to_polynomial(node.left, context) + to_polynomial(node.right, context)
    if isinstance(node, Sub):
        return to_polynomial(node.left, context) - to_polynomial(node.right, context)
    if isinstance(node, Mul):
        return to_polynomial(node.left, context) * to_polynomial(node.right, context)
    return to_polynomial(node.base, context) ** node.exponent


def to_operator(node, context: PolyContext) -> DifferentialOperator:
    """Evaluate an expression tree as a differential operator; ``*`` composes."""
    if isinstance(node, Number):
        constant = context.constant(node.value)
        return DifferentialOperator.multiplication(context, constant)
    if isinstance(node, Variable):
        if node.name not in context.coordinates:
            raise UnknownVariable(node.name, node.line, node.column)
        return DifferentialOperator.multiplication(context, context.var(node.name))
    if isinstance(node, Derivative):
        if node.name not in context.coordinates:
            raise UnknownVariable(node.name, node.line, node.column)
        return DifferentialOperator.partial(context, node.name)
    if isinstance(node, Neg):
        return -to_operator(node.operand, context)
    if isinstance(node, Add):
        return to_operator(node.left, context) + to_operator(node.right, context)
    if isinstance(node, Sub):
        return to_operator(node.left, context) - to_operator(node.right, context)
    if isinstance(node, Mul):
        return to_operator(node.left, context) * to_operator(node.right, context)
    base = to_operator(node.base, context)
    result = DifferentialOperator.identity(context)
    for _ in range(node.exponent):
        result = result * base
    return result


def parse_polynomial(src: str, context: PolyContext):
    return to_polynomial(parse_expression(src, context.names), context)


def parse_operator(src: str, context: PolyContext) -> DifferentialOperator:
    return to_operator(parse_expression(src, context.coordinates), context)


class ExpressionError(Exception):
    """Raise when an expression cannot be read or evaluated."""

    def __init__(self, reason: str = "", line: int = 1, column: int = 1):
        self.reason = reason
        self.line = line
        self.column = column
        self.message = f"line {line}, column {column}: {reason}"
        super().__init__(self.message)


class ExpressionSyntaxError(ExpressionError):
    """Raise on malformed expression text."""


class UnknownVariable(ExpressionError):
    """Raise when an expression names an undeclared variable."""

    def __init__(self, name: str = "", line: int = 1, column: int = 1):
        self.name = name
        super().__init__(f"unknown variable {name}", line, column)
