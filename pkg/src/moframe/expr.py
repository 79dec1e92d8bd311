"""Formula parser for curve components.

Grammar (whitespace is insignificant, identifiers are case-sensitive)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary } ;
    unary   = ("-" | "+") unary | power ;
    power   = atom [ ("^" | "**") unary ] ;
    atom    = number | "s" | "pi"
            | ("sin" | "cos" | "sqrt") "(" expr ")"
            | "(" expr ")" ;
    number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
            | "." digits [ exponent ] ;

Power binds tighter than unary minus, so ``-s^2`` is ``-(s^2)``, and is
right-associative (``2^3^2 == 2^9``). The exponent of a power must not
depend on ``s``.

Trees are immutable; :func:`evaluate` works on floats and
:func:`moframe.jet.jet_apply` on jets.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import DomainError, ExpressionSyntaxError, UnknownIdentifier

__all__ = [
    "Constant", "Parameter", "Unary", "Binary", "Expression",
    "parse", "evaluate", "to_text", "depends_on_parameter",
]

UNARY_OPS = ("neg", "sin", "cos", "sqrt")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")
FUNCTIONS = ("sin", "cos", "sqrt")


@dataclass(frozen=True)
class Constant:
    value: float
    name: str | None = None  # "pi" for the named constant

    def __str__(self):
        return self.name or repr(self.value)


@dataclass(frozen=True)
class Parameter:
    name: str = "s"

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Unary:
    op: str
    child: "Expression"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expression"
    right: "Expression"

    def __str__(self):
        return to_text(self)


Expression = Union[Constant, Parameter, Unary, Binary]

PARAMETER = Parameter()
PI = Constant(math.pi, "pi")


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "number", "ident", "op", "end"
    text: str
    pos: int  # character index


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(
                f"unexpected character {text[pos]!r}", _byte_offset(text, pos),
                expected="number, identifier, operator or parenthesis")
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, message, expected=None, tok=None):
        tok = tok or self.tok
        return ExpressionSyntaxError(message, _byte_offset(self.text, tok.pos), expected)

    def accept(self, *ops) -> _Token | None:
        if self.tok.kind == "op" and self.tok.text in ops:
            tok = self.tok
            self.i += 1
            return tok
        return None

    def expect(self, op):
        if self.accept(op) is None:
            found = self.tok.text or "end of input"
            raise self.error(f"unexpected {found!r}", expected=repr(op))

    def parse(self) -> Expression:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}", expected="operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while (tok := self.accept("+", "-")) is not None:
            node = Binary("add" if tok.text == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while (tok := self.accept("*", "/")) is not None:
            node = Binary("mul" if tok.text == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.accept("-") is not None:
            return Unary("neg", self.unary())
        if self.accept("+") is not None:
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.accept("^", "**")
        if tok is None:
            return base
        exp_tok = self.tok
        exponent = self.unary()
        if depends_on_parameter(exponent):
            raise self.error("exponent depends on the parameter", expected="constant exponent",
                             tok=exp_tok)
        return Binary("pow", base, exponent)

    def atom(self):
        tok = self.tok
        if tok.kind == "number":
            self.i += 1
            return Constant(float(tok.text))
        if tok.kind == "ident":
            self.i += 1
            if tok.text == "s":
                return PARAMETER
            if tok.text == "pi":
                return PI
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Unary(tok.text, arg)
            raise UnknownIdentifier(tok.text, _byte_offset(self.text, tok.pos))
        if self.accept("(") is not None:
            node = self.expr()
            self.expect(")")
            return node
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}", expected="number, 's', 'pi', function or '('")


def parse(text: str) -> Expression:
    """Parse formula text into an expression tree.

    >>> evaluate(parse("2+3*4"), 0.0)
    14.0
    """
    if not text or not text.strip():
        raise ExpressionSyntaxError("empty formula", 0, expected="expression")
    return _Parser(text).parse()


def depends_on_parameter(node: Expression) -> bool:
    if isinstance(node, Parameter):
        return True
    if isinstance(node, Constant):
        return False
    if isinstance(node, Unary):
        return depends_on_parameter(node.child)
    return depends_on_parameter(node.left) or depends_on_parameter(node.right)


def is_integer_exponent(value: float) -> bool:
    return float(value).is_integer() and abs(value) < 2**31


def evaluate(node: Expression, s: float) -> float:
    """Evaluate ``node`` at parameter value ``s`` over the reals."""
    if isinstance(node, Constant):
        return node.value
    if isinstance(node, Parameter):
        return float(s)
    if isinstance(node, Unary):
        x = evaluate(node.child, s)
        if node.op == "neg":
            return -x
        if node.op == "sin":
            return math.sin(x)
        if node.op == "cos":
            return math.cos(x)
        if x < 0.0:
            raise DomainError(node, x, "square root of a negative number")
        return math.sqrt(x)
    a = evaluate(node.left, s)
    b = evaluate(node.right, s)
    op = node.op
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0.0:
            raise DomainError(node, a, "division by zero")
        return a / b
    return _real_power(node, a, b)


def _real_power(node, base: float, exponent: float) -> float:
    if is_integer_exponent(exponent):
        if base == 0.0 and exponent < 0:
            raise DomainError(node, base, "zero raised to a negative power")
        return base ** int(exponent)
    if base < 0.0 or (base == 0.0 and exponent < 0):
        raise DomainError(node, base, "non-integer power of a non-positive base")
    return base ** exponent


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}
_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}


def to_text(node: Expression) -> str:
    """Render ``node`` as formula text that :func:`parse` reads back to an equal tree."""
    if isinstance(node, Constant):
        if node.name:
            return node.name
        # repr of a negative literal would re-parse as a negation node
        text = repr(abs(node.value))
        return f"(-{text})" if math.copysign(1.0, node.value) < 0 else text
    if isinstance(node, Parameter):
        return node.name
    if isinstance(node, Unary):
        if node.op == "neg":
            return "-" + _wrap(node.child, _PREC["neg"], strict=False)
        return f"{node.op}({to_text(node.child)})"
    prec = _PREC[node.op]
    if node.op == "pow":
        left = _wrap(node.left, prec, strict=True)
        right = _wrap(node.right, prec, strict=False)
    else:
        left = _wrap(node.left, prec, strict=False)
        right = _wrap(node.right, prec, strict=True)
    return f"{left} {_SYMBOL[node.op]} {right}"


def _wrap(child, prec, strict):
    text = to_text(child)
    if isinstance(child, Binary):
        cp = _PREC[child.op]
    elif isinstance(child, Unary) and child.op == "neg":
        cp = _PREC["neg"]
    else:
        return text
    if cp < prec or (strict and cp == prec):
        return f"({text})"
    return text
