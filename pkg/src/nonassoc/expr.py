"""Expression language over the built-in algebras.

Products are binary nodes so the grouping is part of the tree. A chain
``a*b*c`` parses left-nested and is flagged, since in a nonassociative
algebra the implicit grouping changes the value.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import Union

from .algebra import Algebra, Element, associator, commutator, mul, nonassoc_commutator
from .scalars import I, GaussianRational


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"syntax error at offset {offset}: {message}")
        self.offset = offset


class UnknownSymbolError(ValueError):
    pass


class GroupingWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Scalar:
    value: GaussianRational


@dataclass(frozen=True)
class Symbol:
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: "ExprAST"


@dataclass(frozen=True)
class Add:
    left: "ExprAST"
    right: "ExprAST"


@dataclass(frozen=True)
class Sub:
    left: "ExprAST"
    right: "ExprAST"


@dataclass(frozen=True)
class Mul:
    left: "ExprAST"
    right: "ExprAST"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["ExprAST", ...]


ExprAST = Union[Scalar, Symbol, Neg, Add, Sub, Mul, Call]

FUNCTIONS = {"comm": 2, "assoc": 3, "nacomm": 3}
SYMBOL_RE = re.compile(r"^(e[1-7]|i[0-7]|eps[1-7]|u[0-3]c?|one)$")

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/(),])|(?P<bad>\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if kind == "bad":
            raise ExprSyntaxError(f"unexpected character {value!r}", _byte_offset(text, start))
        if value == "**":
            raise ExprSyntaxError("'**' is not an operator", _byte_offset(text, start))
        tokens.append((kind, value, _byte_offset(text, start)))
        pos = m.end()
    tokens.append(("end", "", len(text.encode("utf-8"))))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.warnings: list[str] = []

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, v, off = self.take()
        if v != value or kind != "op":
            raise ExprSyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", off)

    def is_op(self, value: str) -> bool:
        kind, v, _ = self.peek()
        return kind == "op" and v == value

    def parse(self) -> ExprAST:
        if self.peek()[0] == "end":
            raise ExprSyntaxError("empty expression", 0)
        node = self.sum()
        kind, v, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {v!r}", off)
        return node

    def sum(self) -> ExprAST:
        node = self.product()
        while self.is_op("+") or self.is_op("-"):
            op = self.take()[1]
            right = self.product()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def product(self) -> ExprAST:
        start = self.peek()[2]
        node = self.unary()
        count = 0
        while self.is_op("*"):
            self.take()
            node = Mul(node, self.unary())
            count += 1
        if count >= 2:
            self.warnings.append(
                f"offset {start}: unparenthesized product chain grouped as ((a*b)*c); grouping matters here"
            )
        return node

    def unary(self) -> ExprAST:
        if self.is_op("-"):
            self.take()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> ExprAST:
        kind, v, off = self.take()
        if kind == "num":
            value = GaussianRational(int(v))
            if self.is_op("/"):
                self.take()
                k2, d, off2 = self.take()
                if k2 != "num":
                    raise ExprSyntaxError("expected an integer denominator", off2)
                if int(d) == 0:
                    raise ExprSyntaxError("zero denominator", off2)
                value = value / int(d)
            # p/q*I is a single imaginary literal
            if self.is_op("*") and self.tokens[self.pos + 1][:2] == ("name", "I"):
                self.pos += 2
                value = value * I
            return Scalar(value)
        if kind == "name":
            if v == "I":
                return Scalar(I)
            if v in FUNCTIONS:
                self.expect("(")
                args = [self.sum()]
                while self.is_op(","):
                    self.take()
                    args.append(self.sum())
                self.expect(")")
                if len(args) != FUNCTIONS[v]:
                    raise ExprSyntaxError(f"{v} takes {FUNCTIONS[v]} arguments, got {len(args)}", off)
                return Call(v, tuple(args))
            if SYMBOL_RE.match(v):
                return Symbol(v, off)
            raise ExprSyntaxError(f"unknown symbol {v!r}", off)
        if kind == "op" and v == "(":
            node = self.sum()
            self.expect(")")
            return node
        raise ExprSyntaxError(f"unexpected {v or 'end of input'!r}", off)


def parse_expression(text: str, warnings_out: list[str] | None = None) -> ExprAST:
    """Parse ``text``; grouping warnings go to ``warnings_out`` or :mod:`warnings`."""
    parser = _Parser(text)
    tree = parser.parse()
    if warnings_out is not None:
        warnings_out.extend(parser.warnings)
    else:
        for w in parser.warnings:
            warnings.warn(w, GroupingWarning, stacklevel=2)
    return tree


def _format_scalar(c: GaussianRational) -> str:
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        return "I" if c.im == 1 else f"{c.im}*I"
    return f"({c.re} + {c.im}*I)" if c.im > 0 else f"({c.re} - {-c.im}*I)"


def format_expression(node: ExprAST) -> str:
    """Canonical text; reparses to an identical tree."""
    if isinstance(node, Scalar):
        c = node.value
        if c.re < 0 or c.im < 0 and c.re == 0:
            return f"-{_format_scalar(-c)}"
        return _format_scalar(c)
    if isinstance(node, Symbol):
        return node.name
    if isinstance(node, Neg):
        inner = format_expression(node.arg)
        return f"-({inner})" if isinstance(node.arg, (Add, Sub, Mul)) or inner.startswith("-") else f"-{inner}"
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        right = format_expression(node.right)
        if isinstance(node.right, (Add, Sub)) or right.startswith("-"):
            right = f"({right})"
        return format_expression(node.left) + op + right
    if isinstance(node, Mul):
        return _factor(node.left) + "*" + _factor(node.right)
    if isinstance(node, Call):
        return f"{node.func}(" + ", ".join(format_expression(a) for a in node.args) + ")"
    raise TypeError(f"not an expression node: {node!r}")


def _factor(node: ExprAST) -> str:
    text = format_expression(node)
    if isinstance(node, (Add, Sub, Mul, Neg)) or (isinstance(node, Scalar) and not text.isdigit()):
        return f"({text})"
    return text


def evaluate(node: ExprAST, alg: Algebra) -> Element:
    if isinstance(node, Scalar):
        return alg.scalar(node.value)
    if isinstance(node, Symbol):
        if node.name == "one":
            return alg.one()
        if not alg.has_label(node.name):
            raise UnknownSymbolError(f"symbol {node.name!r} (offset {node.offset}) is not a basis element of {alg.name}")
        return alg.basis(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.arg, alg)
    if isinstance(node, Add):
        return evaluate(node.left, alg) + evaluate(node.right, alg)
    if isinstance(node, Sub):
        return evaluate(node.left, alg) - evaluate(node.right, alg)
    if isinstance(node, Mul):
        return mul(evaluate(node.left, alg), evaluate(node.right, alg))
    if isinstance(node, Call):
        args = [evaluate(a, alg) for a in node.args]
        fn = {"comm": commutator, "assoc": associator, "nacomm": nonassoc_commutator}[node.func]
        return fn(*args)
    raise TypeError(f"not an expression node: {node!r}")
