"""Holomorphic expression language: parsing, evaluation, complex forward-mode
differentiation, and affine reparametrization.

Grammar (variables ``z1``..``z9``, constants ``i``, ``pi``, ``e``)::

    expr    :=  term (('+' | '-') term)*
    term    :=  factor (('*' | '/') factor)*
    factor  :=  '-' factor | power
    power   :=  atom ('^' exponent)?          # exponent: signed integer literal
    atom    :=  number | variable | constant | name '(' expr ')' | '(' expr ')'

Functions: ``exp``, ``sin``, ``cos``, ``log`` (principal branch).  Integer
exponents only, so every parsed expression is single-valued holomorphic away
from poles of ``/`` and negative powers, and away from log branch points.
Complex literals are written arithmetically, e.g. ``2+3*i``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    BranchError,
    DimensionMismatchError,
    EvaluationError,
    ExprSyntaxError,
    PoleError,
)

# Divisors with modulus below this raise PoleError; log below it raises BranchError.
POLE_THRESHOLD = 1e-300

CPoint = tuple[complex, ...]

FUNCTIONS = ("exp", "sin", "cos", "log")
CONSTANTS = {"i": 1j, "pi": complex(cmath.pi), "e": complex(cmath.e)}


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int  # 1-based


@dataclass(frozen=True)
class Const:
    value: complex


@dataclass(frozen=True)
class Neg:
    child: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Func:
    name: str
    arg: "Node"


Node = Union[Var, Const, Neg, BinOp, Pow, Func]


@dataclass(frozen=True)
class HoloExpr:
    """A holomorphic function of ``dimension`` complex variables."""

    dimension: int
    root: Node


@dataclass(frozen=True)
class Jet:
    """Function value together with the complex gradient (d/dz_1,...,d/dz_n)."""

    value: complex
    gradient: tuple[complex, ...]


# --------------------------------------------------------------------------
# Tokenizer / parser
# --------------------------------------------------------------------------

_OPERATORS = set("+-*/^()")


def _tokenize(source: str) -> list[tuple[str, object, int]]:
    """Returns (kind, payload, position) triples; kind in {num, name, op}."""
    tokens = []
    pos = 0
    n = len(source)
    while pos < n:
        ch = source[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _OPERATORS:
            tokens.append(("op", ch, pos))
            pos += 1
            continue
        if ch.isdigit() or ch == ".":
            start = pos
            while pos < n and (source[pos].isdigit() or source[pos] == "."):
                pos += 1
            # scientific notation
            if pos < n and source[pos] in "eE" and pos + 1 < n and (
                source[pos + 1].isdigit() or source[pos + 1] in "+-"
            ):
                pos += 2
                while pos < n and source[pos].isdigit():
                    pos += 1
            text = source[start:pos]
            try:
                value = float(text)
            except ValueError:
                raise ExprSyntaxError(f"malformed number {text!r}", start)
            tokens.append(("num", value, start))
            continue
        if ch.isalpha():
            start = pos
            while pos < n and (source[pos].isalnum() or source[pos] == "_"):
                pos += 1
            tokens.append(("name", source[start:pos], start))
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", pos)
    return tokens


def _fold_neg(child: Node) -> Node:
    if isinstance(child, Const):
        return Const(-child.value)
    return Neg(child)


def _fold_bin(op: str, left: Node, right: Node) -> Node:
    # Fold constant +,-,* so complex literals like 2+3*i parse to one Const
    # node (keeps the canonical printer's output stable under re-parsing).
    if op in "+-*" and isinstance(left, Const) and isinstance(right, Const):
        value = {
            "+": left.value + right.value,
            "-": left.value - right.value,
            "*": left.value * right.value,
        }[op]
        if cmath.isfinite(value):
            return Const(value)
    return BinOp(op, left, right)


class _Parser:
    def __init__(self, tokens: list[tuple[str, object, int]], dimension: int, length: int):
        self.tokens = tokens
        self.dimension = dimension
        self.pos = 0
        self.end = length

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", self.end)
        self.pos += 1
        return tok

    def _expect_op(self, op: str):
        tok = self._next()
        if tok[0] != "op" or tok[1] != op:
            raise ExprSyntaxError(f"expected {op!r}", tok[2])

    def parse(self) -> Node:
        node = self.expr()
        tok = self._peek()
        if tok is not None:
            raise ExprSyntaxError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Node:
        node = self.term()
        while (tok := self._peek()) and tok[0] == "op" and tok[1] in "+-":
            self.pos += 1
            node = _fold_bin(tok[1], node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while (tok := self._peek()) and tok[0] == "op" and tok[1] in "*/":
            self.pos += 1
            node = _fold_bin(tok[1], node, self.factor())
        return node

    def factor(self) -> Node:
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.pos += 1
            return _fold_neg(self.factor())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.pos += 1
            return Pow(base, self._exponent())
        return base

    def _exponent(self) -> int:
        sign = 1
        tok = self._next()
        if tok[0] == "op" and tok[1] == "-":
            sign = -1
            tok = self._next()
        if tok[0] != "num":
            raise ExprSyntaxError("expected integer exponent", tok[2])
        value = tok[1]
        if value != int(value):
            raise ExprSyntaxError(f"non-integer exponent {value!r}", tok[2])
        return sign * int(value)

    def atom(self) -> Node:
        tok = self._next()
        kind, payload, pos = tok
        if kind == "num":
            return Const(complex(payload))
        if kind == "op" and payload == "(":
            node = self.expr()
            self._expect_op(")")
            return node
        if kind == "name":
            name = payload
            if name in CONSTANTS:
                return Const(CONSTANTS[name])
            if name in FUNCTIONS:
                self._expect_op("(")
                arg = self.expr()
                self._expect_op(")")
                return Func(name, arg)
            if name.startswith("z") and name[1:].isdigit():
                index = int(name[1:])
                if index < 1:
                    raise ExprSyntaxError(f"invalid variable {name!r}", pos)
                if index > self.dimension:
                    raise ExprSyntaxError(
                        f"variable {name!r} exceeds dimension {self.dimension}", pos
                    )
                return Var(index)
            raise ExprSyntaxError(f"unknown identifier {name!r}", pos)
        raise ExprSyntaxError(f"unexpected token {payload!r}", pos)


def parse(source: str, dimension: int) -> HoloExpr:
    """Parse ``source`` into an expression over variables z1..z{dimension}."""
    if not source or not source.strip():
        raise ExprSyntaxError("empty source", 0)
    if dimension < 1:
        raise ValueError(f"dimension must be >= 1, got {dimension}")
    tokens = _tokenize(source)
    root = _Parser(tokens, dimension, len(source)).parse()
    return HoloExpr(dimension, root)


# --------------------------------------------------------------------------
# Canonical printer
# --------------------------------------------------------------------------

def _print(node: Node) -> str:
    # Fully parenthesized canonical form; round-trips through `parse`.
    if isinstance(node, Var):
        return f"z{node.index}"
    if isinstance(node, Const):
        v = node.value
        if v.imag == 0.0:
            return f"({v.real!r})"
        return f"({v.real!r}+({v.imag!r})*i)"
    if isinstance(node, Neg):
        return f"(-{_print(node.child)})"
    if isinstance(node, BinOp):
        return f"({_print(node.left)}{node.op}{_print(node.right)})"
    if isinstance(node, Pow):
        e = node.exponent
        return f"({_print(node.base)}^{e})" if e >= 0 else f"({_print(node.base)}^-{-e})"
    if isinstance(node, Func):
        return f"{node.name}({_print(node.arg)})"
    raise TypeError(f"unknown node {node!r}")


def to_source(expr: HoloExpr) -> str:
    """Canonical textual form; ``parse(to_source(e), e.dimension)`` is structurally e."""
    return _print(expr.root)


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------

def _check_finite(value: complex) -> complex:
    if not (cmath.isfinite(value)):
        raise EvaluationError(f"non-finite intermediate value {value!r}")
    return value


def _scalar_pow(base: complex, exponent: int) -> complex:
    if exponent < 0 and abs(base) < POLE_THRESHOLD:
        raise PoleError(f"negative power of near-zero base (|base|={abs(base):.3e})")
    return _check_finite(base ** exponent)


def _eval_scalar(node: Node, z: CPoint) -> complex:
    if isinstance(node, Var):
        return z[node.index - 1]
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Neg):
        return -_eval_scalar(node.child, z)
    if isinstance(node, BinOp):
        a = _eval_scalar(node.left, z)
        b = _eval_scalar(node.right, z)
        if node.op == "+":
            return _check_finite(a + b)
        if node.op == "-":
            return _check_finite(a - b)
        if node.op == "*":
            return _check_finite(a * b)
        if abs(b) < POLE_THRESHOLD:
            raise PoleError(f"division by near-zero value (|b|={abs(b):.3e})")
        return _check_finite(a / b)
    if isinstance(node, Pow):
        return _scalar_pow(_eval_scalar(node.base, z), node.exponent)
    if isinstance(node, Func):
        a = _eval_scalar(node.arg, z)
        if node.name == "exp":
            return _check_finite(cmath.exp(a))
        if node.name == "sin":
            return _check_finite(cmath.sin(a))
        if node.name == "cos":
            return _check_finite(cmath.cos(a))
        # log: principal branch, undefined at 0
        if abs(a) < POLE_THRESHOLD:
            raise BranchError("log applied at 0")
        return _check_finite(cmath.log(a))
    raise TypeError(f"unknown node {node!r}")


class _JetNum:
    """Scratch value for forward-mode differentiation: value + gradient row."""

    __slots__ = ("v", "g")

    def __init__(self, v: complex, g: np.ndarray):
        self.v = v
        self.g = g  # shape (n,), complex

    def check(self) -> "_JetNum":
        if not cmath.isfinite(self.v) or not np.all(np.isfinite(self.g.view(float))):
            raise EvaluationError("non-finite intermediate jet")
        return self


def _eval_jet(node: Node, z: CPoint, n: int) -> _JetNum:
    if isinstance(node, Var):
        g = np.zeros(n, dtype=complex)
        g[node.index - 1] = 1.0
        return _JetNum(z[node.index - 1], g)
    if isinstance(node, Const):
        return _JetNum(node.value, np.zeros(n, dtype=complex))
    if isinstance(node, Neg):
        a = _eval_jet(node.child, z, n)
        return _JetNum(-a.v, -a.g)
    if isinstance(node, BinOp):
        a = _eval_jet(node.left, z, n)
        b = _eval_jet(node.right, z, n)
        if node.op == "+":
            return _JetNum(a.v + b.v, a.g + b.g).check()
        if node.op == "-":
            return _JetNum(a.v - b.v, a.g - b.g).check()
        if node.op == "*":
            return _JetNum(a.v * b.v, a.v * b.g + b.v * a.g).check()
        if abs(b.v) < POLE_THRESHOLD:
            raise PoleError(f"division by near-zero value (|b|={abs(b.v):.3e})")
        return _JetNum(a.v / b.v, (a.g * b.v - a.v * b.g) / (b.v * b.v)).check()
    if isinstance(node, Pow):
        a = _eval_jet(node.base, z, n)
        k = node.exponent
        if k == 0:
            return _JetNum(1.0 + 0j, np.zeros(n, dtype=complex))
        if k < 0 and abs(a.v) < POLE_THRESHOLD:
            raise PoleError(f"negative power of near-zero base (|base|={abs(a.v):.3e})")
        value = a.v ** k
        deriv = k * a.v ** (k - 1)
        return _JetNum(value, deriv * a.g).check()
    if isinstance(node, Func):
        a = _eval_jet(node.arg, z, n)
        if node.name == "exp":
            v = cmath.exp(a.v)
            return _JetNum(v, v * a.g).check()
        if node.name == "sin":
            return _JetNum(cmath.sin(a.v), cmath.cos(a.v) * a.g).check()
        if node.name == "cos":
            return _JetNum(cmath.cos(a.v), -cmath.sin(a.v) * a.g).check()
        if abs(a.v) < POLE_THRESHOLD:
            raise BranchError("log applied at 0")
        return _JetNum(cmath.log(a.v), a.g / a.v).check()
    raise TypeError(f"unknown node {node!r}")


def _check_point(expr: HoloExpr, z: CPoint) -> CPoint:
    if len(z) != expr.dimension:
        raise DimensionMismatchError(
            f"point has dimension {len(z)}, expression expects {expr.dimension}"
        )
    return tuple(complex(c) for c in z)


def evaluate(expr: HoloExpr, z: CPoint) -> complex:
    """Evaluate the expression at a point of matching dimension."""
    z = _check_point(expr, z)
    try:
        return _eval_scalar(expr.root, z)
    except OverflowError as exc:
        raise EvaluationError(f"overflow during evaluation: {exc}") from exc


def evaluate_jet(expr: HoloExpr, z: CPoint) -> Jet:
    """Value and complex gradient at z, by forward-mode dual propagation."""
    z = _check_point(expr, z)
    try:
        jet = _eval_jet(expr.root, z, expr.dimension)
    except OverflowError as exc:
        raise EvaluationError(f"overflow during evaluation: {exc}") from exc
    return Jet(jet.v, tuple(jet.g))


# --------------------------------------------------------------------------
# Affine reparametrization
# --------------------------------------------------------------------------

def _substitute(node: Node, replacements: dict[int, Node]) -> Node:
    if isinstance(node, Var):
        return replacements[node.index]
    if isinstance(node, Const):
        return node
    if isinstance(node, Neg):
        return Neg(_substitute(node.child, replacements))
    if isinstance(node, BinOp):
        return BinOp(
            node.op,
            _substitute(node.left, replacements),
            _substitute(node.right, replacements),
        )
    if isinstance(node, Pow):
        return Pow(_substitute(node.base, replacements), node.exponent)
    if isinstance(node, Func):
        return Func(node.name, _substitute(node.arg, replacements))
    raise TypeError(f"unknown node {node!r}")


def affine_pullback(expr: HoloExpr, base: CPoint, scale: complex) -> HoloExpr:
    """Symbolic AST of zeta -> f(base + scale*zeta); exact, no approximation."""
    if len(base) != expr.dimension:
        raise DimensionMismatchError(
            f"base has dimension {len(base)}, expression expects {expr.dimension}"
        )
    scale = complex(scale)
    if scale == 0:
        raise ValueError("scale must be nonzero")
    replacements = {
        k + 1: BinOp("+", Const(complex(base[k])), BinOp("*", Const(scale), Var(k + 1)))
        for k in range(expr.dimension)
    }
    return HoloExpr(expr.dimension, _substitute(expr.root, replacements))
