"""Tiny expression language for symbols and test functions.

Grammar (infix, usual precedence, ``^`` is right-associative power):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | VAR | FUNC '(' expr ')' | '(' expr ')'

Variables: ``theta1`` .. ``theta9`` (periodic angles), ``x`` (real line),
``r2`` (squared radius t = |z|^2).  Functions: ``cos sin exp log abs``.
Evaluation is vectorized over numpy arrays.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ParseError

FUNCTIONS = ("cos", "sin", "exp", "log", "abs")
_VAR_RE = re.compile(r"theta[1-9]$|x$|r2$")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Neg, BinOp, Call]

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unrecognized character {text[pos]!r}",
                             pos, ("number", "identifier", "operator"))
        kind = m.lastgroup
        tokens.append(("num" if kind == "num" else
                       "ident" if kind == "ident" else "op",
                       m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"got {val!r}" if val else "unexpected end of input",
                             pos, (op,))
        return self.advance()

    def parse(self) -> Expr:
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {val!r}", pos, ("end of input", "operator"))
        return node

    def expr(self) -> Expr:
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                node = BinOp(val, node, self.term())
            else:
                return node

    def term(self) -> Expr:
        node = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.advance()
                node = BinOp(val, node, self.unary())
            else:
                return node

    def unary(self) -> Expr:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        kind, val, pos = self.advance()
        if kind == "num":
            return Num(float(val))
        if kind == "ident":
            if val in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(val, arg)
            if _VAR_RE.match(val):
                return Var(val)
            raise ParseError(f"unknown identifier {val!r}", pos,
                             FUNCTIONS + ("theta<k>", "x", "r2"))
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(f"got {val!r}" if val else "unexpected end of input",
                         pos, ("number", "identifier", "("))


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree."""
    if not isinstance(text, str) or text.strip() == "":
        raise ParseError("empty expression", 0, ("number", "identifier", "("))
    return _Parser(text).parse()


_NUMPY_FUNCS = {"cos": np.cos, "sin": np.sin, "exp": np.exp, "log": np.log,
                "abs": np.abs}


def evaluate(node: Expr, env: dict) -> np.ndarray:
    """Evaluate vectorized over numpy arrays bound in ``env``."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        try:
            return env[node.name]
        except KeyError:
            raise ParseError(f"unbound variable {node.name!r}", 0,
                             tuple(sorted(env))) from None
    if isinstance(node, Neg):
        return -evaluate(node.arg, env)
    if isinstance(node, Call):
        return _NUMPY_FUNCS[node.func](evaluate(node.arg, env))
    left = evaluate(node.left, env)
    right = evaluate(node.right, env)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        return left / right
    return np.power(left, right)


def variables(node: Expr) -> frozenset:
    if isinstance(node, Var):
        return frozenset({node.name})
    if isinstance(node, Neg):
        return variables(node.arg)
    if isinstance(node, Call):
        return variables(node.arg)
    if isinstance(node, BinOp):
        return variables(node.left) | variables(node.right)
    return frozenset()


def to_string(node: Expr) -> str:
    """Round-trippable rendering (fully parenthesized where needed)."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"-({to_string(node.arg)})"
    if isinstance(node, Call):
        return f"{node.func}({to_string(node.arg)})"
    return f"({to_string(node.left)} {node.op} {to_string(node.right)})"


def polynomial_coefficients(node: Expr, var: str, max_degree: int = 64):
    """Exact monomial coefficients when ``node`` is a polynomial in ``var``.

    Returns a coefficient array ``c`` with ``expr = sum c[k] var^k``, or None
    when the expression is not a polynomial in that single variable (other
    variables, non-integer powers, transcendental calls).
    """

    def conv(a, b):
        out = np.convolve(a, b)
        if len(out) > max_degree + 1:
            raise OverflowError
        return out

    def rec(n):
        if isinstance(n, Num):
            return np.array([n.value])
        if isinstance(n, Var):
            if n.name != var:
                return None
            return np.array([0.0, 1.0])
        if isinstance(n, Neg):
            a = rec(n.arg)
            return None if a is None else -a
        if isinstance(n, Call):
            if isinstance(n.arg, Num) or not (variables(n.arg) & {var}):
                # constant subtree: fold numerically
                val = evaluate(n, {})
                return np.array([float(val)])
            return None
        a = rec(n.left)
        if a is None:
            return None
        if n.op == "^":
            if not isinstance(n.right, Num):
                return None
            k = n.right.value
            if k < 0 or k != int(k):
                return None
            out = np.array([1.0])
            for _ in range(int(k)):
                out = conv(out, a)
            return out
        b = rec(n.right)
        if b is None:
            return None
        if n.op == "+":
            m = max(len(a), len(b))
            return np.pad(a, (0, m - len(a))) + np.pad(b, (0, m - len(b)))
        if n.op == "-":
            m = max(len(a), len(b))
            return np.pad(a, (0, m - len(a))) - np.pad(b, (0, m - len(b)))
        if n.op == "*":
            return conv(a, b)
        if n.op == "/":
            if len(b) == 1:
                return a / b[0]
            return None
        return None

    try:
        coeffs = rec(node)
    except OverflowError:
        return None
    if coeffs is None:
        return None
    # trim trailing zeros but keep at least the constant term
    nz = np.nonzero(coeffs)[0]
    return coeffs[: (nz[-1] + 1)] if len(nz) else coeffs[:1]
