"""Integer expressions for command-line arguments, e.g. ``2^100000-1``.

Grammar (precedence climbing)::

    expr    := operand (binop operand)*
    operand := INT | '(' expr ')'
    binop   := '+' | '-' (level 1, left)  '*' (level 2, left)  '^' or '**' (level 3, right)

Evaluation is exact.  Intermediate results may not go negative, and
exponents are capped so a typo cannot exhaust memory.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import ExponentLimitError, ExprSyntaxError, NegativeResultError

__all__ = ["Num", "BinOp", "parse_int_expr", "evaluate", "eval_int_expr", "DEFAULT_EXPONENT_LIMIT"]

DEFAULT_EXPONENT_LIMIT = 1 << 20

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*^()]))")

# op -> (precedence, right associative)
_BINOPS = {"+": (1, False), "-": (1, False), "*": (2, False), "^": (3, True)}


@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int


Node = Union[Num, BinOp]


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", start)
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        else:
            op = "^" if m.group(2) == "**" else m.group(2)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def operand(self):
        kind, val, pos = self.take()
        if kind == "int":
            return Num(val, pos)
        if kind == "op" and val == "(":
            node = self.expr(1)
            kind2, val2, pos2 = self.take()
            if kind2 != "op" or val2 != ")":
                raise ExprSyntaxError("expected ')'", pos2)
            return node
        what = "end of input" if kind == "end" else repr(val)
        raise ExprSyntaxError(f"expected a number or '(' but found {what}", pos)

    def expr(self, min_prec):
        left = self.operand()
        while True:
            kind, op, pos = self.peek()
            if kind != "op" or op not in _BINOPS:
                return left
            prec, right_assoc = _BINOPS[op]
            if prec < min_prec:
                return left
            self.take()
            right = self.expr(prec if right_assoc else prec + 1)
            left = BinOp(op, left, right, pos)


def parse_int_expr(text: str) -> Node:
    p = _Parser(text)
    node = p.expr(1)
    kind, val, pos = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected {val!r}", pos)
    return node


def evaluate(node: Node, exponent_limit: int = DEFAULT_EXPONENT_LIMIT) -> int:
    if isinstance(node, Num):
        return node.value
    a = evaluate(node.left, exponent_limit)
    b = evaluate(node.right, exponent_limit)
    if node.op == "+":
        return a + b
    if node.op == "-":
        if b > a:
            raise NegativeResultError("negative intermediate result", node.pos)
        return a - b
    if node.op == "*":
        return a * b
    if b > exponent_limit:
        raise ExponentLimitError(f"exponent {b} exceeds limit {exponent_limit}", node.pos)
    return a ** b


def eval_int_expr(text: str, exponent_limit: int = DEFAULT_EXPONENT_LIMIT) -> int:
    """Parse and evaluate *text* in one go."""
    return evaluate(parse_int_expr(text), exponent_limit)
