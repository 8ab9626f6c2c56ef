"""Tokenizer and recursive-descent parser for the shared expression syntax.

Grammar (``^`` binds tightest and is right-associative; unary minus binds
looser than ``^`` so ``-x^2`` is ``-(x^2)``)::

    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' unary)?
    atom    := INTEGER | NAME | NAME '(' sum ')' | '(' sum ')'

The only function is ``exp``.  Numbers are decimal integers; fractions are
written with ``/``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

FUNCTIONS = frozenset({"exp"})


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Num | Var | Neg | BinOp | Call

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(),]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, value, offset) triples; kind is 'num', 'name' or 'op'."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, off = self.take()
        if v != value or kind != "op":
            what = "end of input" if kind == "end" else repr(v)
            raise ParseError(f"expected {value!r}, found {what}", off, self.text)

    def fail(self, tok, what="expression"):
        kind, v, off = tok
        found = "end of input" if kind == "end" else repr(v)
        raise ParseError(f"expected {what}, found {found}", off, self.text)

    def parse(self) -> Node:
        node = self.sum()
        tok = self.peek()
        if tok[0] != "end":
            self.fail(tok, "operator or end of input")
        return node

    def sum(self) -> Node:
        node = self.product()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.product())
        return node

    def product(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        kind, v, _ = self.peek()
        if kind == "op" and v == "-":
            self.take()
            return Neg(self.unary())
        if kind == "op" and v == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, v, _ = self.peek()
        if kind == "op" and v == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Node:
        tok = self.take()
        kind, v, off = tok
        if kind == "num":
            return Num(Fraction(int(v)))
        if kind == "name":
            if self.peek()[1] == "(" and self.peek()[0] == "op":
                if v not in FUNCTIONS:
                    raise ParseError(f"unknown function {v!r}", off, self.text)
                self.take()
                arg = self.sum()
                self.expect(")")
                return Call(v, arg)
            return Var(v)
        if kind == "op" and v == "(":
            node = self.sum()
            self.expect(")")
            return node
        self.fail(tok)


def parse(text: str) -> Node:
    """Parse ``text`` into an expression tree; raises ParseError with the offset."""
    return _Parser(text).parse()


def free_names(node: Node) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, Neg):
        return free_names(node.arg)
    if isinstance(node, Call):
        return free_names(node.arg)
    return free_names(node.left) | free_names(node.right)


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def to_text(node: Node) -> str:
    """Render a tree back to parseable text with minimal parentheses."""

    def prec(n):
        if isinstance(n, BinOp):
            return _PREC[n.op]
        if isinstance(n, Neg):
            return _PREC["neg"]
        if isinstance(n, Num) and n.value.denominator != 1:
            return _PREC["/"]
        if isinstance(n, Num) and n.value < 0:
            return _PREC["neg"]
        return 5

    def wrap(n, need):
        s = to_text(n)
        return f"({s})" if prec(n) < need else s

    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    if isinstance(node, Neg):
        return "-" + wrap(node.arg, _PREC["^"])
    p = _PREC[node.op]
    if node.op == "^":
        return f"{wrap(node.left, p + 1)}^{wrap(node.right, p)}"
    right_need = p + 1  # left-associative: a right operand at the same level needs parentheses
    sep = " " if p == 1 else ""
    return f"{wrap(node.left, p)}{sep}{node.op}{sep}{wrap(node.right, right_need)}"
