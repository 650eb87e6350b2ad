"""Parser for the Lagrangian expression grammar.

::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := INT | VAR | '(' expr ')'
    VAR    := 'u[' INT ';' INT (',' INT)* ']'

``p/q`` literals are ordinary division.  The printer in ``symbolic`` emits
this grammar, and ``parse_expr(str(e)) == e`` for every canonical ``e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .multiindex import MultiIndex
from .symbolic import JetVar, ONE, RatExpr


class ExprSyntaxError(SyntaxError):
    """Malformed expression; carries 1-based ``line`` and ``column``."""

    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.column = col
        self.pos = pos


class IndexOutOfRange(ValueError):
    pass


@dataclass
class _Tok:
    kind: str
    value: object
    pos: int


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<var>u\s*\[\s*(?P<alpha>\d+)\s*;\s*(?P<idx>\d+(?:\s*,\s*\d+)*)\s*\])
  | (?P<int>\d+)
  | (?P<op>[-+*/^()−])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        if mt.group("var"):
            alpha = int(mt.group("alpha"))
            counts = [int(c) for c in mt.group("idx").split(",")]
            toks.append(_Tok("var", (alpha, tuple(counts)), pos))
        elif mt.group("int") is not None:
            toks.append(_Tok("int", int(mt.group("int")), pos))
        elif mt.group("op") is not None:
            op = mt.group("op").replace("−", "-")
            toks.append(_Tok(op, op, pos))
        pos = mt.end()
    toks.append(_Tok("eof", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, m: Optional[int], n: Optional[int]):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.m = m
        self.n = n

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: Optional[str] = None) -> _Tok:
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = "end of input" if kind == "eof" else repr(kind)
            raise ExprSyntaxError(f"expected {want}", self.text, tok.pos)
        self.i += 1
        return tok

    def expr(self) -> RatExpr:
        out = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> RatExpr:
        out = self.unary()
        while self.peek().kind in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            if tok.kind == "*":
                out = out * rhs
            else:
                if rhs.is_zero():
                    raise ExprSyntaxError("division by zero", self.text, tok.pos)
                out = out / rhs
        return out

    def unary(self) -> RatExpr:
        if self.peek().kind == "-":
            self.take()
            return -self.unary()
        if self.peek().kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RatExpr:
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int" or tok.value < 1:
                raise ExprSyntaxError("exponent must be a positive integer", self.text, tok.pos)
            self.take()
            base = base ** tok.value
        return base

    def atom(self) -> RatExpr:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return RatExpr.const(tok.value)
        if tok.kind == "var":
            self.take()
            alpha, counts = tok.value
            if self.m is not None and len(counts) != self.m:
                raise IndexOutOfRange(f"u[{alpha};...] has {len(counts)} slots, expected m={self.m}")
            if alpha < 1 or (self.n is not None and alpha > self.n):
                raise IndexOutOfRange(f"dependent index {alpha} outside 1..{self.n}")
            return RatExpr.var(JetVar(alpha, MultiIndex(counts)))
        if tok.kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if tok.kind == "eof" else repr(tok.value)
        raise ExprSyntaxError(f"unexpected {what}", self.text, tok.pos)


def parse_expr(text: str, m: Optional[int] = None, n: Optional[int] = None) -> RatExpr:
    p = _Parser(text, m, n)
    if p.peek().kind == "eof":
        raise ExprSyntaxError("empty expression", text, 0)
    out = p.expr()
    p.take("eof")
    return out


def print_expr(e: RatExpr) -> str:
    return str(e)


__all__ = ["ExprSyntaxError", "IndexOutOfRange", "parse_expr", "print_expr", "tokenize", "ONE"]
