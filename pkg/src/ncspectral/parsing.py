"""Recursive-descent parser for oscillator entries and weight expressions.

Operator entries follow::

    EXPR   := TERM (('+'|'-') TERM)*
    TERM   := FACTOR ('*' FACTOR)*
    FACTOR := NUMBER | 'a' | 'ad' | 'N' | 'sqrt' '(' EXPR ')' | '(' EXPR ')'
            | FACTOR '^' UINT

Products compose left to right as written, so the leftmost factor acts
last.  A leading sign on an expression is accepted.  Weight expressions
(the serialized form of a band) use the same shape with the level
variable ``n`` in place of the operators and with ``/`` allowed.
"""
from __future__ import annotations

import re
from fractions import Fraction

from . import weights as W
from .errors import ParseError
from .fock import BandOperator, annihilation, creation, diagonal, identity, number

__all__ = ["parse_fock", "parse_weight", "tokenize"]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/^()]))")


def tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, weight_mode):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.weight_mode = weight_mode

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, expected=None):
        raise ParseError(message, self.text, self.tok[2], expected)

    def accept(self, value):
        if self.tok[1] == value and self.tok[0] != "end":
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            self.error(f"unexpected {self.tok[1] or 'end of input'!r}", repr(value))

    # EXPR
    def expr(self):
        sign = None
        if self.tok[1] in ("+", "-") and self.tok[0] == "op":
            sign = self.tok[1]
            self.i += 1
        value = self.term()
        if sign == "-":
            value = -value
        while self.tok[0] == "op" and self.tok[1] in ("+", "-"):
            op = self.tok[1]
            self.i += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self.tok[0] == "op" and self.tok[1] in ("*", "/"):
            op = self.tok[1]
            if op == "/" and not self.weight_mode:
                self.error("division is not part of the operator grammar", "'*', '+', '-' or end")
            self.i += 1
            rhs = self.power()
            value = value * rhs if op == "*" else value / rhs
        return value

    def power(self):
        value = self.atom()
        while self.accept("^"):
            kind, text, _ = self.tok
            if kind != "num" or not text.isdigit():
                self.error("exponent must be an unsigned integer", "UINT")
            self.i += 1
            exp = int(text)
            result = W.ONE if self.weight_mode else identity()
            for _ in range(exp):
                result = result * value
            value = result
        return value

    def atom(self):
        kind, text, pos = self.tok
        if kind == "num":
            self.i += 1
            c = Fraction(text)
            return W.Const(c) if self.weight_mode else BandOperator.scalar(c)
        if kind == "op" and text == "(":
            self.i += 1
            value = self.expr()
            self.expect(")")
            return value
        if kind == "name":
            self.i += 1
            if text == "sqrt":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return self._sqrt(arg, pos)
            if self.weight_mode:
                if text == "n":
                    return W.N
                self.i -= 1
                self.error(f"unknown name {text!r}", "'n', 'sqrt' or a number")
            if text == "a":
                return annihilation()
            if text == "ad":
                return creation()
            if text == "N":
                return number()
            self.i -= 1
            self.error(f"unknown name {text!r}", "'a', 'ad', 'N', 'sqrt' or a number")
        self.error(f"unexpected {text or 'end of input'!r}", "a number, name or '('")

    def _sqrt(self, arg, pos):
        if self.weight_mode:
            return W.sqrt(arg)
        if not arg.is_diagonal():
            raise ParseError("sqrt needs a diagonal argument", self.text, pos, "a function of N")
        return diagonal(W.sqrt(arg.weight(0)))

    def parse(self):
        value = self.expr()
        if self.tok[0] != "end":
            self.error(f"trailing input {self.tok[1]!r}", "'+', '-', '*' or end")
        return value


def parse_fock(text: str) -> BandOperator:
    """Parse an oscillator entry such as ``"sqrt(2)*a"``."""
    if not isinstance(text, str):
        if isinstance(text, (int, Fraction)):
            return BandOperator.scalar(text)
        raise ParseError(f"oscillator entries are strings, not {type(text).__name__}", str(text), 0)
    return _Parser(text, weight_mode=False).parse()


def parse_weight(text: str) -> W.Weight:
    """Parse a weight expression in the level variable ``n``."""
    return _Parser(text, weight_mode=True).parse()
