"""Text format for difference systems.

A system file is a sequence of lines::

    # comment
    vars: y1 y2 y3
    f1: y1^(1) - y1*y3
    f2: y2^(1) - y2*y3
    f3: y1 + y2 - 1
    q1: y3 - 1

``name^(k)`` is the ``k``-th transform of a declared variable and ``^k``
(without parentheses) is an ordinary power, so ``y2^(4)^3`` is the cube of
``y2^(4)``. Coefficients are integers or ``p/q`` rationals. Operators are
``+ - *`` and parentheses; precedence is ``^`` > unary ``-`` > ``*`` >
binary ``+ -``. Juxtaposition is not multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .diffpoly import DiffPolynomial, DiffSystem, system_metadata


class ParseError(ValueError):
    """Syntax or declaration error, with 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass
class _Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    col: int


def _tokenize(text: str, line: int, col0: int) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[bad]!r}", line, col0 + bad)
        kind = m.lastgroup
        assert kind is not None
        tokens.append(_Token(kind, m.group(kind), col0 + m.start(kind)))
        pos = m.end()
    tokens.append(_Token("end", "", col0 + len(text)))
    return tokens


class _ExprParser:
    def __init__(self, text: str, index: dict[str, int], line: int, col0: int):
        self.tokens = _tokenize(text, line, col0)
        self.pos = 0
        self.index = index
        self.line = line

    def error(self, msg: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok.col)

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def accept(self, op: str) -> bool:
        tok = self.peek()
        if tok.kind == "op" and tok.text == op:
            self.pos += 1
            return True
        return False

    def expect(self, op: str) -> _Token:
        tok = self.peek()
        if tok.kind == "op" and tok.text == op:
            self.pos += 1
            return tok
        raise self.error(f"expected {op!r}, found {tok.text or 'end of input'!r}")

    def parse(self) -> DiffPolynomial:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        result = self.sum()
        tok = self.peek()
        if tok.kind != "end":
            raise self.error(f"unexpected {tok.text!r}")
        return result

    def sum(self) -> DiffPolynomial:
        acc = self.product()
        while True:
            if self.accept("+"):
                acc = acc + self.product()
            elif self.accept("-"):
                acc = acc - self.product()
            else:
                return acc

    def product(self) -> DiffPolynomial:
        acc = self.unary()
        while self.accept("*"):
            acc = acc * self.unary()
        return acc

    def unary(self) -> DiffPolynomial:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> DiffPolynomial:
        base = self.primary()
        while self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "num":
                raise self.error("expected a non-negative integer exponent after '^'", tok)
            self.take()
            base = base ** int(tok.text)
        return base

    def integer(self) -> int:
        neg = self.accept("-")
        tok = self.peek()
        if tok.kind != "num":
            raise self.error("expected an integer", tok)
        self.take()
        return -int(tok.text) if neg else int(tok.text)

    def primary(self) -> DiffPolynomial:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            num = int(tok.text)
            if self.accept("/"):
                den_tok = self.peek()
                if den_tok.kind != "num":
                    raise self.error("expected an integer denominator", den_tok)
                self.take()
                den = int(den_tok.text)
                if den == 0:
                    raise self.error("zero denominator", den_tok)
                return DiffPolynomial.constant(Fraction(num, den))
            return DiffPolynomial.constant(num)
        if tok.kind == "name":
            self.take()
            if tok.text not in self.index:
                raise self.error(f"undeclared variable {tok.text!r}", tok)
            order = 0
            nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            if self.peek().text == "^" and nxt is not None and nxt.kind == "op" and nxt.text == "(":
                self.take()
                self.take()
                order_tok = self.peek()
                order = self.integer()
                if order < 0:
                    raise self.error("transform order must be non-negative", order_tok)
                if self.peek().kind == "op" and self.peek().text != ")":
                    raise self.error("transform order must be an integer")
                self.expect(")")
            return DiffPolynomial.var(self.index[tok.text], order)
        if self.accept("("):
            inner = self.sum()
            self.expect(")")
            return inner
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")


def _index(vars: Sequence[str]) -> dict[str, int]:
    index: dict[str, int] = {}
    for k, name in enumerate(vars, 1):
        if not _NAME_RE.match(name):
            raise ParseError(f"invalid variable name {name!r}")
        if name in index:
            raise ParseError(f"duplicate variable {name!r}")
        index[name] = k
    return index


def parse_polynomial(text: str, vars: Sequence[str], *, line: int = 1, column: int = 1) -> DiffPolynomial:
    """Parse one expression; ``vars[j-1]`` names ``y_j``."""
    return _ExprParser(text, _index(vars), line, column).parse()


@dataclass
class SystemFile:
    """Parsed contents of a system file."""

    names: list[str]
    equations: dict[str, DiffPolynomial] = field(default_factory=dict)
    queries: dict[str, DiffPolynomial] = field(default_factory=dict)

    @property
    def system(self) -> DiffSystem:
        return system_metadata(list(self.equations.values()), len(self.names), self.names)


_LINE_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*:")


def parse_system_file(text: str) -> SystemFile:
    """Parse a whole system file. Equation labels start with ``f``, query labels with ``q``."""
    names: list[str] | None = None
    index: dict[str, int] = {}
    equations: dict[str, DiffPolynomial] = {}
    queries: dict[str, DiffPolynomial] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip("\r")
        if not line.strip():
            continue
        m = _LINE_RE.match(line)
        if m is None:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected '<label>: ...'", lineno, col)
        label = m.group(1)
        body = line[m.end():]
        body_col = m.end() + 1
        if label == "vars":
            if names is not None:
                raise ParseError("duplicate 'vars' declaration", lineno, 1)
            names = body.split()
            if not names:
                raise ParseError("'vars' declares no variables", lineno, body_col)
            try:
                index = _index(names)
            except ParseError as exc:
                raise ParseError(exc.message, lineno, body_col) from None
            continue
        if names is None:
            raise ParseError("'vars' must be declared before equations", lineno, 1)
        if label[0] == "f":
            target = equations
        elif label[0] == "q":
            target = queries
        else:
            raise ParseError(f"unknown label {label!r}; use f<k> or q<k>", lineno, m.start(1) + 1)
        if label in equations or label in queries:
            raise ParseError(f"duplicate label {label!r}", lineno, m.start(1) + 1)
        target[label] = _ExprParser(body, index, lineno, body_col).parse()
    if names is None:
        raise ParseError("missing 'vars' declaration", 1, 1)
    if not equations:
        raise ParseError("no equations", 1, 1)
    return SystemFile(names=names, equations=equations, queries=queries)


def parse_system(text: str) -> DiffSystem:
    """Parse a system file and compute its metadata."""
    return parse_system_file(text).system
