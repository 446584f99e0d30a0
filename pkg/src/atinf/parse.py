"""Text front-end: parse polynomial expressions in x, y and print them back.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-'* atom ('^' uint)*      # '^' binds tighter than unary minus, right-assoc
    atom   := uint | uint '/' uint | 'x' | 'y' | '(' expr ')'

Offsets in errors are byte offsets into the UTF-8 encoding of the input.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra.bipoly import BiPoly
from .algebra.fields import QQ

MAX_DEPTH = 64
MAX_EXPONENT = 10_000


class ParseError(ValueError):
    """Base class for all input errors; carries a byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.message = message
        self.offset = offset


class SyntaxError(ParseError):  # noqa: A001  (deliberately shadows the builtin inside this module)
    pass


class ExponentNotInteger(ParseError):
    pass


class DepthExceeded(ParseError):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


PolyExpr = Num | Var | Neg | BinOp | Pow


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(rb"\s*(?:(\d+)|([xy])|([-+*/^()])|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'var', an operator character, 'bad' or 'eof'
    text: str
    offset: int


def tokenize(text):
    data = text.encode("utf-8")
    tokens = []
    pos = 0
    while pos < len(data):
        m = _TOKEN.match(data, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1):
            tokens.append(Token("int", m.group(1).decode(), m.start(1)))
        elif m.group(2):
            tokens.append(Token("var", m.group(2).decode(), m.start(2)))
        elif m.group(3):
            tokens.append(Token(m.group(3).decode(), m.group(3).decode(), m.start(3)))
        else:
            # decode the whole UTF-8 sequence for the message
            start = m.start(4)
            end = start + 1
            while end < len(data) and (data[end] & 0xC0) == 0x80:
                end += 1
            bad = data[start:end].decode("utf-8", errors="replace")
            raise SyntaxError(f"unexpected character {bad!r}", start)
        pos = m.end()
    tokens.append(Token("eof", "", len(data)))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text, max_depth):
        self.tokens = tokenize(text)
        self.i = 0
        self.depth = 0
        self.max_depth = max_depth

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind, what):
        if self.tok.kind != kind:
            raise SyntaxError(f"expected {what}, found {self._describe(self.tok)}", self.tok.offset)
        return self.advance()

    @staticmethod
    def _describe(tok):
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def enter(self, offset):
        self.depth += 1
        if self.depth > self.max_depth:
            raise DepthExceeded(f"nesting deeper than {self.max_depth}", offset)

    def leave(self):
        self.depth -= 1

    def parse(self):
        if self.tok.kind == "eof":
            raise SyntaxError("empty input", self.tok.offset)
        node = self.expr()
        if self.tok.kind != "eof":
            raise SyntaxError(f"unexpected {self._describe(self.tok)}", self.tok.offset)
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "*":
            self.advance()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        negs = 0
        start = self.tok.offset
        while self.tok.kind == "-":
            self.advance()
            negs += 1
            self.enter(start)
        node = self.atom()
        node = self.powers(node)
        for _ in range(negs):
            node = Neg(node)
            self.leave()
        return node

    def powers(self, base):
        if self.tok.kind != "^":
            return base
        start = self.advance().offset
        exps = [self.exponent()]
        while self.tok.kind == "^":
            self.advance()
            exps.append(self.exponent())
        # right associativity: a^b^c = a^(b^c)
        e = exps[-1]
        for b in reversed(exps[:-1]):
            if b > 1 and e > MAX_EXPONENT.bit_length():
                raise SyntaxError(f"exponent exceeds {MAX_EXPONENT}", start)
            e = b ** e
        if e > MAX_EXPONENT:
            raise SyntaxError(f"exponent exceeds {MAX_EXPONENT}", start)
        return Pow(base, e)

    def exponent(self):
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            if self.tok.kind == "/":
                raise ExponentNotInteger("exponent must be a nonnegative integer", tok.offset)
            return int(tok.text)
        if tok.kind in ("-", "var", "("):
            raise ExponentNotInteger("exponent must be a nonnegative integer literal", tok.offset)
        raise SyntaxError(f"expected exponent, found {self._describe(tok)}", tok.offset)

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            if self.tok.kind == "/":
                self.advance()
                den = self.expect("int", "denominator")
                if int(den.text) == 0:
                    raise SyntaxError("zero denominator", den.offset)
                return Num(Fraction(int(tok.text), int(den.text)))
            return Num(Fraction(int(tok.text)))
        if tok.kind == "var":
            self.advance()
            return Var(tok.text)
        if tok.kind == "(":
            self.advance()
            self.enter(tok.offset)
            node = self.expr()
            self.expect(")", "')'")
            self.leave()
            return node
        raise SyntaxError(f"expected number, variable or '(', found {self._describe(tok)}", tok.offset)


def parse_expr(text, max_depth=MAX_DEPTH):
    """Parse text into a PolyExpr tree."""
    return _Parser(text, max_depth).parse()


def to_bipoly(node):
    x, y = BiPoly.gens(QQ)
    return _eval(node, x, y)


def _eval(node, x, y):
    if isinstance(node, Num):
        return BiPoly.const(QQ, node.value)
    if isinstance(node, Var):
        return x if node.name == "x" else y
    if isinstance(node, Neg):
        return -_eval(node.arg, x, y)
    if isinstance(node, Pow):
        return _eval(node.base, x, y) ** node.exp
    # walk the left spine of a same-precedence chain iteratively
    additive = node.op in ("+", "-")
    chain = []
    while isinstance(node, BinOp) and (node.op in ("+", "-")) == additive:
        chain.append((node.op, node.right))
        node = node.left
    acc = _eval(node, x, y)
    for op, right in reversed(chain):
        r = _eval(right, x, y)
        acc = acc + r if op == "+" else acc - r if op == "-" else acc * r
    return acc


def parse_poly(text, max_depth=MAX_DEPTH):
    """Parse and expand a polynomial in x and y with rational coefficients."""
    return to_bipoly(parse_expr(text, max_depth))


# ---------------------------------------------------------------------------
# printing


def _monomial(i, j, vars):
    parts = []
    for name, e in zip(vars, (i, j)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _coeff(c):
    if isinstance(c, Fraction):
        return str(abs(c)), c < 0
    if c == 1 or c == -1:
        return "1", c == -1
    s = str(c)
    if any(op in s.lstrip("-") for op in "+- /"):
        return f"({s})", False
    return s.lstrip("-"), s.startswith("-")


def format_poly(p):
    """Canonical text: graded lexicographic order, x before y."""
    if p.is_zero():
        return "0"
    out = []
    for (i, j), c in p.sorted_terms():
        text, neg = _coeff(c)
        mono = _monomial(i, j, p.vars)
        if mono and text == "1":
            body = mono
        elif mono:
            body = f"{text}*{mono}"
        else:
            body = text
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


__all__ = [
    "BinOp", "DepthExceeded", "ExponentNotInteger", "MAX_DEPTH", "MAX_EXPONENT", "Neg", "Num", "ParseError", "PolyExpr",
    "Pow", "SyntaxError", "Token", "Var", "format_poly", "parse_expr", "parse_poly", "to_bipoly", "tokenize",
]
