"""Tokenizer and polynomial expression parser.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor | '/' INT)*
    factor := atom ('^' INT)?
    atom   := IDENT | INT | '(' expr ')'

Juxtaposition is not multiplication: ``2x`` is a syntax error.
"""

import re
from fractions import Fraction

__all__ = ["ParseError", "Token", "tokenize", "parse_poly", "ExprParser"]


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>verify-paper(?![A-Za-z0-9_])|[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()\[\],;=])
""", re.VERBOSE)


def tokenize(source):
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class ExprParser:
    """Recursive-descent parser over a token list.

    ``resolve(name, token)`` turns identifiers into polynomials; by default
    they are looked up as ring variables.
    """

    def __init__(self, tokens, ring, resolve=None):
        self.tokens = tokens
        self.i = 0
        self.ring = ring
        self.resolve = resolve or self._resolve_var

    def _resolve_var(self, name, tok):
        if name not in self.ring.index:
            raise ParseError(f"unknown variable {name!r}", tok.line, tok.col)
        return self.ring.var(name)

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.tok
        if t.text != text or t.kind == "eof":
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {text!r}, found {found}", t.line, t.col)
        return self.advance()

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def expr(self):
        sign = 1
        if self.tok.text in "+-" and self.tok.kind == "op":
            sign = -1 if self.advance().text == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.tok.kind == "op" and self.tok.text in ("*", "/"):
            op = self.advance().text
            if op == "*":
                value = value * self.factor()
            else:
                t = self.tok
                if t.kind != "int":
                    raise self.error("only division by an integer literal is allowed")
                self.advance()
                d = int(t.text)
                if d == 0 or (self.ring.field.p and d % self.ring.field.p == 0):
                    raise self.error("division by zero", t)
                value = value.scale(Fraction(1, d))
        if self.tok.kind in ("ident", "int") or self.tok.text == "(":
            raise self.error("missing operator (juxtaposition is not multiplication)")
        return value

    def factor(self):
        base = self.atom()
        if self.tok.text == "^":
            self.advance()
            t = self.tok
            if t.kind != "int":
                raise self.error("exponent must be a non-negative integer literal")
            self.advance()
            base = base ** int(t.text)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return self.ring.const(int(t.text))
        if t.kind == "ident":
            self.advance()
            return self.resolve(t.text, t)
        if t.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if t.kind == "eof":
            raise self.error("unexpected end of input in expression")
        raise self.error(f"unexpected {t.text!r} in expression")


def parse_poly(text, ring):
    """Parse a polynomial in ``ring`` from text."""
    p = ExprParser(tokenize(text), ring)
    value = p.expr()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after expression")
    return value
