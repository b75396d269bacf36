"""Recursive-descent parser for scalar, form and vector-field literals.

Grammar (whitespace insignificant)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | base ('^' (uint | base))*
    base   := int | identifier | 'd'identifier | '@'identifier | '(' expr ')'

``x^2`` is a power, ``dx^dy`` a wedge; ``@x`` is the coordinate field d/dx.
A scalar factor admits at most one exponent.  Identifiers resolve to patch
coordinates first, then to the optional ``env`` of named objects.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .errors import ParseError
from .exterior import DifferentialForm, VectorField, wedge
from .scalar import Patch, ScalarField

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<at>@[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int  # character position


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", text, len(text[:bad].encode()))
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, patch: Patch, text: str, env: Optional[Mapping] = None):
        self.patch = patch
        self.text = text
        self.env = env or {}
        self.toks = _tokenize(text)
        self.i = 0

    def error(self, message, tok=None):
        tok = tok or self.toks[self.i]
        raise ParseError(message, self.text, len(self.text[:tok.pos].encode()))

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            self.error(f"expected {op!r}")
        self.i += 1

    def parse(self):
        if self.peek().kind == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected token {self.peek().text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            tok = self.take()
            rhs = self.term()
            value = self.combine(value, rhs, tok)
        return value

    def combine(self, a, b, tok):
        a, b = _unify(a, b)
        if type(a) is not type(b):
            self.error(f"cannot add {_kind(a)} and {_kind(b)}", tok)
        if isinstance(a, DifferentialForm) and a.degree != b.degree:
            self.error(f"cannot add forms of degree {a.degree} and {b.degree}", tok)
        return a + b if tok.text == "+" else a - b

    def term(self):
        value = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.take()
            rhs = self.factor()
            if tok.text == "*":
                if isinstance(value, ScalarField) or isinstance(rhs, ScalarField):
                    value = value * rhs if isinstance(rhs, ScalarField) else rhs * value
                else:
                    self.error(f"cannot multiply {_kind(value)} by {_kind(rhs)} (use ^ for wedge)", tok)
            else:
                if not isinstance(rhs, ScalarField):
                    self.error(f"cannot divide by {_kind(rhs)}", tok)
                if rhs.is_zero():
                    self.error("zero denominator", tok)
                value = value * (self.patch.one / rhs)
        return value

    def factor(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return -self.factor()
        value = self.base()
        powered = False
        while self.peek().kind == "op" and self.peek().text == "^":
            caret = self.take()
            nxt = self.peek()
            if nxt.kind == "int":
                self.take()
                if not isinstance(value, ScalarField):
                    self.error(f"cannot raise {_kind(value)} to a power", caret)
                if powered:
                    self.error("chained exponent", caret)
                value = value ** int(nxt.text)
                powered = True
            else:
                rhs = self.base()
                if not (isinstance(value, DifferentialForm) and isinstance(rhs, DifferentialForm)):
                    self.error(f"wedge needs forms, got {_kind(value)} and {_kind(rhs)}", caret)
                value = wedge(value, rhs)
        return value

    def base(self):
        tok = self.take()
        if tok.kind == "int":
            return self.patch.const(int(tok.text))
        if tok.kind == "ident":
            return self.identifier(tok)
        if tok.kind == "at":
            name = tok.text[1:]
            if name not in self.patch.coordinate_names:
                self.error(f"unknown coordinate {name!r}", tok)
            return VectorField.coordinate(self.patch, self.patch.index(name))
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        self.i -= 1
        self.error("expected a number, identifier or '('" if tok.kind != "end" else "unexpected end of input")

    def identifier(self, tok):
        name = tok.text
        names = self.patch.coordinate_names
        if name in names:
            return self.patch.coordinate(names.index(name))
        if name in self.env:
            value = self.env[name]
            if isinstance(value, DifferentialForm) and value.degree == 0:
                return value.as_function()
            return value
        if name.startswith("d") and name[1:] in names:
            return DifferentialForm.coordinate(self.patch, names.index(name[1:]))
        self.error(f"unknown identifier {name!r}", tok)


def _kind(v):
    if isinstance(v, ScalarField):
        return "scalar"
    if isinstance(v, VectorField):
        return "vector field"
    return f"{v.degree}-form"


def _unify(a, b):
    if isinstance(a, ScalarField) and isinstance(b, DifferentialForm) and b.degree == 0:
        return DifferentialForm.function(a), b
    if isinstance(b, ScalarField) and isinstance(a, DifferentialForm) and a.degree == 0:
        return a, DifferentialForm.function(b)
    return a, b


def parse_expression(patch: Patch, text: str, env: Optional[Mapping] = None):
    """Parse any literal; returns a ScalarField, DifferentialForm or VectorField."""
    return _Parser(patch, text, env).parse()


def parse_scalar(patch: Patch, text: str, env: Optional[Mapping] = None) -> ScalarField:
    value = parse_expression(patch, text, env)
    if isinstance(value, DifferentialForm) and value.degree == 0:
        value = value.as_function()
    if not isinstance(value, ScalarField):
        raise ParseError(f"expected a scalar, got a {_kind(value)}", text, 0)
    return value


def parse_form(patch: Patch, text: str, degree: Optional[int] = None,
               env: Optional[Mapping] = None) -> DifferentialForm:
    """Parse a form literal; a bare ``0`` (or any scalar when degree is 0) is accepted."""
    value = parse_expression(patch, text, env)
    if isinstance(value, ScalarField):
        if degree in (None, 0):
            value = DifferentialForm.function(value)
        elif value.is_zero():
            value = DifferentialForm.zero(patch, degree)
        else:
            raise ParseError(f"expected a {degree}-form, got a nonzero scalar", text, 0)
    if not isinstance(value, DifferentialForm):
        raise ParseError(f"expected a form, got a {_kind(value)}", text, 0)
    if degree is not None and value.degree != degree:
        if value.is_zero():
            return DifferentialForm.zero(patch, degree)
        raise ParseError(f"expected a {degree}-form, got a {value.degree}-form", text, 0)
    return value


def parse_vector(patch: Patch, text: str, env: Optional[Mapping] = None) -> VectorField:
    value = parse_expression(patch, text, env)
    if isinstance(value, ScalarField) and value.is_zero():
        return VectorField.zero(patch)
    if not isinstance(value, VectorField):
        raise ParseError(f"expected a vector field, got a {_kind(value)}", text, 0)
    return value


def parse_rational(text) -> Fraction:
    """A bare rational literal such as ``-3/4`` (used for structure constants)."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid rational literal: {exc}", str(text), 0) from None
