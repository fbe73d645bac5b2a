"""A small text syntax for product expressions.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' '-'? INT)?
    atom   := INT | 'q' | 'theta' | 'thetaN' | 'P' '(' INT ',' INT ')' | '(' expr ')'

``P(a,m)`` is ``(q^a;q^m)_inf``.  Division is only by a single monomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .products import Monomial, PochhammerFactor, ProductExpr


class ParseError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # int | name | op | end
    text: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        else:
            op = m.group(3)
            if op not in "+-*/^(),":
                raise ParseError(f"unexpected character {op!r}", m.start(3))
            toks.append(_Tok("op", op, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.cur
        if t.kind != "op" or t.text != text:
            raise ParseError(f"expected {text!r}", t.pos)
        return self.take()

    def integer(self) -> int:
        neg = False
        if self.cur.kind == "op" and self.cur.text == "-":
            self.take()
            neg = True
        t = self.cur
        if t.kind != "int":
            raise ParseError("expected an integer", t.pos)
        self.take()
        return -int(t.text) if neg else int(t.text)

    def parse(self) -> ProductExpr:
        e = self.expr()
        if self.cur.kind != "end":
            raise ParseError(f"unexpected {self.cur.text!r}", self.cur.pos)
        return e

    def expr(self) -> ProductExpr:
        acc = self.term()
        while self.cur.kind == "op" and self.cur.text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> ProductExpr:
        acc = self.unary()
        while self.cur.kind == "op" and self.cur.text in "*/":
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                acc = (acc * rhs).simplified()
            else:
                rhs = rhs.simplified()
                if len(rhs.terms) != 1:
                    raise ParseError("can only divide by a single monomial", op.pos)
                try:
                    acc = (acc / rhs).simplified()
                except (ValueError, ZeroDivisionError) as exc:
                    raise ParseError(str(exc), op.pos) from None
        return acc

    def unary(self) -> ProductExpr:
        if self.cur.kind == "op" and self.cur.text == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> ProductExpr:
        base = self.atom()
        if self.cur.kind == "op" and self.cur.text == "^":
            op = self.take()
            e = self.integer()
            try:
                return (base.simplified() ** e).simplified()
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), op.pos) from None
        return base

    def atom(self) -> ProductExpr:
        t = self.cur
        if t.kind == "int":
            self.take()
            return ProductExpr.of(Monomial(Fraction(int(t.text))))
        if t.kind == "op" and t.text == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "name":
            self.take()
            if t.text == "q":
                return ProductExpr.of(Monomial(Fraction(1), 1))
            if t.text == "theta":
                return ProductExpr.of(Monomial(theta=(("plain", 1),)))
            if t.text == "thetaN":
                return ProductExpr.of(Monomial(theta=(("weighted", 1),)))
            if t.text == "P":
                self.expect("(")
                a_tok = self.cur
                a = self.integer()
                self.expect(",")
                m = self.integer()
                self.expect(")")
                try:
                    f = PochhammerFactor(a, m)
                except ValueError as exc:
                    raise ParseError(str(exc), a_tok.pos) from None
                return ProductExpr.of(Monomial(factors=(f,)))
            raise ParseError(f"unknown name {t.text!r}", t.pos)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse_expr(text: str) -> ProductExpr:
    """Parse ``text`` into a :class:`ProductExpr`."""
    return _Parser(text).parse()
