"""Expression front-end: text to canonical algebra elements.

Grammar (whitespace insensitive, '*' mandatory between factors):

    expr   := term (('+'|'-') term)*
    term   := '-'? factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := 'A' | 'B' | 'C' | 'I' | 'q' | rational
            | '[' expr ',' expr ']' | '(' expr ')'

Rationals are ``a`` or ``a/b``; 'C' is surface syntax for [A, B]; scalar
atoms commute with everything during elaboration.  Exponents are
nonnegative integers and are capped to keep elaboration finite.
"""

from __future__ import annotations

from fractions import Fraction

from .heisenberg import Element, Monomial, commutator
from .qscalar import ScalarContext

__all__ = ["ParseError", "parse_expression", "elaborate", "parse_element"]

MAX_EXPONENT = 4096


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in "+-*^[](),/":
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.value!r}", tok.line, tok.col)
        return self.advance()

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col)

    # expr := term (('+'|'-') term)*
    def expr(self):
        parts = [(1, self.term())]
        while self.peek().kind in ("+", "-"):
            sign = 1 if self.advance().kind == "+" else -1
            parts.append((sign, self.term()))
        return ("sum", tuple(parts))

    # term := '-'? factor ('*' factor)*
    def term(self):
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        factors = [self.factor()]
        while self.peek().kind == "*":
            self.advance()
            factors.append(self.factor())
        node = ("product", tuple(factors))
        return ("neg", node) if negate else node

    # factor := atom ('^' nat)?
    def factor(self):
        node = self.atom()
        if self.peek().kind == "^":
            caret = self.advance()
            tok = self.expect("int")
            if tok.value > MAX_EXPONENT:
                raise ParseError(f"exponent overflow: {tok.value} > {MAX_EXPONENT}",
                                 tok.line, tok.col)
            node = ("pow", node, tok.value)
        return node

    def atom(self):
        tok = self.peek()
        if tok.kind == "name":
            self.advance()
            if tok.value in ("A", "B", "C", "I", "q"):
                return ("atom", tok.value)
            raise ParseError(f"unknown symbol {tok.value!r}", tok.line, tok.col)
        if tok.kind == "int":
            self.advance()
            if self.peek().kind == "/":
                self.advance()
                den = self.expect("int")
                if den.value == 0:
                    raise ParseError("zero denominator in rational literal",
                                     den.line, den.col)
                return ("num", Fraction(tok.value, den.value))
            return ("num", Fraction(tok.value))
        if tok.kind == "[":
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return ("bracket", left, right)
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"expected an atom, found {tok.value!r}", tok.line, tok.col)


def parse_expression(text: str):
    """Parse expression text to an AST; raises ParseError with position."""
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input starting at {tok.value!r}", tok.line, tok.col)
    return node


_ATOMS = {
    "A": Monomial(0, -1),
    "B": Monomial(0, 1),
    "C": Monomial(1, 0),
    "I": Monomial(0, 0),
}


def elaborate(node, ctx: ScalarContext) -> Element:
    """Fold an AST into a canonical element of the algebra."""
    kind = node[0]
    if kind == "atom":
        if node[1] == "q":
            return Element.identity(ctx).scale(ctx.q())
        return Element.monomial(ctx, _ATOMS[node[1]])
    if kind == "num":
        return Element.identity(ctx).scale(ctx.from_fraction(node[1]))
    if kind == "pow":
        return elaborate(node[1], ctx) ** node[2]
    if kind == "product":
        out = Element.identity(ctx)
        for sub in node[1]:
            out = out * elaborate(sub, ctx)
        return out
    if kind == "neg":
        return -elaborate(node[1], ctx)
    if kind == "bracket":
        return commutator(elaborate(node[1], ctx), elaborate(node[2], ctx))
    if kind == "sum":
        out = Element.zero(ctx)
        for sign, sub in node[1]:
            val = elaborate(sub, ctx)
            out = out + (val if sign > 0 else -val)
        return out
    raise AssertionError(f"unhandled node {node!r}")


def parse_element(text: str, ctx: ScalarContext) -> Element:
    return elaborate(parse_expression(text), ctx)
