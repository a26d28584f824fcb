"""Polynomial literal syntax: +, -, *, ^, parentheses, integers, variable names.

Division is accepted only by a nonzero constant (handy over Q).
"""

from __future__ import annotations

import re

from .poly import MultiPoly, PolyRing


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__("line %d, column %d: %s" % (line, col, msg))
        self.msg = msg
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\*\*|[-+*/^()]))")


def tokenize(text: str, line: int = 1, col: int = 1):
    """Yield (kind, value, line, col); kind in {'int', 'name', 'op'}."""
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:]
            stripped = rest.lstrip()
            if not stripped:
                break
            off = pos + len(rest) - len(stripped)
            l, c = _locate(text, off, line, col)
            raise ParseError("unexpected character %r" % stripped[0], l, c)
        start = m.start(m.lastindex)
        l, c = _locate(text, start, line, col)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), l, c))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), l, c))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, l, c))
        pos = m.end()
    return out


def _locate(text, offset, line, col):
    before = text[:offset]
    nl = before.count("\n")
    if nl:
        return line + nl, offset - before.rfind("\n")
    return line, col + offset


class _Parser:
    def __init__(self, tokens, ring: PolyRing, end_line=1, end_col=1):
        self.toks = tokens
        self.i = 0
        self.ring = ring
        self.end = (end_line, end_col)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", *self.end)
        self.i += 1
        return tok

    def expr(self) -> MultiPoly:
        tok = self.peek()
        sign = 1
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if tok[1] == "+" else acc - rhs
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs = self.factor()
                if tok[1] == "*":
                    acc = acc * rhs
                else:
                    if not rhs.is_constant() or not rhs:
                        raise ParseError("division only by nonzero constants", tok[2], tok[3])
                    acc = acc / rhs.constant_coeff()
            elif tok and (tok[0] in ("name", "int") or (tok[0] == "op" and tok[1] == "(")):
                # implicit multiplication, e.g. "2x" or "x y"
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            neg = False
            if e[0] == "op" and e[1] == "-":
                neg = True
                e = self.take()
            if e[0] != "int":
                raise ParseError("exponent must be an integer literal", e[2], e[3])
            if neg:
                raise ParseError("negative exponents are not polynomials", e[2], e[3])
            return base ** e[1]
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        kind, val, line, col = tok
        if kind == "int":
            return self.ring.const(val)
        if kind == "name":
            if val not in self.ring:
                raise ParseError("undeclared variable %r" % val, line, col)
            return self.ring.var(val)
        if val == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                raise ParseError("expected ')'", close[2], close[3])
            return inner
        if val == "-":
            return -self.factor()
        raise ParseError("unexpected %r" % val, line, col)


def parse_poly(text: str, ring: PolyRing, line: int = 1, col: int = 1) -> MultiPoly:
    toks = tokenize(text, line, col)
    end = _locate(text, len(text), line, col)
    p = _Parser(toks, ring, *end)
    if not toks:
        raise ParseError("empty polynomial", line, col)
    out = p.expr()
    if p.peek() is not None:
        tok = p.peek()
        raise ParseError("unexpected %r" % (tok[1],), tok[2], tok[3])
    return out


def parse_tokens(tokens, ring: PolyRing, end=(1, 1)) -> MultiPoly:
    p = _Parser(list(tokens), ring, *end)
    if not p.toks:
        raise ParseError("empty polynomial", *end)
    out = p.expr()
    if p.peek() is not None:
        tok = p.peek()
        raise ParseError("unexpected %r" % (tok[1],), tok[2], tok[3])
    return out
