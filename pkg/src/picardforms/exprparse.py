"""
Covariant expressions: J{a}{b}{c} generators, rational literals p/q, + - * ^ and parentheses.

    expr    := term (('+' | '-') term)*
    term    := power ('*' power)*
    power   := unary ('^' INT)?
    unary   := '-' unary | atom
    atom    := INT ('/' INT)? | NAME | '(' expr ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class ExprSyntaxError(ValueError):
    def __init__(self, msg, pos, text):
        super().__init__("%s at position %d: %r" % (msg, pos, text))
        self.pos = pos


class UnknownGenerator(KeyError):
    pass


class InhomogeneousExpression(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    deg: tuple


@dataclass(frozen=True)
class Add:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


_TOKEN = re.compile(r"\s*(?:(\d+)|(J\d+|J_\{[\d,]+\}|I\d\d|[A-Za-z_]\w*)|(\S))")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1):
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ExprSyntaxError("expected %r" % op, t[2], self.text)

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ExprSyntaxError("unexpected %r" % t[1], t[2], self.text)
        return node

    def expr(self):
        terms = [(1, self.term())]
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = 1 if self.take()[1] == "+" else -1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 else Add(tuple(terms))

    def term(self):
        fs = [self.power()]
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            fs.append(self.power())
        return fs[0] if len(fs) == 1 else Mul(tuple(fs))

    def power(self):
        base = self.unary()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "int":
                raise ExprSyntaxError("exponent must be a nonnegative integer", t[2], self.text)
            return Pow(base, int(t[1]))
        return base

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return Mul((Num(Fraction(-1)), self.unary()))
        return self.atom()

    def atom(self):
        t = self.take()
        if t[0] == "int":
            num = int(t[1])
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "int":
                    raise ExprSyntaxError("expected denominator", d[2], self.text)
                if int(d[1]) == 0:
                    raise ExprSyntaxError("zero denominator", d[2], self.text)
                return Num(Fraction(num, int(d[1])))
            return Num(Fraction(num))
        if t[0] == "name":
            from .covariants import parse_jname

            try:
                return Gen(parse_jname(t[1]))
            except KeyError:
                raise UnknownGenerator("unknown generator %r at position %d" % (t[1], t[2])) from None
        if t[0] == "op" and t[1] == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError("unexpected %r" % (t[1] or "end of input"), t[2], self.text)


def parse_expr(text, homogeneous=False):
    node = _Parser(text).parse()
    if homogeneous:
        tri_degree(node)
    return node


def tri_degree(node):
    """(a, b, c) of a homogeneous expression; raises on mixed degrees."""
    if isinstance(node, Num):
        return (0, 0, 0) if node.value else None
    if isinstance(node, Gen):
        return node.deg
    if isinstance(node, Pow):
        d = tri_degree(node.base)
        return None if d is None else tuple(x * node.exp for x in d)
    if isinstance(node, Mul):
        out = (0, 0, 0)
        for f in node.factors:
            d = tri_degree(f)
            if d is None:
                return None
            out = tuple(x + y for x, y in zip(out, d))
        return out
    if isinstance(node, Add):
        degs = {tri_degree(n) for _, n in node.terms} - {None}
        if len(degs) > 1:
            raise InhomogeneousExpression("terms of degrees %s" % sorted(degs))
        return degs.pop() if degs else None
    raise TypeError(node)


def to_text(node):
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else "%d/%d" % (v.numerator, v.denominator)
    if isinstance(node, Gen):
        return "J%d%d%d" % node.deg
    if isinstance(node, Pow):
        inner = to_text(node.base)
        if not isinstance(node.base, (Gen,)) and not (isinstance(node.base, Num) and node.base.value.denominator == 1 and node.base.value >= 0):
            inner = "(%s)" % inner
        return "%s^%d" % (inner, node.exp)
    if isinstance(node, Mul):
        parts = []
        for f in node.factors:
            s = to_text(f)
            if isinstance(f, Add) or (isinstance(f, Num) and f.value < 0):
                s = "(%s)" % s
            parts.append(s)
        return "*".join(parts)
    if isinstance(node, Add):
        out = ""
        for k, (sign, n) in enumerate(node.terms):
            s = to_text(n)
            if isinstance(n, Add):
                s = "(%s)" % s
            if k == 0:
                out = s if sign > 0 else "-(%s)" % s
            else:
                out += (" + " if sign > 0 else " - ") + (("(%s)" % s) if s.startswith("-") else s)
        return out
    raise TypeError(node)


def evaluate(node, gen, const):
    """Fold the tree into a ring given generator and constant embeddings."""
    if isinstance(node, Num):
        return const(node.value)
    if isinstance(node, Gen):
        return gen(node.deg)
    if isinstance(node, Pow):
        base = evaluate(node.base, gen, const)
        out = None
        for _ in range(node.exp):
            out = base if out is None else out * base
        return const(Fraction(1)) if out is None else out
    if isinstance(node, Mul):
        out = None
        for f in node.factors:
            v = evaluate(f, gen, const)
            out = v if out is None else out * v
        return out
    if isinstance(node, Add):
        out = None
        for sign, n in node.terms:
            v = evaluate(n, gen, const)
            if sign < 0:
                v = -v
            out = v if out is None else out + v
        return out
    raise TypeError(node)


def monomials(node):
    """Flatten into {tuple of sorted generator degrees: Fraction coefficient}."""
    if isinstance(node, Num):
        return {(): node.value} if node.value else {}
    if isinstance(node, Gen):
        return {(node.deg,): Fraction(1)}
    if isinstance(node, Pow):
        out = {(): Fraction(1)}
        base = monomials(node.base)
        for _ in range(node.exp):
            out = _mul_mons(out, base)
        return out
    if isinstance(node, Mul):
        out = {(): Fraction(1)}
        for f in node.factors:
            out = _mul_mons(out, monomials(f))
        return out
    if isinstance(node, Add):
        out = {}
        for sign, n in node.terms:
            for k, v in monomials(n).items():
                out[k] = out.get(k, 0) + sign * v
        return {k: v for k, v in out.items() if v}
    raise TypeError(node)


def _mul_mons(x, y):
    out = {}
    for k1, v1 in x.items():
        for k2, v2 in y.items():
            k = tuple(sorted(k1 + k2))
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}
