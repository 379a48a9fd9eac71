"""Canonical text, LaTeX and JSON forms for polynomials and rational functions.

Text form examples::

    u1^2-2*u1*u2+u2^2
    (u1+2*u2)/(12*u1*u2*(u1+u2))
    -1/(24*u1*(u1+u2)*u3)
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, List, Tuple

from ._backend import Q, as_q, to_fraction
from .exact import (
    Polynomial,
    RationalFunction,
    mono_decode,
    mono_of,
    slot,
    slot_family,
    slot_index,
    slot_name,
)


def _mono_text(m: int, latex: bool = False) -> str:
    parts = []
    for s, e in mono_decode(m):
        name = f"{slot_family(s)}_{{{slot_index(s)}}}" if latex else slot_name(s)
        if e == 1:
            parts.append(name)
        else:
            parts.append(f"{name}^{{{e}}}" if latex else f"{name}^{e}")
    return ("" if latex else "*").join(parts)


def _q_text(c) -> str:
    c = to_fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        if m == 0:
            body = _q_text(a)
        elif a == 1:
            body = _mono_text(m)
        else:
            body = f"{_q_text(a)}*{_mono_text(m)}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


def _content(p: Polynomial) -> Tuple[Fraction, Polynomial]:
    """``p = c * P`` with P integral, primitive and leading coefficient > 0."""
    terms = p.sorted_terms()
    den = 1
    for _, c in terms:
        d = int(c.denominator)
        den = den * d // math.gcd(den, d)
    g = 0
    for _, c in terms:
        g = math.gcd(g, int(c * den))
    if terms[0][1] < 0:
        g = -g
    c = Fraction(g, den)
    inv = as_q(Fraction(den, g))
    return c, Polynomial({m: v * inv for m, v in p.terms.items()})


def _wrap(s: str, p: Polynomial) -> str:
    return f"({s})" if len(p.terms) > 1 else s


def _den_items(rf: RationalFunction, latex: bool = False) -> List[str]:
    items = []
    for f, k in rf.den:
        p = f.to_poly()
        s = render_latex_poly(p) if latex else render_polynomial(p)
        s = _wrap(s, p)
        if k > 1:
            s = f"{s}^{{{k}}}" if latex else f"{s}^{k}"
        items.append(s)
    return items


def render_rf(rf: RationalFunction) -> str:
    """Canonical text form; bit-exact and re-parseable."""
    if rf.is_zero():
        return "0"
    num = rf.num
    if not rf.den:
        return render_polynomial(num)
    c, P = _content(num)
    a, b = c.numerator, c.denominator
    if P.is_constant():
        ntxt = str(a)
    else:
        ptxt = _wrap(render_polynomial(P), P)
        if a == 1:
            ntxt = ptxt
        elif a == -1:
            ntxt = "-" + ptxt
        else:
            ntxt = f"{a}*{ptxt}"
    items = ([str(b)] if b != 1 else []) + _den_items(rf)
    dtxt = items[0] if len(items) == 1 else "(" + "*".join(items) + ")"
    return f"{ntxt}/{dtxt}"


def render_latex_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = to_fraction(-c if neg else c)
        if m == 0:
            body = str(a) if a.denominator == 1 else f"\\tfrac{{{a.numerator}}}{{{a.denominator}}}"
        elif a == 1:
            body = _mono_text(m, latex=True)
        elif a.denominator == 1:
            body = f"{a.numerator}{_mono_text(m, latex=True)}"
        else:
            body = f"\\tfrac{{{a.numerator}}}{{{a.denominator}}}{_mono_text(m, latex=True)}"
        out.append(("-" if neg else "") + body if i == 0 else ("-" if neg else "+") + body)
    return "".join(out)


def render_latex(rf: RationalFunction) -> str:
    if rf.is_zero():
        return "0"
    if not rf.den:
        return render_latex_poly(rf.num)
    c, P = _content(rf.num)
    a, b = c.numerator, c.denominator
    sign = "-" if a < 0 else ""
    a = abs(a)
    if P.is_constant():
        top = str(a)
    else:
        top = render_latex_poly(P) if a == 1 else f"{a}({render_latex_poly(P)})"
    bottom = "".join(([str(b)] if b != 1 else []) + _den_items(rf, latex=True))
    return f"{sign}{{{{{top}}}\\over{{{bottom}}}}}"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([uvz])(\d+)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _tokenize(src: str):
    pos = 0
    toks = []
    src = src.replace("−", "-")
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        if m.group(1):
            toks.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            toks.append(("var", slot(m.group(2), int(m.group(3))), m.start(2)))
        else:
            op = m.group(4)
            toks.append(("op", "^" if op == "**" else op, m.start(4)))
        pos = m.end()
    toks.append(("end", None, len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, op=None):
        t = self.toks[self.i]
        if op is not None and (t[0] != "op" or t[1] != op):
            raise ParseError(f"expected {op!r}", t[2])
        self.i += 1
        return t

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return ("neg", self.unary())
        if t[0] == "op" and t[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num":
                raise ParseError("expected integer exponent", t[2])
            node = ("pow", node, t[1])
        return node

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return ("num", t[1])
        if t[0] == "var":
            return ("var", t[1])
        if t[0] == "op" and t[1] == "(":
            node = self.expr()
            self.take(")")
            return node
        raise ParseError("unexpected token", t[2])


def _factors(node) -> List:
    if node[0] == "mul":
        return _factors(node[1]) + _factors(node[2])
    if node[0] == "pow":
        return _factors(node[1]) * node[2]
    if node[0] == "neg":
        return [("num", -1)] + _factors(node[1])
    return [node]


def _eval(node) -> RationalFunction:
    kind = node[0]
    if kind == "num":
        return RationalFunction.constant(node[1])
    if kind == "var":
        return RationalFunction.variable(node[1])
    if kind == "add":
        return _eval(node[1]) + _eval(node[2])
    if kind == "sub":
        return _eval(node[1]) - _eval(node[2])
    if kind == "mul":
        return _eval(node[1]) * _eval(node[2])
    if kind == "neg":
        return -_eval(node[1])
    if kind == "pow":
        return _eval(node[1]) ** node[2]
    if kind == "div":
        acc = _eval(node[1])
        for f in _factors(node[2]):
            acc = acc / _eval(f)
        return acc
    raise AssertionError(kind)


def parse_rf(src: str) -> RationalFunction:
    """Parse the text form (any arithmetic over u/v/z variables)."""
    p = _Parser(src)
    node = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise ParseError("trailing input", t[2])
    return _eval(node)


def parse_polynomial(src: str) -> Polynomial:
    rf = parse_rf(src)
    if rf.den:
        raise ValueError("expression is not a polynomial")
    return rf.num


# ---------------------------------------------------------------------------
# JSON

def _mono_json(m: int) -> Dict[str, int]:
    return {slot_name(s): e for s, e in mono_decode(m)}


def _mono_from_json(d: Dict[str, int]) -> int:
    m = 0
    for name, e in d.items():
        m += mono_of(slot(name[0], int(name[1:])), int(e))
    return m


def poly_to_json(p: Polynomial) -> list:
    return [{"coeff": _q_text(c), "monomial": _mono_json(m)} for m, c in p.sorted_terms()]


def poly_from_json(data: list) -> Polynomial:
    t = {}
    for item in data:
        c = as_q(item["coeff"])
        if c:
            m = _mono_from_json(item["monomial"])
            t[m] = t.get(m, Q(0)) + c
    return Polynomial({m: c for m, c in t.items() if c})


def rf_to_json(rf: RationalFunction) -> dict:
    return {
        "numerator": poly_to_json(rf.num),
        "denominator": [
            {"form": {slot_name(s): a for s, a in f.coeffs}, "const": f.const, "multiplicity": k}
            for f, k in rf.den
        ],
    }


def rf_from_json(data: dict) -> RationalFunction:
    num = poly_from_json(data["numerator"])
    forms = []
    for item in data["denominator"]:
        p = Polynomial.linear({slot(n[0], int(n[1:])): a for n, a in item["form"].items()}, item.get("const", 0))
        forms.extend([p] * int(item["multiplicity"]))
    return RationalFunction.over_linear(num, forms)
