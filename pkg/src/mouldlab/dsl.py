"""A small expression language over moulds and noncommutative polynomials.

Grammar::

    stmt    := "check" IDENT expr | "dims" IDENT INT | expr
    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" INT)?
    primary := NUMBER | IDENT | IDENT "(" args ")" | "(" expr ")" | "[" expr "," expr "]"
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

from ._backend import Q
from .mould import Mould, MouldError, join_flavor
from .ncpoly import NCError, NCPolynomial, C, X, Y, bracket, is_lie, parse_nc, poisson, y_letter

Span = Tuple[int, int]


class DSLError(ValueError):
    """A parse or evaluation error carrying a source span."""

    def __init__(self, msg: str, span: Span, kind: str = "error"):
        super().__init__(msg)
        self.msg = msg
        self.span = span
        self.kind = kind

    def render(self, src: str) -> str:
        a, b = self.span
        caret = " " * a + "^" * max(1, b - a)
        return f"{self.kind}: {self.msg} (columns {a + 1}-{max(a + 1, b)})\n  {src}\n  {caret}"


class DSLSyntaxError(DSLError):
    def __init__(self, msg: str, span: Span):
        super().__init__(msg, span, "syntax error")


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Num:
    value: Q
    span: Span = (0, 0)


@dataclass(frozen=True)
class Named:
    name: str
    span: Span = (0, 0)


@dataclass(frozen=True)
class Call:
    fn: str
    args: Tuple["Expr", ...]
    span: Span = (0, 0)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    span: Span = (0, 0)


@dataclass(frozen=True)
class Neg:
    arg: "Expr"
    span: Span = (0, 0)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int
    span: Span = (0, 0)


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"
    span: Span = (0, 0)


@dataclass(frozen=True)
class Check:
    prop: str
    arg: "Expr"
    span: Span = (0, 0)


@dataclass(frozen=True)
class Dims:
    kind: str
    n: int
    span: Span = (0, 0)


Expr = Union[Num, Named, Call, BinOp, Neg, Pow, Bracket]


def _eq_ast(a, b) -> bool:
    """Structural equality ignoring spans."""
    if type(a) is not type(b):
        return False
    if isinstance(a, Num):
        return a.value == b.value
    if isinstance(a, Named):
        return a.name == b.name
    if isinstance(a, Call):
        return a.fn == b.fn and len(a.args) == len(b.args) and all(map(_eq_ast, a.args, b.args))
    if isinstance(a, (BinOp,)):
        return a.op == b.op and _eq_ast(a.left, b.left) and _eq_ast(a.right, b.right)
    if isinstance(a, Bracket):
        return _eq_ast(a.left, b.left) and _eq_ast(a.right, b.right)
    if isinstance(a, Neg):
        return _eq_ast(a.arg, b.arg)
    if isinstance(a, Pow):
        return a.exp == b.exp and _eq_ast(a.base, b.base)
    if isinstance(a, Check):
        return a.prop == b.prop and _eq_ast(a.arg, b.arg)
    if isinstance(a, Dims):
        return a.kind == b.kind and a.n == b.n
    return False


ast_equal = _eq_ast


# ---------------------------------------------------------------------------
# lexer and parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(src: str) -> List[Tuple[str, str, int, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None or m.lastindex is None:
            break
        kind = {1: "num", 2: "id", 3: "op"}[m.lastindex]
        text = m.group(m.lastindex)
        start = m.start(m.lastindex)
        if kind == "op" and text not in "+-*/^(),[]":
            raise DSLSyntaxError(f"unexpected character {text!r}", (start, start + 1))
        out.append((kind, text, start, m.end()))
        pos = m.end()
    out.append(("end", "", len(src), len(src)))
    return out


class Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, text: Optional[str] = None, kind: Optional[str] = None):
        tok = self.peek()
        if (text is not None and tok[1] != text) or (kind is not None and tok[0] != kind):
            want = repr(text) if text is not None else kind
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise DSLSyntaxError(f"expected {want}, found {got}", (tok[2], max(tok[3], tok[2] + 1)))
        self.i += 1
        return tok

    def statement(self):
        tok = self.peek()
        if tok[0] == "id" and tok[1] == "check" and self.peek(1)[0] == "id":
            self.take()
            prop = self.take(kind="id")
            arg = self.expr()
            return Check(prop[1], arg, (tok[2], self.toks[self.i - 1][3]))
        if tok[0] == "id" and tok[1] == "dims" and self.peek(1)[0] == "id":
            self.take()
            kind = self.take(kind="id")
            n = self.take(kind="num")
            return Dims(kind[1], int(n[1]), (tok[2], n[3]))
        return self.expr()

    def expr(self):
        left = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()
            right = self.term()
            left = BinOp(op[1], left, right, (left.span[0], right.span[1]))
        return left

    def term(self):
        left = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()
            right = self.unary()
            left = BinOp(op[1], left, right, (left.span[0], right.span[1]))
        return left

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            arg = self.unary()
            return Neg(arg, (tok[2], arg.span[1]))
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            n = self.take(kind="num")
            return Pow(base, int(n[1]), (base.span[0], n[3]))
        return base

    def primary(self):
        tok = self.peek()
        kind, text, a, b = tok
        if kind == "num":
            self.take()
            return Num(Q(int(text)), (a, b))
        if kind == "id":
            self.take()
            if self.peek()[1] == "(" and self.peek()[0] == "op":
                self.take("(")
                args = []
                if self.peek()[1] != ")":
                    args.append(self.expr())
                    while self.peek()[1] == ",":
                        self.take(",")
                        args.append(self.expr())
                close = self.take(")")
                return Call(text, tuple(args), (a, close[3]))
            return Named(text, (a, b))
        if text == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if text == "[":
            self.take()
            left = self.expr()
            self.take(",")
            right = self.expr()
            close = self.take("]")
            return Bracket(left, right, (a, close[3]))
        if kind == "end":
            raise DSLSyntaxError("unexpected end of input", (a, a + 1))
        raise DSLSyntaxError(f"unexpected {text!r}", (a, b))


def parse(src: str):
    p = Parser(src)
    if p.peek()[0] == "end":
        raise DSLSyntaxError("empty expression", (0, 1))
    node = p.statement()
    tok = p.peek()
    if tok[0] != "end":
        raise DSLSyntaxError(f"unexpected {tok[1]!r}", (tok[2], tok[3]))
    return node


def unparse(node) -> str:
    """Canonical source text of an AST; ``parse(unparse(e))`` equals ``e``."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Named):
        return node.name
    if isinstance(node, Call):
        return f"{node.fn}(" + ", ".join(unparse(a) for a in node.args) + ")"
    if isinstance(node, BinOp):
        return f"({unparse(node.left)} {node.op} {unparse(node.right)})"
    if isinstance(node, Neg):
        return f"-{_atomic(node.arg)}"
    if isinstance(node, Pow):
        return f"{_atomic(node.base)}^{node.exp}"
    if isinstance(node, Bracket):
        return f"[{unparse(node.left)}, {unparse(node.right)}]"
    if isinstance(node, Check):
        return f"check {node.prop} {unparse(node.arg)}"
    if isinstance(node, Dims):
        return f"dims {node.kind} {node.n}"
    raise TypeError(node)


def _atomic(node) -> str:
    s = unparse(node)
    if isinstance(node, (Num, Named, Call, Bracket)) or s.startswith("("):
        return s
    return f"({s})"


# ---------------------------------------------------------------------------
# evaluation

@dataclass
class Report:
    """Outcome of a ``check`` or ``dims`` statement."""

    title: str
    holds: bool
    detail: str = ""
    data: object = None
    header: Tuple[str, ...] = ("key", "value")


F311 = "[x,[x,y]]+[[x,y],y]"


class Evaluator:
    def __init__(self, depth: int = 4, weight: int = 6):
        self.depth = depth
        self.weight = weight
        self._named: Dict[str, object] = {}

    # names -------------------------------------------------------------
    def named(self, name: str, span: Span):
        from .special import NAMED

        if name in self._named:
            return self._named[name]
        if name in NAMED:
            val = NAMED[name](self.depth)
        elif name == "x":
            val = X
        elif name == "y":
            val = Y
        elif re.fullmatch(r"C[1-9]\d*", name):
            val = C(int(name[1:]))
        elif re.fullmatch(r"y[1-9]\d*", name):
            val = NCPolynomial.word(y_letter(int(name[1:])))
        elif name == "f311":
            val = parse_nc(F311)
        else:
            raise DSLError(f"unknown identifier {name!r}", span)
        self._named[name] = val
        return val

    # dispatch ----------------------------------------------------------
    def eval(self, node):
        try:
            return self._eval(node)
        except DSLError:
            raise
        except (MouldError, NCError, ArithmeticError, ValueError, TypeError) as exc:
            span = getattr(node, "span", (0, 0))
            raise DSLError(str(exc), span) from exc

    def _eval(self, node):
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Named):
            return self.named(node.name, node.span)
        if isinstance(node, Neg):
            v = self.eval(node.arg)
            return -v
        if isinstance(node, BinOp):
            return self._binop(node)
        if isinstance(node, Pow):
            v = self.eval(node.base)
            if not isinstance(v, NCPolynomial):
                raise DSLError("powers apply to polynomials", node.span)
            out = NCPolynomial.one()
            for _ in range(node.exp):
                out = out.mul(v, self.weight)
            return out
        if isinstance(node, Bracket):
            a, b = self.eval(node.left), self.eval(node.right)
            if not (isinstance(a, NCPolynomial) and isinstance(b, NCPolynomial)):
                raise DSLError("[a, b] needs two polynomials", node.span)
            return bracket(a, b)
        if isinstance(node, Call):
            return self._call(node)
        if isinstance(node, Check):
            return self._check(node)
        if isinstance(node, Dims):
            return self._dims(node)
        raise DSLError("cannot evaluate node", getattr(node, "span", (0, 0)))

    def _binop(self, node: BinOp):
        a, b = self.eval(node.left), self.eval(node.right)
        op = node.op
        if op in "+-":
            if isinstance(a, Mould) and isinstance(b, Mould):
                join_flavor(a, b)
                return a + b if op == "+" else a - b
            if isinstance(a, Mould) or isinstance(b, Mould):
                raise DSLError("cannot add a mould and a non-mould", node.span)
            if isinstance(a, NCPolynomial) or isinstance(b, NCPolynomial):
                a = a if isinstance(a, NCPolynomial) else NCPolynomial({"": a})
                b = b if isinstance(b, NCPolynomial) else NCPolynomial({"": b})
            return a + b if op == "+" else a - b
        if op == "*":
            if isinstance(a, Mould) and isinstance(b, Mould):
                raise DSLError("use mu(A, B) to multiply moulds", node.span)
            if isinstance(a, Mould):
                return a.scale(b)
            if isinstance(b, Mould):
                return b.scale(a)
            if isinstance(a, NCPolynomial) and isinstance(b, NCPolynomial):
                return a.mul(b, self.weight)
            return a * b
        if op == "/":
            if isinstance(b, (Mould, NCPolynomial)):
                raise DSLError("division only by numbers", node.span)
            if not b:
                raise DSLError("division by zero", node.span)
            if isinstance(a, Mould):
                return a.scale(1 / b)
            if isinstance(a, NCPolynomial):
                return a.scale(1 / b)
            return a / b
        raise DSLError(f"unknown operator {op!r}", node.span)

    def _call(self, node: Call):
        spec = FUNCTIONS.get(node.fn)
        if spec is None:
            raise DSLError(f"unknown function {node.fn!r}", node.span)
        arity, kinds, fn = spec
        if len(node.args) not in arity:
            want = " or ".join(str(a) for a in arity)
            raise DSLError(f"{node.fn} takes {want} arguments, got {len(node.args)}", node.span)
        vals = [self.eval(a) for a in node.args]
        for v, k, a in zip(vals, kinds, node.args):
            if k == "M" and not isinstance(v, Mould):
                raise DSLError(f"{node.fn} expects a mould here", a.span)
            if k == "P" and not isinstance(v, NCPolynomial):
                raise DSLError(f"{node.fn} expects a polynomial here", a.span)
        moulds = [v for v in vals if isinstance(v, Mould)]
        if len(moulds) > 1:
            try:
                join_flavor(*moulds)
            except MouldError as exc:
                raise DSLError(f"{node.fn}: {exc}", node.span) from exc
        try:
            return fn(self, *vals)
        except DSLError:
            raise
        except (MouldError, NCError, ArithmeticError, ValueError) as exc:
            raise DSLError(f"{node.fn}: {exc}", node.span) from exc

    def _check(self, node: Check) -> Report:
        from .symmetry import CHECKERS, check_operator_invariance, classify_dimorphy

        v = self.eval(node.arg)
        if node.prop == "lie":
            if not isinstance(v, NCPolynomial):
                raise DSLError("check lie needs a polynomial", node.arg.span)
            ok, wit = is_lie(v)
            return Report("lie", ok, "" if ok else f"first failing pair {wit}")
        if node.prop in ("ds", "ls"):
            from .ncpoly import ds_member, ls_member

            if not isinstance(v, NCPolynomial):
                raise DSLError(f"check {node.prop} needs a polynomial", node.arg.span)
            ok, wit = (ds_member if node.prop == "ds" else ls_member)(v)
            return Report(node.prop, ok, wit or "")
        if not isinstance(v, Mould):
            raise DSLError(f"check {node.prop} needs a mould", node.arg.span)
        if node.prop in CHECKERS:
            rep = CHECKERS[node.prop](v)
            return Report(node.prop, rep.holds, _defect(rep))
        if node.prop in ("push", "neg", "mantar", "negpush"):
            rep = check_operator_invariance(v, node.prop)
            return Report(rep.property, rep.holds, _defect(rep))
        if node.prop == "dimorphy":
            res = classify_dimorphy(v)
            return Report("dimorphy", res.cls != "none", res.cls, res)
        raise DSLError(f"unknown property {node.prop!r}", node.span)

    def _dims(self, node: Dims) -> Report:
        from . import dimlab

        n = node.n
        if node.kind == "ls":
            table = [(d, dimlab.dim_ls(n, d)) for d in range(1, n)]
            return Report(f"dim ls_{n}^d", True, "", table, ("d", "dim"))
        if node.kind == "ds":
            return Report(f"dim ds_{n}", True, "", [(n, len(dimlab.ds_solve(n)))], ("n", "dim"))
        if node.kind == "fz":
            return Report(f"dim FZ_{n} upper bound", True, "", [(n, dimlab.fz_relations(n).bound)], ("n", "bound"))
        if node.kind == "bk":
            return Report(f"BK coefficients X^{n}", True, "", [(d, dimlab.bk_coeff(n, d)) for d in range(0, n + 1)],
                          ("d", "coeff"))
        raise DSLError(f"unknown dimension table {node.kind!r}", node.span)


def _defect(rep) -> str:
    if rep.holds or rep.first_defect is None:
        return ""
    from .textform import render_rf

    (r, s), d = rep.first_defect
    return f"first defect at split ({r},{s}): {render_rf(d)}"


def _lie(ev, f):
    ok, wit = is_lie(f)
    if not ok:
        raise NCError(f"not a Lie polynomial: shuffle ({wit[0]},{wit[1]}) sums to {wit[2]}")
    return f


def _ma(ev, f):
    from .dictionary import ma

    return ma(f, ev.depth)


def _mi(ev, f):
    from .dictionary import mi

    return mi(f, ev.depth)


def _vimo(ev, f):
    from .dictionary import vimo

    return vimo(f, ev.depth)


def _decode(ev, M):
    from .dictionary import mould_to_ncpoly

    return mould_to_ncpoly(M)


def _op(mod: str, name: str, n: int):
    def fn(ev, *args):
        import importlib

        f = getattr(importlib.import_module(f"mouldlab.{mod}"), name)
        return f(*args)

    return ((n,), "M" * n, fn)


FUNCTIONS: Dict[str, Tuple[Tuple[int, ...], str, Callable]] = {
    "mu": _op("mould", "mu", 2),
    "lu": _op("mould", "lu", 2),
    "compose": _op("mould", "compose", 2),
    "invmu": _op("mould", "invmu", 1),
    "swap": _op("mould", "swap", 1),
    "push": _op("mould", "push", 1),
    "anti": _op("mould", "anti", 1),
    "neg": _op("mould", "neg", 1),
    "mantar": _op("mould", "mantar", 1),
    "pari": _op("mould", "pari", 1),
    "der": _op("mould", "der", 1),
    "dur": _op("mould", "dur", 1),
    "ari": _op("derivations", "ari", 2),
    "ira": _op("derivations", "ira", 2),
    "preari": _op("derivations", "preari", 2),
    "preira": _op("derivations", "preira", 2),
    "swamu": _op("derivations", "swamu", 2),
    "arit": _op("derivations", "arit", 2),
    "amit": _op("derivations", "amit", 2),
    "anit": _op("derivations", "anit", 2),
    "irat": _op("derivations", "irat", 2),
    "gari": _op("gari", "gari", 2),
    "garit": _op("gari", "garit", 2),
    "ganit": _op("gari", "ganit", 2),
    "adari": _op("gari", "adari", 2),
    "expari": _op("gari", "expari", 1),
    "logari": _op("gari", "logari", 1),
    "invgari": _op("gari", "invgari", 1),
    "invgani": _op("gari", "invgani", 1),
    "ras": _op("gari", "ras", 1),
    "rash": _op("gari", "rash", 1),
    "crash": _op("gari", "crash", 1),
    "gira": _op("gari", "gira", 2),
    "gepar": _op("special", "gepar", 1),
    "lie": ((1,), "P", _lie),
    "ma": ((1,), "P", _ma),
    "mi": ((1,), "P", _mi),
    "vimo": ((1,), "P", _vimo),
    "decode": ((1,), "M", _decode),
    "poisson": ((2,), "PP", lambda ev, f, g: poisson(f, g)),
}


def evaluate(src: str, depth: int = 4, weight: int = 6):
    node = parse(src)
    return Evaluator(depth, weight).eval(node)
