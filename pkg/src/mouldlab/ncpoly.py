"""Noncommutative polynomials in ``x, y`` with the ``y_i`` and ``C_i`` views.

A polynomial is a finite map from words (strings over ``"xy"``) to rationals.
The letter ``y_i`` stands for ``x^(i-1) y`` and ``C_i`` for ``ad(x)^(i-1)(y)``.
"""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ._backend import Q, as_q
from .words import shuffle_set, stuffle_set, add_indices


class NCError(ValueError):
    """A precondition of a noncommutative-polynomial operation failed."""


class NotInQC(NCError):
    """The polynomial is not in the subring generated by the ``C_i``."""


def word_key(w: str):
    """Graded order: weight, then depth, then lex with ``x < y``."""
    return (len(w), w.count("y"), w)


class NCPolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[str, object]] = None):
        self.terms: Dict[str, Q] = {}
        if terms:
            for w, c in terms.items():
                c = as_q(c)
                if c:
                    self.terms[w] = c

    @staticmethod
    def _raw(terms: Dict[str, Q]) -> "NCPolynomial":
        p = NCPolynomial.__new__(NCPolynomial)
        p.terms = terms
        return p

    # constructors ---------------------------------------------------------
    @staticmethod
    def word(w: str, c=1) -> "NCPolynomial":
        if set(w) - {"x", "y"}:
            raise NCError(f"bad word {w!r}")
        return NCPolynomial({w: c})

    @staticmethod
    def one() -> "NCPolynomial":
        return NCPolynomial({"": 1})

    @staticmethod
    def zero() -> "NCPolynomial":
        return NCPolynomial()

    # basic queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, w: str) -> Q:
        return self.terms.get(w, Q(0))

    def __getitem__(self, w: str) -> Q:
        return self.coefficient(w)

    def words(self) -> List[str]:
        return sorted(self.terms, key=word_key)

    def weights(self) -> List[int]:
        return sorted({len(w) for w in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    @property
    def weight(self) -> int:
        ws = self.weights()
        if len(ws) != 1:
            raise NCError("weight of a non-homogeneous polynomial")
        return ws[0]

    def weight_part(self, n: int) -> "NCPolynomial":
        return NCPolynomial._raw({w: c for w, c in self.terms.items() if len(w) == n})

    def depth_part(self, r: int) -> "NCPolynomial":
        return NCPolynomial._raw({w: c for w, c in self.terms.items() if w.count("y") == r})

    def depths(self) -> List[int]:
        return sorted({w.count("y") for w in self.terms})

    def truncate(self, W: int) -> "NCPolynomial":
        return NCPolynomial._raw({w: c for w, c in self.terms.items() if len(w) <= W})

    def constant_term(self) -> Q:
        return self.coefficient("")

    # arithmetic ----------------------------------------------------------
    def __add__(self, other) -> "NCPolynomial":
        other = _coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            t = out.get(w, 0) + c
            if t:
                out[w] = t
            else:
                out.pop(w, None)
        return NCPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "NCPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "NCPolynomial":
        return _coerce(other) - self

    def scale(self, c) -> "NCPolynomial":
        c = as_q(c)
        if not c:
            return NCPolynomial()
        return NCPolynomial._raw({w: a * c for w, a in self.terms.items()})

    def mul(self, other: "NCPolynomial", W: Optional[int] = None) -> "NCPolynomial":
        out: Dict[str, Q] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if W is not None and len(w1) + len(w2) > W:
                    continue
                w = w1 + w2
                t = out.get(w, 0) + c1 * c2
                if t:
                    out[w] = t
                else:
                    out.pop(w, None)
        return NCPolynomial._raw(out)

    def __mul__(self, other) -> "NCPolynomial":
        if isinstance(other, NCPolynomial):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other) -> "NCPolynomial":
        return self.scale(other)

    def __pow__(self, n: int) -> "NCPolynomial":
        out = NCPolynomial.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPolynomial):
            try:
                other = _coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"NCPolynomial({render_xy(self)!r})"

    def __str__(self) -> str:
        return render_xy(self)

    def map_words(self, fn: Callable[[str], str]) -> "NCPolynomial":
        out: Dict[str, Q] = {}
        for w, c in self.terms.items():
            v = fn(w)
            out[v] = out.get(v, 0) + c
        return NCPolynomial(out)


def _coerce(x) -> NCPolynomial:
    if isinstance(x, NCPolynomial):
        return x
    if isinstance(x, (int,)) or type(x).__name__ in ("mpq", "Fraction", "mpz"):
        return NCPolynomial({"": x})
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


X = NCPolynomial.word("x")
Y = NCPolynomial.word("y")


def y_letter(i: int) -> str:
    if i < 1:
        raise NCError("y_i needs i >= 1")
    return "x" * (i - 1) + "y"


def y_word(indices: Sequence[int]) -> str:
    return "".join(y_letter(i) for i in indices)


# ---------------------------------------------------------------------------
# Lie operations

def bracket(f: NCPolynomial, g: NCPolynomial) -> NCPolynomial:
    return f * g - g * f


def ad_x_power(f: NCPolynomial, k: int) -> NCPolynomial:
    for _ in range(k):
        f = bracket(X, f)
    return f


@lru_cache(maxsize=None)
def C(i: int) -> NCPolynomial:
    if i < 1:
        raise NCError("C_i needs i >= 1")
    return ad_x_power(Y, i - 1)


@lru_cache(maxsize=None)
def c_word(indices: Tuple[int, ...]) -> NCPolynomial:
    out = NCPolynomial.one()
    for i in indices:
        out = out * C(i)
    return out


def derivation_on_y(f: NCPolynomial, image_y: NCPolynomial) -> NCPolynomial:
    """The derivation killing ``x`` and sending ``y`` to ``image_y``, applied to ``f``."""
    out: Dict[str, Q] = {}
    for w, c in f.terms.items():
        for i, ch in enumerate(w):
            if ch != "y":
                continue
            pre, post = w[:i], w[i + 1:]
            for m, d in image_y.terms.items():
                v = pre + m + post
                out[v] = out.get(v, 0) + c * d
    return NCPolynomial(out)


def D_apply(f: NCPolynomial, g: NCPolynomial) -> NCPolynomial:
    """``D_f(g)`` with ``D_f(x) = 0`` and ``D_f(y) = [y, f]``."""
    return derivation_on_y(g, bracket(Y, f))


def poisson(f: NCPolynomial, g: NCPolynomial) -> NCPolynomial:
    return bracket(f, g) + D_apply(f, g) - D_apply(g, f)


def prelie_p(f: NCPolynomial, g: NCPolynomial, W: Optional[int] = None) -> NCPolynomial:
    """``p(f, g) = f g - D_g(f)``."""
    out = f.mul(g, W) - D_apply(g, f)
    return out.truncate(W) if W is not None else out


LIE_OPS = {
    "bracket": bracket,
    "poisson": poisson,
    "D_f_apply": D_apply,
    "prelie_p": prelie_p,
}


def lie_ops(f: NCPolynomial, g, mode: str) -> NCPolynomial:
    if mode == "ad_x_power":
        return ad_x_power(f, int(g))
    try:
        return LIE_OPS[mode](f, g)
    except KeyError:
        raise NCError(f"unknown operation {mode!r}") from None


# ---------------------------------------------------------------------------
# shuffle criterion for Lie membership

def deshuffle(f: NCPolynomial, min_len: int = 1) -> Dict[Tuple[str, str], Q]:
    """``(u, v) -> sum over w in sh(u, v) of (f|w)`` for nonempty ``u, v``.

    Computed by splitting each word along every subset of its positions,
    which counts each shuffle with its multiplicity.
    """
    out: Dict[Tuple[str, str], Q] = {}
    for w, c in f.terms.items():
        n = len(w)
        for k in range(min_len, n):
            for S in combinations(range(n), k):
                s = set(S)
                u = "".join(w[i] for i in S)
                v = "".join(w[i] for i in range(n) if i not in s)
                key = (u, v)
                out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c}


def is_lie(f: NCPolynomial) -> Tuple[bool, Optional[Tuple[str, str, Q]]]:
    """Shuffle criterion; the witness is the first failing ``(u, v, sum)``."""
    if f.constant_term():
        return False, ("", "", f.constant_term())
    bad = deshuffle(f)
    if not bad:
        return True, None
    (u, v) = min(bad, key=lambda k: (len(k[0]) + len(k[1]), k))
    return False, (u, v, bad[(u, v)])


# ---------------------------------------------------------------------------
# projections

def pi_y(f: NCPolynomial) -> NCPolynomial:
    return NCPolynomial._raw({w: c for w, c in f.terms.items() if w.endswith("y")})


def pi_Y(f: NCPolynomial) -> NCPolynomial:
    return NCPolynomial._raw({w: c for w, c in f.terms.items() if w.startswith("y")})


def ret_X(f: NCPolynomial) -> NCPolynomial:
    return f.map_words(lambda w: w[::-1])


def partial_x(f: NCPolynomial) -> NCPolynomial:
    """The derivation ``x -> 1, y -> 0``."""
    out: Dict[str, Q] = {}
    for w, c in f.terms.items():
        for i, ch in enumerate(w):
            if ch == "x":
                v = w[:i] + w[i + 1:]
                out[v] = out.get(v, 0) + c
    return NCPolynomial(out)


def sec(g: NCPolynomial) -> NCPolynomial:
    """``sum_i (-1)^i / i! * d_x^i(g) x^i`` for ``g`` ending in ``y``."""
    for w in g.terms:
        if not w.endswith("y"):
            raise NCError(f"sec needs words ending in y, got {w!r}")
    out = NCPolynomial()
    term = g
    i = 0
    while not term.is_zero():
        out = out + (term * NCPolynomial.word("x" * i)).scale(Q((-1) ** i, factorial(i)))
        i += 1
        term = partial_x(term)
    return out


PROJECTIONS = {"pi_y": pi_y, "pi_Y": pi_Y, "ret_X": ret_X, "partial_x": partial_x, "sec": sec}


def projections(f: NCPolynomial, mode: str) -> NCPolynomial:
    try:
        return PROJECTIONS[mode](f)
    except KeyError:
        raise NCError(f"unknown projection {mode!r}") from None


def in_qc(f: NCPolynomial) -> bool:
    return partial_x(f).is_zero()


# ---------------------------------------------------------------------------
# the y_i view

YWord = Tuple[int, ...]


def to_y_indices(w: str) -> YWord:
    if w and not w.endswith("y"):
        raise NCError(f"{w!r} does not end in y")
    return tuple(len(block) + 1 for block in w.split("y")[:-1])


def y_view(f: NCPolynomial) -> Dict[YWord, Q]:
    """``pi_y(f)`` rewritten in the letters ``y_i``."""
    return {to_y_indices(w): c for w, c in f.terms.items() if w.endswith("y")}


def from_y_view(terms: Mapping[YWord, object]) -> NCPolynomial:
    return NCPolynomial({y_word(k): c for k, c in terms.items()})


def f_Y(f: NCPolynomial) -> Dict[YWord, Q]:
    return y_view(ret_X(pi_Y(f)))


# ---------------------------------------------------------------------------
# the C_i view

def _leading(f: NCPolynomial) -> str:
    n = max(len(w) for w in f.terms)
    return max((w for w in f.terms if len(w) == n))


def _leading_c_word(w: str) -> Tuple[Tuple[int, ...], int]:
    if not w.startswith("y"):
        raise NotInQC(f"leading word {w!r} does not start with y")
    blocks = w.split("y")[1:]
    idx = tuple(len(b) + 1 for b in blocks)
    sign = -1 if sum(len(b) for b in blocks) % 2 else 1
    return idx, sign


def c_view(f: NCPolynomial) -> Dict[Tuple[int, ...], Q]:
    """Write ``f`` in the ``C_i`` by peeling leading words (y > x lex)."""
    out: Dict[Tuple[int, ...], Q] = {}
    rest = f
    if rest.constant_term():
        out[()] = rest.constant_term()
        rest = rest - rest.constant_term()
    while not rest.is_zero():
        w = _leading(rest)
        idx, sign = _leading_c_word(w)
        c = rest.terms[w] * sign
        out[idx] = out.get(idx, 0) + c
        rest = rest - c_word(idx).scale(c)
    return out


def from_c_view(terms: Mapping[Tuple[int, ...], object]) -> NCPolynomial:
    out = NCPolynomial()
    for idx, c in terms.items():
        out = out + c_word(tuple(idx)).scale(c)
    return out


# ---------------------------------------------------------------------------
# text forms

def _coeff_prefix(c: Q, first: bool, has_body: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    if a == 1 and has_body:
        body = ""
    else:
        body = str(a) + ("*" if has_body else "")
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def _join(items: Iterable[Tuple[str, Q]]) -> str:
    parts = []
    for body, c in items:
        parts.append(_coeff_prefix(c, not parts, bool(body)) + body)
    return "".join(parts) if parts else "0"


def _xy_body(w: str) -> str:
    out = []
    for m in re.finditer(r"x+|y+", w):
        s = m.group(0)
        out.append(s[0] + (f"^{len(s)}" if len(s) > 1 else ""))
    return "*".join(out)


def render_xy(f: NCPolynomial) -> str:
    return _join((_xy_body(w), f.terms[w]) for w in f.words())


def _idx_key(k: Tuple[int, ...]):
    return (sum(k), len(k), k)


def render_y(terms: Mapping[YWord, Q]) -> str:
    return _join(("*".join(f"y{i}" for i in k), terms[k]) for k in sorted(terms, key=_idx_key) if terms[k])


def render_c(terms: Mapping[Tuple[int, ...], Q]) -> str:
    return _join(("*".join(f"C{i}" for i in k), terms[k]) for k in sorted(terms, key=_idx_key) if terms[k])


def render_latex_xy(f: NCPolynomial) -> str:
    def body(w):
        return "".join(m.group(0)[0] + (f"^{{{len(m.group(0))}}}" if len(m.group(0)) > 1 else "")
                       for m in re.finditer(r"x+|y+", w))

    parts = []
    for w in f.words():
        c = f.terms[w]
        b = body(w)
        a = -c if c < 0 else c
        num = "" if (a == 1 and b) else (f"\\frac{{{a.numerator}}}{{{a.denominator}}}" if a.denominator != 1 else str(a))
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(sign + num + b)
    return "".join(parts) if parts else "0"


_TOK = re.compile(r"\s*(?:(\d+)|(C\d+|y\d+|x|y)|([-+*/^()\[\],]))")


class NCParseError(NCError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at column {pos + 1}")
        self.pos = pos


def _nc_tokens(src: str):
    pos = 0
    out = []
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOK.match(src, pos)
        if not m:
            raise NCParseError(f"unexpected character {src[pos]!r}", pos)
        start = m.start(m.lastindex)
        out.append((m.group(m.lastindex), start, m.lastindex))
        pos = m.end()
    out.append(("", len(src), 0))
    return out


class _NCParser:
    def __init__(self, src: str):
        self.toks = _nc_tokens(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, want=None):
        tok = self.toks[self.i]
        if want is not None and tok[0] != want:
            raise NCParseError(f"expected {want!r}", tok[1])
        self.i += 1
        return tok

    def expr(self) -> NCPolynomial:
        sign = 1
        if self.peek()[0] in "+-" and self.peek()[2] == 3:
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] in ("+", "-") and self.peek()[2] == 3:
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> NCPolynomial:
        acc = self.power()
        while self.peek()[0] in ("*", "/") and self.peek()[2] == 3:
            op = self.take()
            if op[0] == "*":
                acc = acc * self.power()
            else:
                tok = self.take()
                if tok[2] != 1:
                    raise NCParseError("division only by integers", tok[1])
                acc = acc.scale(Q(1, int(tok[0])))
        return acc

    def power(self) -> NCPolynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[2] != 1:
                raise NCParseError("exponent must be an integer", tok[1])
            base = base ** int(tok[0])
        return base

    def atom(self) -> NCPolynomial:
        tok = self.take()
        text, pos, kind = tok
        if kind == 1:
            return NCPolynomial.one().scale(int(text))
        if kind == 2:
            if text == "x":
                return X
            if text == "y":
                return Y
            if text[0] == "y":
                return NCPolynomial.word(y_letter(int(text[1:])))
            return C(int(text[1:]))
        if text == "(":
            e = self.expr()
            self.take(")")
            return e
        if text == "[":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return bracket(a, b)
        if text == "-":
            return -self.power()
        raise NCParseError("unexpected end of input" if not text else f"unexpected {text!r}", pos)


def parse_nc(src: str) -> NCPolynomial:
    """Parse ``x^2*y - 2*x*y*x``, ``y3 - 2*y1*y2``, ``C3 - C1*C2`` or ``[x,[x,y]]``."""
    p = _NCParser(src)
    if p.peek()[2] == 0:
        raise NCParseError("empty input", 0)
    e = p.expr()
    tok = p.peek()
    if tok[2] != 0:
        raise NCParseError(f"unexpected {tok[0]!r}", tok[1])
    return e


# ---------------------------------------------------------------------------
# regularizations

Formal = Dict[str, Q]  # formal sum of words standing for their Z symbols


def is_convergent(w: str) -> bool:
    return w.startswith("x") and w.endswith("y")


def _add_into(out: Dict, items, scale=1):
    for k, c in items:
        t = out.get(k, 0) + c * scale
        if t:
            out[k] = t
        else:
            out.pop(k, None)


@lru_cache(maxsize=None)
def _shuffle3(a: str, b: str, c: str) -> Tuple[Tuple[str, int], ...]:
    out: Dict[str, int] = {}
    for w1, k1 in shuffle_set(a, b).items():
        for w2, k2 in shuffle_set(w1, c).items():
            s = "".join(w2)
            out[s] = out.get(s, 0) + k1 * k2
    return tuple(out.items())


@lru_cache(maxsize=None)
def _shuffle_reg(w: str) -> Tuple[Tuple[str, Q], ...]:
    if w == "":
        return (("", Q(1)),)
    if is_convergent(w):
        return ((w, Q(1)),)
    r = len(w) - len(w.lstrip("y"))
    core = w[r:]
    s = len(core) - len(core.rstrip("x"))
    v = core[: len(core) - s]
    out: Dict[str, Q] = {}
    for a in range(r + 1):
        for b in range(s + 1):
            sign = -1 if (a + b) % 2 else 1
            for word, k in _shuffle3("y" * a, "y" * (r - a) + v + "x" * (s - b), "x" * b):
                if is_convergent(word):
                    _add_into(out, [(word, Q(sign * k))])
    return tuple(sorted(out.items(), key=lambda kv: word_key(kv[0])))


def shuffle_reg(w: str) -> Formal:
    """Express ``Z(w)`` through convergent words by the shuffle regularization."""
    return dict(_shuffle_reg(w))


def shuffle_reg_sum(f: Mapping[str, object]) -> Formal:
    out: Formal = {}
    for w, c in f.items():
        _add_into(out, _shuffle_reg(w), as_q(c))
    return out


def shuffle_product(f: Mapping[str, Q], g: Mapping[str, Q]) -> Formal:
    out: Formal = {}
    for u, a in f.items():
        for v, b in g.items():
            for w, k in shuffle_set(u, v).items():
                _add_into(out, [("".join(w), a * b * k)])
    return out


@lru_cache(maxsize=None)
def star_ones_symbolic(n: int) -> Tuple[Tuple[Tuple[int, ...], Q], ...]:
    """``Z*(1^n)`` as a polynomial in the depth-1 symbols ``Z(k)``.

    Keys are sorted tuples of the ``k`` occurring (a partition of ``n``); the
    symbol ``Z(1)`` is kept formal.
    """
    if n == 0:
        return (((), Q(1)),)
    # n E_n = sum_k k L_k E_{n-k}, with L_k = (-1)^(k-1)/k Z(k)
    out: Dict[Tuple[int, ...], Q] = {}
    for k in range(1, n + 1):
        lk = Q((-1) ** (k - 1), k) * k
        for part, c in star_ones_symbolic(n - k):
            key = tuple(sorted(part + (k,)))
            _add_into(out, [(key, lk * c / n)])
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _star_ones_formal(n: int) -> Tuple[Tuple[str, Q], ...]:
    out: Formal = {}
    for part, c in star_ones_symbolic(n):
        prod: Formal = {"": Q(1)}
        for k in part:
            prod = shuffle_product(prod, {y_letter(k): Q(1)})
        _add_into(out, prod.items(), c)
    return tuple(out.items())


def star_ones(n: int) -> Formal:
    """``Z*(1^n)`` as convergent words, using shuffle products and regularization."""
    return shuffle_reg_sum(dict(_star_ones_formal(n)))


def stuffle_reg(word: YWord) -> Formal:
    """``Z*(y_1^i v) = sum_j Z*(1^j) Z(y^(i-j) v)`` as convergent words."""
    i = 0
    while i < len(word) and word[i] == 1:
        i += 1
    v = y_word(word[i:])
    out: Formal = {}
    for j in range(i + 1):
        prod = shuffle_product(dict(_star_ones_formal(j)), {"y" * (i - j) + v: Q(1)})
        _add_into(out, prod.items())
    return shuffle_reg_sum(out)


def regularize(w, mode: str):
    if mode == "shuffle_reg":
        return shuffle_reg(w)
    if mode == "stuffle_reg_coeffs":
        return dict(star_ones_symbolic(int(w)))
    if mode == "stuffle_reg":
        return stuffle_reg(tuple(w))
    raise NCError(f"unknown regularization {mode!r}")


# ---------------------------------------------------------------------------
# double shuffle membership

def compositions(n: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def stuffle_y(u: YWord, v: YWord):
    return stuffle_set(u, v, add_indices)


def ds_correction(f: NCPolynomial) -> Q:
    n = f.weight
    return Q((-1) ** (n - 1), n) * f.coefficient("x" * (n - 1) + "y")


def f_star(f: NCPolynomial) -> Dict[YWord, Q]:
    """``pi_y(f) + f_corr`` in the ``y_i`` for homogeneous ``f``."""
    n = f.weight
    out = dict(y_view(f))
    key = (1,) * n
    t = out.get(key, 0) + ds_correction(f)
    if t:
        out[key] = t
    else:
        out.pop(key, None)
    return out


def y_word_pairs(n: int) -> Iterator[Tuple[YWord, YWord]]:
    """Unordered pairs of nonempty ``y_i`` words with total weight ``n``."""
    for k in range(1, n // 2 + 1):
        for u in compositions(k):
            for v in compositions(n - k):
                if k == n - k and v < u:
                    continue
                yield u, v


def _need_homogeneous(f: NCPolynomial):
    if not f.is_homogeneous() or f.is_zero():
        if f.is_zero():
            return
        raise NCError("membership tests need a homogeneous polynomial")


def ds_member(f: NCPolynomial) -> Tuple[bool, Optional[str]]:
    _need_homogeneous(f)
    if f.is_zero():
        return True, None
    ok, wit = is_lie(f)
    if not ok:
        return False, f"shuffle ({wit[0]},{wit[1]}) sums to {wit[2]}"
    fs = f_star(f)
    for u, v in y_word_pairs(f.weight):
        s = sum((fs.get(w, 0) * k for w, k in stuffle_y(u, v).items()), Q(0))
        if s:
            return False, f"stuffle ({_yname(u)},{_yname(v)}) sums to {s}"
    return True, None


def _yname(k: YWord) -> str:
    return "*".join(f"y{i}" for i in k)


def y_shuffle_defects(terms: Mapping[YWord, Q]) -> Dict[Tuple[YWord, YWord], Q]:
    out: Dict[Tuple[YWord, YWord], Q] = {}
    for w, c in terms.items():
        n = len(w)
        for k in range(1, n):
            for S in combinations(range(n), k):
                s = set(S)
                key = (tuple(w[i] for i in S), tuple(w[i] for i in range(n) if i not in s))
                out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c}


def ls_member(f: NCPolynomial) -> Tuple[bool, Optional[str]]:
    _need_homogeneous(f)
    if f.is_zero():
        return True, None
    n = f.weight
    if n < 3:
        return False, "weight below 3"
    ok, wit = is_lie(f)
    if not ok:
        return False, f"shuffle ({wit[0]},{wit[1]}) sums to {wit[2]}"
    if n % 2 == 0 and not f.depth_part(1).is_zero():
        return False, "depth-1 part of even weight"
    bad = y_shuffle_defects(y_view(f))
    if bad:
        (u, v) = min(bad, key=lambda k: (len(k[0]) + len(k[1]), k))
        return False, f"y-shuffle ({_yname(u)},{_yname(v)}) sums to {bad[(u, v)]}"
    return True, None


# ---------------------------------------------------------------------------
# truncated series and the twisted Magnus group

class NCSeries:
    """Series in ``x, y`` exact through weight ``W``."""

    __slots__ = ("poly", "W")

    def __init__(self, poly: NCPolynomial, W: int):
        self.poly = poly.truncate(W)
        self.W = W

    @staticmethod
    def one(W: int) -> "NCSeries":
        return NCSeries(NCPolynomial.one(), W)

    def _w(self, other: "NCSeries") -> int:
        return min(self.W, other.W)

    def __add__(self, other: "NCSeries") -> "NCSeries":
        return NCSeries(self.poly + other.poly, self._w(other))

    def __sub__(self, other: "NCSeries") -> "NCSeries":
        return NCSeries(self.poly - other.poly, self._w(other))

    def __neg__(self) -> "NCSeries":
        return NCSeries(-self.poly, self.W)

    def __mul__(self, other: "NCSeries") -> "NCSeries":
        W = self._w(other)
        return NCSeries(self.poly.truncate(W).mul(other.poly.truncate(W), W), W)

    def scale(self, c) -> "NCSeries":
        return NCSeries(self.poly.scale(c), self.W)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCSeries):
            return NotImplemented
        W = self._w(other)
        return self.poly.truncate(W) == other.poly.truncate(W)

    def __hash__(self):
        return hash((self.poly, self.W))

    def __repr__(self) -> str:
        return f"NCSeries({render_xy(self.poly)!r}, W={self.W})"

    def constant_term(self) -> Q:
        return self.poly.constant_term()

    def inverse(self) -> "NCSeries":
        c = self.constant_term()
        if not c:
            raise NCError("inverse needs a nonzero constant term")
        return NCSeries(_inverse_poly(self.poly, self.W), self.W)


@lru_cache(maxsize=256)
def _inverse_poly(p: NCPolynomial, W: int) -> NCPolynomial:
    c = p.constant_term()
    minus_h = -(p.scale(1 / c) - 1).truncate(W)
    out = NCPolynomial.one()
    term = NCPolynomial.one()
    for _ in range(W):
        term = term.mul(minus_h, W)
        if term.is_zero():
            break
        out = out + term
    return out.scale(1 / c)


def substitute_y(f: NCPolynomial, image: NCPolynomial, W: int) -> NCPolynomial:
    """``f(x, image)`` through weight ``W``; ``image`` has no constant term."""
    if image.constant_term():
        raise NCError("substituted series needs zero constant term")
    memo: Dict[str, NCPolynomial] = {"": NCPolynomial.one()}

    def prefix(w: str) -> NCPolynomial:
        got = memo.get(w)
        if got is not None:
            return got
        head = prefix(w[:-1])
        last = X if w[-1] == "x" else image
        res = head.mul(last, W)
        memo[w] = res
        return res

    out: Dict[str, Q] = {}
    for w, c in f.terms.items():
        if len(w) > W:
            continue
        for m, d in prefix(w).terms.items():
            _add_into(out, [(m, c * d)])
    return NCPolynomial._raw(out)


def X_apply(g: NCSeries, g2: NCSeries, f: NCSeries) -> NCSeries:
    """``X_(g, g2)(f)``: fix ``x`` and send ``y`` to ``g y g2``."""
    W = min(f.W, g.W, g2.W)
    image = g.poly.mul(Y, W).mul(g2.poly, W)
    return NCSeries(substitute_y(f.poly, image, W), W)


def R_apply(g: NCSeries, f: NCSeries) -> NCSeries:
    return X_apply(g, g.inverse(), f)


def N_apply(g: NCSeries, f: NCSeries) -> NCSeries:
    return X_apply(NCSeries.one(g.W), g, f)


def odot(f: NCSeries, g: NCSeries) -> NCSeries:
    """Twisted Magnus product ``f(x, g y g^-1) g``."""
    return R_apply(g, f) * g


def exp_odot(f: NCSeries) -> NCSeries:
    """``1 + f + sum_n p(f^n) / n!`` with ``p(f^n) = p(p(f^(n-1)), f)``."""
    if f.constant_term():
        raise NCError("exp_odot needs zero constant term")
    W = f.W
    total = NCPolynomial.one() + f.poly
    P = f.poly
    for n in range(2, W + 1):
        P = prelie_p(P, f.poly, W)
        if P.is_zero():
            break
        total = total + P.scale(Q(1, factorial(n)))
    return NCSeries(total, W)


def twisted_magnus(f: NCSeries, g: Optional[NCSeries], mode: str, g2: Optional[NCSeries] = None) -> NCSeries:
    if mode == "odot":
        return odot(f, g)
    if mode == "exp_odot":
        return exp_odot(f)
    if mode == "R_apply":
        return R_apply(g, f)
    if mode == "N_apply":
        return N_apply(g, f)
    if mode == "X_apply":
        if g2 is None:
            raise NCError("X_apply needs two parameters")
        return X_apply(g, g2, f)
    raise NCError(f"unknown mode {mode!r}")


def solve_X_inverse(g: NCSeries, g2: NCSeries) -> NCSeries:
    """The series ``f`` with ``X_(g, g2)(f) g = 1``, solved weight by weight."""
    W = min(g.W, g2.W)
    target = g.inverse()
    f = NCPolynomial.one()
    for n in range(1, W + 1):
        cur = X_apply(g, g2, NCSeries(f, n)).poly.weight_part(n)
        f = f + (target.poly.weight_part(n) - cur)
    return NCSeries(f, W)


# ---------------------------------------------------------------------------
# random elements

def random_c_poly(rng, n: int, terms: int = 4, coeff: int = 3) -> NCPolynomial:
    """Random homogeneous weight-``n`` element of the ring generated by the ``C_i``."""
    comps = list(compositions(n))
    out = NCPolynomial()
    for _ in range(terms):
        c = rng.randint(-coeff, coeff)
        if c:
            out = out + c_word(rng.choice(comps)).scale(c)
    return out


def random_lie(rng, n: int, gens: Sequence[NCPolynomial] = None, terms: int = 3) -> NCPolynomial:
    """Random homogeneous Lie element of weight ``n`` built from brackets."""
    if gens is None:
        gens = [X, Y]
    return _random_lie(rng, n, list(gens), terms)


def _random_lie(rng, n, gens, terms):
    basis_by_weight: Dict[int, List[NCPolynomial]] = {}
    for g in gens:
        basis_by_weight.setdefault(g.weight, []).append(g)
    for w in range(2, n + 1):
        lst = basis_by_weight.setdefault(w, [])
        for a in range(1, w // 2 + 1):
            for p in basis_by_weight.get(a, []):
                for q in basis_by_weight.get(w - a, []):
                    b = bracket(p, q)
                    if not b.is_zero() and len(lst) < 12:
                        lst.append(b)
    cands = basis_by_weight.get(n, [])
    out = NCPolynomial()
    for _ in range(terms):
        if cands:
            out = out + rng.choice(cands).scale(rng.randint(-2, 2))
    return out


def random_mt(rng, n: int, terms: int = 3) -> NCPolynomial:
    """Random weight-``n`` Lie element in the ``C_i``."""
    return _random_lie(rng, n, [C(i) for i in range(1, n + 1)], terms)
