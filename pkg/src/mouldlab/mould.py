"""Depth-truncated moulds, flexions, unary operators and the mu/lu/compose laws.

A mould stores one rational function per depth ``0..D``.  The depth-``r``
component is a function of ``u1..ur`` (flavor ``U``), ``v1..vr`` (flavor ``V``)
or both (flavor ``BI``).  Every operator is written for bimoulds; the
flavor-``U`` and flavor-``V`` cases follow because their components do not
depend on the other row.

Words are tuples of letters and a letter is a pair ``(U, V)`` of integer
linear forms, each a sorted tuple of ``(slot, coefficient)`` pairs.  A mould is
evaluated on a word by substituting the letter forms into its component.
"""
from __future__ import annotations

from math import factorial
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ._backend import Q, as_q
from .exact import (
    ONE_RF,
    ZERO_RF,
    Polynomial,
    RationalFunction,
    mono_of,
    rf_sum,
    slot,
    slot_family,
    slot_index,
    substitute_linear,
)

U, V, BI = "U", "V", "BI"
FLAVORS = (U, V, BI)

Lin = Tuple[Tuple[int, int], ...]
Letter = Tuple[Lin, Lin]
Word = Tuple[Letter, ...]


class MouldError(ValueError):
    """A precondition of a mould operation was violated."""


# ---------------------------------------------------------------------------
# linear forms on letters

def lin_add(a: Lin, b: Lin) -> Lin:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for s, c in b:
        t = d.get(s, 0) + c
        if t:
            d[s] = t
        else:
            del d[s]
    return tuple(sorted(d.items()))


def lin_neg(a: Lin) -> Lin:
    return tuple((s, -c) for s, c in a)


def lin_sub(a: Lin, b: Lin) -> Lin:
    return lin_add(a, lin_neg(b))


def lin_sum(forms: Iterable[Lin]) -> Lin:
    d: Dict[int, int] = {}
    for f in forms:
        for s, c in f:
            d[s] = d.get(s, 0) + c
    return tuple(sorted((s, c) for s, c in d.items() if c))


_lin_poly_cache: Dict[Lin, Polynomial] = {}


def lin_poly(a: Lin) -> Polynomial:
    p = _lin_poly_cache.get(a)
    if p is None:
        p = Polynomial({mono_of(s): Q(c) for s, c in a})
        _lin_poly_cache[a] = p
    return p


def _su(i: int) -> int:
    return slot("u", i)


def _sv(i: int) -> int:
    return slot("v", i)


def letter(i: int) -> Letter:
    return (((_su(i), 1),), ((_sv(i), 1),))


_base_cache: Dict[int, Word] = {}


def base_word(r: int) -> Word:
    w = _base_cache.get(r)
    if w is None:
        w = tuple(letter(i) for i in range(1, r + 1))
        _base_cache[r] = w
    return w


def word_upper(w: Word) -> Lin:
    return lin_sum(l[0] for l in w)


def word_lower(w: Word) -> Lin:
    return lin_sum(l[1] for l in w)


# ---------------------------------------------------------------------------
# flexions on arbitrary words

def upper_c(b: Word, c: Word) -> Word:
    """The flexion written with the upper bracket on the left of ``c``."""
    if not b or not c:
        return c
    first = (lin_add(word_upper(b), c[0][0]), c[0][1])
    return (first,) + c[1:]


def upper_a(a: Word, b: Word) -> Word:
    """The flexion written with the upper bracket on the right of ``a``."""
    if not b or not a:
        return a
    last = (lin_add(a[-1][0], word_upper(b)), a[-1][1])
    return a[:-1] + (last,)


def lower_b_right(b: Word, c: Word) -> Word:
    """``b`` with the lower bracket on its right: subtract the first v of ``c``."""
    if not c or not b:
        return b
    vc = c[0][1]
    return tuple((U_, lin_sub(V_, vc)) for U_, V_ in b)


def lower_b_left(a: Word, b: Word) -> Word:
    """``b`` with the lower bracket on its left: subtract the last v of ``a``."""
    if not a or not b:
        return b
    va = a[-1][1]
    return tuple((U_, lin_sub(V_, va)) for U_, V_ in b)


def upper_both(a: Word, b: Word, c: Word) -> Word:
    """``b`` absorbing the upper rows of both neighbours."""
    if not b:
        return b
    if a:
        b = ((lin_add(word_upper(a), b[0][0]), b[0][1]),) + b[1:]
    if c:
        b = b[:-1] + ((lin_add(b[-1][0], word_upper(c)), b[-1][1]),)
    return b


FLEXIONS = ("upper_c", "upper_a", "lower_b_right", "lower_b_left")


def flexion(r: int, k: int, l: int, which: str) -> Tuple[List[int], Word]:
    """Flexed subword of the cut ``w = abc`` with ``|a| = k``, ``|b| = l``.

    Returns the 1-based letter indices of the subword and its flexed letters.
    """
    if not (k >= 0 and l >= 0 and k + l <= r):
        raise MouldError("invalid cut")
    w = base_word(r)
    a, b, c = w[:k], w[k:k + l], w[k + l:]
    ia = list(range(1, k + 1))
    ib = list(range(k + 1, k + l + 1))
    ic = list(range(k + l + 1, r + 1))
    if which == "upper_c":
        return ic, upper_c(b, c)
    if which == "upper_a":
        return ia, upper_a(a, b)
    if which == "lower_b_right":
        return ib, lower_b_right(b, c)
    if which == "lower_b_left":
        return ib, lower_b_left(a, b)
    raise MouldError(f"unknown flexion {which!r}")


def render_word(w: Word) -> str:
    from .textform import render_polynomial

    top = ", ".join(render_polynomial(lin_poly(l[0])) for l in w)
    bot = ", ".join(render_polynomial(lin_poly(l[1])) for l in w)
    return f"({top} ; {bot})"


# ---------------------------------------------------------------------------
# the mould type

def _flavor_of_slots(slots) -> Optional[str]:
    fams = {slot_family(s) for s in slots}
    if not fams:
        return None
    if fams == {"u"}:
        return U
    if fams == {"v"}:
        return V
    return BI


class Mould:
    """Truncated mould: flavor tag plus components for depths ``0..D``."""

    __slots__ = ("flavor", "comps", "_cache")

    def __init__(self, comps: Sequence, flavor: str = U, check: bool = True):
        if flavor not in FLAVORS:
            raise MouldError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.comps: Tuple[RationalFunction, ...] = tuple(RationalFunction._coerce(c) for c in comps)
        if not self.comps:
            raise MouldError("a mould needs at least its depth-0 component")
        self._cache: Dict[Word, RationalFunction] = {}
        if check:
            self._validate()

    def _validate(self):
        for r, c in enumerate(self.comps):
            for s in c.slots():
                fam, idx = slot_family(s), slot_index(s)
                if fam == "z":
                    raise MouldError("z variables are reserved for vimo moulds")
                if not 1 <= idx <= r:
                    raise MouldError(f"depth-{r} component uses {fam}{idx}")
                if self.flavor == U and fam != "u":
                    raise MouldError("flavor-U mould depends on v")
                if self.flavor == V and fam != "v":
                    raise MouldError("flavor-V mould depends on u")

    # basic accessors ---------------------------------------------------
    @property
    def depth(self) -> int:
        return len(self.comps) - 1

    def __getitem__(self, r: int) -> RationalFunction:
        return self.comps[r]

    def __len__(self) -> int:
        return len(self.comps)

    def truncate(self, D: int) -> "Mould":
        if D >= self.depth:
            return self
        return Mould(self.comps[: D + 1], self.flavor, check=False)

    def pad(self, D: int) -> "Mould":
        """Extend with zero components up to depth ``D``."""
        if D <= self.depth:
            return self
        return Mould(list(self.comps) + [ZERO_RF] * (D - self.depth), self.flavor, check=False)

    def with_flavor(self, flavor: str) -> "Mould":
        return Mould(self.comps, flavor)

    def is_constant_valued(self) -> bool:
        return all(c.is_constant() for c in self.comps)

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.comps)

    def constant_term(self):
        return self.comps[0].constant_value()

    # evaluation ---------------------------------------------------------
    def at(self, w: Word) -> RationalFunction:
        """Value of the component of depth ``len(w)`` at the letters of ``w``."""
        m = len(w)
        if m > self.depth:
            raise MouldError(f"depth {m} beyond truncation {self.depth}")
        comp = self.comps[m]
        if not comp.num.terms or (not comp.den and comp.num.is_constant()):
            return comp
        if w == base_word(m):
            return comp
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        mapping = {}
        fl = self.flavor
        for j, (Uf, Vf) in enumerate(w, start=1):
            if fl != V:
                su = _su(j)
                if Uf != ((su, 1),):
                    mapping[su] = lin_poly(Uf)
            if fl != U:
                sv = _sv(j)
                if Vf != ((sv, 1),):
                    mapping[sv] = lin_poly(Vf)
        val = substitute_linear(comp, mapping) if mapping else comp
        self._cache[w] = val
        return val

    # arithmetic ---------------------------------------------------------
    def _zip(self, other: "Mould", fn) -> "Mould":
        D = min(self.depth, other.depth)
        return Mould([fn(self.comps[r], other.comps[r]) for r in range(D + 1)],
                     join_flavor(self, other), check=False)

    def __add__(self, other: "Mould") -> "Mould":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "Mould") -> "Mould":
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> "Mould":
        return Mould([-c for c in self.comps], self.flavor, check=False)

    def scale(self, c) -> "Mould":
        c = as_q(c)
        return Mould([x.scale(c) for x in self.comps], self.flavor, check=False)

    def __mul__(self, c) -> "Mould":
        if isinstance(c, Mould):
            raise TypeError("use mu() for mould multiplication")
        return self.scale(c)

    __rmul__ = __mul__

    # comparison -----------------------------------------------------------
    def first_difference(self, other: "Mould") -> Optional[Tuple[int, RationalFunction]]:
        """First depth where the two moulds differ, with the difference."""
        D = min(self.depth, other.depth)
        for r in range(D + 1):
            d = self.comps[r] - other.comps[r]
            if not d.is_zero():
                return r, d
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mould):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.comps)
        return f"Mould[{self.flavor}, D={self.depth}]({body})"


def join_flavor(*ms: Mould) -> str:
    fl = None
    for m in ms:
        if m.is_constant_valued():
            continue
        if fl is None:
            fl = m.flavor
        elif fl != m.flavor:
            return BI
    if fl is None:
        return ms[0].flavor
    return fl


def mould_from(D: int, fn: Callable[[int], object], flavor: str = U) -> Mould:
    return Mould([fn(r) for r in range(D + 1)], flavor)


def constant_mould(values: Sequence, flavor: str = U) -> Mould:
    return Mould([RationalFunction.constant(as_q(c)) for c in values], flavor)


def zero_mould(D: int, flavor: str = U) -> Mould:
    return Mould([ZERO_RF] * (D + 1), flavor, check=False)


def one_mould(D: int, flavor: str = U) -> Mould:
    return Mould([ONE_RF] + [ZERO_RF] * D, flavor, check=False)


def is_unit(m: Mould) -> bool:
    return m.comps[0] == ONE_RF and all(c.is_zero() for c in m.comps[1:])


# ---------------------------------------------------------------------------
# products

def mu(*ms: Mould) -> Mould:
    """Mould multiplication; several arguments multiply left to right."""
    if len(ms) == 1:
        return ms[0]
    if len(ms) > 2:
        acc = ms[0]
        for m in ms[1:]:
            acc = mu(acc, m)
        return acc
    A, B = ms
    D = min(A.depth, B.depth)
    comps = []
    for r in range(D + 1):
        w = base_word(r)
        terms = []
        for i in range(r + 1):
            a = A.comps[i]
            if a.is_zero():
                continue
            b = B.at(w[i:])
            if b.is_zero():
                continue
            terms.append(a * b)
        comps.append(rf_sum(terms))
    return Mould(comps, join_flavor(A, B), check=False)


def lu(A: Mould, B: Mould) -> Mould:
    return mu(A, B) - mu(B, A)


def invmu(B: Mould) -> Mould:
    """Inverse for mu; requires constant term 1."""
    if B.comps[0] != ONE_RF:
        raise MouldError("invmu needs constant term 1")
    comps = [ONE_RF]
    for r in range(1, B.depth + 1):
        w = base_word(r)
        terms = []
        for i in range(r):
            x = comps[i]
            if x.is_zero():
                continue
            b = B.at(w[i:])
            if not b.is_zero():
                terms.append(x * b)
        comps.append(-rf_sum(terms))
    return Mould(comps, B.flavor, check=False)


def expmu(A: Mould) -> Mould:
    """Exponential for mu of a mould with zero constant term."""
    if not A.comps[0].is_zero():
        raise MouldError("expmu needs constant term 0")
    D = A.depth
    result = one_mould(D, A.flavor)
    power = one_mould(D, A.flavor)
    for n in range(1, D + 1):
        power = mu(power, A)
        result = result + power.scale(Q(1, factorial(n)))
    return Mould(result.comps, A.flavor, check=False)


def compositions(r: int) -> Iterator[Tuple[int, ...]]:
    if r == 0:
        yield ()
        return
    for first in range(1, r + 1):
        for rest in compositions(r - first):
            yield (first,) + rest


def compose(M: Mould, N: Mould) -> Mould:
    """Mould composition; requires ``N`` to have constant term 0."""
    if not N.comps[0].is_zero():
        raise MouldError("compose needs N(empty) = 0")
    D = min(M.depth, N.depth)
    comps = [M.comps[0]]
    for r in range(1, D + 1):
        w = base_word(r)
        terms = []
        for comp in compositions(r):
            pos = 0
            blocks = []
            for n in comp:
                blocks.append(w[pos:pos + n])
                pos += n
            outer = tuple((word_upper(b), word_lower(b)) for b in blocks)
            val = M.at(outer)
            if val.is_zero():
                continue
            for b in blocks:
                nb = N.at(b)
                if nb.is_zero():
                    val = ZERO_RF
                    break
                val = val * nb
            if not val.is_zero():
                terms.append(val)
        comps.append(rf_sum(terms))
    return Mould(comps, join_flavor(M, N), check=False)


# ---------------------------------------------------------------------------
# unary operators

def _apply_word(M: Mould, word_fn: Callable[[int], Word], flavor: Optional[str] = None,
                sign: Callable[[int], int] = lambda r: 1) -> Mould:
    comps = []
    for r in range(M.depth + 1):
        val = M.at(word_fn(r))
        s = sign(r)
        comps.append(val if s == 1 else -val)
    return Mould(comps, flavor or M.flavor, check=False)


def _push_word(r: int) -> Word:
    if r == 0:
        return ()
    w = base_word(r)
    ur = [l[0] for l in w]
    vr = [l[1] for l in w]
    top = [lin_neg(lin_sum(ur))] + ur[:-1]
    vlast = vr[-1]
    bot = [lin_neg(vlast)] + [lin_sub(x, vlast) for x in vr[:-1]]
    return tuple(zip(top, bot))


def _neg_word(r: int) -> Word:
    return tuple((lin_neg(a), lin_neg(b)) for a, b in base_word(r))


def _anti_word(r: int) -> Word:
    return base_word(r)[::-1]


def _swap_word(r: int) -> Word:
    # letter j of the argument: upper v_{r-j+1} - v_{r-j+2}, lower u_1+...+u_{r-j+1}
    if r == 0:
        return ()
    out = []
    for j in range(1, r + 1):
        k = r - j + 1
        up = ((_sv(k), 1),) if j == 1 else lin_sub(((_sv(k), 1),), ((_sv(k + 1), 1),))
        low = tuple((_su(i), 1) for i in range(1, k + 1))
        out.append((up, low))
    return tuple(out)


def push(M: Mould) -> Mould:
    return _apply_word(M, _push_word)


def neg(M: Mould) -> Mould:
    return _apply_word(M, _neg_word)


def anti(M: Mould) -> Mould:
    return _apply_word(M, _anti_word)


def mantar(M: Mould) -> Mould:
    return _apply_word(M, _anti_word, sign=lambda r: -1 if r % 2 == 0 else 1)


def pari(M: Mould) -> Mould:
    return Mould([c if r % 2 == 0 else -c for r, c in enumerate(M.comps)], M.flavor, check=False)


def der(M: Mould) -> Mould:
    return Mould([c.scale(r) for r, c in enumerate(M.comps)], M.flavor, check=False)


def _usum(r: int) -> Polynomial:
    return lin_poly(tuple((_su(i), 1) for i in range(1, r + 1)))


def dur(M: Mould) -> Mould:
    """Multiply the depth-r component by u1+...+ur."""
    return Mould([c * _usum(r) if r else ZERO_RF for r, c in enumerate(M.comps)],
                 join_flavor(M) if M.flavor != V else BI, check=False)


def swap(M: Mould) -> Mould:
    fl = {U: V, V: U, BI: BI}[M.flavor]
    return _apply_word(M, _swap_word, flavor=fl)


UNARY = {
    "push": push,
    "neg": neg,
    "anti": anti,
    "mantar": mantar,
    "pari": pari,
    "der": der,
    "dur": dur,
    "swap": swap,
}


def unary(M: Mould, op: str) -> Mould:
    try:
        fn = UNARY[op]
    except KeyError:
        raise MouldError(f"unknown unary operator {op!r}") from None
    return fn(M)


def split_blocks(w: Word, lengths: Sequence[int]) -> List[Word]:
    out = []
    pos = 0
    for n in lengths:
        out.append(w[pos:pos + n])
        pos += n
    return out
