"""Decision procedures for the shuffle-type and stuffle-type mould symmetries."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple

from ._backend import Q
from .exact import ONE_RF, Polynomial, RationalFunction, rf_is_polynomial, rf_sum, slot_family
from .mould import V, Mould, MouldError, base_word, lin_poly, mantar, neg, push, swap
from .words import shuffle_set, stuffle_surjections, surjection_fibers


@dataclass(frozen=True)
class SymmetryReport:
    property: str
    holds: bool
    first_defect: Optional[Tuple[Tuple[int, int], RationalFunction]] = None
    depth: int = 0

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class DimorphyResult:
    cls: str
    correction: Optional[Mould] = None
    underline: bool = False
    reports: Tuple[SymmetryReport, ...] = field(default=(), compare=False)

    @property
    def name(self) -> str:
        return self.cls


def _shuffle_sum(M: Mould, r: int, s: int) -> RationalFunction:
    w = base_word(r)
    terms = []
    for perm, k in shuffle_set(tuple(range(s)), tuple(range(s, r))).items():
        val = M.at(tuple(w[i] for i in perm))
        if not val.is_zero():
            terms.append(val.scale(k) if k != 1 else val)
    return rf_sum(terms)


def shuffle_pairs(r: int, full: bool = False) -> Iterator[int]:
    top = r - 1 if full else r // 2
    return iter(range(1, top + 1))


def check_alternal(M: Mould, full: bool = False) -> SymmetryReport:
    if not M.comps[0].is_zero():
        return SymmetryReport("alternal", False, ((0, 0), M.comps[0]), M.depth)
    for r in range(2, M.depth + 1):
        for s in shuffle_pairs(r, full):
            d = _shuffle_sum(M, r, s)
            if not d.is_zero():
                return SymmetryReport("alternal", False, ((s, r - s), d), M.depth)
    return SymmetryReport("alternal", True, None, M.depth)


def check_symmetral(M: Mould, full: bool = False) -> SymmetryReport:
    if M.comps[0] != ONE_RF:
        return SymmetryReport("symmetral", False, ((0, 0), M.comps[0] - ONE_RF), M.depth)
    for r in range(2, M.depth + 1):
        w = base_word(r)
        for s in shuffle_pairs(r, full):
            d = _shuffle_sum(M, r, s) - M.comps[s] * M.at(w[s:])
            if not d.is_zero():
                return SymmetryReport("symmetral", False, ((s, r - s), d), M.depth)
    return SymmetryReport("symmetral", True, None, M.depth)


# ---------------------------------------------------------------------------
# stuffle-type sums

def _need_v(M: Mould):
    if M.flavor == V:
        return
    for c in M.comps:
        if any(slot_family(s) == "u" for s in c.slots()):
            raise MouldError("alternility needs a flavor-V mould")


def _vletter(lin):
    return ((), lin)


def alternility_sum(M: Mould, r: int, s: int) -> RationalFunction:
    """The stuffle-type sum of ``M`` on the blocks ``v1..vr`` and ``v(r+1)..v(r+s)``."""
    _need_v(M)
    if r + s > M.depth:
        raise MouldError("alternility sum beyond truncation")
    vs = [l[1] for l in base_word(r + s)]
    terms = []
    for sigma in stuffle_surjections(r, s):
        fibers = surjection_fibers(sigma)
        collapsed = [i for i, f in enumerate(fibers) if len(f) == 2]
        inner = []
        for J in range(1 << len(collapsed)):
            word = []
            sign = 1
            for i, f in enumerate(fibers):
                if len(f) == 1:
                    word.append(_vletter(vs[f[0] - 1]))
                else:
                    pos = collapsed.index(i)
                    if J >> pos & 1:
                        sign = -sign
                        word.append(_vletter(vs[f[1] - 1]))
                    else:
                        word.append(_vletter(vs[f[0] - 1]))
            val = M.at(tuple(word))
            if not val.is_zero():
                inner.append(val if sign == 1 else -val)
        total = rf_sum(inner)
        if total.is_zero():
            continue
        if collapsed:
            forms = [lin_poly(vs[fibers[i][0] - 1]) - lin_poly(vs[fibers[i][1] - 1]) for i in collapsed]
            total = total * RationalFunction.over_linear(Polynomial.constant(1), forms)
        terms.append(total)
    return rf_sum(terms)


def _il_pairs(D: int) -> Iterator[Tuple[int, int]]:
    for n in range(2, D + 1):
        for r in range(1, n // 2 + 1):
            yield r, n - r


def check_alternil(M: Mould) -> SymmetryReport:
    if not M.comps[0].is_zero():
        return SymmetryReport("alternil", False, ((0, 0), M.comps[0]), M.depth)
    for r, s in _il_pairs(M.depth):
        d = alternility_sum(M, r, s)
        if not d.is_zero():
            return SymmetryReport("alternil", False, ((r, s), d), M.depth)
    return SymmetryReport("alternil", True, None, M.depth)


def check_symmetril(M: Mould) -> SymmetryReport:
    if M.comps[0] != ONE_RF:
        return SymmetryReport("symmetril", False, ((0, 0), M.comps[0] - ONE_RF), M.depth)
    for r, s in _il_pairs(M.depth):
        w = base_word(r + s)
        d = alternility_sum(M, r, s) - M.comps[r] * M.at(w[r:])
        if not d.is_zero():
            return SymmetryReport("symmetril", False, ((r, s), d), M.depth)
    return SymmetryReport("symmetril", True, None, M.depth)


def alternility_sums_polynomial(M: Mould) -> bool:
    """Whether every alternility sum of ``M`` is a polynomial."""
    return all(rf_is_polynomial(alternility_sum(M, r, s)) is not None for r, s in _il_pairs(M.depth))


CHECKERS = {
    "alternal": check_alternal,
    "symmetral": check_symmetral,
    "alternil": check_alternil,
    "symmetril": check_symmetril,
}


# ---------------------------------------------------------------------------
# dimorphy

def constant_correction(S: Mould, kind: str) -> Optional[Mould]:
    """Constants ``c_m`` (``c_1 = 0``) making ``S + c`` alternal or alternil.

    A constant at depth ``m`` adds ``C(m, r) c_m`` to the depth-``m`` sum of the
    split ``(r, m - r)``; at higher total depth its collapsed contributions
    cancel in the alternating sum over ``J``.  The first split fixes ``c_m``.
    """
    consts = [Q(0), Q(0)]
    for m in range(2, S.depth + 1):
        if kind == "alternal":
            d = _shuffle_sum(S, m, 1)
        else:
            d = alternility_sum(S, 1, m - 1)
        if not d.is_constant():
            return None
        consts.append(-d.constant_value() / m)
    comps = [S.comps[r] + RationalFunction.constant(consts[r]) if r else S.comps[0] for r in range(S.depth + 1)]
    C = Mould([RationalFunction.constant(c) for c in consts[: S.depth + 1]], S.flavor, check=False)
    fixed = Mould(comps, S.flavor, check=False)
    rep = check_alternal(fixed) if kind == "alternal" else check_alternil(fixed)
    return C if rep.holds else None


def depth1_even(M: Mould) -> bool:
    if M.depth < 1:
        return True
    return neg(M.truncate(1)).comps[1] == M.comps[1]


def classify_dimorphy(M: Mould) -> DimorphyResult:
    if not M.comps[0].is_zero():
        raise MouldError("dimorphy classification needs M(empty) = 0")
    rep = check_alternal(M)
    under = depth1_even(M)
    if not rep.holds:
        return DimorphyResult("none", None, under, (rep,))
    S = swap(M)
    ra = check_alternal(S)
    if ra.holds:
        return DimorphyResult("al/al", None, under, (rep, ra))
    ri = check_alternil(S)
    if ri.holds:
        return DimorphyResult("al/il", None, under, (rep, ri))
    C = constant_correction(S, "alternal")
    if C is not None:
        return DimorphyResult("al*al", C, under, (rep, ra))
    C = constant_correction(S, "alternil")
    if C is not None:
        return DimorphyResult("al*il", C, under, (rep, ri))
    return DimorphyResult("none", None, under, (rep, ra, ri))


def in_class(M: Mould, cls: str) -> bool:
    """Membership test, where the slash classes are contained in the star classes."""
    res = classify_dimorphy(M)
    if res.cls == cls:
        return True
    return (cls, res.cls) in {("al*al", "al/al"), ("al*il", "al/il")}


# ---------------------------------------------------------------------------
# invariance under unary operators

def _negpush(M: Mould) -> Mould:
    return neg(push(M))


INVARIANCE_OPS = {"push": push, "neg": neg, "mantar": mantar, "negpush": _negpush}


def check_operator_invariance(M: Mould, op: str) -> SymmetryReport:
    try:
        fn = INVARIANCE_OPS[op]
    except KeyError:
        raise MouldError(f"unknown operator {op!r}") from None
    diff = M.first_difference(fn(M))
    name = {"push": "pushInvariant", "neg": "negInvariant", "mantar": "mantarInvariant",
            "negpush": "negpushInvariant"}[op]
    if diff is None:
        return SymmetryReport(name, True, None, M.depth)
    r, d = diff
    return SymmetryReport(name, False, ((r, 0), d), M.depth)
