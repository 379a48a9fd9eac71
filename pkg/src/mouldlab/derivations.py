"""Flexion derivations, the pre-Lie laws built on them, and the ari/ira brackets."""
from __future__ import annotations

from typing import Optional

from .exact import ZERO_RF, rf_sum
from .mould import (
    Mould,
    MouldError,
    anti,
    base_word,
    join_flavor,
    lower_b_left,
    lower_b_right,
    mu,
    neg,
    push,
    swap,
    upper_a,
    upper_c,
)


def _need_zero_constant(B: Mould, name: str):
    if not B.comps[0].is_zero():
        raise MouldError(f"{name} needs B(empty) = 0")


def _amit_comp(B: Mould, A: Mould, r: int):
    w = base_word(r)
    terms = []
    for k in range(r - 1):
        for l in range(1, r - k):
            a, b, c = w[:k], w[k:k + l], w[k + l:]
            bv = B.at(lower_b_right(b, c))
            if bv.is_zero():
                continue
            av = A.at(a + upper_c(b, c))
            if not av.is_zero():
                terms.append(av * bv)
    return rf_sum(terms)


def _anit_comp(B: Mould, A: Mould, r: int):
    w = base_word(r)
    terms = []
    for k in range(1, r):
        for l in range(1, r - k + 1):
            a, b, c = w[:k], w[k:k + l], w[k + l:]
            bv = B.at(lower_b_left(a, b))
            if bv.is_zero():
                continue
            av = A.at(upper_a(a, b) + c)
            if not av.is_zero():
                terms.append(av * bv)
    return rf_sum(terms)


def _assemble(A: Mould, B: Mould, fn) -> Mould:
    D = min(A.depth, B.depth)
    comps = [ZERO_RF] + [fn(r) for r in range(1, D + 1)]
    return Mould(comps, join_flavor(A, B), check=False)


def amit(B: Mould, A: Mould) -> Mould:
    _need_zero_constant(B, "amit")
    return _assemble(A, B, lambda r: _amit_comp(B, A, r))


def anit(B: Mould, A: Mould) -> Mould:
    _need_zero_constant(B, "anit")
    return _assemble(A, B, lambda r: _anit_comp(B, A, r))


def axit(B: Mould, C: Mould, A: Mould) -> Mould:
    """``axit(B, C) . A = amit(B) . A + anit(C) . A``."""
    _need_zero_constant(B, "axit")
    _need_zero_constant(C, "axit")
    D = min(A.depth, B.depth, C.depth)
    comps = [ZERO_RF] + [_amit_comp(B, A, r) + _anit_comp(C, A, r) for r in range(1, D + 1)]
    return Mould(comps, join_flavor(A, B, C), check=False)


def arit(B: Mould, A: Mould) -> Mould:
    return axit(B, -B, A)


def awit(B: Mould, A: Mould) -> Mould:
    return axit(B, anti(neg(B)), A)


def irat(B: Mould, A: Mould) -> Mould:
    return axit(B, -push(B), A)


def iwat(B: Mould, A: Mould) -> Mould:
    return axit(B, anti(B), A)


DERIVATIONS = {
    "amit": amit,
    "anit": anit,
    "arit": arit,
    "awit": awit,
    "irat": irat,
    "iwat": iwat,
}


def flexion_derivation(B: Mould, A: Mould, mode: str, C: Optional[Mould] = None) -> Mould:
    if mode == "axit":
        if C is None:
            raise MouldError("axit needs the second parameter C")
        return axit(B, C, A)
    try:
        return DERIVATIONS[mode](B, A)
    except KeyError:
        raise MouldError(f"unknown derivation {mode!r}") from None


def preari(A: Mould, B: Mould) -> Mould:
    return arit(B, A) + mu(A, B)


def preawi(A: Mould, B: Mould) -> Mould:
    return awit(B, A) + mu(A, B)


def preira(A: Mould, B: Mould) -> Mould:
    return irat(B, A) + mu(A, B)


PRELIE = {"preari": preari, "preawi": preawi, "preira": preira}


def prelie(A: Mould, B: Mould, mode: str) -> Mould:
    try:
        return PRELIE[mode](A, B)
    except KeyError:
        raise MouldError(f"unknown pre-Lie law {mode!r}") from None


def _need_ari(A: Mould, B: Mould):
    if not (A.comps[0].is_zero() and B.comps[0].is_zero()):
        raise MouldError("bracket arguments need zero constant term")


def ari(A: Mould, B: Mould) -> Mould:
    _need_ari(A, B)
    return preari(A, B) - preari(B, A)


def ira(A: Mould, B: Mould) -> Mould:
    _need_ari(A, B)
    return irat(B, A) + mu(A, B) - irat(A, B) - mu(B, A)


def bracket(A: Mould, B: Mould, mode: str) -> Mould:
    if mode == "ari":
        return ari(A, B)
    if mode == "ira":
        return ira(A, B)
    raise MouldError(f"unknown bracket {mode!r}")


def swamu(A: Mould, B: Mould) -> Mould:
    return swap(mu(swap(A), swap(B)))
