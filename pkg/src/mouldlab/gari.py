"""The group side: gaxit/garit/ganit automorphisms, gari, inverses, expari/logari.

Group elements are moulds with constant term 1.  Every inverse and logarithm
is a depth-by-depth triangular solve: the depth-``r`` unknown enters the
depth-``r`` equation linearly with coefficient 1.
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import List, Optional, Tuple

from ._backend import Q
from .derivations import ari, preari
from .exact import ONE_RF, ZERO_RF, RationalFunction, rf_sum
from .mould import (
    Mould,
    MouldError,
    Word,
    base_word,
    invmu,
    is_unit,
    join_flavor,
    lower_b_left,
    lower_b_right,
    mu,
    one_mould,
    push,
    swap,
    upper_both,
)

Segment = Tuple[int, int, int]  # lengths of a_i, b_i, c_i


@lru_cache(maxsize=None)
def gaxit_decompositions(r: int, with_a: bool = True) -> Tuple[Tuple[Segment, ...], ...]:
    """All splittings ``w = a1 b1 c1 ... as bs cs`` of a depth-``r`` word.

    Every ``b_i`` is nonempty and no interior pair ``c_i a_{i+1}`` is empty;
    ``a_1`` and ``c_s`` may be empty.  With ``with_a`` false every ``a_i`` is
    empty, which is the shape used by ganit.
    """
    out: List[Tuple[Segment, ...]] = []

    def rec(pos: int, first: bool, acc: list):
        for la in range(0, (r - pos) if with_a else 1):
            for lb in range(1, r - pos - la + 1):
                rest = r - pos - la - lb
                for lc in range(0, rest + 1):
                    seg = (la, lb, lc)
                    if not first and la == 0 and acc[-1][2] == 0:
                        continue
                    acc.append(seg)
                    if pos + la + lb + lc == r:
                        out.append(tuple(acc))
                    else:
                        rec(pos + la + lb + lc, False, acc)
                    acc.pop()

    if r == 0:
        return ((),)
    rec(0, True, [])
    return tuple(out)


def _gaxit_comp(A: Mould, B: Mould, C: Mould, r: int, skip_trivial: bool = False) -> RationalFunction:
    if r == 0:
        return A.comps[0]
    w = base_word(r)
    unit_b = is_unit(B)
    terms = []
    for dec in gaxit_decompositions(r, not unit_b):
        if skip_trivial and len(dec) == 1 and dec[0] == (0, r, 0):
            continue
        pos = 0
        val = ONE_RF
        inner: Word = ()
        for la, lb, lc in dec:
            a = w[pos:pos + la]
            b = w[pos + la:pos + la + lb]
            c = w[pos + la + lb:pos + la + lb + lc]
            pos += la + lb + lc
            if la:
                f = B.at(lower_b_right(a, b))
                if f.is_zero():
                    val = ZERO_RF
                    break
                val = val * f
            if lc:
                f = C.at(lower_b_left(b, c))
                if f.is_zero():
                    val = ZERO_RF
                    break
                val = val * f
            inner = inner + upper_both(a, b, c)
        if val.is_zero():
            continue
        av = A.at(inner)
        if not av.is_zero():
            terms.append(av * val)
    return rf_sum(terms)


def _need_one(B: Mould, name: str):
    if B.comps[0] != ONE_RF:
        raise MouldError(f"{name} needs constant term 1")


def gaxit(B: Mould, C: Mould, A: Mould) -> Mould:
    """``gaxit_{B,C} . A``."""
    D = min(A.depth, B.depth, C.depth)
    comps = [_gaxit_comp(A, B, C, r) for r in range(D + 1)]
    return Mould(comps, join_flavor(A, B, C), check=False)


def garit(B: Mould, A: Mould) -> Mould:
    _need_one(B, "garit")
    return gaxit(B, invmu(B), A)


def ganit(B: Mould, A: Mould) -> Mould:
    return gaxit(one_mould(B.depth, B.flavor), B, A)


def mould_automorphism(B: Mould, A: Mould, mode: str, C: Optional[Mould] = None) -> Mould:
    if mode == "garit":
        return garit(B, A)
    if mode == "ganit":
        return ganit(B, A)
    if mode == "gaxit":
        if C is None:
            raise MouldError("gaxit needs the second parameter C")
        return gaxit(B, C, A)
    raise MouldError(f"unknown automorphism {mode!r}")


def gari(*ms: Mould) -> Mould:
    """Group law; several arguments multiply left to right."""
    if len(ms) == 1:
        return ms[0]
    acc = ms[0]
    for B in ms[1:]:
        acc = mu(garit(B, acc), B)
    return acc


def gaxi(pair1: Tuple[Mould, Mould], pair2: Tuple[Mould, Mould]) -> Tuple[Mould, Mould]:
    A, B = pair1
    C, D = pair2
    return mu(gaxit(C, D, A), C), mu(D, gaxit(C, D, B))


# ---------------------------------------------------------------------------
# inverses

def _with_top(X: List[RationalFunction], r: int, flavor: str) -> Mould:
    return Mould(X[:r] + [ZERO_RF], flavor, check=False)


def invgari(B: Mould) -> Mould:
    """Solve ``gari(X, B) = 1``, i.e. ``garit_B . X = invmu(B)``."""
    _need_one(B, "invgari")
    Binv = invmu(B)
    X = [ONE_RF]
    for r in range(1, B.depth + 1):
        trial = _with_top(X, r, B.flavor)
        rest = _gaxit_comp(trial, B.truncate(r), Binv.truncate(r), r, skip_trivial=True)
        X.append(Binv.comps[r] - rest)
    return Mould(X, B.flavor, check=False)


def invgaxi_left(A: Mould, B: Mould) -> Mould:
    """Left component of the gaxi-inverse of ``(A, B)``: solves ``gaxit_{A,B} . X = invmu(A)``."""
    _need_one(A, "invgaxi")
    _need_one(B, "invgaxi")
    target = invmu(A)
    X = [ONE_RF]
    for r in range(1, min(A.depth, B.depth) + 1):
        trial = _with_top(X, r, join_flavor(A, B))
        rest = _gaxit_comp(trial, A.truncate(r), B.truncate(r), r, skip_trivial=True)
        X.append(target.comps[r] - rest)
    return Mould(X, join_flavor(A, B), check=False)


def invgani(B: Mould) -> Mould:
    """Solve ``ganit_X o ganit_B = id``, i.e. ``mu(X, ganit_X . B) = 1``."""
    _need_one(B, "invgani")
    X = [ONE_RF]
    for r in range(1, B.depth + 1):
        trial = _with_top(X, r, B.flavor)
        g = ganit(trial, B.truncate(r))
        X.append(-mu(trial, g).comps[r])
    return Mould(X, B.flavor, check=False)


# ---------------------------------------------------------------------------
# exponential and logarithm

def _need_zero(A: Mould, name: str):
    if not A.comps[0].is_zero():
        raise MouldError(f"{name} needs constant term 0")


def expari(A: Mould) -> Mould:
    _need_zero(A, "expari")
    D = A.depth
    total = one_mould(D, A.flavor)
    P = A
    for n in range(1, D + 1):
        total = total + P.scale(Q(1, factorial(n)))
        if n < D:
            P = preari(P, A)
    return Mould(total.comps, A.flavor, check=False)


def logari(G: Mould) -> Mould:
    _need_one(G, "logari")
    X = [ZERO_RF]
    for r in range(1, G.depth + 1):
        trial = Mould(X + [ZERO_RF], G.flavor, check=False)
        X.append(G.comps[r] - expari(trial).comps[r])
    return Mould(X, G.flavor, check=False)


# ---------------------------------------------------------------------------
# adjoint actions and the swap transports

def adari(A: Mould, B: Mould) -> Mould:
    _need_one(A, "adari")
    _need_zero(B, "adari")
    return gari(preari(A, B), invgari(A))


def adari_series(A: Mould, B: Mould) -> Mould:
    """Lie-series form of the adjoint action, used as an independent check."""
    L = logari(A)
    total = B
    term = B
    for n in range(1, B.depth + 1):
        term = ari(L, term)
        total = total + term.scale(Q(1, factorial(n)))
    return total


def adgari(A: Mould, B: Mould) -> Mould:
    return gari(A, B, invgari(A))


def fragari(A: Mould, B: Mould) -> Mould:
    return gari(A, invgari(B))


def ras(B: Mould) -> Mould:
    return invgari(swap(invgari(swap(B))))


def h_map(B: Mould) -> Mould:
    return push(swap(invmu(swap(B))))


def rash(B: Mould) -> Mould:
    return mu(h_map(B), B)


def crash(C: Mould) -> Mould:
    return rash(swap(invgari(swap(C))))


def gira(A: Mould, B: Mould) -> Mould:
    return swap(gari(swap(A), swap(B)))


SWAP_TRANSPORTS = {"ras": ras, "rash": rash, "crash": crash}


def swap_transport(B: Mould, which: str, A: Optional[Mould] = None) -> Mould:
    if which == "gira":
        if A is None:
            raise MouldError("gira needs two moulds")
        return gira(A, B)
    try:
        return SWAP_TRANSPORTS[which](B)
    except KeyError:
        raise MouldError(f"unknown transport {which!r}") from None
