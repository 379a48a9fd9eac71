"""Shuffles, stuffles and the order-preserving surjections behind them.

Words are tuples of hashable letters.  Multisets of words are returned as
``collections.Counter`` objects so they double as formal integer sums.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Callable, Hashable, List, Sequence, Tuple

Word = Tuple[Hashable, ...]
Surjection = Tuple[int, ...]


@lru_cache(maxsize=None)
def _shuffle(u: Word, v: Word) -> Counter:
    if not u:
        return Counter({v: 1})
    if not v:
        return Counter({u: 1})
    out: Counter = Counter()
    for w, k in _shuffle(u[1:], v).items():
        out[(u[0],) + w] += k
    for w, k in _shuffle(u, v[1:]).items():
        out[(v[0],) + w] += k
    return out


def shuffle_set(u: Sequence, v: Sequence) -> Counter:
    """All shuffles of ``u`` and ``v`` with multiplicity."""
    return Counter(_shuffle(tuple(u), tuple(v)))


def stuffle_surjections(r: int, s: int) -> List[Surjection]:
    """Surjections {1..r+s} -> {1..N}, increasing on both blocks.

    Each fiber holds one index or one index from each block.  The result is
    sorted lexicographically by the assignment vector.
    """
    if r < 0 or s < 0:
        raise ValueError("negative word length")
    out: List[Surjection] = []

    def rec(i: int, j: int, n: int, acc_a: list, acc_b: list):
        # i letters of the first block and j of the second are placed; n
        # target positions are used
        if i == r and j == s:
            out.append(tuple(acc_a + acc_b))
            return
        if i < r:
            acc_a.append(n + 1)
            rec(i + 1, j, n + 1, acc_a, acc_b)
            acc_a.pop()
        if j < s:
            acc_b.append(n + 1)
            rec(i, j + 1, n + 1, acc_a, acc_b)
            acc_b.pop()
        if i < r and j < s:
            acc_a.append(n + 1)
            acc_b.append(n + 1)
            rec(i + 1, j + 1, n + 1, acc_a, acc_b)
            acc_a.pop()
            acc_b.pop()

    rec(0, 0, 0, [], [])
    out.sort()
    return out


def surjection_fibers(sigma: Surjection) -> List[Tuple[int, ...]]:
    """Fibers of a surjection as tuples of 1-based source indices."""
    n = max(sigma, default=0)
    fibers: List[list] = [[] for _ in range(n)]
    for idx, t in enumerate(sigma, start=1):
        fibers[t - 1].append(idx)
    return [tuple(f) for f in fibers]


def stuffle_set(u: Sequence, v: Sequence, add_rule: Callable) -> Counter:
    """Stuffle of two words via surjections; collapsed letters use add_rule."""
    u, v = tuple(u), tuple(v)
    letters = u + v
    out: Counter = Counter()
    for sigma in stuffle_surjections(len(u), len(v)):
        w = []
        for fib in surjection_fibers(sigma):
            if len(fib) == 1:
                w.append(letters[fib[0] - 1])
            else:
                w.append(add_rule(letters[fib[0] - 1], letters[fib[1] - 1]))
        out[tuple(w)] += 1
    return out


def stuffle_recursive(u: Sequence, v: Sequence, add_rule: Callable) -> Counter:
    """Stuffle by the three-term recursion on first letters."""
    u, v = tuple(u), tuple(v)

    @lru_cache(maxsize=None)
    def rec(a: Word, b: Word) -> Counter:
        if not a:
            return Counter({b: 1})
        if not b:
            return Counter({a: 1})
        out: Counter = Counter()
        for w, k in rec(a[1:], b).items():
            out[(a[0],) + w] += k
        for w, k in rec(a, b[1:]).items():
            out[(b[0],) + w] += k
        c = add_rule(a[0], b[0])
        for w, k in rec(a[1:], b[1:]).items():
            out[(c,) + w] += k
        return out

    return Counter(rec(u, v))


def sum_product(x: Counter, y: Counter, product: Callable[[Word, Word], Counter]) -> Counter:
    """Bilinear extension of a word product to formal sums."""
    out: Counter = Counter()
    for a, ka in x.items():
        for b, kb in y.items():
            for w, k in product(a, b).items():
                out[w] += ka * kb * k
    return Counter({w: k for w, k in out.items() if k})


def add_indices(a: int, b: int) -> int:
    """The stuffle rule y_i + y_j = y_{i+j} on integer labels."""
    return a + b
