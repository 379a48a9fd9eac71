"""Exact linear algebra for double-shuffle spaces and formal multizeta relations."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from ._backend import Q, as_q
from .exact import Polynomial, RationalFunction, mono_of, rf_is_polynomial, slot
from .mould import U, Mould, swap
from .ncpoly import (
    NCPolynomial,
    ds_correction,
    shuffle_product,
    shuffle_reg_sum,
    stuffle_y,
    word_key,
    y_word,
    y_word_pairs,
    _star_ones_formal,
    _add_into,
)
from .symmetry import _shuffle_sum

Row = Dict[int, Q]


# ---------------------------------------------------------------------------
# constraint systems and fraction-free elimination

@dataclass
class ConstraintSystem:
    unknowns: List[Hashable]
    rows: List[Row] = field(default_factory=list)
    tags: List[str] = field(default_factory=list)
    _index: Dict[Hashable, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {u: i for i, u in enumerate(self.unknowns)}

    def col(self, label: Hashable) -> int:
        return self._index[label]

    def add(self, coeffs: Mapping[Hashable, object], tag: str = "") -> None:
        row: Row = {}
        for lab, c in coeffs.items():
            c = as_q(c)
            if c:
                j = self._index[lab]
                row[j] = row.get(j, 0) + c
        row = {j: c for j, c in row.items() if c}
        if row:
            self.rows.append(row)
            self.tags.append(tag)

    def add_columns(self, row: Row, tag: str = "") -> None:
        row = {j: as_q(c) for j, c in row.items() if c}
        if row:
            self.rows.append(row)
            self.tags.append(tag)

    @property
    def width(self) -> int:
        return len(self.unknowns)


def _integer_row(row: Row) -> Dict[int, int]:
    den = 1
    for c in row.values():
        d = int(Q(c).denominator)
        den = den * d // gcd(den, d)
    out = {j: int(Q(c) * den) for j, c in row.items()}
    return _primitive(out)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        row = {j: c // g for j, c in row.items()}
    lead = min(row)
    if row[lead] < 0:
        row = {j: -c for j, c in row.items()}
    return row


class Echelon:
    """Reduced integer echelon form built row by row (leftmost pivot)."""

    def __init__(self, width: int):
        self.width = width
        self.basis: Dict[int, Dict[int, int]] = {}

    def reduce(self, row: Dict[int, int]) -> Dict[int, int]:
        row = dict(row)
        for p in sorted(self.basis):
            if p not in row:
                continue
            b = self.basis[p]
            a, bp = row[p], b[p]
            g = gcd(a, bp)
            ma_, mb = bp // g, a // g
            new = {j: c * ma_ for j, c in row.items()}
            for j, c in b.items():
                t = new.get(j, 0) - mb * c
                if t:
                    new[j] = t
                else:
                    new.pop(j, None)
            row = new
            if not row:
                return row
        return _primitive(row) if row else row

    def insert(self, row: Dict[int, int]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        # keep the form reduced: clear column p from existing rows
        for q, b in list(self.basis.items()):
            if p in b:
                a, rp = b[p], row[p]
                g = gcd(a, rp)
                ma_, mb = rp // g, a // g
                new = {j: c * ma_ for j, c in b.items()}
                for j, c in row.items():
                    t = new.get(j, 0) - mb * c
                    if t:
                        new[j] = t
                    else:
                        new.pop(j, None)
                self.basis[q] = _primitive(new)
        self.basis[p] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, row: Row) -> bool:
        return not self.reduce(_integer_row(row)) if row else True


def echelon(C: ConstraintSystem) -> Echelon:
    E = Echelon(C.width)
    for row in C.rows:
        E.insert(_integer_row(row))
    return E


def rank(C: ConstraintSystem) -> int:
    return echelon(C).rank


def nullspace(C: ConstraintSystem) -> List[Tuple[Q, ...]]:
    """Exact nullspace basis, one primitive integer vector per free column."""
    E = echelon(C)
    pivots = sorted(E.basis)
    free = [j for j in range(C.width) if j not in E.basis]
    out = []
    for f in free:
        vec = [Q(0)] * C.width
        vec[f] = Q(1)
        for p in pivots:
            b = E.basis[p]
            if f in b:
                vec[p] = -Q(b[f], b[p])
        den = 1
        for c in vec:
            d = int(c.denominator)
            den = den * d // gcd(den, d)
        ints = [int(c * den) for c in vec]
        g = 0
        for c in ints:
            g = gcd(g, c)
        out.append(tuple(Q(c // g) for c in ints))
    return out


def alternal_linear_forms(r: int) -> List[Polynomial]:
    """Basis of the linear forms ``sum a_i u_i`` whose depth-``r`` mould is alternal."""
    unknowns = list(range(1, r + 1))
    C = ConstraintSystem(unknowns)
    images = []
    for i in unknowns:
        M = _concentrated(r, Polynomial.variable(slot("u", i)))
        rec = {}
        for s in range(1, r // 2 + 1):
            for m, c in rf_is_polynomial(_shuffle_sum(M, r, s)).terms.items():
                rec[(s, m)] = c
        images.append(rec)
    for key in sorted({k for rec in images for k in rec}):
        C.add_columns({j: rec[key] for j, rec in enumerate(images) if key in rec})
    return [Polynomial.linear({slot("u", i): c for i, c in zip(unknowns, vec) if c}) for vec in nullspace(C)]


# ---------------------------------------------------------------------------
# ls in the mould picture

def _monomials(d: int, deg: int) -> List[Tuple[int, ...]]:
    out = []

    def rec(i, left, acc):
        if i == d - 1:
            out.append(tuple(acc + [left]))
            return
        for e in range(left, -1, -1):
            rec(i + 1, left - e, acc + [e])

    rec(0, deg, [])
    return out


def _mono_poly(exps: Tuple[int, ...], family: str = "u") -> Polynomial:
    m = 0
    for i, e in enumerate(exps, start=1):
        if e:
            m += mono_of(slot(family, i), e)
    return Polynomial({m: Q(1)})


def _concentrated(d: int, p: Polynomial, flavor: str = U) -> Mould:
    comps = [RationalFunction.from_poly(Polynomial())] * d + [RationalFunction.from_poly(p)]
    return Mould(comps, flavor, check=False)


def ls_mould_system(n: int, d: int) -> ConstraintSystem:
    """Alternality of ``A`` and of ``swap(A)`` for ``A`` homogeneous of degree ``n - d`` in depth ``d``."""
    basis = _monomials(d, n - d)
    C = ConstraintSystem(basis)
    images = []
    for exps in basis:
        A = _concentrated(d, _mono_poly(exps))
        S = swap(A)
        rec = {}
        for s in range(1, d // 2 + 1):
            for tag, M in (("al", A), ("swap-al", S)):
                val = rf_is_polynomial(_shuffle_sum(M, d, s))
                for m, c in val.terms.items():
                    rec[(tag, s, m)] = c
        images.append(rec)
    keys = sorted({k for rec in images for k in rec}, key=lambda k: (k[0], k[1], k[2]))
    for key in keys:
        C.add_columns({j: rec[key] for j, rec in enumerate(images) if key in rec}, f"{key[0]} s={key[1]}")
    return C


def dim_ls(n: int, d: int) -> int:
    """Dimension of the weight-``n`` depth-``d`` linearized double shuffle space."""
    if n < 3 or d < 1 or d > n:
        return 0
    if d == 1 and n % 2 == 0:
        return 0
    C = ls_mould_system(n, d)
    return C.width - rank(C)


def ls_mould_basis(n: int, d: int) -> List[Mould]:
    if n < 3 or d < 1 or (d == 1 and n % 2 == 0):
        return []
    C = ls_mould_system(n, d)
    out = []
    for vec in nullspace(C):
        p = Polynomial()
        for exps, c in zip(C.unknowns, vec):
            if c:
                p = p + _mono_poly(exps).scale(c)
        out.append(_concentrated(d, p))
    return out


# ---------------------------------------------------------------------------
# constraints on the polynomial side

def words_of(n: int, d: Optional[int] = None) -> List[str]:
    out = []
    if d is None:
        for k in range(n + 1):
            out.extend(words_of(n, k))
        return sorted(out, key=word_key)
    for pos in combinations(range(n), d):
        s = set(pos)
        out.append("".join("y" if i in s else "x" for i in range(n)))
    return sorted(out, key=word_key)


def _split_rows(words: Sequence, letters=lambda w: w) -> Dict[Tuple, Dict[int, int]]:
    """Rows ``sum_{w in sh(u, v)} c_w`` keyed by unordered ``(u, v)``."""
    rows: Dict[Tuple, Dict[int, int]] = {}
    for j, w in enumerate(words):
        seq = letters(w)
        n = len(seq)
        for k in range(1, n // 2 + 1):
            for S in combinations(range(n), k):
                s = set(S)
                u = tuple(seq[i] for i in S)
                v = tuple(seq[i] for i in range(n) if i not in s)
                key = (u, v) if (len(u), u) <= (len(v), v) else (v, u)
                if k * 2 == n and key != (u, v):
                    continue
                row = rows.setdefault(key, {})
                row[j] = row.get(j, 0) + 1
    return rows


def _y_indices(w: str) -> Tuple[int, ...]:
    return tuple(len(b) + 1 for b in w.split("y")[:-1])


def ls_nc_system(n: int, d: int) -> ConstraintSystem:
    words = words_of(n, d)
    C = ConstraintSystem(words)
    for key, row in sorted(_split_rows(words).items()):
        C.add_columns(row, "lie")
    ending = [j for j, w in enumerate(words) if w.endswith("y")]
    sub = [words[j] for j in ending]
    for key, row in sorted(_split_rows(sub, _y_indices).items()):
        C.add_columns({ending[j]: c for j, c in row.items()}, "y-shuffle")
    return C


def dim_ls_nc(n: int, d: int) -> int:
    """The same dimension from the polynomial-side relations."""
    if n < 3 or d < 1 or d > n:
        return 0
    if d == 1 and n % 2 == 0:
        return 0
    C = ls_nc_system(n, d)
    return C.width - rank(C)


@dataclass(frozen=True)
class DsCandidate:
    f: NCPolynomial
    correction: Q


def ds_system(n: int) -> ConstraintSystem:
    words = words_of(n)
    C = ConstraintSystem(words)
    for key, row in sorted(_split_rows(words).items(), key=lambda kv: (len(kv[0][0]), kv[0])):
        C.add_columns(row, "lie")
    top = C.col("x" * (n - 1) + "y")
    corr = Q((-1) ** (n - 1), n)
    ones = (1,) * n
    for u, v in y_word_pairs(n):
        row: Row = {}
        for w, k in stuffle_y(u, v).items():
            row[C.col(y_word(w))] = row.get(C.col(y_word(w)), 0) + k
            if w == ones:
                row[top] = row.get(top, 0) + k * corr
        C.add_columns(row, "stuffle")
    return C


def ds_solve(n: int) -> List[DsCandidate]:
    """Basis of the weight-``n`` double shuffle space."""
    C = ds_system(n)
    out = []
    for vec in nullspace(C):
        f = NCPolynomial({w: c for w, c in zip(C.unknowns, vec) if c})
        out.append(DsCandidate(f, ds_correction(f)))
    return out


# ---------------------------------------------------------------------------
# formal multizeta relations

@lru_cache(maxsize=None)
def _stuffle_reg_formal(word: Tuple[int, ...]) -> Tuple[Tuple[str, Q], ...]:
    i = 0
    while i < len(word) and word[i] == 1:
        i += 1
    v = y_word(word[i:])
    out: Dict[str, Q] = {}
    for j in range(i + 1):
        _add_into(out, shuffle_product(dict(_star_ones_formal(j)), {"y" * (i - j) + v: Q(1)}).items())
    return tuple(out.items())


@dataclass
class FZResult:
    weight: int
    unknowns: List[str]
    relations: List[Tuple[str, Dict[str, Q]]]
    rank: int

    @property
    def bound(self) -> int:
        return len(self.unknowns) - self.rank

    def implies(self, combo: Mapping[str, object]) -> bool:
        C = ConstraintSystem(self.unknowns)
        for tag, rel in self.relations:
            C.add(rel, tag)
        E = echelon(C)
        row = {C.col(w): as_q(c) for w, c in combo.items() if as_q(c)}
        return E.contains(row)


def convergent_words(n: int) -> List[str]:
    return [w for w in words_of(n) if w.startswith("x") and w.endswith("y")]


def fz_relations(n: int) -> FZResult:
    """Regularized double shuffle relations in weight ``n`` and the resulting bound."""
    if n < 2:
        raise ValueError("weight must be at least 2")
    unknowns = convergent_words(n)
    C = ConstraintSystem(unknowns)
    rels: List[Tuple[str, Dict[str, Q]]] = []
    for u, v in y_word_pairs(n):
        lhs: Dict[str, Q] = {}
        for w, k in stuffle_y(u, v).items():
            _add_into(lhs, _stuffle_reg_formal(tuple(w)), k)
        rhs = shuffle_product(dict(_stuffle_reg_formal(u)), dict(_stuffle_reg_formal(v)))
        _add_into(lhs, rhs.items(), -1)
        rel = shuffle_reg_sum(lhs)
        tag = f"st({_name(u)},{_name(v)})"
        if rel:
            rels.append((tag, dict(sorted(rel.items(), key=lambda kv: word_key(kv[0])))))
            C.add(rel, tag)
    return FZResult(n, unknowns, rels, rank(C))


def _name(k) -> str:
    return "*".join(f"y{i}" for i in k)


def z_name(w: str) -> str:
    """``Z(k1,...,kr)`` label of a convergent word."""
    return "Z(" + ",".join(str(i) for i in _y_indices(w)) + ")"


# ---------------------------------------------------------------------------
# reference series

def _series_inverse(coeffs: Dict[Tuple[int, int], int], N: int, Dm: int) -> Dict[Tuple[int, int], int]:
    out: Dict[Tuple[int, int], int] = {}
    for d in range(Dm + 1):
        for n in range(N + 1):
            if (n, d) == (0, 0):
                out[(0, 0)] = 1
                continue
            s = 0
            for (a, b), c in coeffs.items():
                if (a, b) == (0, 0) or a > n or b > d:
                    continue
                s += c * out.get((n - a, d - b), 0)
            out[(n, d)] = -s
    return out


@lru_cache(maxsize=None)
def bk_table(N: int, Dm: int) -> Tuple[Tuple[Tuple[int, int], int], ...]:
    """Taylor coefficients of ``1 / (1 - O Y + S Y^2 - S Y^4)`` up to ``X^N Y^Dm``."""
    O = {k: 1 for k in range(3, N + 1, 2)}
    S: Dict[int, int] = {}
    for a in range(0, N + 1, 4):
        for b in range(0, N + 1 - a, 6):
            k = 12 + a + b
            if k <= N:
                S[k] = S.get(k, 0) + 1
    den: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for k, c in O.items():
        den[(k, 1)] = den.get((k, 1), 0) - c
    for k, c in S.items():
        den[(k, 2)] = den.get((k, 2), 0) + c
        den[(k, 4)] = den.get((k, 4), 0) - c
    return tuple(sorted(_series_inverse(den, N, Dm).items()))


def bk_coeff(n: int, d: int) -> int:
    return dict(bk_table(n, d)).get((n, d), 0)


def witt_dims(n: int) -> int:
    """Coefficient of ``X^n`` in ``(1 - X^2) / (1 - X^2 - X^3)``."""
    a = [0] * (max(n, 3) + 1)
    num = {0: 1, 2: -1}
    for k in range(n + 1):
        a[k] = num.get(k, 0) + (a[k - 2] if k >= 2 else 0) + (a[k - 3] if k >= 3 else 0)
    return a[n]


def free_lie_odd_dims(n: int) -> int:
    """Weight-``n`` dimension of the free Lie algebra on one generator in each odd weight >= 3."""
    def mobius(k: int) -> int:
        res, p, m = 1, 2, k
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if m > 1 else res

    # power sums of the generator weights: log(1 - sum_g t^g) = -sum_n t^n/n * p_n,
    # and dim L_n = (1/n) sum_{k|n} mu(k) * a_(n/k) with a_m the m-th power sum
    N = n
    gens = [w for w in range(3, N + 1, 2)]
    # a_m = m * [t^m] (-log(1 - G(t)))
    series = [Q(0)] * (N + 1)
    G = [0] * (N + 1)
    for g in gens:
        G[g] += 1
    power = [Q(0)] * (N + 1)
    power[0] = Q(1)
    for k in range(1, N + 1):
        new = [Q(0)] * (N + 1)
        for i, c in enumerate(power):
            if c:
                for g in gens:
                    if i + g <= N:
                        new[i + g] += c
        power = new
        for i in range(N + 1):
            series[i] += power[i] / k
    total = Q(0)
    for k in range(1, n + 1):
        if n % k == 0:
            m = n // k
            total += mobius(k) * series[m] * m
    return int(total / n)
