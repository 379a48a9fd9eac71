"""Exact rationals, sparse multivariate polynomials and rational functions.

Monomials are packed into a single Python integer: every variable owns an
8-bit exponent field, so multiplying two monomials is integer addition.
Variables live in three families (``u``, ``v``, ``z``) of 32 indices each.

A :class:`RationalFunction` is a polynomial numerator over a multiset of
linear forms.  Each linear form is stored primitive with integer
coefficients and a positive leading coefficient, and after every operation a
reduction pass cancels any factor dividing the numerator.  Because linear
forms are irreducible, a fully reduced value is canonical and structural
equality coincides with equality of rational functions.
"""
from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from ._backend import ONE, ZERO, Q, as_q

FAMILIES = ("u", "v", "z")
SLOTS_PER_FAMILY = 32
_WIDTH = 8
_MASK = (1 << _WIDTH) - 1
NSLOTS = len(FAMILIES) * SLOTS_PER_FAMILY
_NBYTES = NSLOTS * _WIDTH // 8

_P = (1 << 61) - 1
_rng = random.Random(0x5EED)
_POINT = [_rng.randrange(2, _P - 1) for _ in range(NSLOTS)]


class PoleError(ArithmeticError):
    """A substitution sent a denominator factor to zero."""


class NotRepresentable(ValueError):
    """The result would leave the class of linear-form denominators."""


@dataclass(frozen=True, order=True)
class Variable:
    family: str
    index: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown variable family {self.family!r}")
        if not 0 <= self.index < SLOTS_PER_FAMILY:
            raise ValueError(f"variable index {self.index} out of range")

    @property
    def slot(self) -> int:
        return FAMILIES.index(self.family) * SLOTS_PER_FAMILY + self.index

    def __str__(self) -> str:
        return f"{self.family}{self.index}"


def slot(family: str, index: int) -> int:
    if not 0 <= index < SLOTS_PER_FAMILY:
        raise ValueError(f"variable index {index} out of range")
    return FAMILIES.index(family) * SLOTS_PER_FAMILY + index


def slot_name(s: int) -> str:
    return f"{FAMILIES[s // SLOTS_PER_FAMILY]}{s % SLOTS_PER_FAMILY}"


def slot_family(s: int) -> str:
    return FAMILIES[s // SLOTS_PER_FAMILY]


def slot_index(s: int) -> int:
    return s % SLOTS_PER_FAMILY


def _as_slot(v: Union[int, Variable]) -> int:
    return v.slot if isinstance(v, Variable) else v


# ---------------------------------------------------------------------------
# packed monomials

def mono_of(s: int, e: int = 1) -> int:
    return e << (_WIDTH * s)


def mono_decode(m: int):
    """List of (slot, exponent) pairs in increasing slot order."""
    out = []
    while m:
        low = (m & -m).bit_length() - 1
        s = low // _WIDTH
        sh = s * _WIDTH
        e = (m >> sh) & _MASK
        out.append((s, e))
        m -= e << sh
    return out


def mono_degree(m: int) -> int:
    return sum(m.to_bytes(_NBYTES, "little"))


def mono_exponent(m: int, s: int) -> int:
    return (m >> (_WIDTH * s)) & _MASK


def _mono_sort_key(m: int):
    # graded lex: higher total degree first, then larger exponent on the
    # earliest variable first
    b = m.to_bytes(_NBYTES, "little")
    return (-sum(b), tuple(-x for x in b))


def _qmod(c) -> Optional[int]:
    d = int(c.denominator) % _P
    if d == 0:
        return None
    return int(c.numerator) % _P * pow(d, -1, _P) % _P


# ---------------------------------------------------------------------------
# polynomials

Scalar = Union[int, Q]


class Polynomial:
    """Sparse polynomial with exact rational coefficients (immutable)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Dict[int, Q]] = None):
        self.terms: Dict[int, Q] = terms if terms is not None else {}
        self._hash = None

    # construction -----------------------------------------------------
    @staticmethod
    def constant(c: Scalar) -> "Polynomial":
        c = as_q(c)
        return Polynomial({0: c} if c else {})

    @staticmethod
    def variable(v: Union[int, Variable], power: int = 1) -> "Polynomial":
        return Polynomial({mono_of(_as_slot(v), power): ONE})

    @staticmethod
    def linear(coeffs: Mapping[Union[int, Variable], Scalar], const: Scalar = 0) -> "Polynomial":
        t: Dict[int, Q] = {}
        for v, c in coeffs.items():
            c = as_q(c)
            if c:
                m = mono_of(_as_slot(v))
                t[m] = t.get(m, ZERO) + c
        const = as_q(const)
        if const:
            t[0] = const
        return Polynomial({m: c for m, c in t.items() if c})

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Q:
        return self.terms.get(0, ZERO)

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def slots(self) -> set:
        acc = 0
        for m in self.terms:
            acc |= m
        out = set()
        while acc:
            low = (acc & -acc).bit_length() - 1
            s = low // _WIDTH
            out.add(s)
            acc &= ~(_MASK << (s * _WIDTH))
        return out

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self.terms}) <= 1

    # arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        r = dict(a)
        for m, c in b.items():
            v = r.get(m)
            if v is None:
                r[m] = c
            else:
                v = v + c
                if v:
                    r[m] = v
                else:
                    del r[m]
        return Polynomial(r)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c: Scalar) -> "Polynomial":
        c = as_q(c)
        if not c:
            return Polynomial()
        if c == 1:
            return self
        return Polynomial({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial()
        if len(b) == 1:
            (mb, cb), = b.items()
            return Polynomial({m + mb: c * cb for m, c in a.items()})
        if len(a) == 1:
            (ma, ca), = a.items()
            return Polynomial({m + ma: ca * c for m, c in b.items()})
        r: Dict[int, Q] = {}
        get = r.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = m1 + m2
                r[m] = get(m, ZERO) + c1 * c2
        return Polynomial({m: c for m, c in r.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Q)):
            return self.terms == ({0: as_q(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .textform import render_polynomial

        return f"Polynomial({render_polynomial(self)})"

    # ordering / inspection -------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _mono_sort_key(mc[0]))

    def coefficient(self, exps: Mapping[Union[int, Variable], int]) -> Q:
        m = 0
        for v, e in exps.items():
            m += mono_of(_as_slot(v), e)
        return self.terms.get(m, ZERO)

    # substitution -----------------------------------------------------
    def subs(self, mapping: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Substitute polynomials for variables; unmapped variables stay."""
        if not mapping or not self.terms:
            return self
        simple: Dict[int, Tuple[int, Q]] = {}
        general: Dict[int, "Polynomial"] = {}
        for s, img in mapping.items():
            t = img.terms
            if len(t) == 1:
                (m, c), = t.items()
                simple[s] = (m, c)
            elif not t:
                simple[s] = (0, ZERO)
            else:
                general[s] = img
        if general:
            return self._subs_horner(mapping)
        out: Dict[int, Q] = {}
        get = out.get
        for m, c in self.terms.items():
            newm = 0
            coef = c
            for s, e in mono_decode(m):
                if s in simple:
                    mm, cc = simple[s]
                    newm += mm * e
                    if cc != 1:
                        coef = coef * cc ** e
                else:
                    newm += e << (_WIDTH * s)
            if coef:
                out[newm] = get(newm, ZERO) + coef
        return Polynomial({m: c for m, c in out.items() if c})

    def _subs_horner(self, mapping: Mapping[int, "Polynomial"]) -> "Polynomial":
        # peel one mapped variable at a time; images are never re-substituted
        order = sorted(mapping)
        full = (1 << _WIDTH) - 1
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(s: int, e: int) -> Polynomial:
            pw = powers.get((s, e))
            if pw is None:
                pw = powers[(s, e)] = mapping[s] ** e
            return pw

        def go(terms: Dict[int, Q], i: int) -> Polynomial:
            if i == len(order) or not terms:
                return Polynomial(terms)
            s = order[i]
            shift = _WIDTH * s
            groups: Dict[int, Dict[int, Q]] = {}
            for m, c in terms.items():
                e = (m >> shift) & full
                groups.setdefault(e, {})[m - (e << shift)] = c
            acc: Dict[int, Q] = {}
            get = acc.get
            for e, g in groups.items():
                q = go(g, i + 1)
                part = q if e == 0 else q * power(s, e)
                for m, c in part.terms.items():
                    acc[m] = get(m, ZERO) + c
            return Polynomial({m: c for m, c in acc.items() if c})

        return go(self.terms, 0)

    def rename(self, perm: Mapping[int, int]) -> "Polynomial":
        """Rename variables slot-to-slot (fast path of :meth:`subs`)."""
        out: Dict[int, Q] = {}
        for m, c in self.terms.items():
            newm = 0
            for s, e in mono_decode(m):
                newm += e << (_WIDTH * perm.get(s, s))
            out[newm] = out.get(newm, ZERO) + c
        return Polynomial({m: c for m, c in out.items() if c})

    def eval_mod(self, values, override: Optional[Tuple[int, int]] = None) -> Optional[int]:
        """Evaluate modulo a fixed large prime at integer ``values[slot]``."""
        acc = 0
        os_, ov = override if override is not None else (-1, 0)
        for m, c in self.terms.items():
            cm = _qmod(c)
            if cm is None:
                return None
            for s, e in mono_decode(m):
                cm = cm * pow(ov if s == os_ else values[s], e, _P) % _P
            acc += cm
        return acc % _P

    def evaluate(self, values: Mapping[int, Q]) -> Q:
        acc = ZERO
        for m, c in self.terms.items():
            t = c
            for s, e in mono_decode(m):
                t = t * as_q(values[s]) ** e
            acc += t
        return acc

    def divide_linear(self, form: "LinearForm") -> Optional["Polynomial"]:
        """Exact quotient by ``form`` if it divides, else None."""
        if not self.terms:
            return Polynomial()
        s0, a0 = form.coeffs[0]
        sh = _WIDTH * s0
        # cheap modular screen on the hyperplane form = 0
        vals = _POINT
        rest = form.const % _P
        for s, a in form.coeffs[1:]:
            rest += a * vals[s]
        x0 = (-rest) * pow(a0, -1, _P) % _P
        r = self.eval_mod(vals, (s0, x0))
        if r is not None and r != 0:
            return None
        # exact synthetic division in the variable of slot s0
        by_e: Dict[int, Dict[int, Q]] = defaultdict(dict)
        for m, c in self.terms.items():
            e = (m >> sh) & _MASK
            by_e[e][m - (e << sh)] = c
        top = max(by_e)
        if top == 0:
            return None
        inv = ONE / as_q(a0)
        t = Polynomial.linear({s: -as_q(a) * inv for s, a in form.coeffs[1:]}, -as_q(form.const) * inv)
        quotient: Dict[int, Q] = {}
        q = Polynomial(by_e[top])
        for k in range(top - 1, -1, -1):
            for m, c in q.terms.items():
                quotient[m + (k << sh)] = c * inv
            ck = Polynomial(by_e.get(k, {}))
            q = ck + t * q
        if q.terms:
            return None
        return Polynomial(quotient)


# ---------------------------------------------------------------------------
# linear forms

class LinearForm:
    """Primitive integer linear form with positive leading coefficient."""

    __slots__ = ("coeffs", "const", "_hash", "_poly")

    def __init__(self, coeffs: Tuple[Tuple[int, int], ...], const: int = 0):
        self.coeffs = coeffs
        self.const = const
        self._hash = hash((coeffs, const))
        self._poly = None

    @staticmethod
    def normalize(p: Polynomial) -> Tuple[Q, Optional["LinearForm"]]:
        """Write a polynomial of degree <= 1 as ``scale * form``."""
        items = []
        const = ZERO
        for m, c in p.terms.items():
            if m == 0:
                const = c
                continue
            dec = mono_decode(m)
            if len(dec) != 1 or dec[0][1] != 1:
                raise NotRepresentable("not a linear form")
            items.append((dec[0][0], c))
        if not items:
            return const, None
        items.sort()
        vals = [c for _, c in items] + ([const] if const else [])
        den = 1
        for c in vals:
            den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
        ints = [int(c * den) for c in vals]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[0] < 0:
            g = -g
        coeffs = tuple((s, int(c * den) // g) for s, c in items)
        k = int(const * den) // g if const else 0
        return Q(g, den), LinearForm(coeffs, k)

    @staticmethod
    def of(coeffs: Mapping[Union[int, Variable], Scalar], const: Scalar = 0) -> "LinearForm":
        scale, form = LinearForm.normalize(Polynomial.linear(coeffs, const))
        if form is None:
            raise ValueError("linear form without variables")
        return form

    def to_poly(self) -> Polynomial:
        if self._poly is None:
            t = {mono_of(s): Q(a) for s, a in self.coeffs}
            if self.const:
                t[0] = Q(self.const)
            self._poly = Polynomial(t)
        return self._poly

    def key(self):
        return (len(self.coeffs), self.coeffs, self.const)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs and self.const == other.const

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "LinearForm") -> bool:
        return self.key() < other.key()


    def __repr__(self) -> str:
        from .textform import render_polynomial

        return f"LinearForm({render_polynomial(self.to_poly())})"


def _linear_factorization(p: Polynomial) -> Optional[Tuple[Q, Dict[LinearForm, int]]]:
    """Split ``p`` as scalar times a product of linear forms, if easy."""
    if not p.terms:
        return None
    if p.is_constant():
        return p.constant_value(), {}
    if len(p.terms) == 1:
        (m, c), = p.terms.items()
        return c, {LinearForm(((s, 1),), 0): e for s, e in mono_decode(m)}
    # remove a monomial content first
    common = None
    for m in p.terms:
        dec = dict(mono_decode(m))
        common = dec if common is None else {s: min(e, dec[s]) for s, e in common.items() if s in dec}
    factors: Dict[LinearForm, int] = {}
    if common:
        cm = sum(mono_of(s, e) for s, e in common.items())
        p = Polynomial({m - cm: c for m, c in p.terms.items()})
        for s, e in common.items():
            factors[LinearForm(((s, 1),), 0)] = e
    if p.degree() == 1:
        scale, form = LinearForm.normalize(p)
        factors[form] = factors.get(form, 0) + 1
        return scale, factors
    return None


# ---------------------------------------------------------------------------
# rational functions

Den = Tuple[Tuple[LinearForm, int], ...]


def _den_tuple(d: Mapping[LinearForm, int]) -> Den:
    return tuple(sorted(((f, k) for f, k in d.items() if k), key=lambda fk: fk[0].key()))


def _reduce(num: Polynomial, den: Dict[LinearForm, int], candidates=None) -> Polynomial:
    if not num.terms:
        den.clear()
        return num
    if num.is_constant():
        return num
    for f in list(den) if candidates is None else candidates:
        while den.get(f, 0) > 0:
            q = num.divide_linear(f)
            if q is None:
                break
            num = q
            den[f] -= 1
    return num


class RationalFunction:
    """Numerator polynomial over a product of linear forms (immutable)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial, den: Den = ()):
        self.num = num
        self.den = den if num.terms else ()
        self._hash = None

    # construction -----------------------------------------------------
    @staticmethod
    def make(num: Polynomial, den: Mapping[LinearForm, int] = None, candidates=None) -> "RationalFunction":
        d = dict(den or {})
        num = _reduce(num, d, candidates)
        return RationalFunction(num, _den_tuple(d))

    @staticmethod
    def constant(c: Scalar) -> "RationalFunction":
        return RationalFunction(Polynomial.constant(c))

    @staticmethod
    def variable(v: Union[int, Variable]) -> "RationalFunction":
        return RationalFunction(Polynomial.variable(v))

    @staticmethod
    def from_poly(p: Polynomial) -> "RationalFunction":
        return RationalFunction(p)

    @staticmethod
    def over_linear(num: Polynomial, forms: Iterable[Polynomial]) -> "RationalFunction":
        """``num`` divided by the product of the given degree-one polynomials."""
        d: Dict[LinearForm, int] = {}
        scale = ONE
        for p in forms:
            c, f = LinearForm.normalize(p)
            if f is None:
                if not c:
                    raise ZeroDivisionError("division by the zero function")
                scale *= c
            else:
                scale *= c
                d[f] = d.get(f, 0) + 1
        return RationalFunction.make(num.scale(ONE / scale), d)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def is_constant(self) -> bool:
        return not self.den and self.num.is_constant()

    def constant_value(self) -> Q:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value()

    def is_polynomial(self) -> bool:
        return not self.den

    def slots(self) -> set:
        out = self.num.slots()
        for f, _ in self.den:
            out.update(s for s, _ in f.coeffs)
        return out

    # arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Polynomial):
            return RationalFunction(x)
        return RationalFunction.constant(x)

    def __add__(self, other) -> "RationalFunction":
        other = RationalFunction._coerce(other)
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            num = self.num + other.num
            d = dict(self.den)
            return RationalFunction.make(num, d)
        da, db = dict(self.den), dict(other.den)
        lcm = dict(da)
        for f, k in db.items():
            if k > lcm.get(f, 0):
                lcm[f] = k
        na = self.num * _den_product({f: lcm[f] - da.get(f, 0) for f in lcm})
        nb = other.num * _den_product({f: lcm[f] - db.get(f, 0) for f in lcm})
        cands = [f for f in lcm if da.get(f, 0) == db.get(f, 0)]
        return RationalFunction.make(na + nb, lcm, cands)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-RationalFunction._coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return RationalFunction._coerce(other) - self

    def scale(self, c: Scalar) -> "RationalFunction":
        c = as_q(c)
        if not c:
            return ZERO_RF
        return RationalFunction(self.num.scale(c), self.den)

    def __mul__(self, other) -> "RationalFunction":
        if not isinstance(other, (RationalFunction, Polynomial)):
            return self.scale(other)
        other = RationalFunction._coerce(other)
        if not self.num.terms or not other.num.terms:
            return ZERO_RF
        if not other.den and not self.den:
            return RationalFunction(self.num * other.num)
        da, db = dict(self.den), dict(other.den)
        n2 = _reduce(other.num, da) if da else other.num
        n1 = _reduce(self.num, db) if db else self.num
        for f, k in db.items():
            da[f] = da.get(f, 0) + k
        return RationalFunction(n1 * n2, _den_tuple(da))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num.terms:
            raise ZeroDivisionError("division by the zero function")
        fac = _linear_factorization(self.num)
        if fac is None:
            raise NotRepresentable("numerator is not a product of linear forms")
        c, forms = fac
        return RationalFunction.make(_den_product(dict(self.den)).scale(ONE / c), forms)

    def __truediv__(self, other) -> "RationalFunction":
        if not isinstance(other, (RationalFunction, Polynomial)):
            c = as_q(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self.scale(ONE / c)
        return self * RationalFunction._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return RationalFunction._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        r = ONE_RF
        for _ in range(n):
            r = r * self
        return r

    def divide_by_linear(self, p: Polynomial) -> "RationalFunction":
        """Divide by a degree-one polynomial, adding a denominator factor."""
        c, f = LinearForm.normalize(p)
        if f is None:
            return self / c
        d = dict(self.den)
        d[f] = d.get(f, 0) + 1
        return RationalFunction.make(self.num.scale(ONE / c), d, [f])

    # comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Q, Polynomial)):
                other = RationalFunction._coerce(other)
            else:
                return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return cross_equal(self, other)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        from .textform import render_rf

        return f"RationalFunction({render_rf(self)})"

    def __str__(self) -> str:
        from .textform import render_rf

        return render_rf(self)

    # evaluation -------------------------------------------------------
    def evaluate(self, values: Mapping[int, Q]) -> Q:
        d = ONE
        for f, k in self.den:
            v = f.to_poly().evaluate(values)
            if not v:
                raise PoleError("evaluation at a pole")
            d *= v ** k
        return self.num.evaluate(values) / d


def _den_product(d: Mapping[LinearForm, int]) -> Polynomial:
    p = Polynomial.constant(1)
    for f, k in d.items():
        for _ in range(k):
            p = p * f.to_poly()
    return p


def cross_equal(a: RationalFunction, b: RationalFunction) -> bool:
    """Equality by cross-multiplication of numerators and denominators."""
    return a.num * _den_product(dict(b.den)) == b.num * _den_product(dict(a.den))


ZERO_RF = RationalFunction(Polynomial())
ONE_RF = RationalFunction.constant(1)


def rf_sum(terms: Iterable[RationalFunction]) -> RationalFunction:
    """Sum many rational functions over one common denominator."""
    groups: Dict[Den, Polynomial] = {}
    for t in terms:
        if not t.num.terms:
            continue
        g = groups.get(t.den)
        groups[t.den] = t.num if g is None else g + t.num
    groups = {d: n for d, n in groups.items() if n.terms}
    if not groups:
        return ZERO_RF
    if len(groups) == 1:
        (d, n), = groups.items()
        return RationalFunction.make(n, dict(d))
    lcm: Dict[LinearForm, int] = {}
    for d in groups:
        for f, k in d:
            if k > lcm.get(f, 0):
                lcm[f] = k
    acc: Dict[int, Q] = {}
    get = acc.get
    for d, n in groups.items():
        dd = dict(d)
        p = n * _den_product({f: lcm[f] - dd.get(f, 0) for f in lcm})
        for m, c in p.terms.items():
            acc[m] = get(m, ZERO) + c
    num = Polynomial({m: c for m, c in acc.items() if c})
    return RationalFunction.make(num, lcm)


def substitute_linear(f: RationalFunction, mapping: Mapping[Union[int, Variable], Polynomial]) -> RationalFunction:
    """Evaluate ``f`` at linear forms; unmapped variables are left in place."""
    mp = {_as_slot(k): v for k, v in mapping.items()}
    if not f.num.terms:
        return f
    num = f.num.subs(mp)
    d: Dict[LinearForm, int] = {}
    scale = ONE
    for form, k in f.den:
        img = form.to_poly().subs(mp)
        c, g = LinearForm.normalize(img)
        if not c:
            raise PoleError("substitution annihilates a denominator factor")
        scale *= c ** k
        if g is not None:
            d[g] = d.get(g, 0) + k
    if scale != 1:
        num = num.scale(ONE / scale)
    return RationalFunction.make(num, d)


def rf_arith(a: RationalFunction, b, op: str) -> RationalFunction:
    """Dispatch for add, sub, mul, div, neg and scale."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def rf_is_polynomial(f: RationalFunction) -> Optional[Polynomial]:
    """The polynomial equal to ``f`` when no pole survives reduction."""
    if f.den:
        d = dict(f.den)
        num = _reduce(f.num, d)
        if any(d.values()):
            return None
        return num
    return f.num


def u(i: int) -> Polynomial:
    return Polynomial.variable(slot("u", i))


def v(i: int) -> Polynomial:
    return Polynomial.variable(slot("v", i))


def z(i: int) -> Polynomial:
    return Polynomial.variable(slot("z", i))
