"""Named moulds, Bernoulli numbers, diffeomorphism moulds and the pal/pil pair."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Dict, List, Sequence, Tuple

from ._backend import Q, as_q
from .derivations import arit, preari
from .exact import ONE_RF, ZERO_RF, Polynomial, RationalFunction, slot
from .mould import U, V, Mould, MouldError, anti, mu, swap


def _u(i: int) -> Polynomial:
    return Polynomial.variable(slot("u", i))


def _v(i: int) -> Polynomial:
    return Polynomial.variable(slot("v", i))


def _usum(a: int, b: int) -> Polynomial:
    return Polynomial.linear({slot("u", i): 1 for i in range(a, b + 1)})


def _over(num, forms) -> RationalFunction:
    if not isinstance(num, Polynomial):
        num = Polynomial.constant(num)
    return RationalFunction.over_linear(num, forms)


# ---------------------------------------------------------------------------
# Bernoulli numbers

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Q:
    """Bernoulli number with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("negative index")
    if n == 0:
        return Q(1)
    s = Q(0)
    for k in range(n):
        s += comb(n + 1, k) * bernoulli(k)
    return -s / (n + 1)


# ---------------------------------------------------------------------------
# named moulds

def _by_depth(D: int, fn: Callable[[int], RationalFunction], flavor: str, const=1) -> Mould:
    comps = [RationalFunction.constant(const)] + [fn(r) for r in range(1, D + 1)]
    return Mould(comps, flavor)


def _depth1(D: int, value: RationalFunction, flavor: str = U) -> Mould:
    return Mould([ZERO_RF, value] + [ZERO_RF] * (D - 1), flavor) if D >= 1 else Mould([ZERO_RF], flavor)


def one(D: int, flavor: str = U) -> Mould:
    return Mould([ONE_RF] + [ZERO_RF] * D, flavor)


def id_mould(D: int) -> Mould:
    return _depth1(D, ONE_RF)


def exp_mould(D: int) -> Mould:
    return _by_depth(D, lambda r: RationalFunction.constant(Q(1, factorial(r))), U, const=0)


def log_mould(D: int) -> Mould:
    return _by_depth(D, lambda r: RationalFunction.constant(Q((-1) ** (r + 1), r)), U, const=0)


def I_mould(D: int) -> Mould:
    return _depth1(D, ONE_RF)


def Pa(D: int) -> Mould:
    return _depth1(D, _over(1, [_u(1)]))


def pac(D: int) -> Mould:
    return _by_depth(D, lambda r: _over(1, [_u(i) for i in range(1, r + 1)]), U)


def pic(D: int) -> Mould:
    return _by_depth(D, lambda r: _over(1, [_v(i) for i in range(1, r + 1)]), V)


def poc(D: int) -> Mould:
    def comp(r):
        forms = [_v(1)] + [_v(i) - _v(i + 1) for i in range(1, r)]
        return _over(-1, forms)

    return _by_depth(D, comp, V)


def paj(D: int) -> Mould:
    return _by_depth(D, lambda r: _over(1, [_usum(1, i) for i in range(1, r + 1)]), U)


def Y_mould(D: int, flavor: str = V) -> Mould:
    return Mould([ONE_RF] + [ONE_RF if r == 1 else ZERO_RF for r in range(1, D + 1)], flavor)


def mu_power(M: Mould, q: int) -> Mould:
    acc = one(M.depth, M.flavor)
    for _ in range(q):
        acc = mu(acc, M)
    return acc


# ---------------------------------------------------------------------------
# re_r, gepar

def re_closed(r: int, D: int) -> Mould:
    """``re_r`` from its closed form, concentrated in depth ``r``."""
    if r < 1:
        raise MouldError("re_r needs r >= 1")
    num = Polynomial.linear({slot("v", i): 1 for i in range(1, r + 1)})
    forms = [_v(1)] + [_v(i) - _v(i + 1) for i in range(1, r)] + [_v(r)]
    comps = [ZERO_RF] * (D + 1)
    if r <= D:
        comps[r] = _over(num, forms)
    return Mould(comps, V)


def re_recursive(r: int, D: int) -> Mould:
    """``re_r`` by iterating ``arit(re_{r-1}) . re_1``."""
    re1 = _depth1(D, _over(1, [_v(1)]), V)
    cur = re1
    for _ in range(1, r):
        cur = arit(cur, re1)
    return cur


def re(r: int, D: int) -> Mould:
    return re_closed(r, D)


def gepar(A: Mould) -> Mould:
    S = swap(A)
    return mu(anti(S), S)


# ---------------------------------------------------------------------------
# truncated power series in one variable

Series = List[Q]


def ps_mul(a: Series, b: Series, N: int) -> Series:
    out = [Q(0)] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                if y:
                    out[i + j] += x * y
    return out


def ps_inv(a: Series, N: int) -> Series:
    if not a or a[0] == 0:
        raise ZeroDivisionError("series not invertible")
    out = [Q(0)] * (N + 1)
    out[0] = 1 / a[0]
    for n in range(1, N + 1):
        s = Q(0)
        for k in range(1, min(n, len(a) - 1) + 1):
            s += a[k] * out[n - k]
        out[n] = -s / a[0]
    return out


def ps_deriv(a: Series) -> Series:
    return [a[i] * i for i in range(1, len(a))] or [Q(0)]


def ps_compose(f: Series, g: Series, N: int) -> Series:
    """``f(g(x))`` for ``g(0) = 0``."""
    if g and g[0] != 0:
        raise ValueError("inner series needs zero constant term")
    out = [Q(0)] * (N + 1)
    power = [Q(1)] + [Q(0)] * N
    for k, c in enumerate(f[: N + 1]):
        if c:
            for i in range(N + 1):
                out[i] += c * power[i]
        power = ps_mul(power, g, N)
    return out


def _pad(a: Series, N: int) -> Series:
    return (list(a) + [Q(0)] * (N + 1))[: N + 1]


@dataclass(frozen=True)
class Diffeo:
    """``f(x) = x (1 + a_1 x + a_2 x^2 + ...)`` known through ``a_order``."""

    a: Tuple[Q, ...]

    @staticmethod
    def of(coeffs: Sequence) -> "Diffeo":
        return Diffeo(tuple(as_q(c) for c in coeffs))

    @staticmethod
    def from_function(fn: Callable[[int], Q], order: int) -> "Diffeo":
        return Diffeo(tuple(as_q(fn(r)) for r in range(1, order + 1)))

    @property
    def order(self) -> int:
        return len(self.a)

    def series(self) -> Series:
        return [Q(0), Q(1)] + list(self.a)

    def compose(self, other: "Diffeo") -> "Diffeo":
        """``self o other``, i.e. ``x -> self(other(x))``."""
        N = min(self.order, other.order) + 1
        s = ps_compose(_pad(self.series(), N), _pad(other.series(), N), N)
        return Diffeo(tuple(s[2:N + 1]))

    def inverse(self) -> "Diffeo":
        """Compositional inverse, solved coefficient by coefficient."""
        N = self.order + 1
        f = _pad(self.series(), N)
        g = [Q(0), Q(1)] + [Q(0)] * (N - 1)
        for n in range(2, N + 1):
            g[n] = -ps_compose(f, g, N)[n]
        return Diffeo(tuple(g[2:N + 1]))

    def dilator(self) -> Series:
        """Coefficients ``gamma_r`` (index r) of ``x - f/f'``."""
        N = self.order + 1
        f = self.series()
        fp = _pad(ps_deriv(f), N)
        ratio = ps_mul(_pad(f, N), ps_inv(fp, N), N)
        sharp = [-c for c in ratio]
        sharp[1] += 1
        return [Q(0)] + [sharp[r + 1] for r in range(1, self.order + 1)]

    def generator(self) -> Series:
        """Coefficients ``epsilon_r`` of the vector field whose time-1 flow is ``f``."""
        N = self.order + 1
        target = _pad(self.series(), N)
        eps = [Q(0)] * (self.order + 1)
        for n in range(1, self.order + 1):
            eps[n] = Q(0)
            flow = _flow(eps, N)
            eps[n] = target[n + 1] - flow[n + 1]
        return eps


def _flow(eps: Series, N: int) -> Series:
    """``exp(X) x`` for ``X = (sum eps_r x^{r+1}) d/dx``, truncated at order N."""
    field = [Q(0)] * (N + 1)
    for r, e in enumerate(eps):
        if r >= 1 and r + 1 <= N:
            field[r + 1] = e
    total = [Q(0)] * (N + 1)
    total[1] = Q(1)
    term = total[:]
    for k in range(1, N + 1):
        term = ps_mul(field, _pad(ps_deriv(term), N), N)
        term = [c / k for c in term]
        if not any(term):
            break
        total = [x + y for x, y in zip(total, term)]
    return total


def pil_diffeo(order: int) -> Diffeo:
    """``1 - e^{-x}``."""
    return Diffeo.from_function(lambda r: Q((-1) ** r, factorial(r + 1)), order)


def _coeff_re_mould(coeffs: Series, D: int) -> Mould:
    comps = [ZERO_RF]
    for r in range(1, D + 1):
        c = coeffs[r] if r < len(coeffs) else None
        if c is None:
            raise MouldError("diffeomorphism truncated below requested depth")
        comps.append(re_closed(r, r).comps[r].scale(c) if c else ZERO_RF)
    return Mould(comps, V)


def lop_mould(f: Diffeo, D: int) -> Mould:
    return _coeff_re_mould(f.generator(), D)


def d_mould(f: Diffeo, D: int) -> Mould:
    return _coeff_re_mould(f.dilator(), D)


def p_from_dilator(d: Mould) -> Mould:
    """Solve ``der p = preari(p, d)`` depth by depth from ``p(empty) = 1``."""
    comps = [ONE_RF]
    for r in range(1, d.depth + 1):
        trial = Mould(comps + [ZERO_RF], d.flavor, check=False)
        rhs = preari(trial, d.truncate(r)).comps[r]
        comps.append(rhs.scale(Q(1, r)))
    return Mould(comps, d.flavor, check=False)


def diffeo_moulds(f: Diffeo, D: int) -> Tuple[Mould, Mould, Mould]:
    """``(lop_f, d_f, p_f)``; ``p_f`` comes from the dilator recursion."""
    if f.order < D:
        raise MouldError("diffeomorphism truncated below requested depth")
    lop = lop_mould(f, D)
    d = d_mould(f, D)
    return lop, d, p_from_dilator(d)


def p_via_expari(f: Diffeo, D: int) -> Mould:
    from .gari import expari

    return expari(lop_mould(f, D))


def gepar_constants(f: Diffeo, D: int) -> List[Q]:
    """The constants ``c_r = (r+1) a_r`` predicted for ``gepar(p_f)``."""
    return [Q(1)] + [(r + 1) * f.a[r - 1] for r in range(1, D + 1)]


# ---------------------------------------------------------------------------
# pal / pil and their generators

@lru_cache(maxsize=None)
def dipil(D: int) -> Mould:
    comps = [ZERO_RF] + [re_closed(r, r).comps[r].scale(Q(-1, factorial(r + 1))) for r in range(1, D + 1)]
    return Mould(comps, V)


@lru_cache(maxsize=None)
def pil(D: int) -> Mould:
    if D > 0:
        prev = pil(D - 1)
        d = dipil(D)
        trial = Mould(list(prev.comps) + [ZERO_RF], V, check=False)
        top = preari(trial, d).comps[D].scale(Q(1, D))
        return Mould(list(prev.comps) + [top], V, check=False)
    return Mould([ONE_RF], V)


def dupal_component(r: int) -> RationalFunction:
    b = bernoulli(r)
    if b == 0:
        return ZERO_RF
    num = Polynomial.linear({slot("u", i + 1): (-1) ** i * comb(r - 1, i) for i in range(r)})
    return _over(num.scale(b / factorial(r)), [_u(i) for i in range(1, r + 1)])


@lru_cache(maxsize=None)
def dupal(D: int) -> Mould:
    return Mould([ZERO_RF] + [dupal_component(r) for r in range(1, D + 1)], U)


@lru_cache(maxsize=None)
def dapal(D: int) -> Mould:
    return swap(dipil(D))


@lru_cache(maxsize=None)
def pal(D: int) -> Mould:
    if D > 0:
        prev = pal(D - 1)
        trial = Mould(list(prev.comps) + [ZERO_RF], U, check=False)
        rhs = mu(trial, dupal(D)).comps[D]
        top = rhs.divide_by_linear(_usum(1, D))
        return Mould(list(prev.comps) + [top], U, check=False)
    return Mould([ONE_RF], U)


def pal_inversion(duS: Mould) -> Mould:
    """``S = 1 + compose(Paj, duS)``, the closed solution of ``dur S = mu(S, duS)``."""
    from .mould import compose

    P = paj(duS.depth)
    P0 = Mould([ZERO_RF] + list(P.comps[1:]), U, check=False)
    return one(duS.depth, U) + compose(P0, duS)


def binomial_linear(r: int) -> Polynomial:
    """The alternal linear form ``sum (-1)^(i-1) C(r-1, i-1) u_i``."""
    return Polynomial.linear({slot("u", i): (-1) ** (i - 1) * comb(r - 1, i - 1) for i in range(1, r + 1)})


NAMED: Dict[str, Callable[[int], Mould]] = {
    "one": one,
    "Id": id_mould,
    "Exp": exp_mould,
    "Log": log_mould,
    "Pa": Pa,
    "I": I_mould,
    "pac": pac,
    "pic": pic,
    "poc": poc,
    "paj": paj,
    "Paj": paj,
    "Y": Y_mould,
    "pal": pal,
    "pil": pil,
    "dupal": dupal,
    "dipil": dipil,
    "dapal": dapal,
}


def named_mould(name: str, D: int) -> Mould:
    try:
        fn = NAMED[name]
    except KeyError:
        raise MouldError(f"unknown mould {name!r}") from None
    return fn(D)
