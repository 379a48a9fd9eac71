"""Seeded random moulds for property checks."""
from __future__ import annotations

import random

from ._backend import Q
from .exact import ZERO_RF, Polynomial, RationalFunction, mono_of, slot
from .mould import BI, U, V, Mould, mu


def _families(flavor: str):
    return {U: ("u",), V: ("v",), BI: ("u", "v")}[flavor]


def random_polynomial(rng: random.Random, r: int, flavor: str = U, degree: int = 2,
                      terms: int = 3, coeff: int = 3) -> Polynomial:
    """Sparse random polynomial in the depth-``r`` variables of ``flavor``."""
    if r == 0:
        return Polynomial.constant(rng.randint(-coeff, coeff))
    slots = [slot(f, i) for f in _families(flavor) for i in range(1, r + 1)]
    out = {}
    for _ in range(terms):
        m = 0
        for _ in range(rng.randint(0, degree)):
            m += mono_of(rng.choice(slots))
        c = rng.randint(-coeff, coeff)
        if c:
            out[m] = out.get(m, Q(0)) + Q(c)
    return Polynomial({m: c for m, c in out.items() if c})


def random_linear(rng: random.Random, r: int, family: str) -> Polynomial:
    while True:
        coeffs = {slot(family, i): rng.randint(-1, 2) for i in range(1, r + 1)}
        if any(coeffs.values()):
            return Polynomial.linear(coeffs)


def random_mould(rng: random.Random, D: int, flavor: str = U, const=0, rational: bool = False,
                 degree: int = 2) -> Mould:
    """Random mould with the given constant term.

    With ``rational`` each component is divided by a random product of linear
    forms, so pole bookkeeping is exercised as well.
    """
    comps = [RationalFunction.constant(const)]
    for r in range(1, D + 1):
        rf = RationalFunction.from_poly(random_polynomial(rng, r, flavor, degree))
        if rational:
            fams = _families(flavor)
            forms = [random_linear(rng, r, rng.choice(fams)) for _ in range(rng.randint(0, 2))]
            rf = RationalFunction.over_linear(rf.num, forms)
        comps.append(rf)
    return Mould(comps, flavor)


def seeded(seed: int) -> random.Random:
    return random.Random(seed)


def random_depth1(rng: random.Random, D: int, flavor: str = U, degree: int = 2) -> Mould:
    """Mould concentrated in depth 1; such moulds are alternal."""
    p = random_polynomial(rng, 1, flavor, degree)
    if p.is_zero():
        p = Polynomial.variable(slot(_families(flavor)[0], 1))
    return Mould([ZERO_RF, RationalFunction.from_poly(p)] + [ZERO_RF] * (D - 1), flavor)


def random_alternal(rng: random.Random, D: int, flavor: str = U, degree: int = 2) -> Mould:
    """Random alternal mould: depth-1 generators plus nested lu brackets."""
    gens = [random_depth1(rng, D, flavor, degree) for _ in range(3)]
    acc = gens[0]
    layer = gens
    for _ in range(1, D):
        layer = [mu(a, b) - mu(b, a) for a, b in zip(layer, gens[1:] + gens[:1])]
        for m in layer:
            acc = acc + m.scale(rng.randint(1, 3))
    return acc


def random_symmetral(rng: random.Random, D: int, flavor: str = U, degree: int = 2) -> Mould:
    """exp for mu of a random alternal mould."""
    from .mould import expmu

    return expmu(random_alternal(rng, D, flavor, degree))


def random_push_invariant(rng: random.Random, D: int, flavor: str = BI, const=0,
                          rational: bool = False) -> Mould:
    """Average of a random mould over push orbits, componentwise."""
    from .mould import push

    M = random_mould(rng, D, flavor, const=const, rational=rational)
    comps = [M.comps[0]]
    for r in range(1, D + 1):
        P = M.truncate(r)
        total = ZERO_RF
        for _ in range(r + 1):
            total = total + P.comps[r]
            P = push(P)
        comps.append(total)
    return Mould(comps, flavor, check=False)
