"""Encodings of noncommutative polynomials as polynomial-valued moulds.

``vimo`` records each word ``x^(a0-1) y ... y x^(ar-1)`` as the monomial
``z0^(a0-1) ... zr^(ar-1)``; ``ma`` and ``mi`` are linear specializations of
it.  The inverse ``mould_to_ncpoly`` goes through the ``C_i`` expansion, so the
two directions share no code path.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ._backend import Q
from .exact import Polynomial, RationalFunction, mono_decode, mono_of, rf_is_polynomial, slot, slot_index
from .mould import U, V, Mould, MouldError
from .ncpoly import NCPolynomial, NotInQC, c_word


def _z(i: int) -> int:
    return slot("z", i)


@dataclass(frozen=True)
class Vimo:
    """Components ``vimo_f(z0, ..., zr)`` for ``r = 0..D``."""

    comps: Tuple[Polynomial, ...]

    @property
    def depth(self) -> int:
        return len(self.comps) - 1

    def __getitem__(self, r: int) -> Polynomial:
        return self.comps[r]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)


def _iota_x(w: str) -> int:
    m = 0
    for i, block in enumerate(w.split("y")):
        if block:
            m += mono_of(_z(i), len(block))
    return m


def vimo(f: NCPolynomial, D: Optional[int] = None) -> Vimo:
    depths = f.depths()
    top = max(depths) if depths else 0
    D = top if D is None else D
    comps: List[Dict[int, Q]] = [dict() for _ in range(D + 1)]
    for w, c in f.terms.items():
        r = w.count("y")
        if r > D:
            continue
        m = _iota_x(w)
        comps[r][m] = comps[r].get(m, 0) + c
    return Vimo(tuple(Polynomial({m: c for m, c in d.items() if c}) for d in comps))


def _specialize(V_: Vimo, r: int, images: List[Polynomial]) -> Polynomial:
    mapping = {_z(i): images[i] for i in range(r + 1)}
    return V_.comps[r].subs(mapping)


def qc_criterion(V_: Vimo) -> Optional[int]:
    """First depth where translation invariance of ``vimo`` fails, else ``None``."""
    for r in range(1, V_.depth + 1):
        z0 = Polynomial.variable(_z(0))
        images = [Polynomial()] + [Polynomial.variable(_z(i)) - z0 for i in range(1, r + 1)]
        if _specialize(V_, r, images) != V_.comps[r]:
            return r
    if V_.depth >= 0 and not V_.comps[0].is_constant():
        return 0
    return None


def _checked_vimo(f: NCPolynomial, D: Optional[int]) -> Vimo:
    V_ = vimo(f, D)
    bad = qc_criterion(V_)
    if bad is not None or any(len(w) > 0 and set(w) == {"x"} for w in f.terms):
        raise NotInQC(f"polynomial is not in the C-subring (depth {bad})")
    return V_


def _usum(k: int) -> Polynomial:
    return Polynomial.linear({slot("u", i): 1 for i in range(1, k + 1)})


def ma(f: NCPolynomial, D: Optional[int] = None) -> Mould:
    """``ma_f(u1..ur) = vimo_f(0, u1, u1+u2, ..., u1+...+ur)``."""
    V_ = _checked_vimo(f, D)
    comps = []
    for r in range(V_.depth + 1):
        images = [Polynomial()] + [_usum(k) for k in range(1, r + 1)]
        comps.append(RationalFunction.from_poly(_specialize(V_, r, images)))
    return Mould(comps, U)


def mi(f: NCPolynomial, D: Optional[int] = None) -> Mould:
    """``mi_f(v1..vr) = vimo_f(0, vr, ..., v1)``."""
    V_ = _checked_vimo(f, D)
    comps = []
    for r in range(V_.depth + 1):
        images = [Polynomial()] + [Polynomial.variable(slot("v", r + 1 - k)) for k in range(1, r + 1)]
        comps.append(RationalFunction.from_poly(_specialize(V_, r, images)))
    return Mould(comps, V)


def mould_to_ncpoly(M: Mould, weight: Optional[int] = None) -> NCPolynomial:
    """The ``f`` in the C-subring with ``ma_f = M``.

    A monomial ``c u1^(a1-1) ... ur^(ar-1)`` in depth ``r`` has weight
    ``n = a1 + ... + ar`` and contributes ``(-1)^(r+n) c C_a1 ... C_ar``.
    """
    if M.flavor != U:
        raise MouldError("mould_to_ncpoly needs a flavor-U mould")
    out = NCPolynomial()
    for r, comp in enumerate(M.comps):
        p = rf_is_polynomial(comp)
        if p is None:
            raise MouldError(f"depth-{r} component is not a polynomial")
        for m, c in p.terms.items():
            exps = dict((slot_index(s), e) for s, e in mono_decode(m))
            idx = tuple(exps.get(i, 0) + 1 for i in range(1, r + 1))
            n = sum(idx)
            if weight is not None and n != weight:
                raise MouldError(f"component of weight {n} in a weight-{weight} request")
            sign = -1 if (r + n) % 2 else 1
            out = out + c_word(idx).scale(c * sign)
    return out


def weight_truncate(M: Mould, W: int) -> Mould:
    """Drop monomials of weight ``r + degree`` above ``W`` from a polynomial mould."""
    comps = []
    for r, comp in enumerate(M.comps):
        p = rf_is_polynomial(comp)
        if p is None:
            raise MouldError("weight truncation needs polynomial components")
        keep = {m: c for m, c in p.terms.items() if r + sum(e for _, e in mono_decode(m)) <= W}
        comps.append(RationalFunction.from_poly(Polynomial(keep)))
    return Mould(comps, M.flavor, check=False)
