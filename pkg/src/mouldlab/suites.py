"""Identity checks grouped into suites, shared by the CLI ``verify`` command and the tests.

Every check returns an :class:`Outcome`; a failing outcome names the first
component where the two sides differ.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from ._backend import Q
from .mould import BI, U, Mould, anti, constant_mould, invmu, is_unit, mu, neg, push, swap
from .textform import render_rf


@dataclass
class Outcome:
    name: str
    ok: bool
    detail: str = ""
    seed: Optional[int] = None


@dataclass
class Context:
    depth: int = 4
    weight: int = 5
    seed: int = 0
    samples: int = 3


def first_difference(A: Mould, B: Mould) -> Optional[str]:
    """Depth and rendered difference of the first unequal component, else ``None``."""
    if A.flavor != B.flavor and not (A.is_zero() and B.is_zero()):
        if A.depth != B.depth:
            return f"flavors {A.flavor}/{B.flavor}, depths {A.depth}/{B.depth}"
    for r in range(min(A.depth, B.depth) + 1):
        if A.comps[r] != B.comps[r]:
            return f"depth {r}: difference {render_rf(A.comps[r] - B.comps[r])}"
    if A.depth != B.depth:
        return f"depth limits differ: {A.depth} vs {B.depth}"
    return None


def equal(name: str, A: Mould, B: Mould, seed: Optional[int] = None) -> Outcome:
    diff = first_difference(A, B)
    return Outcome(name, diff is None, diff or "", seed)


def holds(name: str, rep, seed: Optional[int] = None) -> Outcome:
    if rep.holds:
        return Outcome(name, True, seed=seed)
    detail = ""
    if getattr(rep, "first_defect", None) is not None:
        (r, s), d = rep.first_defect
        detail = f"split ({r},{s}): {render_rf(d)}"
    return Outcome(name, False, detail, seed)


def _seeded_all(name: str, ctx: Context, one: Callable[[int], Outcome]) -> Outcome:
    for k in range(ctx.samples):
        seed = ctx.seed + k
        out = one(seed)
        if not out.ok:
            return Outcome(name, False, out.detail, seed)
    return Outcome(name, True)


# ---------------------------------------------------------------------------
# core: flexion derivations and the ari bracket

def _core(ctx: Context) -> List[Outcome]:
    from .derivations import amit, anit, ari, arit, preari, preira, swamu
    from .random_moulds import random_mould, seeded

    D = ctx.depth

    def antisym(seed):
        rng = seeded(seed)
        A, B = random_mould(rng, D, BI), random_mould(rng, D, BI)
        return equal("ari antisymmetry", ari(A, B), -ari(B, A), seed)

    def jacobi(seed):
        rng = seeded(seed)
        A, B, C = (random_mould(rng, D, BI) for _ in range(3))
        J = ari(A, ari(B, C)) + ari(B, ari(C, A)) + ari(C, ari(A, B))
        return equal("ari Jacobi", J, J.scale(0), seed)

    def arit_bracket(seed):
        rng = seeded(seed)
        A, B = random_mould(rng, D, BI), random_mould(rng, D, BI)
        X = random_mould(rng, D, BI, const=1)
        # commutator taken in action order: apply arit(A) first
        lhs = arit(B, arit(A, X)) - arit(A, arit(B, X))
        return equal("arit of ari", lhs, arit(ari(A, B), X), seed)

    def swap_amit(seed):
        rng = seeded(seed)
        A, B = random_mould(rng, D, BI), random_mould(rng, D, BI)
        lhs = swap(amit(swap(B), swap(A)))
        return equal("swap amit", lhs, amit(B, A) + mu(A, B) - swamu(A, B), seed)

    def swap_anit(seed):
        rng = seeded(seed)
        A, B = random_mould(rng, D, BI), random_mould(rng, D, BI)
        return equal("swap anit", swap(anit(swap(B), swap(A))), anit(push(B), A), seed)

    def preira_swap(seed):
        rng = seeded(seed)
        A, B = random_mould(rng, D, BI), random_mould(rng, D, BI)
        return equal("preira by swap", preira(A, B), swap(preari(swap(A), swap(B))), seed)

    def leibniz(seed):
        rng = seeded(seed)
        B = random_mould(rng, D, BI)
        X, Y = random_mould(rng, D, BI), random_mould(rng, D, BI)
        for name, op in (("amit", amit), ("anit", anit), ("arit", arit)):
            out = equal(f"{name} Leibniz", op(B, mu(X, Y)), mu(op(B, X), Y) + mu(X, op(B, Y)), seed)
            if not out.ok:
                return out
        return Outcome("Leibniz", True)

    checks = [("ari antisymmetry", antisym), ("ari Jacobi", jacobi), ("arit of ari", arit_bracket),
              ("swap amit", swap_amit), ("swap anit", swap_anit), ("preira by swap", preira_swap),
              ("flexion derivations are derivations", leibniz)]
    return [_seeded_all(name, ctx, fn) for name, fn in checks]


# ---------------------------------------------------------------------------
# gari: group law, automorphisms, exponential

def random_group_like(rng, D: int, flavor: str = BI) -> Mould:
    """A symmetral, polynomial-valued mould: ``expari`` of a random alternal one."""
    from .gari import expari
    from .random_moulds import random_alternal

    return expari(random_alternal(rng, D, flavor))


def _gari(ctx: Context) -> List[Outcome]:
    from .gari import adari, expari, ganit, gari, gira, invgani, invgari, logari, ras, rash
    from .random_moulds import random_alternal, random_mould, random_symmetral, seeded
    from .special import pal
    from .symmetry import check_alternal, check_symmetral

    D = ctx.depth

    def assoc(seed):
        rng = seeded(seed)
        A, B, C = (random_mould(rng, D, BI, const=1) for _ in range(3))
        return equal("gari associative", gari(gari(A, B), C), gari(A, gari(B, C)), seed)

    def inverse(seed):
        rng = seeded(seed)
        B = random_mould(rng, D, BI, const=1)
        ok = is_unit(gari(invgari(B), B)) and is_unit(gari(B, invgari(B)))
        return Outcome("invgari", ok, "" if ok else "gari(invgari(B), B) is not 1", seed)

    def first_fundamental(seed):
        rng = seeded(seed)
        A = random_mould(rng, D, BI, const=1)
        B = random_group_like(rng, D)
        return equal("first fundamental identity", gira(A, B), ganit(rash(B), gari(A, ras(B))), seed)

    def ganit_ras(seed):
        rng = seeded(seed)
        C = random_mould(rng, D, BI, const=1)
        return equal("ganit(rash C) ras C = C", ganit(rash(C), ras(C)), C, seed)

    def ganit_inverse(seed):
        rng = seeded(seed)
        A = random_mould(rng, D, BI)
        B = random_mould(rng, D, BI, const=1)
        return equal("invgani", ganit(invgani(B), ganit(B, A)), A, seed)

    def exp_log(seed):
        rng = seeded(seed)
        A = random_mould(rng, D, U)
        S = random_symmetral(rng, D)
        out = equal("logari expari", logari(expari(A)), A, seed)
        return out if not out.ok else equal("expari logari", expari(logari(S)), S, seed)

    def exp_symmetry(seed):
        rng = seeded(seed)
        out = holds("expari of alternal is symmetral", check_symmetral(expari(random_alternal(rng, D))), seed)
        if not out.ok:
            return out
        return holds("logari of symmetral is alternal", check_alternal(logari(random_symmetral(rng, D))), seed)

    def adari_constant(seed):
        C = constant_mould([Q(0)] + [Q(seed + r) for r in range(1, D + 1)])
        return equal("adari(pal) fixes constants", adari(pal(D), C), C, seed)

    checks = [("gari associative", assoc), ("invgari", inverse),
              ("first fundamental identity", first_fundamental), ("ganit(rash C) ras C = C", ganit_ras),
              ("invgani", ganit_inverse), ("expari/logari inverse", exp_log),
              ("expari/logari exchange al and as", exp_symmetry), ("adari(pal) fixes constants", adari_constant)]
    return [_seeded_all(name, ctx, fn) for name, fn in checks]


# ---------------------------------------------------------------------------
# palpil: the bisymmetral pair and its satellites

PIL_TABLE = [
    "-1/(2*v1)",
    "(2*v1-v2)/(12*v1*(v1-v2)*v2)",
    "-1/(24*(v1-v2)*v2*v3)",
    "(6*v1*v3-10*v1*v4+v2*v3+5*v2*v4-4*v3^2+v3*v4)/(720*v1*v3*v4*(v1-v2)*(v2-v3)*(v3-v4))",
]
PAL_TABLE = [
    "-1/(2*u1)",
    "(u1+2*u2)/(12*u1*u2*(u1+u2))",
    "-1/(24*u1*(u1+u2)*u3)",
    "-(u1^2-2*u1*u2-2*u1*u3+4*u1*u4-3*u2^2-7*u2*u3-6*u2*u4)/(720*u1*u2*u3*u4*(u1+u2)*(u1+u2+u3+u4))",
]


def table_outcome(name: str, M: Mould, table: List[str]) -> Outcome:
    from .textform import parse_rf

    for r, text in enumerate(table, start=1):
        if r > M.depth:
            break
        if M.comps[r] != parse_rf(text):
            return Outcome(name, False, f"depth {r}: got {render_rf(M.comps[r])}, expected {text}")
    return Outcome(name, True)


def _palpil(ctx: Context) -> List[Outcome]:
    from .derivations import irat, preari, preira
    from .gari import adari, crash, ganit, gari
    from .mould import der, dur, lu
    from .random_moulds import random_push_invariant, seeded
    from .special import (Diffeo, dapal, diffeo_moulds, dipil, dupal, gepar, gepar_constants, pac, pal, pic,
                          pil, p_via_expari)
    from .symmetry import check_alternal, check_symmetral
    from .exact import Polynomial, RationalFunction, slot

    D = ctx.depth
    out: List[Outcome] = [
        table_outcome("pil table", pil(min(D, 4)), PIL_TABLE),
        table_outcome("pal table", pal(min(D, 4)), PAL_TABLE),
        equal("swap(pil) = pal", swap(pil(D)), pal(D)),
        holds("pal symmetral", check_symmetral(pal(D))),
        holds("pil symmetral", check_symmetral(pil(D))),
        holds("dupal alternal", check_alternal(dupal(D))),
    ]
    odd = [r for r in range(3, D + 1, 2) if not dupal(D).comps[r].is_zero()]
    out.append(Outcome("dupal vanishes in odd depth", not odd, f"depth {odd[0]}" if odd else ""))
    out.append(equal("crash(pal) = pac", crash(pal(D)), pac(D)))
    out.append(equal("invmu(pil) = anti neg pil", invmu(pil(D)), anti(neg(pil(D)))))
    out.append(equal("der dupal", der(dupal(D)), dur(dapal(D)) + irat(dapal(D), dupal(D)) - lu(dapal(D), dupal(D))))
    out.append(equal("der pal = preira(pal, dapal)", der(pal(D)), preira(pal(D), dapal(D))))
    out.append(equal("der pil = preari(pil, dipil)", der(pil(D)), preari(pil(D), dipil(D))))

    def second_fundamental(seed):
        rng = seeded(seed)
        M = random_push_invariant(rng, D, BI)
        lhs = swap(adari(pal(D), M))
        return equal("second fundamental identity", lhs, ganit(pic(D), adari(pil(D), swap(M))), seed)

    out.append(_seeded_all("second fundamental identity", ctx, second_fundamental))

    g = Diffeo.of([2, -1, 3, 1, 0, 5, -2][:max(D, 1) + 1])
    _, _, pg = diffeo_moulds(g, D)
    out.append(equal("p_f two ways", p_via_expari(g, D), pg))
    cs = gepar_constants(g, D)
    rhs = [RationalFunction.constant(cs[0])]
    for r in range(1, D + 1):
        forms = [Polynomial.variable(slot("u", i)) for i in range(1, r + 1)]
        rhs.append(RationalFunction.over_linear(Polynomial.constant(cs[r]), forms))
    out.append(equal("gepar of p_f", gepar(pg), Mould(rhs, U)))
    Dc = min(D, 3)
    f1, g1 = Diffeo.of([1, 0, 0, 0][:Dc + 1]), Diffeo.of([0, 1, 0, 0][:Dc + 1])
    pf, pg1 = diffeo_moulds(f1, Dc)[2], diffeo_moulds(g1, Dc)[2]
    out.append(equal("p of a composite", diffeo_moulds(f1.compose(g1), Dc)[2], gari(pf, pg1)))
    return out


# ---------------------------------------------------------------------------
# dictionary: moulds versus noncommutative polynomials

def _dictionary(ctx: Context) -> List[Outcome]:
    import random

    from .derivations import ari, arit, preari
    from .dictionary import ma, mi, mould_to_ncpoly, vimo, weight_truncate
    from .gari import expari, gari
    from .ncpoly import (D_apply, NCPolynomial, NCSeries, exp_odot, odot, parse_nc, poisson, prelie_p,
                         random_c_poly, random_mt)
    from .symmetry import alternility_sum, check_alternal, check_alternil

    W = max(ctx.weight, 3)

    def weights(rng, total):
        n1 = rng.randint(1, total - 1)
        return n1, rng.randint(1, total - n1)

    def product(seed):
        rng = random.Random(seed)
        n1, n2 = weights(rng, W)
        f, g = random_c_poly(rng, n1), random_c_poly(rng, n2)
        D = n1 + n2
        return equal("ma of a product", ma(f * g, D), mu(ma(f, D), ma(g, D)), seed)

    def lie_pair(seed):
        rng = random.Random(seed)
        n1, n2 = weights(rng, W)
        return random_mt(rng, n1), random_mt(rng, n2), n1 + n2

    def derivation(seed):
        f, g, D = lie_pair(seed)
        return equal("ma of D_f(g)", ma(D_apply(f, g), D), -arit(ma(f, D), ma(g, D)), seed)

    def bracket(seed):
        f, g, D = lie_pair(seed)
        return equal("ma of the Poisson bracket", ma(poisson(f, g), D), ari(ma(f, D), ma(g, D)), seed)

    def prelie(seed):
        f, g, D = lie_pair(seed)
        return equal("ma of the pre-Lie product", ma(prelie_p(f, g), D), preari(ma(f, D), ma(g, D)), seed)

    def inverse(seed):
        rng = random.Random(seed)
        f = random_c_poly(rng, rng.randint(1, W))
        ok = mould_to_ncpoly(ma(f)) == f
        return Outcome("ma inverse", ok, "" if ok else "round trip differs", seed)

    Wg = min(W, 5)

    def group_element(rng):
        return NCSeries(sum((random_c_poly(rng, k, 2) for k in range(1, Wg + 1)), NCPolynomial.one()), Wg)

    def group(seed):
        rng = random.Random(seed)
        a, b = group_element(rng), group_element(rng)
        lhs = weight_truncate(gari(ma(a.poly, Wg), ma(b.poly, Wg)), Wg)
        return equal("gari is the twisted product", lhs, weight_truncate(ma(odot(a, b).poly, Wg), Wg), seed)

    def exponential(seed):
        rng = random.Random(seed)
        g = NCSeries(sum((random_mt(rng, k) for k in range(1, 4)), NCPolynomial()), Wg)
        lhs = weight_truncate(expari(ma(g.poly, Wg)), Wg)
        return equal("expari is the twisted exponential", lhs, weight_truncate(ma(exp_odot(g).poly, Wg), Wg), seed)

    checks = [("ma of a product", product), ("ma of D_f(g)", derivation),
              ("ma of the Poisson bracket", bracket), ("ma of the pre-Lie product", prelie),
              ("ma inverse", inverse), ("gari is the twisted product", group),
              ("expari is the twisted exponential", exponential)]
    out = [_seeded_all(name, ctx, fn) for name, fn in checks]

    f = parse_nc("[x,[x,y]]+[[x,y],y]")
    out.append(Outcome("worked example in the C-subring", vimo(f, 3).depth == 3))
    out.append(holds("worked example ma alternal", check_alternal(ma(f, 2))))
    out.append(holds("worked example mi alternil", check_alternil(mi(f, 2))))
    zero = alternility_sum(mi(f, 2), 1, 1)
    out.append(Outcome("worked example alternility sum", zero.is_zero(), render_rf(zero)))
    return out


# ---------------------------------------------------------------------------
# dims: double shuffle linear algebra

def _dims(ctx: Context) -> List[Outcome]:
    from . import dimlab
    from .dictionary import ma
    from .ncpoly import ls_member
    from .symmetry import in_class

    N = min(max(ctx.weight, 3), 9)
    out = []
    bad = [(n, d) for n in range(3, N + 1) for d in range(1, n) if (n + d) % 2 and dimlab.dim_ls(n, d)]
    out.append(Outcome("dim ls vanishes off parity", not bad, f"(n,d) = {bad[0]}" if bad else ""))
    ones = (dimlab.dim_ls(3, 1), dimlab.dim_ls(5, 1))
    out.append(Outcome("dim ls_3^1 = dim ls_5^1 = 1", ones == (1, 1), str(ones)))
    Nc = min(N, 7)
    mism = [(n, d) for n in range(3, Nc + 1) for d in range(1, n)
            if dimlab.dim_ls(n, d) != dimlab.dim_ls_nc(n, d)]
    out.append(Outcome("dim ls two routes agree", not mism, f"(n,d) = {mism[0]}" if mism else ""))
    basis = dimlab.ds_solve(3)
    out.append(Outcome("ds_3 is one-dimensional", len(basis) == 1, str(len(basis))))
    if basis:
        f = basis[0].f
        out.append(Outcome("ds_3 generator is al*il", in_class(ma(f, ctx.depth), "al*il")))
        low = f.depth_part(min(f.depths()))
        ok, wit = ls_member(low)
        out.append(Outcome("ds_3 generator leading depth is in ls", ok, wit or ""))
    fz2 = dimlab.fz_relations(2)
    out.append(Outcome("dim FZ_2 bound is 1", fz2.bound == 1, str(fz2.bound)))
    euler = dimlab.fz_relations(3).implies({"xyy": 1, "xxy": -1})
    out.append(Outcome("Euler relation in weight 3", euler))
    return out


SUITES: Dict[str, Callable[[Context], List[Outcome]]] = {
    "core": _core,
    "gari": _gari,
    "palpil": _palpil,
    "dictionary": _dictionary,
    "dims": _dims,
}


def run_suite(name: str, ctx: Optional[Context] = None) -> List[Outcome]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](ctx or Context())
