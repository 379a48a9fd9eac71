import random

import pytest
from hypothesis import given, settings

from mouldlab._backend import Q
from mouldlab.derivations import arit, preari
from mouldlab.dictionary import ma, weight_truncate
from mouldlab.gari import (adari, adari_series, crash, expari, fragari, ganit, gari, garit, gaxi, gaxit, gira,
                           h_map, invgani, invgari, invgaxi_left, logari, mould_automorphism, ras, rash,
                           swap_transport)
from mouldlab.mould import (BI, U, V, MouldError, anti, compose, constant_mould, invmu, is_unit, mu, neg,
                            one_mould, pari, push, swap, zero_mould)
from mouldlab.ncpoly import NCPolynomial, NCSeries, R_apply, odot, random_c_poly
from mouldlab.random_moulds import random_alternal, random_mould, random_symmetral, seeded
from mouldlab.special import Diffeo, diffeo_moulds, lop_mould, pac, paj, pal, pic, pil, pil_diffeo, poc
from mouldlab.symmetry import check_alternal, check_symmetral

from strategies import seeds


def group(rng, D, flavor=BI):
    return random_mould(rng, D, flavor, const=1)


def lagrange_linear_coeff(ts, outs):
    """Coefficient of t in the interpolating polynomial through (ts, outs)."""
    total = zero_mould(outs[0].depth, outs[0].flavor)
    for i, ti in enumerate(ts):
        others = [tj for j, tj in enumerate(ts) if j != i]
        den = Q(1)
        for tj in others:
            den *= ti - tj
        c = Q(0)
        for k in range(len(others)):
            p = Q(1)
            for j, tj in enumerate(others):
                if j != k:
                    p *= -tj
            c += p
        total = total + outs[i].scale(c / den)
    return total


def nc_group_like(rng, W):
    return NCSeries(sum((random_c_poly(rng, k, 2) for k in range(1, W + 1)), NCPolynomial.one()), W)


# expari / logari

@given(seeds)
def test_expari_depth_one(seed):
    A = random_mould(seeded(seed), 4, BI)
    assert expari(A)[1] == A[1]


@given(seeds)
@settings(max_examples=10)
def test_logari_inverts_expari(seed):
    A = random_mould(seeded(seed), 5, U)
    assert logari(expari(A)) == A


def test_expari_lop_is_p():
    f = pil_diffeo(4)
    _, _, p = diffeo_moulds(f, 4)
    assert expari(lop_mould(f, 4)) == p


def test_exp_log_constant_term_checks():
    A = random_mould(seeded(1), 3, U, const=1)
    with pytest.raises(MouldError):
        expari(A)
    with pytest.raises(MouldError):
        logari(random_mould(seeded(1), 3, U))


@given(seeds)
@settings(max_examples=5)
def test_expari_of_alternal_is_symmetral(seed):
    A = random_alternal(seeded(seed), 4, U)
    assert check_symmetral(expari(A))


@given(seeds)
@settings(max_examples=5)
def test_logari_of_symmetral_is_alternal(seed):
    S = random_symmetral(seeded(seed), 4, U)
    assert check_alternal(logari(S))


@given(seeds)
@settings(max_examples=5)
def test_compose_symmetral_alternal(seed):
    rng = seeded(seed)
    B, A = random_symmetral(rng, 4, U), random_alternal(rng, 4, U)
    assert check_symmetral(compose(B, A))


# automorphisms

@given(seeds)
def test_garit_depth_one(seed):
    rng = seeded(seed)
    B, A = group(rng, 4), random_mould(rng, 4, BI)
    assert garit(B, A)[1] == A[1]


@pytest.mark.parametrize("seed", [1, 2])
def test_garit_matches_twisted_magnus_action(seed):
    rng = random.Random(seed)
    W = 5
    f, g = nc_group_like(rng, W), nc_group_like(rng, W)
    lhs = weight_truncate(ma(R_apply(g, f).poly, W), W)
    rhs = weight_truncate(garit(ma(g.poly, W), ma(f.poly, W)), W)
    assert lhs == rhs
    assert lhs[1] == weight_truncate(ma(f.poly, W), W)[1]


@pytest.mark.parametrize("seed", [0, 7])
def test_garit_linearizes_to_arit(seed):
    rng = seeded(seed)
    D = 4
    C, A = random_mould(rng, D, BI), random_mould(rng, D, BI)
    ts = [Q(i) for i in range(1, D + 3)]
    outs = [garit(one_mould(D, BI) + C.scale(t), A) for t in ts]
    assert lagrange_linear_coeff(ts, outs) == arit(C, A)


@given(seeds)
@settings(max_examples=5)
def test_ganit_pic_poc_inverse(seed):
    A = random_mould(seeded(seed), 4, V)
    assert ganit(pic(4), ganit(poc(4), A)) == A
    assert ganit(poc(4), ganit(pic(4), A)) == A


@pytest.mark.parametrize("mode", ["garit", "ganit", "gaxit"])
def test_automorphisms_respect_mu(mode):
    rng = seeded(11)
    D = 4
    B, C = group(rng, D), group(rng, D)
    X, Y = random_mould(rng, D, BI), random_mould(rng, D, BI)
    act = lambda M: mould_automorphism(B, M, mode, C)
    assert act(mu(X, Y)) == mu(act(X), act(Y))


def test_automorphism_argument_errors():
    rng = seeded(2)
    A = random_mould(rng, 2, BI)
    with pytest.raises(MouldError):
        garit(A, A)
    with pytest.raises(MouldError):
        mould_automorphism(group(rng, 2), A, "gaxit")
    with pytest.raises(MouldError):
        mould_automorphism(group(rng, 2), A, "nope")


def test_gaxit_specializations():
    rng = seeded(4)
    B, A = group(rng, 3), random_mould(rng, 3, BI)
    assert garit(B, A) == gaxit(B, invmu(B), A)
    assert ganit(B, A) == gaxit(one_mould(3, BI), B, A)


@given(seeds)
@settings(max_examples=5)
def test_gaxit_composition_law(seed):
    rng = seeded(seed)
    A, B, C, E = (group(rng, 3) for _ in range(4))
    Y = random_mould(rng, 3, BI)
    lhs = gaxit(A, B, gaxit(C, E, Y))
    rhs = gaxit(mu(gaxit(A, B, C), A), mu(B, gaxit(A, B, E)), Y)
    assert lhs == rhs


# group law

@given(seeds)
@settings(max_examples=5)
def test_gari_unit(seed):
    rng = seeded(seed)
    A = random_mould(rng, 4, BI, const=rng.randint(-2, 2))
    one = one_mould(4, BI)
    assert gari(A, one) == A
    B = group(rng, 4)
    assert gari(one, B) == B


@given(seeds)
@settings(max_examples=5)
def test_gari_associative_on_symmetral(seed):
    rng = seeded(seed)
    A, B, C = (random_symmetral(rng, 4, U) for _ in range(3))
    assert gari(gari(A, B), C) == gari(A, gari(B, C))
    assert is_unit(gari(A, invgari(A))) and is_unit(gari(invgari(A), A))


def test_gari_of_diffeo_moulds():
    f, g = Diffeo.of([1, 0, 0]), Diffeo.of([0, 1, 0])
    p = lambda h: diffeo_moulds(h, 3)[2]
    assert gari(p(f), p(g)) == p(f.compose(g))


@pytest.mark.parametrize("seed", [3, 8])
def test_gari_is_twisted_magnus_product(seed):
    rng = random.Random(seed)
    W = 6
    f, g = nc_group_like(rng, W), nc_group_like(rng, W)
    lhs = weight_truncate(gari(ma(f.poly, W), ma(g.poly, W)), W)
    assert lhs == weight_truncate(ma(odot(f, g).poly, W), W)


def test_gaxi_first_component():
    rng = seeded(5)
    A, B, C, E = (group(rng, 3) for _ in range(4))
    first, second = gaxi((A, B), (C, E))
    assert first == mu(gaxit(C, E, A), C)
    assert second == mu(E, gaxit(C, E, B))


# inverses

def test_invmu_pil():
    P = pil(4)
    assert invmu(P) == anti(neg(P)) == pari(anti(P))


def test_invgari_pal():
    assert is_unit(gari(invgari(pal(4)), pal(4)))


def test_invgani_pac():
    assert invgani(pac(4)) == pari(anti(paj(4)))


@given(seeds)
@settings(max_examples=5)
def test_invgani_defining_property(seed):
    rng = seeded(seed)
    B, A = group(rng, 3), random_mould(rng, 3, BI)
    assert ganit(invgani(B), ganit(B, A)) == A


def test_inverse_constant_term_check():
    with pytest.raises(MouldError):
        invgari(random_mould(seeded(0), 2, U))


# adjoint action

@given(seeds)
def test_adari_unit(seed):
    B = random_mould(seeded(seed), 4, BI)
    assert adari(one_mould(4, BI), B) == B


@pytest.mark.parametrize("seed", [0, 5])
def test_adari_lie_series(seed):
    rng = seeded(seed)
    A, B = expari(random_mould(rng, 4, U)), random_mould(rng, 4, U)
    assert adari(A, B) == adari_series(A, B)


def test_adari_pal_fixes_constants():
    C = constant_mould([0, 2, -1, 5, 3], U)
    assert adari(pal(4), C) == C


def test_adari_is_preari_conjugation():
    rng = seeded(9)
    A, B = expari(random_mould(rng, 3, U)), random_mould(rng, 3, U)
    assert adari(A, B) == gari(preari(A, B), invgari(A))


# swap transports

@given(seeds)
@settings(max_examples=5)
def test_gira_definition(seed):
    rng = seeded(seed)
    A, B = group(rng, 3), group(rng, 3)
    assert gira(A, B) == swap(gari(swap(A), swap(B)))
    assert swap_transport(B, "gira", A) == gira(A, B)


def test_gira_is_gaxi_with_h():
    rng = seeded(6)
    A, B = group(rng, 3), group(rng, 3)
    assert gira(A, B) == gaxi((A, h_map(A)), (B, h_map(B)))[0]


def test_crash_pal_is_pac():
    assert crash(pal(4)) == pac(4)


def test_rash_expansion():
    rng = seeded(3)
    B = group(rng, 3)
    assert rash(B) == mu(push(swap(invmu(swap(B)))), B)
    assert swap_transport(B, "rash") == rash(B)
    with pytest.raises(MouldError):
        swap_transport(B, "gira")


@pytest.mark.parametrize("seed", [0, 1])
def test_first_fundamental_identity(seed):
    rng = seeded(seed)
    A = group(rng, 4)
    B = expari(random_alternal(rng, 4, BI, degree=1))
    assert gira(A, B) == ganit(rash(B), gari(A, ras(B)))


@given(seeds)
@settings(max_examples=5)
def test_swapped_fragari(seed):
    rng = seeded(seed)
    A, C = group(rng, 3), group(rng, 3)
    lhs = swap(fragari(swap(A), swap(C)))
    assert lhs == ganit(crash(C), fragari(A, C))


# the lemmas behind the first fundamental identity

@given(seeds)
@settings(max_examples=5)
def test_invgaxi_left_component(seed):
    rng = seeded(seed)
    A, B = group(rng, 3), group(rng, 3)
    X = invgaxi_left(A, B)
    assert gaxit(A, B, X) == invmu(A)
    assert is_unit(gaxi((X, invmu(X)), (A, B))[0])


@given(seeds)
@settings(max_examples=5)
def test_gaxit_garit_is_ganit(seed):
    rng = seeded(seed)
    A, B = group(rng, 3), group(rng, 3)
    Y = random_mould(rng, 3, BI)
    assert gaxit(A, B, garit(invgaxi_left(A, B), Y)) == ganit(mu(B, A), Y)


@given(seeds)
@settings(max_examples=5)
def test_invgaxi_with_h(seed):
    B = group(seeded(seed), 3)
    assert invgaxi_left(B, h_map(B)) == swap(invgari(swap(B)))


@given(seeds)
@settings(max_examples=5)
def test_automorphisms_send_inverse_to_invmu(seed):
    rng = seeded(seed)
    C = group(rng, 3)
    assert garit(C, invgari(C)) == invmu(C)
    assert gaxit(C, h_map(C), invgaxi_left(C, h_map(C))) == invmu(C)


@given(seeds)
@settings(max_examples=5)
def test_ganit_rash_ras(seed):
    C = group(seeded(seed), 3)
    assert ganit(rash(C), ras(C)) == C
