from math import factorial

import pytest
from hypothesis import given, settings

from mouldlab._backend import Q
from mouldlab.derivations import irat
from mouldlab.dimlab import alternal_linear_forms
from mouldlab.gari import ganit, invgari
from mouldlab.mould import (U, V, Mould, MouldError, anti, compose, der, dur, invmu, is_unit, lu, mu, neg, pari,
                            push, swap)
from mouldlab.random_moulds import random_mould, seeded
from mouldlab.special import (Diffeo, I_mould, Pa, Y_mould, bernoulli, binomial_linear, dapal, diffeo_moulds,
                              dipil, dupal, exp_mould, gepar, gepar_constants, id_mould, log_mould, mu_power,
                              named_mould, p_via_expari, pac, paj, pal, pic, pil, pil_diffeo, poc, re_closed,
                              re_recursive)
from mouldlab.symmetry import check_alternal, check_symmetral
from mouldlab.textform import parse_rf

from strategies import seeds


def rf(text):
    return parse_rf(text)


# named moulds

def test_exp_log_values():
    E, L = exp_mould(5), log_mould(5)
    for r in range(1, 6):
        assert E[r] == rf(f"1/{factorial(r)}")
        assert L[r] == rf(f"{(-1) ** (r + 1)}/{r}")


def test_compose_exp_log_depth_six():
    assert compose(exp_mould(6), log_mould(6)) == id_mould(6)


def test_closed_forms():
    assert paj(2)[2] == rf("1/(u1*(u1+u2))")
    assert pac(3)[3] == rf("1/(u1*u2*u3)")
    assert pic(2)[2] == rf("1/(v1*v2)")
    assert poc(3)[3] == rf("-1/(v1*(v1-v2)*(v2-v3))")
    Y = Y_mould(3)
    assert [str(c) for c in Y.comps] == ["1", "1", "0", "0"]


def test_named_lookup():
    assert named_mould("Paj", 3) == paj(3)
    assert named_mould("I", 2) == I_mould(2)
    with pytest.raises(MouldError):
        named_mould("nope", 2)


# Bernoulli numbers

def test_bernoulli_values():
    assert [bernoulli(n) for n in range(5)] == [1, Q(-1, 2), Q(1, 6), 0, Q(-1, 30)]
    assert all(bernoulli(n) == 0 for n in range(3, 20, 2))


@pytest.mark.parametrize("n", range(1, 12))
def test_bernoulli_recursion(n):
    from math import comb

    assert sum(comb(n + 1, k) * bernoulli(k) for k in range(n + 1)) == 0


def test_b1_forced_by_pal():
    assert pal(1)[1] == rf("-1/(2*u1)")
    assert dupal(1)[1] == rf("-1/2")


# re_r

def test_re_closed_and_recursive_agree():
    assert re_closed(1, 1)[1] == rf("1/v1")
    assert re_closed(2, 2)[2] == rf("(v1+v2)/(v1*(v1-v2)*v2)")
    for r in range(1, 5):
        assert re_closed(r, r) == re_recursive(r, r)


@pytest.mark.parametrize("r", range(1, 6))
def test_swap_re_identities(r):
    S = swap(re_closed(r, r))
    num = "+".join(f"{r + 1 - i}*u{i}" for i in range(1, r + 1))
    den = "*".join(f"u{i}" for i in range(1, r + 1))
    usum = "+".join(f"u{i}" for i in range(1, r + 1))
    assert S[r] == rf(f"({num})/({den}*({usum}))")
    assert S + anti(S) == mu_power(Pa(r), r).scale(r + 1)
    assert -push(S) == anti(S)


@pytest.mark.parametrize("r,q", [(1, 1), (1, 3), (2, 2), (3, 1), (2, 3)])
def test_irat_swap_re_on_pa_powers(r, q):
    D = r + q
    S, Pq = swap(re_closed(r, D)), mu_power(Pa(D), q)
    rhs = mu_power(Pa(D), r + q).scale(-(r - q + 1)) + mu(S, Pq) + mu(Pq, anti(S))
    assert irat(S, Pq) == rhs


def test_dapal_from_re():
    D = 5
    total = Mould([rf("0")] * (D + 1), U)
    for r in range(1, D + 1):
        total = total + swap(re_closed(r, D)).scale(Q(-1, factorial(r + 1)))
    assert dapal(D) == total


def test_dupal_as_lu_brackets():
    D = 5
    acc = I_mould(D)
    for r in range(1, D + 1):
        assert dupal(D)[r] == acc[r].scale(bernoulli(r) / factorial(r))
        acc = lu(acc, Pa(D))


# diffeomorphisms

def test_diffeo_compose_and_inverse():
    f = Diffeo.of([2, -1, 3, 1])
    identity = Diffeo.of([0, 0, 0, 0])
    assert f.compose(f.inverse()) == identity == f.inverse().compose(f)
    assert Diffeo.of([1, 1, 1]).inverse() == Diffeo.of([-1, 1, -1])


def test_pil_dilator():
    f = pil_diffeo(5)
    assert f.dilator()[1:] == [Q(-1, factorial(r + 1)) for r in range(1, 6)]
    lop, d, p = diffeo_moulds(f, 4)
    assert d == dipil(4)
    assert p == pil(4)
    assert p[1] == rf("-1/(2*v1)")
    assert p_via_expari(f, 4) == p


def test_gepar_of_geometric_diffeo():
    f = Diffeo.of([1, 1, 1])
    p = diffeo_moulds(f, 3)[2]
    cs = gepar_constants(f, 3)
    assert cs == [1, 2, 3, 4]
    expected = Mould([pac(3)[r].scale(cs[r]) for r in range(4)], U)
    assert gepar(p) == expected


def test_diffeo_truncation_error():
    with pytest.raises(MouldError):
        diffeo_moulds(Diffeo.of([1, 2]), 3)


# pil / pal tables

def test_depth_two_tables():
    assert pil(2)[2] == rf("(2*v1-v2)/(12*v1*(v1-v2)*v2)")
    assert pal(2)[2] == rf("(u1+2*u2)/(12*u1*u2*(u1+u2))")
    assert dupal(2)[2] == rf("(u1-u2)/(12*u1*u2)")


def test_dupal_odd_depths_vanish():
    d = dupal(7)
    assert all(d[r].is_zero() for r in range(3, 8, 2))


def test_symmetries_of_named_moulds():
    assert check_symmetral(pil(4))
    assert check_alternal(dupal(6))
    assert check_symmetral(paj(5))


def test_der_dupal_identity_depth_five():
    D = 5
    rhs = dur(dapal(D)) + irat(dapal(D), dupal(D)) - lu(dapal(D), dupal(D))
    assert der(dupal(D)) == rhs


def test_linear_alternal_moulds_are_binomial():
    for r in range(1, 7):
        basis = alternal_linear_forms(r)
        assert len(basis) == 1
        b, ref = basis[0], binomial_linear(r)
        assert b == ref or b == ref.scale(-1)


# pil / pal and the inverse automorphisms

def test_pil_inverse_forms():
    P = pil(4)
    assert is_unit(mu(pari(anti(P)), P))
    assert invmu(P) == anti(neg(P))


def test_ganit_pic_transports_inverses():
    assert ganit(pic(3), invgari(pil(3))) == swap(invgari(pal(3)))


@given(seeds)
@settings(max_examples=5)
def test_ganit_pic_is_conjugated_ganit(seed):
    A = random_mould(seeded(seed), 3, V)
    assert ganit(pic(3), A) == swap(ganit(pari(anti(paj(3))), swap(A)))


def test_ganit_on_y():
    G = ganit(pic(4), Y_mould(4, V))
    assert G[3] == rf("1/((v2-v1)*(v3-v1))")
    H = ganit(pari(anti(paj(4))), Y_mould(4, U))
    assert H[4] == rf("-1/(u4*(u3+u4)*(u2+u3+u4))")
