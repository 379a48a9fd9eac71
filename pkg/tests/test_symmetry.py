import random

import pytest
from hypothesis import given, settings

from mouldlab.dictionary import ma, mi
from mouldlab.dimlab import ls_mould_basis
from mouldlab.gari import adari, ganit
from mouldlab.mould import U, V, Mould, MouldError, constant_mould, letter, swap
from mouldlab.ncpoly import C, is_lie, parse_nc, random_c_poly, random_mt
from mouldlab.random_moulds import random_alternal, random_mould, seeded
from mouldlab.special import dupal, pal, pic
from mouldlab.symmetry import (alternility_sum, alternility_sums_polynomial, check_alternal, check_alternil,
                               check_operator_invariance, check_symmetral, check_symmetril, classify_dimorphy,
                               in_class)
from mouldlab.textform import parse_rf

from strategies import seeds

F = parse_nc("[x,[x,y]]+[[x,y],y]")
SWAPPED = (letter(2), letter(1))


def mould(*texts, flavor=V):
    return Mould([parse_rf(t) for t in texts], flavor)


# shuffle-type symmetries

def test_dupal_depth_two_sum():
    d = dupal(2)
    assert (d[2] + d.at(SWAPPED)).is_zero()
    assert check_alternal(d)


def test_pal_symmetral():
    assert check_symmetral(pal(4))


def test_ma_of_example_alternal():
    A = ma(F, 2)
    assert check_alternal(A)
    assert (A[2] + A.at(SWAPPED)).is_zero()


def test_symmetral_defect_reported():
    rep = check_symmetral(constant_mould([1, 1, 1], U))
    assert not rep.holds
    (s, t), defect = rep.first_defect
    assert (s, t) == (1, 1) and defect == parse_rf("1")


@given(seeds)
@settings(max_examples=10)
def test_reduced_and_full_pair_sets_agree(seed):
    rng = seeded(seed)
    for M in (random_alternal(rng, 5, U, degree=1), random_mould(rng, 5, U)):
        assert check_alternal(M).holds == check_alternal(M, full=True).holds


@pytest.mark.parametrize("seed", range(6))
def test_alternal_agrees_with_lie_test(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    lie_f = random_mt(rng, n)
    assert is_lie(lie_f)[0] and check_alternal(ma(lie_f, n))
    prod = random_c_poly(rng, n)
    assert is_lie(prod)[0] == check_alternal(ma(prod, n)).holds


def test_product_of_letters_not_alternal():
    f = C(1) * C(2)
    assert not is_lie(f)[0]
    assert not check_alternal(ma(f, 2))


# stuffle-type sums

def test_alternility_depth_two_formula():
    M = mould("0", "v1^2", "v1*v2^3")
    expected = parse_rf("v1*v2^3+v2*v1^3+(v1^2-v2^2)/(v1-v2)")
    assert alternility_sum(M, 1, 1) == expected


def test_alternility_two_two_collapsed_term():
    M = mould("0", "0", "v1^2*v2", "0", "0")
    expected = parse_rf("(v1^2*v2-v3^2*v2-v1^2*v4+v3^2*v4)/((v1-v3)*(v2-v4))")
    assert alternility_sum(M, 2, 2) == expected


def test_alternility_without_depth_one():
    M = mould("0", "0", "v1+3*v2^2")
    assert alternility_sum(M, 1, 1) == parse_rf("v1+3*v2^2+v2+3*v1^2")


def test_mi_of_example_alternil():
    B = mi(F, 2)
    assert check_alternil(B)
    assert alternility_sum(B, 1, 1).is_zero()


def test_constant_odd_depth_not_alternil():
    rep = check_alternil(constant_mould([0, 0, 0, 1], V))
    assert not rep.holds
    assert rep.first_defect == ((1, 2), parse_rf("3"))


@given(seeds)
@settings(max_examples=5)
def test_ganit_pic_of_alternal_is_alternil(seed):
    B = random_alternal(seeded(seed), 4, V)
    assert check_alternil(ganit(pic(4), B))


@given(seeds)
@settings(max_examples=10)
def test_polynomial_alternility_sums_have_no_poles(seed):
    M = random_mould(seeded(seed), 4, V)
    assert alternility_sums_polynomial(M)


def test_alternility_needs_v():
    with pytest.raises(MouldError):
        alternility_sum(mould("0", "u1", "u1", flavor=U), 1, 1)


def test_symmetril_unit_and_defect():
    assert check_symmetril(constant_mould([1, 0, 0, 0], V))
    assert not check_symmetril(constant_mould([1, 1, 0, 0], V))


# dimorphy

def test_example_classifies_al_star_il():
    assert classify_dimorphy(ma(F, 2)).cls == "al/il"
    res = classify_dimorphy(ma(F, 4))
    assert res.cls == "al*il"
    S = swap(ma(F, 4)) + res.correction
    assert check_alternil(S)
    assert in_class(ma(F, 2), "al*il")


def test_odd_depth_one_denies_underline():
    res = classify_dimorphy(mould("0", "u1", "0", flavor=U))
    assert res.cls == "al/al" and not res.underline
    assert classify_dimorphy(mould("0", "u1^2", "0", flavor=U)).underline


def test_non_alternal_is_none():
    assert classify_dimorphy(mould("0", "u1", "u1", flavor=U)).cls == "none"
    with pytest.raises(MouldError):
        classify_dimorphy(constant_mould([1, 0], U))


@pytest.mark.parametrize("A", [ls_mould_basis(8, 2)[0].pad(3), mould("0", "u1^2", "0", "0", flavor=U)],
                         ids=["ls8", "u1sq"])
def test_adari_pal_sends_al_al_into_al_star_il(A):
    assert classify_dimorphy(A).cls == "al/al"
    assert in_class(adari(pal(3), A), "al*il")


def test_adari_pal_needs_al_al_input():
    from mouldlab.dimlab import ds_solve

    A = ma(ds_solve(3)[0].f, 4)
    assert classify_dimorphy(A).cls == "al*il"
    B = adari(pal(4), A)
    res = classify_dimorphy(B)
    assert res.cls == "none" and check_alternal(B)
    assert check_alternil(swap(B)).first_defect == ((1, 1), parse_rf("-v1-v2"))


# operator invariance

@given(seeds)
@settings(max_examples=10)
def test_alternal_is_mantar_invariant(seed):
    assert check_operator_invariance(random_alternal(seeded(seed), 4, U), "mantar")


@pytest.mark.parametrize("n,d", [(8, 2), (5, 1), (11, 3)])
def test_ls_moulds_push_and_neg_invariant(n, d):
    for A in ls_mould_basis(n, d):
        assert classify_dimorphy(A).underline
        assert check_operator_invariance(A, "push")
        assert check_operator_invariance(A, "neg")
        assert check_operator_invariance(A, "negpush")


def test_neg_invariance_by_parity():
    f = parse_nc("[x,[x,y]]")
    assert check_operator_invariance(ma(f, 3), "neg")
    rep = check_operator_invariance(ma(parse_nc("[x,y]"), 2), "neg")
    assert not rep.holds and rep.first_defect[0] == (1, 0)


def test_unknown_operator():
    with pytest.raises(MouldError):
        check_operator_invariance(mould("0"), "flip")
