import random

import pytest
from hypothesis import given, settings

from mouldlab._backend import Q
from mouldlab.derivations import ari, arit, preari
from mouldlab.dictionary import ma, mi, mould_to_ncpoly, qc_criterion, vimo, weight_truncate
from mouldlab.dimlab import ds_solve, ls_mould_basis
from mouldlab.gari import expari, gari
from mouldlab.mould import U, Mould, MouldError, mu, swap, zero_mould
from mouldlab.ncpoly import (NCPolynomial, NCSeries, NotInQC, C, D_apply, X, bracket, c_word, ds_member, exp_odot,
                             f_Y, is_lie, ls_member, odot, parse_nc, partial_x, poisson, prelie_p, random_c_poly,
                             random_mt, stuffle_y, y_shuffle_defects, y_word_pairs)
from mouldlab.symmetry import check_alternal, check_alternil, classify_dimorphy, constant_correction, in_class
from mouldlab.textform import parse_polynomial, parse_rf

from strategies import seeds

F = parse_nc("[x,[x,y]]+[[x,y],y]")


def rf(text):
    return parse_rf(text)


def random_xy(rng, n, terms=3):
    return NCPolynomial({"".join(rng.choice("xy") for _ in range(n)): Q(rng.randint(-3, 3)) for _ in range(terms)})


def series(rng, W):
    return NCSeries(sum((random_c_poly(rng, k, 2) for k in range(1, W + 1)), NCPolynomial.one()), W)


# vimo, ma, mi on the worked example

def test_example_vimo():
    V_ = vimo(F)
    assert V_[1] == parse_polynomial("z0^2-2*z0*z1+z1^2")
    assert V_[2] == parse_polynomial("z0-2*z1+z2")
    assert vimo(NCPolynomial()).is_zero()


def test_example_ma_mi():
    A, B = ma(F, 3), mi(F, 3)
    assert A == Mould([rf("0"), rf("u1^2"), rf("-u1+u2"), rf("0")], U)
    assert B.comps[1] == rf("v1^2") and B.comps[2] == rf("-2*v2+v1") and B.comps[3].is_zero()
    assert swap(A) == B


@given(seeds)
@settings(max_examples=15)
def test_swap_ma_is_mi(seed):
    rng = random.Random(seed)
    f = random_c_poly(rng, rng.randint(1, 6))
    assert swap(ma(f)) == mi(f)


def test_ma_rejects_non_qc():
    with pytest.raises(NotInQC):
        ma(parse_nc("y*x"))
    with pytest.raises(NotInQC):
        mi(parse_nc("x"))


# the inverse map

@given(seeds)
@settings(max_examples=20)
def test_mould_to_ncpoly_round_trip(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    f = random_c_poly(rng, n)
    assert mould_to_ncpoly(ma(f), weight=n) == f


def test_mould_to_ncpoly_examples():
    assert ma(C(2))[1] == rf("-u1")
    assert mould_to_ncpoly(Mould([rf("0"), rf("-u1")], U)) == C(2)
    assert mould_to_ncpoly(zero_mould(3, U)).is_zero()


def test_mould_to_ncpoly_errors():
    with pytest.raises(MouldError):
        mould_to_ncpoly(Mould([rf("0"), rf("1/u1")], U))
    with pytest.raises(MouldError):
        mould_to_ncpoly(Mould([rf("0"), rf("u1+u1^2")], U), weight=2)
    with pytest.raises(MouldError):
        mould_to_ncpoly(swap(ma(C(2))))


# the translation criterion for the C-subring

@given(seeds)
@settings(max_examples=30)
def test_translation_criterion_both_ways(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    for f in (random_c_poly(rng, n), random_xy(rng, n)):
        assert (qc_criterion(vimo(f)) is None) == partial_x(f).is_zero()


def test_translation_criterion_reports_depth():
    assert qc_criterion(vimo(parse_nc("y*x"))) == 1
    assert qc_criterion(vimo(parse_nc("x"))) == 0
    assert qc_criterion(vimo(F)) is None


# symmetries of f against symmetries of ma_f and mi_f

def stuffle_sums(terms, n):
    for u, v in y_word_pairs(n):
        s = sum((terms.get(w, 0) * k for w, k in stuffle_y(u, v).items()), Q(0))
        if s:
            yield (u, v), s


def y_stuffle(f, star=False):
    """Stuffle of ``f_Y``; with ``star`` a constant may be added on ``y1^n``."""
    n = f.weight
    terms = dict(f_Y(f))
    if star:
        ones = (1,) * n
        head = dict(stuffle_sums(terms, n)).get(((1,), ones[1:]), Q(0))
        terms[ones] = terms.get(ones, 0) - head / n
    return next(stuffle_sums(terms, n), None) is None


def dictionary_pool():
    rng = random.Random(1)
    pool = []
    for n in range(2, 7):
        pool += [random_c_poly(rng, n), random_mt(rng, n), C(n)]
    pool += [c.f for n in (3, 5) for c in ds_solve(n)]
    pool += [mould_to_ncpoly(A) for n, d in [(3, 1), (5, 1), (6, 2)] for A in ls_mould_basis(n, d)]
    pool.append(poisson(ds_solve(3)[0].f, ds_solve(5)[0].f))
    return pool


def four_way(f):
    n = f.weight
    A, B = ma(f, n), mi(f, n)
    return [
        (is_lie(f)[0], bool(check_alternal(A))),
        (not y_shuffle_defects(f_Y(f)), bool(check_alternal(B))),
        (y_stuffle(f), bool(check_alternil(B))),
        (y_stuffle(f, star=True), constant_correction(B, "alternil") is not None),
    ]


def test_four_way_dictionary():
    rows = [four_way(f) for f in dictionary_pool()]
    for row in rows:
        for lhs, rhs in row:
            assert lhs == rhs
    for k in range(4):
        assert {row[k][0] for row in rows} == {True, False}


def test_stuffle_needs_full_depth():
    assert not y_stuffle(C(3))
    assert check_alternil(mi(C(3)))
    assert not check_alternil(mi(C(3), 3))


# Lie subspaces go to symmetry classes

@given(seeds)
@settings(max_examples=10)
def test_mt_maps_to_alternal(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    assert check_alternal(ma(random_mt(rng, n), n))


@pytest.mark.parametrize("n,d", [(3, 1), (5, 1), (8, 2)])
def test_ls_maps_to_underlined_al_al(n, d):
    for A in ls_mould_basis(n, d):
        f = mould_to_ncpoly(A, weight=n)
        assert ls_member(f) == (True, None)
        res = classify_dimorphy(ma(f, n))
        assert res.cls == "al/al" and res.underline


@pytest.mark.parametrize("n", [3, 5, 7])
def test_ds_maps_to_al_star_il(n):
    for cand in ds_solve(n):
        assert ds_member(cand.f)[0]
        assert in_class(ma(cand.f, n), "al*il")


def test_ds_bracket_maps_to_al_star_il():
    f = poisson(ds_solve(3)[0].f, ds_solve(5)[0].f)
    assert ds_member(f)[0]
    assert in_class(ma(f, 8), "al*il")


# the inductive step of the C-basis argument

@given(seeds)
@settings(max_examples=15)
def test_right_factor_pivot(seed):
    rng = random.Random(seed)
    word = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3)))
    a = rng.randint(1, 6 - min(sum(word), 5))
    g = c_word(word)
    r = len(word) + 1
    lhs = ma(g * C(a), r)[r]
    ur = rf(f"u{r}")
    rhs = ma(g, r - 1)[r - 1] * (-ur) ** (a - 1)
    assert lhs == rhs


# products and brackets

@given(seeds)
@settings(max_examples=15)
def test_ma_multiplicative(seed):
    rng = random.Random(seed)
    n1 = rng.randint(1, 4)
    n2 = rng.randint(1, 7 - n1)
    a, b = random_c_poly(rng, n1), random_c_poly(rng, n2)
    D = n1 + n2
    assert ma(a * b, D) == mu(ma(a, D), ma(b, D))


@given(seeds)
@settings(max_examples=10)
def test_brackets_carry_over(seed):
    rng = random.Random(seed)
    n1 = rng.randint(1, 3)
    n2 = rng.randint(1, 6 - n1)
    f, g = random_mt(rng, n1), random_mt(rng, n2)
    D = n1 + n2
    assert ma(D_apply(f, g), D) == -arit(ma(f, D), ma(g, D))
    assert ma(poisson(f, g), D) == ari(ma(f, D), ma(g, D))
    assert ma(prelie_p(f, g), D) == preari(ma(f, D), ma(g, D))


@given(seeds)
@settings(max_examples=10)
def test_ad_x_multiplies_by_total(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    f = random_c_poly(rng, n)
    A, B = ma(f, n + 1), ma(bracket(X, f), n + 1)
    for r in range(1, n + 2):
        total = rf("+".join(f"u{i}" for i in range(1, r + 1)))
        assert B[r] == -total * A[r]


# the group law and the exponential

@pytest.mark.parametrize("seed", [0, 1])
def test_gari_matches_twisted_product(seed):
    rng = random.Random(seed)
    W = 6
    a, b = series(rng, W), series(rng, W)
    lhs = weight_truncate(gari(ma(a.poly, W), ma(b.poly, W)), W)
    assert lhs == weight_truncate(ma(odot(a, b).poly, W), W)
    assert lhs != weight_truncate(ma(odot(b, a).poly, W), W)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_exp_odot_matches_expari(seed):
    rng = random.Random(seed)
    W = 5
    g = NCSeries(random_mt(rng, 1) + random_mt(rng, 2) + random_mt(rng, 3), W)
    assert weight_truncate(ma(exp_odot(g).poly, W), W) == weight_truncate(expari(ma(g.poly, W)), W)
