import pytest

from mouldlab._backend import Q
from mouldlab.derivations import ari
from mouldlab.dictionary import ma
from mouldlab.dimlab import (ConstraintSystem, bk_coeff, convergent_words, dim_ls, dim_ls_nc, ds_solve, fz_relations,
                             ls_mould_basis, nullspace, rank, witt_dims, z_name, free_lie_odd_dims)
from mouldlab.ncpoly import C, ls_member, star_ones
from mouldlab.symmetry import in_class


# elimination

def test_nullspace_trivial_systems():
    C_ = ConstraintSystem(["a", "b", "c"])
    assert len(nullspace(C_)) == 3
    for lab in "abc":
        C_.add({lab: 1})
    assert nullspace(C_) == [] and rank(C_) == 3


def test_nullspace_solves_system():
    C_ = ConstraintSystem(["a", "b", "c"])
    C_.add({"a": 1, "b": -2}, "r1")
    C_.add({"b": Q(1, 3), "c": 1}, "r2")
    (vec,) = nullspace(C_)
    a, b, c = vec
    assert a - 2 * b == 0 and b / 3 + c == 0 and any(vec)
    assert C_.tags == ["r1", "r2"]


def test_elimination_is_deterministic():
    assert [c.f for c in ds_solve(5)] == [c.f for c in ds_solve(5)]
    assert ls_mould_basis(8, 2) == ls_mould_basis(8, 2)


# linearized double shuffle dimensions

def test_ls_weight_three_generator():
    (A,) = ls_mould_basis(3, 1)
    ref = ma(C(3), 1)
    assert A == ref or A == ref.scale(-1)


@pytest.mark.parametrize("n", range(3, 10))
def test_ls_parity_vanishing(n):
    for d in range(1, n + 1):
        if (n + d) % 2:
            assert dim_ls(n, d) == 0


def test_ls_small_values():
    assert dim_ls(3, 1) == 1 and dim_ls(5, 1) == 1
    assert dim_ls(4, 1) == 0
    assert dim_ls(8, 2) == 1 and dim_ls(11, 3) == 1


@pytest.mark.parametrize("n", range(3, 8))
def test_ls_dims_agree_across_routes(n):
    for d in range(1, n + 1):
        assert dim_ls(n, d) == dim_ls_nc(n, d)


# double shuffle solutions

def test_ds_dimensions():
    assert [len(ds_solve(n)) for n in range(3, 9)] == [1, 0, 1, 0, 1, 1]


def test_ds_weight_three():
    (cand,) = ds_solve(3)
    assert cand.f.coefficient("xxy") != 0


@pytest.mark.parametrize("n", [3, 5, 7])
def test_ds_lowest_depth_is_in_ls(n):
    for cand in ds_solve(n):
        low = cand.f.depth_part(min(cand.f.depths()))
        assert ls_member(low) == (True, None)


def test_ari_closure_of_ds_images():
    a, b = ma(ds_solve(3)[0].f, 4), ma(ds_solve(5)[0].f, 4)
    assert in_class(ari(a, b), "al*il")


# formal multizeta relations

def test_fz_weight_two_and_three():
    assert fz_relations(2).bound == 1
    r = fz_relations(3)
    assert r.bound == 1
    assert r.implies({"xyy": 1, "xxy": -1})
    assert [z_name(w) for w in convergent_words(3)] == ["Z(3)", "Z(2,1)"]


def test_fz_weight_four():
    r = fz_relations(4)
    assert r.bound == 1
    for w, c in (("xyxy", Q(3, 4)), ("xxyy", Q(1, 4)), ("xyyy", Q(1))):
        assert r.implies({w: 1, "xxxy": -c})


def test_fz_star_ones_weight_four():
    r = fz_relations(4)
    combo = dict(star_ones(4))
    combo["xxxy"] = combo.get("xxxy", 0) - Q(1, 16)
    assert r.implies(combo)
    combo["xxxy"] -= Q(3, 8) - Q(1, 16)
    assert not r.implies(combo)


def test_fz_bounds_up_to_eight():
    assert [fz_relations(n).bound for n in range(2, 9)] == [1, 1, 1, 2, 2, 3, 4]


def test_fz_rejects_low_weight():
    with pytest.raises(ValueError):
        fz_relations(1)


# reference series

def test_bk_coefficients():
    assert bk_coeff(3, 1) == 1
    assert bk_coeff(8, 2) == 2
    assert bk_coeff(12, 2) == 3
    assert all(bk_coeff(n, d) == 0 for n in range(1, 16) for d in range(1, 5) if (n + d) % 2)


def test_witt_dims():
    assert [witt_dims(n) for n in range(12)] == [1, 0, 0, 1, 0, 1, 1, 1, 2, 2, 3, 4]


def test_free_lie_on_odd_generators():
    assert [free_lie_odd_dims(n) for n in range(1, 14)] == [0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 2, 2, 3]
