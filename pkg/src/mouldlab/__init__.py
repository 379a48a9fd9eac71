"""Exact symbolic computation with moulds, bimoulds and noncommutative polynomials."""
from ._backend import BACKEND, Q
from .exact import NotRepresentable, PoleError, Polynomial, RationalFunction
from .mould import BI, U, V, Mould, MouldError, anti, compose, invmu, lu, mu, neg, push, swap
from .derivations import ari, arit, preari
from .gari import adari, expari, ganit, gari, garit, invgari, logari
from .special import named_mould, pal, pil
from .symmetry import check_alternal, check_alternil, check_symmetral, classify_dimorphy
from .ncpoly import NCError, NCPolynomial, NotInQC, ds_member, is_lie, ls_member, parse_nc
from .dictionary import ma, mi, mould_to_ncpoly, vimo
from .dimlab import dim_ls, ds_solve, fz_relations

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Q",
    "NotRepresentable", "PoleError", "Polynomial", "RationalFunction",
    "BI", "U", "V", "Mould", "MouldError", "anti", "compose", "invmu", "lu", "mu", "neg", "push", "swap",
    "ari", "arit", "preari",
    "adari", "expari", "ganit", "gari", "garit", "invgari", "logari",
    "named_mould", "pal", "pil",
    "check_alternal", "check_alternil", "check_symmetral", "classify_dimorphy",
    "NCError", "NCPolynomial", "NotInQC", "ds_member", "is_lie", "ls_member", "parse_nc",
    "ma", "mi", "mould_to_ncpoly", "vimo",
    "dim_ls", "ds_solve", "fz_relations",
]
