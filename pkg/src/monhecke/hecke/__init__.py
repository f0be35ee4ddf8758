from .algebroid import (
    AlgebroidElt,
    basis_product,
    bar,
    biadjunction_sides,
    bott_samelson,
    ch_mult_check,
    compose,
    compose_all,
    hom_pairing,
    identity,
    invert_t,
    mul_simple_left,
    standard_form,
    t_basis,
    underline_h_s,
)
from .canonical import bs_decompose, canonical_basis
from .endo_algebroid import (
    EndoAlgebroidElt,
    endo_basis,
    endo_bott_samelson,
    endo_compose,
    endo_standard_form,
    endo_t_basis,
    endo_underline_h,
    substituted_word,
    theta,
    theta_inverse,
)
from .kl import KLTable, kl_table_for
from .orbit_algebra import OrbitAlgebra, OrbitAlgebraElt, orbit_algebra


def kl_table(endo) -> KLTable:
    """KL table of the endoscopic Coxeter system ``(W_L°, S_L°)``."""
    from ..errors import InfiniteGroup

    if not endo.complete:
        raise InfiniteGroup("endoscopic datum is incomplete")
    return kl_table_for(endo.abstract)


__all__ = [n for n in dir() if not n.startswith("_")]
