"""Canonical basis of the algebroid, transported from the endoscopic group.

For ``w`` in block ``beta`` with ``u = (w^beta)^-1 w`` and ``b_u = sum_x h_{x,u} H_x``
(internal KL normalization) the geometric basis element is

    pH_w = sum_x h_{x,u}(v^-1) H_{w^beta x},    H_y = v^{-l(y)} T_y,

and ``C_w = v^{l(w) - l_beta(w)} pH_w`` has leading term ``v^{-l_L(u)} T_w``.
"""

from __future__ import annotations

from typing import Sequence

from ..charmod import MultLocalSystem
from ..endoscopy import block_of, endo_datum
from ..errors import InfiniteGroup, InputError, InvariantBreach
from ..laurent import LaurentPoly, ZERO, v
from ..rootdatum import WeylElt
from . import algebroid as alg
from .endo_algebroid import from_abstract, to_abstract
from .kl import kl_table_for

_CANON: dict[tuple, alg.AlgebroidElt] = {}


def canonical_basis(w: WeylElt, L: MultLocalSystem, normalization: str = "geom") -> alg.AlgebroidElt:
    """``pH_w`` (``"geom"``) or ``C_w`` (``"c"``) as an element of ``L -> wL``."""
    if normalization not in ("geom", "c"):
        raise InputError(f"unknown normalization {normalization!r}")
    if not L.datum.is_finite:
        raise InfiniteGroup("canonical bases need a finite Weyl group")
    key = (w.word, L, normalization)
    hit = _CANON.get(key)
    if hit is not None and hit.source.datum is L.datum:
        return hit
    beta = block_of(w, L)
    wb = beta.min_elt
    endo = endo_datum(L)
    table = kl_table_for(endo.abstract)
    ua = to_abstract(wb.inverse() * w, L)
    terms: dict[WeylElt, LaurentPoly] = {}
    for xa, h in table.h[ua].items():
        y = wb * from_abstract(xa, L)
        shift = -y.length if normalization == "geom" else -xa.length
        terms[y] = h.bar().shift(shift)
    out = alg.AlgebroidElt(L, beta.target, terms, check=False)
    _CANON[key] = out
    return out


def bs_decompose(word: Sequence[int], L: MultLocalSystem) -> dict[WeylElt, LaurentPoly]:
    """Multiplicities ``m_w`` with ``H_word = sum m_w pH_w``, peeled from the longest support element."""
    X = alg.bott_samelson(word, L)
    out: dict[WeylElt, LaurentPoly] = {}
    while not X.is_zero():
        top = max(X.terms, key=lambda w: (w.length, w.word))
        m = X.terms[top].shift(top.length)
        out[top] = out.get(top, ZERO) + m
        X = X - canonical_basis(top, L).scale(m)
        if top in X.terms:
            raise InvariantBreach(f"peeling failed to clear {top}")
    return out
