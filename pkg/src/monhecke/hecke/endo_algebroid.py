"""The endoscopic Hecke algebroid and the comparison functor theta.

A morphism ``L -> L'`` is a block-graded sum of copies of ``H(W_L°)``; the
basis element ``T~`` indexed by ``(beta, u)`` corresponds to ``w = w^beta u``.

``theta`` comes in two normalizations:

* ``"literal"`` sends ``T~_{(beta,u)}`` to ``T_w``;
* ``"geometric"`` sends it to ``v^{l_L(u) - l(w)} T_w``, i.e. ``H~_u`` to ``H_w``
  with ``H_y = v^{-l(y)} T_y`` on both sides.

Only the geometric one is multiplicative once ``W_L°`` has a generator that is
not simple in ``W``.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from ..charmod import MultLocalSystem, act
from ..endoscopy import Block, block_of, block_product, endo_datum
from ..errors import CompositionMismatch, InputError, SpaceMismatch
from ..laurent import ONE, ZERO, LaurentPoly, v
from ..rootdatum import WeylElt
from . import algebroid as alg

Key = tuple[Block, WeylElt]

_ABS: dict[tuple, tuple] = {}


def _abstract_setup(L: MultLocalSystem):
    hit = _ABS.get(L)
    if hit is None or hit[0].L.datum is not L.datum:
        endo = endo_datum(L)
        A = endo.abstract
        hit = (endo, A, MultLocalSystem.trivial(A), {}, {})
        _ABS[L] = hit
    return hit


def to_abstract(u: WeylElt, L: MultLocalSystem) -> WeylElt:
    endo, _, _, fwd, back = _abstract_setup(L)
    x = fwd.get(u)
    if x is None:
        x = endo.to_abstract(u)
        fwd[u] = x
        back[x] = u
    return x


def from_abstract(x: WeylElt, L: MultLocalSystem) -> WeylElt:
    endo, _, _, fwd, back = _abstract_setup(L)
    u = back.get(x)
    if u is None:
        u = endo.from_abstract(x)
        back[x] = u
        fwd[u] = x
    return u


def endo_length(u: WeylElt, L: MultLocalSystem) -> int:
    return to_abstract(u, L).length


class EndoAlgebroidElt:
    __slots__ = ("source", "target", "terms")

    def __init__(self, source: MultLocalSystem, target: MultLocalSystem,
                 terms: Mapping[Key, LaurentPoly | int] | None = None):
        self.source = source
        self.target = target
        clean = {}
        for (beta, u), p in (terms or {}).items():
            p = LaurentPoly.coerce(p)
            if not p:
                continue
            if beta.source != source or beta.target != target:
                raise InputError(f"block {beta} does not belong to this morphism space")
            clean[(beta, u)] = p
        self.terms: dict[Key, LaurentPoly] = clean

    def _same_space(self, other):
        if self.source != other.source or self.target != other.target:
            raise SpaceMismatch("elements live in different morphism spaces")

    def __add__(self, other: "EndoAlgebroidElt") -> "EndoAlgebroidElt":
        self._same_space(other)
        acc = dict(self.terms)
        for k, p in other.terms.items():
            acc[k] = acc.get(k, ZERO) + p
        return EndoAlgebroidElt(self.source, self.target, acc)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "EndoAlgebroidElt":
        c = LaurentPoly.coerce(c)
        return EndoAlgebroidElt(self.source, self.target, {k: c * p for k, p in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, EndoAlgebroidElt):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.terms == other.terms

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"({p})*T~[{b}|{u}]" for (b, u), p in sorted(
            self.terms.items(), key=lambda kv: (kv[0][0].min_elt, kv[0][1])))
        return body or "0"


def endo_t_basis(w: WeylElt, L: MultLocalSystem) -> EndoAlgebroidElt:
    """``T~`` indexed by ``w``, filed under the block containing ``w``."""
    beta = block_of(w, L)
    u = beta.min_elt.inverse() * w
    return EndoAlgebroidElt(L, beta.target, {(beta, u): ONE})


def endo_basis(L: MultLocalSystem, L2: MultLocalSystem) -> list[EndoAlgebroidElt]:
    from ..endoscopy import blocks
    out = []
    for beta in blocks(L, L2):
        for u in endo_datum(L).elements():
            out.append(EndoAlgebroidElt(L, L2, {(beta, u): ONE}))
    return out


def endo_compose(A: EndoAlgebroidElt, B: EndoAlgebroidElt) -> EndoAlgebroidElt:
    """``(gamma, y) . (beta, x) = (gamma beta, (w^beta)^-1 y w^beta . x)``, product taken in ``H(W_L°)``."""
    if A.source != B.target:
        raise CompositionMismatch("left factor does not start where the right factor ends")
    L = B.source
    _, _, triv, _, _ = _abstract_setup(L)
    acc: dict[Key, LaurentPoly] = {}
    for (gamma, y), p in A.terms.items():
        for (beta, x), q in B.terms.items():
            gb = block_product(gamma, beta)
            wb = beta.min_elt
            y_conj = wb.inverse() * y * wb
            ya, xa = to_abstract(y_conj, L), to_abstract(x, L)
            pq = p * q
            for z, c in alg.basis_product(ya, xa, triv).items():
                key = (gb, from_abstract(z, L))
                acc[key] = acc.get(key, ZERO) + c * pq
    return EndoAlgebroidElt(L, A.target, acc)


def theta_coefficient(beta: Block, u: WeylElt, normalization: str = "geometric") -> LaurentPoly:
    if normalization == "literal":
        return ONE
    if normalization == "geometric":
        w = beta.min_elt * u
        return v(endo_length(u, beta.source) - w.length)
    raise InputError(f"unknown theta normalization {normalization!r}")


def theta(E: EndoAlgebroidElt, normalization: str = "geometric") -> alg.AlgebroidElt:
    terms: dict[WeylElt, LaurentPoly] = {}
    for (beta, u), p in E.terms.items():
        w = beta.min_elt * u
        terms[w] = terms.get(w, ZERO) + p * theta_coefficient(beta, u, normalization)
    return alg.AlgebroidElt(E.source, E.target, terms, check=False)


def theta_inverse(A: alg.AlgebroidElt, normalization: str = "geometric") -> EndoAlgebroidElt:
    acc: dict[Key, LaurentPoly] = {}
    for w, p in A.terms.items():
        beta = block_of(w, A.source)
        u = beta.min_elt.inverse() * w
        c = theta_coefficient(beta, u, normalization)
        # c is a monomial v^k, so division is exact
        acc[(beta, u)] = p * c ** -1
    return EndoAlgebroidElt(A.source, A.target, acc)


def endo_standard_form(A: EndoAlgebroidElt, B: EndoAlgebroidElt, weight: str = "flat") -> LaurentPoly:
    """Blockwise ``<T~_x, T~_y> = delta`` (flat) or ``v^{2 l_L(x)} delta`` (wlen)."""
    A._same_space(B)
    acc = ZERO
    for k, p in A.terms.items():
        q = B.terms.get(k)
        if q is None:
            continue
        if weight == "flat":
            acc = acc + p * q
        elif weight == "wlen":
            acc = acc + (p * q).shift(2 * endo_length(k[1], A.source))
        else:
            raise InputError(f"unknown form weighting {weight!r}")
    return acc


def endo_underline_h(t: int, L: MultLocalSystem) -> EndoAlgebroidElt:
    """``v^-1 T~_t + v^-1 T~_e`` for the ``t``-th endosimple generator."""
    endo = endo_datum(L)
    d = L.datum
    beta = Block(L, L, d.identity)
    return EndoAlgebroidElt(L, L, {(beta, endo.S_endo[t]): v(-1), (beta, d.identity): v(-1)})


def endo_bott_samelson(word: Sequence[int], L: MultLocalSystem) -> EndoAlgebroidElt:
    d = L.datum
    out = EndoAlgebroidElt(L, L, {(Block(L, L, d.identity), d.identity): ONE})
    for t in reversed(tuple(word)):
        out = endo_compose(endo_underline_h(t, L), out)
    return out


def substituted_word(word: Sequence[int], L: MultLocalSystem) -> tuple[int, ...]:
    """Replace each endosimple index by a reduced word of the reflection in ``W``."""
    endo = endo_datum(L)
    out: tuple[int, ...] = ()
    for t in word:
        out += endo.S_endo[t].word
    return out
