"""The monodromic Hecke algebroid.

Objects are characters in a W-orbit; the morphisms ``L -> L'`` are spanned by
``T_w^L`` for ``w L = L'``.  Composition is generated by the three-case rule
for ``T_s^{xL} T_x^L``, in which ``s`` belongs to ``W°`` of ``xL`` exactly
when ``xL`` kills the coroot of ``s``.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..charmod import MultLocalSystem, act
from ..errors import CompositionMismatch, InputError, SpaceMismatch
from ..laurent import ONE, ZERO, LaurentPoly, v
from ..rootdatum import WeylElt

V2 = v(2)
V2M1 = v(2) - 1
VM2 = v(-2)
VM2M1 = v(-2) - 1
VM1 = v(-1)

Terms = dict[WeylElt, LaurentPoly]


def _accumulate(acc: Terms, w: WeylElt, p: LaurentPoly) -> None:
    q = acc.get(w)
    q = p if q is None else q + p
    if q:
        acc[w] = q
    else:
        acc.pop(w, None)


class AlgebroidElt:
    """A ``Z[v, v^-1]``-combination of ``T_w^L`` in a single morphism space ``source -> target``."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: MultLocalSystem, target: MultLocalSystem,
                 terms: Mapping[WeylElt, LaurentPoly | int] | None = None, check: bool = True):
        self.source = source
        self.target = target
        clean: Terms = {}
        for w, p in (terms or {}).items():
            p = LaurentPoly.coerce(p)
            if p:
                clean[w] = p
        if check:
            for w in clean:
                if act(w, source) != target:
                    raise InputError(f"{w} does not send the source character to the target")
        self.terms = clean

    @classmethod
    def zero(cls, source: MultLocalSystem, target: MultLocalSystem) -> "AlgebroidElt":
        return cls(source, target, {}, check=False)

    @property
    def datum(self):
        return self.source.datum

    def coefficient(self, w: WeylElt) -> LaurentPoly:
        return self.terms.get(w, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[WeylElt]:
        return sorted(self.terms)

    def _same_space(self, other: "AlgebroidElt") -> None:
        if self.source != other.source or self.target != other.target:
            raise SpaceMismatch("elements live in different morphism spaces")

    def __add__(self, other: "AlgebroidElt") -> "AlgebroidElt":
        self._same_space(other)
        acc = dict(self.terms)
        for w, p in other.terms.items():
            _accumulate(acc, w, p)
        return AlgebroidElt(self.source, self.target, acc, check=False)

    def __neg__(self) -> "AlgebroidElt":
        return AlgebroidElt(self.source, self.target, {w: -p for w, p in self.terms.items()}, check=False)

    def __sub__(self, other: "AlgebroidElt") -> "AlgebroidElt":
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> "AlgebroidElt":
        c = LaurentPoly.coerce(c)
        return AlgebroidElt(self.source, self.target, {w: c * p for w, p in self.terms.items()}, check=False)

    __rmul__ = scale

    def __mul__(self, other):
        if isinstance(other, AlgebroidElt):
            return compose(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, AlgebroidElt):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.terms == other.terms

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in self.support():
            p = self.terms[w]
            parts.append(f"({p})*T[{w}]")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self, orbit: Sequence[MultLocalSystem] | None = None) -> list[dict]:
        idx = orbit.index(self.source) if orbit is not None and self.source in orbit else 0
        return [{"word": list(w.word), "character": idx, "poly": str(self.terms[w])}
                for w in self.support()]


def t_basis(w: WeylElt, L: MultLocalSystem) -> AlgebroidElt:
    return AlgebroidElt(L, act(w, L), {w: ONE}, check=False)


def identity(L: MultLocalSystem) -> AlgebroidElt:
    return t_basis(L.datum.identity, L)


# -- multiplication -----------------------------------------------------------

_SIMPLE_CACHE: dict[tuple, tuple] = {}


def _simple_on_basis(s: int, x: WeylElt, L: MultLocalSystem):
    """``T_s^{xL} T_x^L`` as a tuple of ``(w, poly)`` pairs."""
    key = (s, x.word, L)
    hit = _SIMPLE_CACHE.get(key)
    if hit is not None and L.datum is x.datum:
        return hit
    d = x.datum
    sx = d.mul(d.simple(s), x)
    if sx.length > x.length:
        out = ((sx, ONE),)
    elif act(x, L).kills_simple(s):
        out = ((x, V2M1), (sx, V2))
    else:
        out = ((sx, V2),)
    _SIMPLE_CACHE[key] = out
    return out


def _mul_simple_terms(s: int, terms: Terms, L: MultLocalSystem) -> Terms:
    acc: Terms = {}
    for x, p in terms.items():
        for w, c in _simple_on_basis(s, x, L):
            _accumulate(acc, w, c * p)
    return acc


def mul_simple_left(s: int, A: AlgebroidElt) -> AlgebroidElt:
    """``T_s^{A.target} . A``."""
    target = act(A.datum.simple(s), A.target)
    return AlgebroidElt(A.source, target, _mul_simple_terms(s, A.terms, A.source), check=False)


_BASIS_CACHE: dict[tuple, Terms] = {}


def basis_product(x: WeylElt, y: WeylElt, L: MultLocalSystem) -> Terms:
    """``T_x^{yL} T_y^L`` via the ShortLex word of ``x``."""
    key = (x.word, y.word, L)
    hit = _BASIS_CACHE.get(key)
    if hit is not None:
        return hit
    terms: Terms = {y: ONE}
    for s in reversed(x.word):
        terms = _mul_simple_terms(s, terms, L)
    _BASIS_CACHE[key] = terms
    return terms


def clear_caches() -> None:
    _SIMPLE_CACHE.clear()
    _BASIS_CACHE.clear()


def compose(A: AlgebroidElt, B: AlgebroidElt) -> AlgebroidElt:
    """``A o B``; requires ``A.source == B.target``."""
    if A.source != B.target:
        raise CompositionMismatch("left factor does not start where the right factor ends")
    L = B.source
    acc: Terms = {}
    for x, p in A.terms.items():
        for y, q in B.terms.items():
            pq = p * q
            for w, c in basis_product(x, y, L).items():
                _accumulate(acc, w, c * pq)
    return AlgebroidElt(L, A.target, acc, check=False)


def compose_all(elements: Iterable[AlgebroidElt]) -> AlgebroidElt:
    """Left-to-right composite ``E_1 o E_2 o ... o E_k``."""
    elements = list(elements)
    out = elements[-1]
    for E in reversed(elements[:-1]):
        out = compose(E, out)
    return out


def _inv_simple_left(s: int, terms: Terms, L: MultLocalSystem, cur: MultLocalSystem) -> Terms:
    """``(T_s^{M})^{-1} . X`` where ``X`` ends at ``cur = s M``."""
    ts = _mul_simple_terms(s, terms, L)
    if cur.kills_simple(s):  # then s M = M = cur
        acc: Terms = {w: VM2 * p for w, p in ts.items()}
        for w, p in terms.items():
            _accumulate(acc, w, VM2M1 * p)
        return acc
    return {w: VM2 * p for w, p in ts.items()}


def invert_t(w: WeylElt, L: MultLocalSystem) -> AlgebroidElt:
    """The inverse of ``T_w^L``, a morphism ``wL -> L``."""
    d = w.datum
    top = act(w, L)
    terms: Terms = {d.identity: ONE}
    cur = top
    # T_w = T_{s_1} ... T_{s_k}, so T_w^{-1} = T_{s_k}^{-1} ... T_{s_1}^{-1}; apply s_1 first
    for s in w.word:
        terms = _inv_simple_left(s, terms, top, cur)
        cur = act(d.simple(s), cur)
    return AlgebroidElt(top, L, terms, check=False)


def bar(A: AlgebroidElt) -> AlgebroidElt:
    """``v -> v^-1`` and ``T_w -> (T_{w^-1})^{-1}``."""
    acc: Terms = {}
    for w, p in A.terms.items():
        inv = invert_t(w.inverse(), A.target)
        pb = p.bar()
        for x, c in inv.terms.items():
            _accumulate(acc, x, pb * c)
    return AlgebroidElt(A.source, A.target, acc, check=False)


# -- Bott-Samelson elements and forms -----------------------------------------


def underline_h_s(s: int, L: MultLocalSystem) -> AlgebroidElt:
    d = L.datum
    terms = {d.simple(s): VM1}
    if L.kills_simple(s):
        terms[d.identity] = VM1
    return AlgebroidElt(L, act(d.simple(s), L), terms, check=False)


def bott_samelson(word: Sequence[int], L: MultLocalSystem) -> AlgebroidElt:
    """``H_{s_1} ... H_{s_k}`` with characters threaded from the right."""
    out = identity(L)
    for s in reversed(tuple(word)):
        out = compose(underline_h_s(s, out.target), out)
    return out


def standard_form(A: AlgebroidElt, B: AlgebroidElt, weight: str = "flat") -> LaurentPoly:
    """``<T_x, T_y> = delta`` (flat) or ``v^{2 l(x)} delta`` (wlen)."""
    A._same_space(B)
    acc = ZERO
    for w, p in A.terms.items():
        q = B.terms.get(w)
        if q is None:
            continue
        if weight == "flat":
            acc = acc + p * q
        elif weight == "wlen":
            acc = acc + (p * q).shift(2 * w.length)
        else:
            raise InputError(f"unknown form weighting {weight!r}")
    return acc


def hom_pairing(x_word: Sequence[int], y_word: Sequence[int], L: MultLocalSystem,
                weight: str = "flat") -> LaurentPoly:
    X = bott_samelson(x_word, L)
    Y = bott_samelson(y_word, L)
    if X.target != Y.target:
        raise SpaceMismatch("the two expressions end at different characters")
    return standard_form(X, Y, weight)


def biadjunction_sides(s: int, A: AlgebroidElt, B: AlgebroidElt, weight: str = "flat"):
    """Both sides of ``<H_s A, B> = <A, H_s B>`` for ``A: L -> L'`` and ``B: L -> sL'``."""
    lhs = standard_form(compose(underline_h_s(s, A.target), A), B, weight)
    rhs = standard_form(A, compose(underline_h_s(s, B.target), B), weight)
    return lhs, rhs


def ch_mult_check(w: WeylElt, n: int, s: int, L: MultLocalSystem) -> tuple[AlgebroidElt, AlgebroidElt]:
    """``(v^{-2n} T_w^{sL}) . H_s^L`` next to the closed-form case table; returns ``(computed, expected)``."""
    d = L.datum
    sL = act(d.simple(s), L)
    left = t_basis(w, sL).scale(v(-2 * n))
    computed = compose(left, underline_h_s(s, L))
    ws = d.mul(w, d.simple(s))
    k = ws.length - w.length
    coeff = v(-2 * n - k)
    terms = {ws: coeff}
    if L.kills_simple(s):
        terms[w] = coeff
    expected = AlgebroidElt(L, act(w, sL), terms, check=False)
    return computed, expected
