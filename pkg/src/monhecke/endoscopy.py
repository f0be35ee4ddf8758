"""Endoscopic Weyl groups, endosimple reflections and block combinatorics.

For a character ``L`` the endoscopic roots are the real roots whose coroot is
killed by ``L``; ``W_L°`` is the reflection subgroup they generate.  Everything
that only needs inversion sets (endosimplicity, ``l_L``, minimal block
elements, endo-reduced words) is exact for any GCM.  Enumerating ``W_L°`` or
the transporter set needs a finite Weyl group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .charmod import MultLocalSystem, act, endoscopic_coroots
from .errors import (
    CompositionMismatch,
    InfiniteGroup,
    InputError,
    InvariantBreach,
    NotAReflection,
    NotInBlock,
    NotPalindromic,
)
from .rootdatum import GCM, RealRoot, RootDatum, WeylElt, build_root_datum


def _killed_inversions(w: WeylElt, L: MultLocalSystem) -> list[RealRoot]:
    return [rt for rt in w.inversions() if L.kills(rt.coroot)]


def ell_L(w: WeylElt, L: MultLocalSystem) -> int:
    """Number of positive endoscopic roots sent negative by ``w``."""
    return len(_killed_inversions(w, L))


def is_endosimple(t: WeylElt, L: MultLocalSystem) -> bool:
    """Whether the reflection ``t`` is a canonical generator of ``W_L°``."""
    root = t.reflection_root()
    if not L.kills(root.coroot):
        return False
    return len(_killed_inversions(t, L)) == 1


def min_block_element(w: WeylElt, L: MultLocalSystem) -> WeylElt:
    """The minimal element ``w^beta`` of the coset ``w W_L°``.

    Right multiplication by the reflection of a killed inversion strictly lowers
    ``l_L``; the process stops exactly at the element with ``l_L = 0``.
    """
    cur = w
    while True:
        killed = _killed_inversions(cur, L)
        if not killed:
            return cur
        cur = cur * killed[0].reflection()


def in_endo_group(u: WeylElt, L: MultLocalSystem) -> bool:
    return min_block_element(u, L).is_identity()


@dataclass
class EndoDatum:
    L: MultLocalSystem
    phi_L: list[RealRoot]
    complete: bool
    S_endo: list[WeylElt]
    roots: list[RealRoot]
    endo_gcm: GCM
    coxeter_matrix: tuple

    @property
    def datum(self) -> RootDatum:
        return self.L.datum

    @property
    def rank(self) -> int:
        return len(self.S_endo)

    @cached_property
    def abstract(self) -> RootDatum:
        """The Coxeter system ``(W_L°, S_L°)`` as the Weyl group of ``endo_gcm``."""
        return build_root_datum(self.endo_gcm, "sc", name="endo")

    def endo_word(self, u: WeylElt) -> tuple[int, ...]:
        """ShortLex word of ``u`` in the endosimple generators (indices into ``S_endo``)."""
        if u.datum is not self.datum:
            raise InputError("element from another root datum")
        out = []
        cur = u
        ln = ell_L(cur, self.L)
        while ln:
            for i, t in enumerate(self.S_endo):
                nxt = t * cur
                ln2 = ell_L(nxt, self.L)
                if ln2 < ln:
                    out.append(i)
                    cur, ln = nxt, ln2
                    break
            else:
                raise NotInBlock(f"{u} is not in the endoscopic group")
        if not cur.is_identity():
            raise NotInBlock(f"{u} is not in the endoscopic group")
        return tuple(out)

    def to_abstract(self, u: WeylElt) -> WeylElt:
        return self.abstract.normalize(self.endo_word(u))

    def from_abstract(self, x: WeylElt) -> WeylElt:
        d = self.datum
        word: tuple[int, ...] = ()
        for i in x.word:
            word += self.S_endo[i].word
        return d.normalize(word)

    def elements(self) -> list[WeylElt]:
        """``W_L°`` ordered by ``l_L`` then endo word."""
        if not self.complete or not self.abstract.is_finite:
            raise InfiniteGroup("the endoscopic group is not known to be finite")
        return [self.from_abstract(x) for x in self.abstract.elements()]

    def contains(self, u: WeylElt) -> bool:
        return in_endo_group(u, self.L)

    def to_json(self) -> dict:
        return {
            "phi_L": [list(rt.coroot_vector) for rt in self.phi_L],
            "S_endo": [list(t.word) for t in self.S_endo],
            "endo_gcm": [list(r) for r in self.endo_gcm.entries],
            "coxeter_matrix": [[m if m is not None else "inf" for m in row] for row in self.coxeter_matrix],
            "complete": self.complete,
        }


_ENDO_CACHE: dict[tuple, EndoDatum] = {}


def endosimple_generators(L: MultLocalSystem, bound: int | None = None) -> EndoDatum:
    d = L.datum
    if bound is None and not d.is_finite:
        raise InfiniteGroup(f"{d!r} is {d.kind}; give a bound")
    key = (L, bound)
    hit = _ENDO_CACHE.get(key)
    if hit is not None and hit.L.datum is d:
        return hit
    phi = endoscopic_coroots(L, bound)
    pos = [rt for rt in phi if rt.positive]
    gens = []
    for rt in pos:
        t = rt.reflection()
        if len(_killed_inversions(t, L)) == 1:
            gens.append((t, rt))
    gens.sort(key=lambda p: (p[0].length, p[0].word))
    S = [t for t, _ in gens]
    roots = [rt for _, rt in gens]
    k = len(S)
    gcm = GCM(tuple(tuple(d.root_coroot_pairing(roots[j].root, roots[i].coroot) for j in range(k))
                    for i in range(k)))
    out = EndoDatum(L, phi, bound is None, S, roots, gcm, gcm.coxeter_matrix())
    _ENDO_CACHE[key] = out
    return out


def endo_datum(L: MultLocalSystem) -> EndoDatum:
    return endosimple_generators(L, None)


# ---------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class Block:
    """A right coset ``w^beta W_L°`` of elements sending ``source`` to ``target``."""

    source: MultLocalSystem
    target: MultLocalSystem
    min_elt: WeylElt

    def __str__(self):
        return f"[{self.min_elt}]"

    @property
    def is_neutral(self) -> bool:
        return self.min_elt.is_identity()

    def members(self) -> list[WeylElt]:
        return [self.min_elt * u for u in endo_datum(self.source).elements()]

    def contains(self, w: WeylElt) -> bool:
        return act(w, self.source) == self.target and min_block_element(w, self.source) == self.min_elt

    def endo_part(self, w: WeylElt) -> WeylElt:
        """``(w^beta)^{-1} w`` in ``W_L°``."""
        if not self.contains(w):
            raise NotInBlock(f"{w} is not in block {self}")
        return self.min_elt.inverse() * w


def block_of(w: WeylElt, L: MultLocalSystem) -> Block:
    return Block(L, act(w, L), min_block_element(w, L))


def neutral_block(L: MultLocalSystem) -> Block:
    return Block(L, L, L.datum.identity)


def transporter(L: MultLocalSystem, L2: MultLocalSystem) -> list[WeylElt]:
    d = L.datum
    if not d.is_finite:
        raise InfiniteGroup(f"{d!r} is {d.kind}")
    return [w for w in d.elements() if act(w, L) == L2]


def blocks(L: MultLocalSystem, L2: MultLocalSystem) -> list[Block]:
    """The blocks partitioning ``{w : w L = L2}``, sorted by their minimal elements."""
    mins = {}
    for w in transporter(L, L2):
        m = min_block_element(w, L)
        mins[m.key] = m
    return [Block(L, L2, m) for m in sorted(mins.values())]


def satisfies_min_criterion(w: WeylElt, L: MultLocalSystem) -> bool:
    """``w`` maps every positive endoscopic root of ``L`` to a positive root."""
    return all(not w.sends_negative(rt.root) for rt in endoscopic_coroots(L) if rt.positive)


def block_product(gamma: Block, beta: Block) -> Block:
    if gamma.source != beta.target:
        raise CompositionMismatch(f"block {gamma} starts where {beta} does not end")
    prod = gamma.min_elt * beta.min_elt
    out = block_of(prod, beta.source)
    if out.min_elt != prod:
        raise InvariantBreach(f"w^gamma w^beta = {prod} is not minimal in its block")
    return out


def ell_beta(w: WeylElt, beta: Block) -> int:
    if not beta.contains(w):
        raise NotInBlock(f"{w} is not in block {beta}")
    n = ell_L(w, beta.source)
    u = beta.min_elt.inverse() * w
    if ell_L(u, beta.source) != n:
        raise InvariantBreach(f"block length mismatch for {w} in {beta}")
    return n


# ---------------------------------------------------------------------------
# endo-reduced expressions


def character_sequence(word: Sequence[int], L: MultLocalSystem) -> list[MultLocalSystem]:
    """``[L_1, ..., L_{k+1}]`` with ``L_{k+1} = L`` and ``L_i = s_i L_{i+1}``."""
    d = L.datum
    seq = [L]
    for s in reversed(word):
        seq.append(act(d.simple(s), seq[-1]))
    return seq[::-1]


def endo_step_count(word: Sequence[int], L: MultLocalSystem, rule: str = "coroot") -> int:
    """Count the steps of ``word`` that stay inside an endoscopic group.

    ``rule="coroot"`` counts ``i`` with ``s_i`` in ``W°`` of ``L_{i+1}``;
    ``rule="stabilizer"`` counts ``i`` with ``L_i = L_{i+1}``.  The two agree
    whenever every simple root is surjective onto ``Z``.
    """
    seq = character_sequence(word, L)
    if rule == "coroot":
        return sum(1 for i, s in enumerate(word) if seq[i + 1].kills_simple(s))
    if rule == "stabilizer":
        return sum(1 for i in range(len(word)) if seq[i] == seq[i + 1])
    raise InputError(f"unknown counting rule {rule!r}")


def is_endo_reduced(word: Sequence[int], L: MultLocalSystem, rule: str = "coroot") -> bool:
    w = L.datum.normalize(word)
    return ell_L(w, L) == endo_step_count(word, L, rule)


def palindrome_decompose(word: Sequence[int], L: MultLocalSystem):
    """Split an endo-reduced word for an endosimple reflection as ``x + (t,) + reversed(x)``.

    Returns ``(x, t, reversed(x))`` after checking that ``reversed(x)`` is minimal in
    its block and ``t`` lies in the endoscopic group of the translated character.
    """
    word = tuple(word)
    d = L.datum
    k, odd = divmod(len(word), 2)
    if not odd or word != word[::-1]:
        raise NotPalindromic(f"{word} is not an odd palindrome")
    if not is_endo_reduced(word, L):
        raise NotPalindromic(f"{word} is not endo-reduced")
    try:
        if not is_endosimple(d.normalize(word), L):
            raise NotPalindromic(f"{word} is not an endosimple reflection")
    except NotAReflection:
        raise NotPalindromic(f"{word} is not a reflection") from None
    x, t = word[:k], word[k]
    y = d.normalize(x[::-1])
    if ell_L(y, L) != 0:
        raise NotPalindromic(f"{y} is not minimal in its block")
    if not act(y, L).kills_simple(t):
        raise NotPalindromic(f"s{t} is not in the endoscopic group of the translated character")
    return x, t, x[::-1]
