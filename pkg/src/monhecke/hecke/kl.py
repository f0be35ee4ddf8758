"""Classical Kazhdan-Lusztig basis of a finite Coxeter system.

Internally the normalization is ``H_s^2 = (v^-1 - v) H_s + 1`` with
``b_s = H_s + v`` and ``b_w = H_w + sum_{x<w} h_{x,w} H_x``, ``h_{x,w} in vZ[v]``.
The classical polynomial in ``q = v^2`` is ``P_{x,w}(v^2) = v^{l(w)-l(x)} h_{x,w}(v^-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import hashlib
import json

from ..errors import InfiniteGroup
from ..laurent import ONE, ZERO, LaurentPoly, v
from ..rootdatum import RootDatum, WeylElt

V = v(1)
VM1 = v(-1)


def coxeter_hash(coxeter_matrix) -> str:
    rows = [[m if m is not None else 0 for m in row] for row in coxeter_matrix]
    return hashlib.sha256(json.dumps(rows).encode()).hexdigest()[:16]


@dataclass
class KLTable:
    datum: RootDatum
    h: dict[WeylElt, dict[WeylElt, LaurentPoly]] = field(repr=False)

    @property
    def coxeter_matrix(self):
        return self.datum.gcm.coxeter_matrix()

    @property
    def coxeter_hash(self) -> str:
        return coxeter_hash(self.coxeter_matrix)

    def elements(self) -> list[WeylElt]:
        return self.datum.elements()

    def h_poly(self, x: WeylElt, y: WeylElt) -> LaurentPoly:
        """Coefficient of ``H_x`` in ``b_y``."""
        return self.h[y].get(x, ZERO)

    def entries(self, x: WeylElt, y: WeylElt) -> LaurentPoly:
        """``P_{x,y}`` written in ``v`` with ``q = v^2``."""
        return self.h_poly(x, y).bar().shift(y.length - x.length)

    def mu(self, x: WeylElt, y: WeylElt) -> int:
        return self.h_poly(x, y)[1]

    def __eq__(self, other):
        if not isinstance(other, KLTable):
            return NotImplemented
        if self.coxeter_matrix != other.coxeter_matrix:
            return False
        mine = {(x.word, y.word): p for y, row in self.h.items() for x, p in row.items()}
        theirs = {(x.word, y.word): p for y, row in other.h.items() for x, p in row.items()}
        return mine == theirs


def _bs_times(s: int, elt: dict[WeylElt, LaurentPoly], d: RootDatum) -> dict[WeylElt, LaurentPoly]:
    """``b_s . sum c_x H_x``."""
    acc: dict[WeylElt, LaurentPoly] = {}
    ss = d.simple(s)

    def add(w, p):
        q = acc.get(w, ZERO) + p
        if q:
            acc[w] = q
        else:
            acc.pop(w, None)

    for x, c in elt.items():
        sx = d.mul(ss, x)
        add(sx, c)
        add(x, c * (V if sx.length > x.length else VM1))
    return acc


_TABLES: dict[int, KLTable] = {}


def kl_table_for(d: RootDatum) -> KLTable:
    """KL table of the Weyl group of a finite-type datum."""
    if not d.is_finite:
        raise InfiniteGroup(f"{d!r} is {d.kind}")
    hit = _TABLES.get(id(d))
    if hit is not None and hit.datum is d:
        return hit
    elems = d.elements()
    h: dict[WeylElt, dict[WeylElt, LaurentPoly]] = {}
    for w in elems:
        if w.is_identity():
            h[w] = {w: ONE}
            continue
        s = w.word[0]
        y = d.normalize(w.word[1:])
        cur = _bs_times(s, h[y], d)
        # subtract mu(z, y) b_z for z < y with sz < z, longest first
        for z in sorted(h[y], key=lambda x: (-x.length, x.word)):
            if z == y or d.mul(d.simple(s), z).length > z.length:
                continue
            mu = h[y][z][1]
            if mu:
                for x, c in h[z].items():
                    q = cur.get(x, ZERO) - c * mu
                    if q:
                        cur[x] = q
                    else:
                        cur.pop(x, None)
        h[w] = cur
    table = KLTable(d, h)
    _TABLES[id(d)] = table
    return table


def canonical_element(table: KLTable, w: WeylElt) -> dict[WeylElt, LaurentPoly]:
    """``b_w`` in the ``H``-basis (internal normalization)."""
    return dict(table.h[w])
