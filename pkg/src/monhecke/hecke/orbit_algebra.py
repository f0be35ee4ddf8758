"""The monodromic Hecke algebra of a finite orbit, realized through the algebroid.

Basis: ``T_w 1_L`` for ``w in W`` and ``L`` in the orbit; the map
``T_w 1_L -> T_w^L`` identifies it with the sum of all morphism spaces.
"""

from __future__ import annotations

from typing import Sequence

from ..charmod import MultLocalSystem, act
from ..errors import InfiniteOrbit, InputError
from ..laurent import ONE, ZERO, LaurentPoly, v
from ..rootdatum import WeylElt
from . import algebroid as alg


class OrbitAlgebra:
    def __init__(self, orbit: Sequence[MultLocalSystem]):
        orbit = list(orbit)
        if not orbit:
            raise InputError("empty orbit")
        self.datum = orbit[0].datum
        self.orbit = orbit
        self.index = {L: i for i, L in enumerate(orbit)}
        for L in orbit:
            for s in range(self.datum.n):
                if act(self.datum.simple(s), L) not in self.index:
                    raise InfiniteOrbit("character list is not closed under W")

    def elt(self, terms) -> "OrbitAlgebraElt":
        return OrbitAlgebraElt(self, terms)

    def idem(self, L: MultLocalSystem) -> "OrbitAlgebraElt":
        return self.elt({(self.datum.identity, self.index[L]): ONE})

    def T(self, w: WeylElt) -> "OrbitAlgebraElt":
        return self.elt({(w, i): ONE for i in range(len(self.orbit))})

    def one(self) -> "OrbitAlgebraElt":
        return self.T(self.datum.identity)

    def zero(self) -> "OrbitAlgebraElt":
        return self.elt({})

    def phi(self, a: "OrbitAlgebraElt") -> dict[tuple[int, int], alg.AlgebroidElt]:
        """Split into algebroid morphisms keyed by ``(source index, target index)``."""
        out: dict[tuple[int, int], dict] = {}
        for (w, i), p in a.terms.items():
            L = self.orbit[i]
            j = self.index[act(w, L)]
            out.setdefault((i, j), {})[w] = p
        return {(i, j): alg.AlgebroidElt(self.orbit[i], self.orbit[j], t, check=False)
                for (i, j), t in out.items()}

    def phi_inverse(self, parts: Sequence[alg.AlgebroidElt]) -> "OrbitAlgebraElt":
        acc: dict = {}
        for A in parts:
            i = self.index[A.source]
            for w, p in A.terms.items():
                acc[(w, i)] = acc.get((w, i), ZERO) + p
        return self.elt(acc)

    def mul(self, a: "OrbitAlgebraElt", b: "OrbitAlgebraElt") -> "OrbitAlgebraElt":
        acc: dict = {}
        for (x, i), p in a.terms.items():
            Li = self.orbit[i]
            for (y, j), q in b.terms.items():
                Lj = self.orbit[j]
                if act(y, Lj) != Li:
                    continue
                pq = p * q
                for z, c in alg.basis_product(x, y, Lj).items():
                    acc[(z, j)] = acc.get((z, j), ZERO) + c * pq
        return self.elt(acc)

    def check_relations(self) -> list[dict]:
        """Verify the five defining relations; one record per relation."""
        d = self.datum
        elems = d.elements() if d.is_finite else d.enumerate(3)
        res = []

        def record(name, ok, witness=None):
            res.append({"id": name, "status": "pass" if ok else "fail", "witness": witness})

        bad = None
        for L in self.orbit:
            for L2 in self.orbit:
                lhs = self.idem(L) * self.idem(L2)
                rhs = self.idem(L) if L == L2 else self.zero()
                if lhs != rhs:
                    bad = bad or [L.label(), L2.label()]
        record("idempotents", bad is None, bad)

        bad = None
        for x in elems:
            for y in elems:
                xy = x * y
                if xy.length == x.length + y.length and self.T(x) * self.T(y) != self.T(xy):
                    bad = bad or [list(x.word), list(y.word)]
        record("length-additive", bad is None, bad)

        bad = None
        for x in elems:
            for L in self.orbit:
                if self.T(x) * self.idem(L) != self.idem(act(x, L)) * self.T(x):
                    bad = bad or [list(x.word), L.label()]
        record("equivariance", bad is None, bad)

        bad = None
        for s in range(d.n):
            ts = self.T(d.simple(s))
            rhs = self.T(d.identity).scale(v(2))
            for L in self.orbit:
                if L.kills_simple(s):
                    rhs = rhs + (ts * self.idem(L)).scale(v(2) - 1)
            if ts * ts != rhs:
                bad = bad or [s]
        record("quadratic", bad is None, bad)

        unit = self.zero()
        for L in self.orbit:
            unit = unit + self.idem(L)
        ok = unit == self.one() and all(self.one() * self.T(x) == self.T(x) == self.T(x) * self.one()
                                        for x in elems)
        record("unit", ok, None if ok else "unit")
        return res


class OrbitAlgebraElt:
    __slots__ = ("alg", "terms")

    def __init__(self, algebra: OrbitAlgebra, terms):
        self.alg = algebra
        self.terms = {k: LaurentPoly.coerce(p) for k, p in terms.items() if p}

    def __add__(self, other):
        acc = dict(self.terms)
        for k, p in other.terms.items():
            acc[k] = acc.get(k, ZERO) + p
        return OrbitAlgebraElt(self.alg, acc)

    def scale(self, c):
        c = LaurentPoly.coerce(c)
        return OrbitAlgebraElt(self.alg, {k: c * p for k, p in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, OrbitAlgebraElt):
            return self.alg.mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, OrbitAlgebraElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        parts = [f"({p})*T[{w}]1[{i}]" for (w, i), p in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1]))]
        return " + ".join(parts) or "0"


def orbit_algebra(orbit: Sequence[MultLocalSystem]) -> OrbitAlgebra:
    return OrbitAlgebra(orbit)
