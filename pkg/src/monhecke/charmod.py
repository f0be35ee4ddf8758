"""Rank-one multiplicative local systems as homomorphisms ``X_* -> A``.

``A`` is a finitely generated abelian group ``Z/m_1 x ... x Z/m_k x Z^f`` standing
in for the unit group of the coefficient ring.  A character is stored by the
images of the standard basis of ``X_*``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    GroupMismatch,
    InfiniteOrbit,
    InputError,
    NonFiniteParabolic,
    OrbitTruncated,
    ParseError,
)
from .rootdatum import RealRoot, RootDatum, WeylElt

Elem = tuple[int, ...]


@dataclass(frozen=True)
class AbGroup:
    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(m) for m in self.torsion))
        if any(m < 2 for m in self.torsion):
            raise InputError(f"invariant factors must be >= 2, got {self.torsion}")
        if self.free_rank < 0:
            raise InputError("free rank must be non-negative")

    @classmethod
    def cyclic(cls, m: int) -> "AbGroup":
        return cls((m,), 0)

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        if not self.is_finite:
            return None
        out = 1
        for m in self.torsion:
            out *= m
        return out

    def reduce(self, x: Sequence[int]) -> Elem:
        if len(x) != self.ngens:
            raise DimensionMismatch(f"element {tuple(x)} does not belong to {self}")
        k = len(self.torsion)
        return tuple(int(a) % m for a, m in zip(x[:k], self.torsion)) + tuple(int(a) for a in x[k:])

    def zero(self) -> Elem:
        return (0,) * self.ngens

    def add(self, x: Elem, y: Elem) -> Elem:
        return self.reduce([a + b for a, b in zip(x, y)])

    def scale(self, c: int, x: Elem) -> Elem:
        return self.reduce([c * a for a in x])

    def elements(self) -> list[Elem]:
        if not self.is_finite:
            raise InputError(f"{self} is infinite")
        out = [()]
        for m in self.torsion:
            out = [e + (a,) for e in out for a in range(m)]
        return out

    def __str__(self):
        parts = [f"Z/{m}" for m in self.torsion]
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return "x".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "AbGroup":
        torsion, free = [], 0
        text = text.strip()
        if text in ("0", ""):
            return cls()
        for part in text.split("x"):
            part = part.strip()
            m = re.fullmatch(r"Z/(\d+)", part)
            if m:
                torsion.append(int(m.group(1)))
                continue
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                free += int(m.group(1) or 1)
                continue
            raise InputError(f"cannot parse group factor {part!r}")
        return cls(tuple(torsion), free)


class MultLocalSystem:
    """A character ``X_* -> target`` given by the images of the standard basis."""

    __slots__ = ("datum", "target", "values", "_hash")

    def __init__(self, datum: RootDatum, target: AbGroup, values: Iterable[Sequence[int]]):
        vals = tuple(target.reduce(v) for v in values)
        if len(vals) != datum.r:
            raise DimensionMismatch(f"need {datum.r} values for a rank-{datum.r} lattice, got {len(vals)}")
        self.datum = datum
        self.target = target
        self.values = vals
        self._hash = hash((target, vals))

    @classmethod
    def trivial(cls, datum: RootDatum, target: AbGroup | None = None) -> "MultLocalSystem":
        target = target or AbGroup()
        return cls(datum, target, [target.zero()] * datum.r)

    @classmethod
    def cyclic(cls, datum: RootDatum, m: int, values: Sequence[int]) -> "MultLocalSystem":
        return cls(datum, AbGroup.cyclic(m), [(x,) for x in values])

    def __eq__(self, other):
        return (isinstance(other, MultLocalSystem) and self.datum is other.datum
                and self.target == other.target and self.values == other.values)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.values < other.values

    def __repr__(self):
        return f"MultLocalSystem({self.target}: {self.label()})"

    def label(self) -> str:
        if len(self.target.torsion) + self.target.free_rank == 1:
            return ",".join(str(v[0]) for v in self.values)
        return ",".join("(" + ",".join(map(str, v)) + ")" for v in self.values)

    def to_json(self) -> dict:
        return {"target": str(self.target), "values": [list(v) for v in self.values]}

    def evaluate(self, lam: Sequence[int]) -> Elem:
        if len(lam) != self.datum.r:
            raise DimensionMismatch(f"cocharacter of length {len(lam)} in a rank-{self.datum.r} lattice")
        acc = [0] * self.target.ngens
        for c, val in zip(lam, self.values):
            if c:
                for k, a in enumerate(val):
                    acc[k] += c * a
        return self.target.reduce(acc)

    def kills(self, coroot: Sequence[int]) -> bool:
        """Whether the coroot, given in simple-coroot coordinates, lies in the kernel."""
        return not any(self.evaluate(self.datum.coroot_vector(coroot)))

    def kills_simple(self, s: int) -> bool:
        """``s`` lies in the endoscopic group of this character (its coroot is killed)."""
        return not any(self.evaluate(self.datum.simple_coroots[s]))

    def is_trivial(self) -> bool:
        return all(not any(v) for v in self.values)


def evaluate(L: MultLocalSystem, lam: Sequence[int]) -> Elem:
    return L.evaluate(lam)


_ACT_CACHE: dict[tuple, MultLocalSystem] = {}


def act(w: WeylElt, L: MultLocalSystem) -> MultLocalSystem:
    """``(w.L)(lam) = L(w^{-1} lam)``."""
    if w.datum is not L.datum:
        raise InputError("element and character live on different root data")
    if w.is_identity():
        return L
    key = (w.key, L)
    hit = _ACT_CACHE.get(key)
    if hit is not None and hit.datum is L.datum:
        return hit
    m = w.inverse().matrix
    r = L.datum.r
    # column k of m is w^{-1}(e_k)
    vals = [L.evaluate([m[j][k] for j in range(r)]) for k in range(r)]
    out = MultLocalSystem(L.datum, L.target, vals)
    _ACT_CACHE[key] = out
    return out


def stabilizes(w: WeylElt, L: MultLocalSystem) -> bool:
    return act(w, L) == L


def orbit(L: MultLocalSystem, bound: int | None = None) -> list[MultLocalSystem]:
    """The W-orbit by breadth-first closure under simple reflections.

    Characters into a finite group always have finite orbits; for a target with
    free part a ``bound`` on the number of elements is required.
    """
    if bound is None and not L.target.is_finite:
        raise InfiniteOrbit("characters with a free target need an orbit bound")
    d = L.datum
    seen = {L}
    out = [L]
    queue = deque([L])
    while queue:
        cur = queue.popleft()
        for s in range(d.n):
            nxt = act(d.simple(s), cur)
            if nxt not in seen:
                if bound is not None and len(out) >= bound:
                    raise OrbitTruncated(out, bound)
                seen.add(nxt)
                out.append(nxt)
                queue.append(nxt)
    return out


def endoscopic_coroots(L: MultLocalSystem, bound: int | None = None) -> list[RealRoot]:
    """Real roots (with coroots) whose coroot is killed by ``L``: positive ones first."""
    pos = [rt for rt in L.datum.positive_roots(bound) if L.kills(rt.coroot)]
    return pos + [rt.negate() for rt in pos]


def can_extend_to_levi(L: MultLocalSystem, J: Iterable[int]) -> bool:
    J = sorted(set(J))
    if any(not 0 <= j < L.datum.n for j in J):
        raise InputError(f"index set {J} out of range")
    if L.datum.gcm.submatrix(J).classify() != "finite":
        raise NonFiniteParabolic(f"J = {J} is not of finite type")
    return all(L.kills_simple(j) for j in J)


# ---------------------------------------------------------------------------
# coefficient homomorphisms


def _integer_left_kernel(rows: list[list[int]]) -> list[list[int]]:
    """A Z-basis of ``{x : x . rows = 0}`` via unimodular row reduction."""
    n = len(rows)
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    pivot_row = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(pivot_row, n) if aug[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(aug[i][c]))
            aug[pivot_row], aug[p] = aug[p], aug[pivot_row]
            done = True
            for i in range(pivot_row + 1, n):
                if aug[i][c]:
                    q = aug[i][c] // aug[pivot_row][c]
                    aug[i] = [a - q * b for a, b in zip(aug[i], aug[pivot_row])]
                    if aug[i][c]:
                        done = False
            if done:
                pivot_row += 1
                break
        if pivot_row == n:
            break
    return [row[ncols:] for row in aug if not any(row[:ncols])]


@dataclass(frozen=True)
class CoeffHom:
    """A homomorphism of abelian groups given by the images of the generators of ``source``."""

    source: AbGroup
    dest: AbGroup
    images: tuple[Elem, ...]

    def __post_init__(self):
        imgs = tuple(self.dest.reduce(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != self.source.ngens:
            raise DimensionMismatch(f"{self.source} has {self.source.ngens} generators, got {len(imgs)} images")
        for m, img in zip(self.source.torsion, imgs):
            if any(self.dest.scale(m, img)):
                raise InputError(f"image {img} of an order-{m} generator is not {m}-torsion in {self.dest}")

    @classmethod
    def identity(cls, group: AbGroup) -> "CoeffHom":
        n = group.ngens
        return cls(group, group, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def __call__(self, x: Sequence[int]) -> Elem:
        x = self.source.reduce(x)
        acc = [0] * self.dest.ngens
        for c, img in zip(x, self.images):
            for k, a in enumerate(img):
                acc[k] += c * a
        return self.dest.reduce(acc)

    def compose(self, first: "CoeffHom") -> "CoeffHom":
        """``self o first``."""
        if first.dest != self.source:
            raise GroupMismatch(f"cannot compose {first.dest} -> ... with {self.source} -> ...")
        return CoeffHom(first.source, self.dest, tuple(self(img) for img in first.images))

    @property
    def injective(self) -> bool:
        k = len(self.source.torsion)
        kd = len(self.dest.torsion)
        # x in Z^{gens}, y in Z^{dest torsion}: sum x_i img_i + sum y_j n_j e_j = 0 in Z^{dest gens}
        rows = [list(img) for img in self.images]
        for j, nj in enumerate(self.dest.torsion):
            rows.append([nj if c == j else 0 for c in range(self.dest.ngens)])
        if not rows or self.dest.ngens == 0:
            basis = [[1 if i == j else 0 for j in range(len(rows))] for i in range(len(rows))]
        else:
            basis = _integer_left_kernel(rows)
        for vec in basis:
            x = vec[: self.source.ngens]
            if any(a % m for a, m in zip(x[:k], self.source.torsion)) or any(x[k:]):
                return False
        del kd
        return True

    def is_identity(self) -> bool:
        return self.source == self.dest and self == CoeffHom.identity(self.source)


def change_coefficients(L: MultLocalSystem, h: CoeffHom) -> MultLocalSystem:
    if h.source != L.target:
        raise GroupMismatch(f"homomorphism starts at {h.source}, character lands in {L.target}")
    return MultLocalSystem(L.datum, h.dest, [h(v) for v in L.values])


def lift_character(L: MultLocalSystem, surjection: CoeffHom, section: CoeffHom) -> MultLocalSystem:
    """Lift ``L`` along a split surjection ``A' -> A`` using the splitting ``A -> A'``."""
    if surjection.compose(section) != CoeffHom.identity(L.target):
        raise InputError("section does not split the surjection")
    lifted = change_coefficients(L, section)
    assert change_coefficients(lifted, surjection) == L
    return lifted


# ---------------------------------------------------------------------------
# character spec strings


def _parse_tuple_list(body: str, width: int) -> list[tuple[int, ...]]:
    body = body.strip()
    if width == 1 and "(" not in body:
        items = [b.strip() for b in body.split(",")] if body else []
        try:
            return [(int(b),) for b in items]
        except ValueError:
            raise ParseError(f"cannot parse character values {body!r}") from None
    tuples = re.findall(r"\(([^()]*)\)", body)
    rest = re.sub(r"\(([^()]*)\)", "", body).replace(",", "").strip()
    if rest:
        raise ParseError(f"stray text {rest!r} in character values")
    out = []
    for t in tuples:
        try:
            out.append(tuple(int(x) for x in t.split(",")))
        except ValueError:
            raise ParseError(f"cannot parse tuple ({t})") from None
    return out


def parse_char(datum: RootDatum, spec: str | None, modulus: int | None = None) -> MultLocalSystem:
    """Parse ``"Z/2:1,0"``, ``"Z/2xZ/3:(1,0),(0,2)"``, ``"trivial"``; ``modulus`` allows bare values."""
    if spec is None or spec.strip() == "trivial":
        target = AbGroup.cyclic(modulus) if modulus else AbGroup()
        return MultLocalSystem.trivial(datum, target)
    if ":" in spec:
        group_txt, body = spec.split(":", 1)
        target = AbGroup.parse(group_txt)
    elif modulus:
        target, body = AbGroup.cyclic(modulus), spec
    else:
        raise ParseError(f"character {spec!r} needs a group prefix like 'Z/2:' or --modulus")
    vals = _parse_tuple_list(body, target.ngens)
    if len(vals) != datum.r:
        raise DimensionMismatch(f"character has {len(vals)} values, lattice rank is {datum.r}")
    if any(len(v) != target.ngens for v in vals):
        raise DimensionMismatch(f"values must have {target.ngens} components")
    return MultLocalSystem(datum, target, vals)


def all_characters(datum: RootDatum, m: int) -> list[MultLocalSystem]:
    """Every character ``X_* -> Z/m``."""
    group = AbGroup.cyclic(m)
    out = [()]
    for _ in range(datum.r):
        out = [e + (a,) for e in out for a in range(m)]
    return [MultLocalSystem(datum, group, [(a,) for a in vals]) for vals in out]
