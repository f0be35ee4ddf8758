"""Generalized Cartan matrices, Kac-Moody root data and Weyl group elements.

Conventions
-----------
``a[i][j] = <alpha_j, alpha_i^vee>`` (row = coroot side), and the simple
reflection ``s_j`` acts on the cocharacter lattice by
``lam -> lam - <alpha_j, lam> alpha_j^vee``.  With the rank-4 example matrix
this gives ``s_2(alpha_3^vee) = alpha_3^vee + 3 alpha_2^vee`` (0-based indices).

Weyl group elements are identified by their action on the abstract root
lattice ``Q = sum Z alpha_i``; that action is faithful for every GCM, so no
datum ever has to be rejected for a degenerate lattice.  Roots and coroots
are carried in simple-root / simple-coroot coordinates, which makes the sign
of a real root readable regardless of the chosen lattices.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    InfiniteGroup,
    InputError,
    InvalidGCM,
    NotAReflection,
    PairingMismatch,
    ParseError,
    SingularAdjoint,
)

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def _det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant (Bareiss fraction-free elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class GCM:
    entries: Matrix

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise InvalidGCM(f"row {i} has length {len(r)}, expected {n}")
            if r[i] != 2:
                raise InvalidGCM(f"diagonal entry a[{i}][{i}] = {r[i]} != 2")
            for j in range(n):
                if i == j:
                    continue
                if r[j] > 0:
                    raise InvalidGCM(f"off-diagonal entry a[{i}][{j}] = {r[j]} > 0")
                if (r[j] == 0) != (rows[j][i] == 0):
                    raise InvalidGCM(f"a[{i}][{j}] and a[{j}][{i}] must vanish together")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, J: Iterable[int]) -> "GCM":
        J = sorted(J)
        return GCM(tuple(tuple(self.entries[i][j] for j in J) for i in J))

    def det(self) -> int:
        return _det(self.entries)

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for start in range(self.n):
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(self.n):
                    if j not in seen and self.entries[i][j] != 0:
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    def classify(self) -> str:
        """``"finite"``, ``"affine"`` or ``"indefinite"`` by principal minors of each component."""
        if self.n == 0:
            return "finite"
        kinds = [self._classify_indecomposable(c) for c in self.components()]
        if all(k == "finite" for k in kinds):
            return "finite"
        if all(k in ("finite", "affine") for k in kinds):
            return "affine"
        return "indefinite"

    def _classify_indecomposable(self, comp: list[int]) -> str:
        k = len(comp)
        proper_positive = all(
            _det([[self.entries[i][j] for j in S] for i in S]) > 0
            for size in range(1, k)
            for S in combinations(comp, size)
        )
        full = _det([[self.entries[i][j] for j in comp] for i in comp])
        if proper_positive and full > 0:
            return "finite"
        if proper_positive and full == 0:
            return "affine"
        return "indefinite"

    def coxeter_order(self, i: int, j: int) -> int | None:
        """Order of ``s_i s_j``; ``None`` for infinite order."""
        if i == j:
            return 1
        p = self.entries[i][j] * self.entries[j][i]
        return {0: 2, 1: 3, 2: 4, 3: 6}.get(p)

    def coxeter_matrix(self) -> tuple[tuple[int | None, ...], ...]:
        return tuple(tuple(self.coxeter_order(i, j) for j in range(self.n)) for i in range(self.n))


def gcm_from_coxeter(m: Sequence[Sequence[int | None]]) -> GCM:
    """A crystallographic GCM realizing a Coxeter matrix (entries 2, 3, 4, 6 or None)."""
    n = len(m)
    table = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3), None: (-2, -2)}
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] not in table:
                raise InvalidGCM(f"Coxeter entry {m[i][j]} is not crystallographic")
            a[i][j], a[j][i] = table[m[i][j]]
    return GCM(tuple(map(tuple, a)))


# ---------------------------------------------------------------------------


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def _mat_vec(m: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _sign(vec: Vector) -> int:
    if any(x > 0 for x in vec):
        return 1
    if any(x < 0 for x in vec):
        return -1
    return 0


class RootDatum:
    """A Kac-Moody root datum: a GCM with simple roots in ``X = Z^r`` and coroots in ``X_* = Z^r``."""

    def __init__(self, gcm: GCM, simple_roots, simple_coroots, name: str | None = None,
                 lattice: str = "explicit"):
        self.gcm = gcm
        self.simple_roots: tuple[Vector, ...] = tuple(tuple(int(x) for x in r) for r in simple_roots)
        self.simple_coroots: tuple[Vector, ...] = tuple(tuple(int(x) for x in c) for c in simple_coroots)
        self.name = name
        self.lattice = lattice
        n = gcm.n
        if len(self.simple_roots) != n or len(self.simple_coroots) != n:
            raise DimensionMismatch(f"expected {n} simple roots and coroots")
        dims = {len(v) for v in self.simple_roots + self.simple_coroots}
        if len(dims) > 1:
            raise DimensionMismatch(f"root/coroot vectors have mixed lengths {sorted(dims)}")
        self.r = dims.pop() if dims else 0
        for i in range(n):
            for j in range(n):
                got = pairing(self.simple_roots[j], self.simple_coroots[i])
                if got != gcm[i, j]:
                    raise PairingMismatch(
                        f"<alpha_{j}, alpha_{i}^vee> = {got} but a[{i}][{j}] = {gcm[i, j]}")
        self.kind = gcm.classify()
        a = gcm.entries
        # root-lattice reflections: s_i(alpha_j) = alpha_j - a[i][j] alpha_i
        self._rrefl = [
            tuple(tuple((1 if p == q else 0) - (a[i][q] if p == i else 0) for q in range(n))
                  for p in range(n))
            for i in range(n)
        ]
        # coroot-lattice reflections: s_i(alpha_j^vee) = alpha_j^vee - a[j][i] alpha_i^vee
        self._crefl = [
            tuple(tuple((1 if p == q else 0) - (a[q][i] if p == i else 0) for q in range(n))
                  for p in range(n))
            for i in range(n)
        ]
        # cocharacter-lattice reflections: lam -> lam - <alpha_i, lam> alpha_i^vee
        self._xrefl = [
            tuple(tuple((1 if p == q else 0) - self.simple_coroots[i][p] * self.simple_roots[i][q]
                        for q in range(self.r)) for p in range(self.r))
            for i in range(n)
        ]
        self._elt_cache: dict[tuple[int, ...], WeylElt] = {}
        self._mul_cache: dict[tuple, WeylElt] = {}
        self._xmat_cache: dict[Matrix, Matrix] = {}
        self._elements: list[WeylElt] | None = None
        self._roots: dict[int | None, list[RealRoot]] = {}
        self.identity = self.element(())

    # -- basics ----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.gcm.n

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __repr__(self) -> str:
        label = self.name or "RootDatum"
        return f"<{label}: n={self.n}, r={self.r}, {self.kind}>"

    def simple(self, i: int) -> "WeylElt":
        return self.element((i,))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "gcm": [list(r) for r in self.gcm.entries],
            "lattice": {"roots": [list(v) for v in self.simple_roots],
                        "coroots": [list(v) for v in self.simple_coroots]},
        }

    # -- element construction -------------------------------------------

    def _root_matrix(self, word: Sequence[int]) -> Matrix:
        n = self.n
        m = [list(r) for r in _identity(n)]
        a = self.gcm.entries
        # right-multiply by each R_s: M R_s = M - col_s(M) (x) row_s(A)
        for s in word:
            col = [m[p][s] for p in range(n)]
            row = a[s]
            for p in range(n):
                c = col[p]
                if c:
                    mp = m[p]
                    for q in range(n):
                        if row[q]:
                            mp[q] -= c * row[q]
        return tuple(tuple(r) for r in m)

    def normalize(self, word: Sequence[int]) -> "WeylElt":
        """ShortLex-minimal reduced word for the product of ``word``."""
        word = tuple(int(s) for s in word)
        for s in word:
            if not 0 <= s < self.n:
                raise InputError(f"simple index {s} out of range for rank {self.n}")
        cached = self._elt_cache.get(word)
        if cached is not None:
            return cached
        n = self.n
        a = self.gcm.entries
        # matrix of w^{-1} on Q; columns are w^{-1}(alpha_s)
        m = [list(r) for r in self._root_matrix(tuple(reversed(word)))]
        out = []
        while True:
            for s in range(n):
                if any(m[p][s] < 0 for p in range(n)):
                    break
            else:
                break
            out.append(s)
            col = [m[p][s] for p in range(n)]
            row = a[s]
            for p in range(n):
                c = col[p]
                if c:
                    for q in range(n):
                        if row[q]:
                            m[p][q] -= c * row[q]
        out_t = tuple(out)
        elt = self._elt_cache.get(out_t)
        if elt is None:
            elt = WeylElt(self, out_t, self._root_matrix(out_t))
            self._elt_cache[out_t] = elt
        self._elt_cache[word] = elt
        return elt

    element = normalize

    def mul(self, x: "WeylElt", y: "WeylElt") -> "WeylElt":
        key = (x.word, y.word)
        z = self._mul_cache.get(key)
        if z is None:
            z = self.normalize(x.word + y.word)
            self._mul_cache[key] = z
        return z

    def lattice_matrix(self, w: "WeylElt") -> Matrix:
        """Matrix of ``w`` acting on ``X_*``."""
        m = self._xmat_cache.get(w.key)
        if m is None:
            m = _identity(self.r)
            for s in w.word:
                m = _mat_mul(m, self._xrefl[s])
            self._xmat_cache[w.key] = m
        return m

    # -- enumeration -----------------------------------------------------

    def enumerate(self, length_bound: int | None = None) -> list["WeylElt"]:
        """All elements of length <= bound, by length then ShortLex word."""
        if length_bound is None:
            if not self.is_finite:
                raise InfiniteGroup(f"{self!r} is {self.kind}; give a length bound")
            if self._elements is not None:
                return list(self._elements)
        found = {self.identity.key: self.identity}
        level = [self.identity]
        length = 0
        while level and (length_bound is None or length < length_bound):
            nxt = {}
            for w in level:
                for s in range(self.n):
                    if w.has_right_descent(s):
                        continue
                    ws = self.mul(w, self.simple(s))
                    if ws.key not in found:
                        found[ws.key] = ws
                        nxt[ws.key] = ws
            level = list(nxt.values())
            length += 1
        out = sorted(found.values(), key=lambda w: (w.length, w.word))
        if length_bound is None:
            self._elements = out
        return list(out)

    def elements(self) -> list["WeylElt"]:
        return self.enumerate(None)

    def longest_element(self) -> "WeylElt":
        return self.elements()[-1]

    def positive_roots(self, bound: int | None = None) -> list["RealRoot"]:
        """Positive real roots; ``bound`` caps the number of simple reflections applied."""
        if bound is None and not self.is_finite:
            raise InfiniteGroup(f"{self!r} is {self.kind}; give a root bound")
        if bound in self._roots:
            return list(self._roots[bound])
        n = self.n
        out: dict[Vector, RealRoot] = {}
        level = []
        for s in range(n):
            rt = RealRoot.simple(self, s)
            out[rt.root] = rt
            level.append(rt)
        depth = 0
        while level and (bound is None or depth < bound):
            nxt = []
            for rt in level:
                for s in range(n):
                    image = rt.reflect(s)
                    if image.positive and image.root not in out:
                        out[image.root] = image
                        nxt.append(image)
            level = nxt
            depth += 1
        roots = sorted(out.values(), key=lambda r: (sum(r.root), r.root))
        self._roots[bound] = roots
        return list(roots)

    def real_roots(self, bound: int | None = None) -> list["RealRoot"]:
        pos = self.positive_roots(bound)
        return pos + [r.negate() for r in pos]

    # -- pairings --------------------------------------------------------

    def root_vector(self, coords: Sequence[int]) -> Vector:
        return tuple(sum(c * v[k] for c, v in zip(coords, self.simple_roots)) for k in range(self.r))

    def coroot_vector(self, coords: Sequence[int]) -> Vector:
        return tuple(sum(c * v[k] for c, v in zip(coords, self.simple_coroots)) for k in range(self.r))

    def root_coroot_pairing(self, root: Sequence[int], coroot: Sequence[int]) -> int:
        """``<root, coroot>`` for vectors in simple-root / simple-coroot coordinates."""
        a = self.gcm.entries
        return sum(coroot[i] * a[i][j] * root[j]
                   for i in range(self.n) for j in range(self.n) if coroot[i] and root[j])


def pairing(mu: Sequence[int], lam: Sequence[int]) -> int:
    if len(mu) != len(lam):
        raise DimensionMismatch(f"cannot pair vectors of lengths {len(mu)} and {len(lam)}")
    return sum(x * y for x, y in zip(mu, lam))


@dataclass(frozen=True, eq=False)
class WeylElt:
    datum: RootDatum = field(repr=False)
    word: tuple[int, ...]
    key: Matrix = field(repr=False)

    def __eq__(self, other):
        return (isinstance(other, WeylElt) and self.datum is other.datum
                and self.key == other.key)

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other: "WeylElt"):
        return (self.length, self.word) < (other.length, other.word)

    def __str__(self):
        return "e" if not self.word else "s" + ".s".join(map(str, self.word))

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self):
        return len(self.word)

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return self.datum.mul(self, other)

    def inverse(self) -> "WeylElt":
        return self.datum.normalize(tuple(reversed(self.word)))

    def is_identity(self) -> bool:
        return not self.word

    @property
    def matrix(self) -> Matrix:
        """Action on ``X_*``."""
        return self.datum.lattice_matrix(self)

    def apply(self, lam: Sequence[int]) -> Vector:
        if len(lam) != self.datum.r:
            raise DimensionMismatch(f"vector of length {len(lam)} in a rank-{self.datum.r} lattice")
        return _mat_vec(self.matrix, lam)

    def apply_root(self, coords: Sequence[int]) -> Vector:
        return _mat_vec(self.key, coords)

    def apply_coroot(self, coords: Sequence[int]) -> Vector:
        v = tuple(coords)
        for s in reversed(self.word):
            v = _mat_vec(self.datum._crefl[s], v)
        return v

    def has_right_descent(self, s: int) -> bool:
        """``l(ws) < l(w)``, i.e. ``w(alpha_s) < 0``."""
        return any(row[s] < 0 for row in self.key)

    def has_left_descent(self, s: int) -> bool:
        return bool(self.word) and self.inverse().has_right_descent(s)

    def sends_negative(self, root: Sequence[int]) -> bool:
        return _sign(self.apply_root(root)) < 0

    def inversions(self) -> list["RealRoot"]:
        """Positive roots made negative by ``w``, from the reduced word (rightmost letter first)."""
        d = self.datum
        out = []
        word = self.word
        k = len(word)
        for j in range(k - 1, -1, -1):
            suffix = word[j + 1:][::-1]  # s_k ... s_{j+1}, acting right to left
            rt = RealRoot.simple(d, word[j])
            for s in reversed(suffix):
                rt = rt.reflect(s)
            out.append(rt)
        return out

    def bruhat_leq(self, other: "WeylElt") -> bool:
        return bruhat_leq(self, other)

    def reflection_root(self) -> "RealRoot":
        """The positive root ``alpha`` with ``w = r_alpha``; raises NotAReflection."""
        if len(self.word) % 2 == 0:
            raise NotAReflection(f"{self} has even length")
        for rt in self.inversions():
            if rt.reflection() == self:
                return rt
        raise NotAReflection(f"{self} is not a reflection")

    def is_reflection(self) -> bool:
        try:
            self.reflection_root()
        except NotAReflection:
            return False
        return True


_BRUHAT_CACHE: dict[tuple, bool] = {}


def bruhat_leq(x: WeylElt, y: WeylElt) -> bool:
    """Bruhat order by the lifting property, which is equivalent to the subword criterion."""
    if x.datum is not y.datum:
        raise InputError("elements belong to different root data")
    if x.length > y.length:
        return False
    if x == y or x.is_identity():
        return True
    if x.length == y.length:
        return False
    key = (id(x.datum), x.word, y.word)
    hit = _BRUHAT_CACHE.get(key)
    if hit is not None:
        return hit
    d = x.datum
    s = y.word[0]
    sy = d.normalize(y.word[1:])
    if x.word and (x.word[0] == s or x.has_left_descent(s)):
        res = bruhat_leq(d.mul(d.simple(s), x), sy)
    else:
        res = bruhat_leq(x, sy)
    _BRUHAT_CACHE[key] = res
    return res


@dataclass(frozen=True)
class RealRoot:
    """A real root with its coroot, both in simple coordinates, and a witness ``(word, s)``
    such that ``root = word . alpha_s``."""

    datum: RootDatum = field(repr=False, compare=False)
    root: Vector
    coroot: Vector
    witness: tuple[tuple[int, ...], int] = field(compare=False)

    @classmethod
    def simple(cls, datum: RootDatum, s: int) -> "RealRoot":
        e = tuple(1 if i == s else 0 for i in range(datum.n))
        return cls(datum, e, e, ((), s))

    @property
    def positive(self) -> bool:
        return _sign(self.root) > 0

    def negate(self) -> "RealRoot":
        word, s = self.witness
        return RealRoot(self.datum, tuple(-x for x in self.root), tuple(-x for x in self.coroot),
                        (word + (s,), s))

    def reflect(self, s: int) -> "RealRoot":
        d = self.datum
        word, t = self.witness
        return RealRoot(d, _mat_vec(d._rrefl[s], self.root), _mat_vec(d._crefl[s], self.coroot),
                        ((s,) + word, t))

    def apply(self, w: WeylElt) -> "RealRoot":
        rt = self
        for s in reversed(w.word):
            rt = rt.reflect(s)
        return rt

    @property
    def root_vector(self) -> Vector:
        return self.datum.root_vector(self.root)

    @property
    def coroot_vector(self) -> Vector:
        return self.datum.coroot_vector(self.coroot)

    def reflection(self) -> WeylElt:
        word, s = self.witness
        return self.datum.normalize(word + (s,) + tuple(reversed(word)))

    def positive_form(self) -> "RealRoot":
        return self if self.positive else self.negate()


# ---------------------------------------------------------------------------
# construction


def _enlargement(a: Matrix) -> list[list[int]]:
    """Extra columns (unit vectors) appended to the rows of ``a`` until they are independent."""
    n = len(a)
    rows = [list(r) for r in a]
    extra: list[list[int]] = [[] for _ in range(n)]
    rank = _rank(rows)
    for i in range(n):
        if rank == n:
            break
        trial = [r + e + [1 if p == i else 0] for p, (r, e) in enumerate(zip(rows, extra))]
        new_rank = _rank(trial)
        if new_rank > rank:
            for p in range(n):
                extra[p].append(1 if p == i else 0)
            rank = new_rank
    return extra


def build_root_datum(gcm: GCM | Sequence[Sequence[int]], lattice="sc", name: str | None = None) -> RootDatum:
    """Realize ``gcm`` on a lattice.

    ``lattice`` is ``"sc"`` (coroots are the standard basis), ``"ad"`` (roots are
    the standard basis; needs an invertible GCM), ``"ad-ext"`` (adjoint with the
    lattice enlarged by unit columns when the GCM is singular), or a mapping with
    explicit ``roots`` and ``coroots``.
    """
    if not isinstance(gcm, GCM):
        gcm = GCM(tuple(tuple(r) for r in gcm))
    n = gcm.n
    a = gcm.entries
    if lattice == "sc":
        coroots = [[1 if i == k else 0 for k in range(n)] for i in range(n)]
        roots = [[a[k][j] for k in range(n)] for j in range(n)]
        return RootDatum(gcm, roots, coroots, name, "sc")
    if lattice in ("ad", "ad-ext"):
        extra: list[list[int]] = [[] for _ in range(n)]
        if gcm.det() == 0:
            if lattice == "ad":
                raise SingularAdjoint("adjoint lattice needs an invertible GCM; use 'ad-ext'")
            extra = _enlargement(a)
        r = n + len(extra[0]) if n else 0
        roots = [[1 if k == j else 0 for k in range(r)] for j in range(n)]
        coroots = [list(a[i]) + extra[i] for i in range(n)]
        return RootDatum(gcm, roots, coroots, name, lattice)
    if isinstance(lattice, dict):
        try:
            roots, coroots = lattice["roots"], lattice["coroots"]
        except KeyError as exc:
            raise InputError(f"explicit lattice is missing {exc}") from None
        return RootDatum(gcm, roots, coroots, name, "explicit")
    raise InputError(f"unknown lattice spec {lattice!r}")


def _type_a(n):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


NAMED = {
    "A1": ([[2]], "sc"),
    "A2": (_type_a(2), "sc"),
    "A3": (_type_a(3), "sc"),
    "B2": ([[2, -1], [-2, 2]], "sc"),
    "B3": ([[2, -1, 0], [-1, 2, -1], [0, -2, 2]], "sc"),
    "C3": ([[2, -1, 0], [-1, 2, -2], [0, -1, 2]], "sc"),
    "G2": ([[2, -1], [-3, 2]], "sc"),
    "SL2": ([[2]], "sc"),
    "PGL2": ([[2]], "ad"),
    "A1~": ([[2, -2], [-2, 2]], "ad-ext"),
    "A2~": ([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], "ad-ext"),
    "rank4-indefinite": ([[2, -2, -2, -2], [-2, 2, -2, -2], [-2, -2, 2, -2], [-2, -2, -3, 2]], "sc"),
}

ALIASES = {"paper-example-3.11": "rank4-indefinite"}

_NAMED_CACHE: dict[str, RootDatum] = {}


def named_datum(name: str) -> RootDatum:
    name = ALIASES.get(name, name)
    if name not in NAMED:
        raise InputError(f"unknown datum {name!r}; known: {', '.join(sorted(NAMED))}")
    d = _NAMED_CACHE.get(name)
    if d is None:
        gcm, lattice = NAMED[name]
        d = build_root_datum(gcm, lattice, name)
        _NAMED_CACHE[name] = d
    return d


def datum_from_json(doc: dict, name: str | None = None) -> RootDatum:
    if not isinstance(doc, dict) or "gcm" not in doc:
        raise InputError("root datum document needs a 'gcm' field")
    lattice = doc.get("lattice", "sc")
    if lattice not in ("sc", "ad", "ad-ext") and not isinstance(lattice, dict):
        raise InputError(f"lattice must be 'sc', 'ad', 'ad-ext' or an object, not {lattice!r}")
    try:
        gcm = GCM(tuple(tuple(r) for r in doc["gcm"]))
    except TypeError as exc:
        raise InputError(f"malformed gcm: {exc}") from None
    return build_root_datum(gcm, lattice, doc.get("name", name))


def load_datum(source: str) -> RootDatum:
    """A built-in name or a path to a JSON datum file."""
    if source in NAMED or source in ALIASES:
        return named_datum(source)
    path = Path(source)
    if not path.exists():
        raise InputError(f"{source!r} is neither a built-in datum nor a file")
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {source}: {exc.msg}", exc.lineno, exc.colno) from None
    return datum_from_json(doc, name=path.stem)


def apply(w: WeylElt, lam: Sequence[int]) -> Vector:
    return w.apply(lam)


def normalize(datum: RootDatum, word: Sequence[int]) -> WeylElt:
    return datum.normalize(word)


def inversions(w: WeylElt) -> list[RealRoot]:
    return w.inversions()


def enumerate_elements(datum: RootDatum, length_bound: int | None = None) -> list[WeylElt]:
    return datum.enumerate(length_bound)
