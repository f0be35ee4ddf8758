"""Integer Laurent polynomials in one variable ``v``.

>>> p = LaurentPoly.parse("v^-1 + v")
>>> str(p * p)
'v^-2 + 2 + v^2'
>>> str(p.bar() - p)
'0'
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Union

from .errors import ParseError

Coercible = Union["LaurentPoly", int]

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+)?\s*\*?\s*
        (?P<var>v(?:\s*\^\s*(?P<exp>[+-]?\d+))?)?\s*""",
    re.VERBOSE,
)


class LaurentPoly:
    """An element of Z[v, v^-1], stored as sorted nonzero ``(exponent, coefficient)`` pairs."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            acc: dict[int, int] = {}
            for e, c in coeffs:
                acc[e] = acc.get(e, 0) + c
            items = acc.items()
        self._terms = tuple(sorted((int(e), int(c)) for e, c in items if c))
        self._hash = None

    @classmethod
    def _raw(cls, terms: tuple[tuple[int, int], ...]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> "LaurentPoly":
        return cls._raw(((exp, coef),) if coef else ())

    @classmethod
    def coerce(cls, x: Coercible) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.monomial(0, x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- accessors -------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def coeffs(self) -> dict[int, int]:
        return dict(self._terms)

    def __getitem__(self, exp: int) -> int:
        for e, c in self._terms:
            if e == exp:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[-1][0]

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: Coercible) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(tuple((e, -c) for e, c in self._terms))

    def __sub__(self, other: Coercible) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "LaurentPoly":
        return LaurentPoly.coerce(other) + (-self)

    def __mul__(self, other: Coercible) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly._raw(tuple((e, c * other) for e, c in self._terms))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1:
            (f, d), = b
            return LaurentPoly._raw(tuple((e + f, c * d) for e, c in a))
        if len(a) == 1:
            (e, c), = a
            return LaurentPoly._raw(tuple((e + f, c * d) for f, d in b))
        acc: dict[int, int] = {}
        for e, c in a:
            for f, d in b:
                acc[e + f] = acc.get(e + f, 0) + c * d
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial() or abs(self._terms[0][1]) != 1:
                raise ValueError("only units of Z[v, v^-1] have negative powers")
            (e, c), = self._terms
            return LaurentPoly.monomial(e * n, c ** (-n))
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        if k == 0:
            return self
        return LaurentPoly._raw(tuple((e + k, c) for e, c in self._terms))

    def bar(self) -> "LaurentPoly":
        """The ring involution ``v -> v^-1``."""
        return LaurentPoly._raw(tuple((-e, c) for e, c in reversed(self._terms)))

    def substitute_square(self) -> "LaurentPoly":
        """``p(v) -> p(v^2)``."""
        return LaurentPoly._raw(tuple((2 * e, c) for e, c in self._terms))

    def is_symmetric(self) -> bool:
        return self == self.bar()

    def has_nonneg_coeffs(self) -> bool:
        return all(c >= 0 for _, c in self._terms)

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == (((0, other),) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    # -- text ------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self._terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "v" if e == 1 else f"v^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the grammar produced by ``str``; ``*`` between coefficient and ``v`` is optional."""
        s = text.strip()
        if not s:
            raise ParseError("empty polynomial string", 1, 1)
        acc: dict[int, int] = {}
        pos = 0
        first = True
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if m is None or m.end() == pos:
                raise ParseError(f"cannot parse polynomial {text!r}", 1, pos + 1)
            sign, coef, var, exp = m.group("sign", "coef", "var", "exp")
            if sign is None and not first:
                raise ParseError(f"missing operator in {text!r}", 1, pos + 1)
            if coef is None and var is None:
                raise ParseError(f"dangling sign in {text!r}", 1, pos + 1)
            c = int(coef) if coef is not None else 1
            if sign == "-":
                c = -c
            e = 0
            if var is not None:
                e = int(exp) if exp is not None else 1
            acc[e] = acc.get(e, 0) + c
            pos = m.end()
            first = False
        return cls(acc)


ZERO = LaurentPoly._raw(())
ONE = LaurentPoly._raw(((0, 1),))
V = LaurentPoly._raw(((1, 1),))


def v(k: int = 1) -> LaurentPoly:
    """The monomial ``v**k``."""
    return LaurentPoly.monomial(k)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def bar(a: LaurentPoly) -> LaurentPoly:
    return a.bar()
