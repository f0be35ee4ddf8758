"""On-disk KL tables.

Format::

    klcache v1 <coxeter hash> <body hash>
    <x word>\t<y word>\t<exp>:<coeff>,...

Words are dot-separated generator indices, ``e`` for the identity; the
polynomial is ``P_{x,y}`` written in ``v``.  The body hash guards against
edits; the Coxeter hash decides whether the table belongs to the group.
"""

from __future__ import annotations

import hashlib
import os
import re
from pathlib import Path

from .errors import CorruptCache
from .hecke.kl import KLTable, coxeter_hash, kl_table_for
from .laurent import LaurentPoly
from .rootdatum import RootDatum

HEADER_RE = re.compile(r"klcache v1 ([0-9a-f]+) ([0-9a-f]+)")


class StaleCache(Exception):
    """The file holds a table for a different Coxeter group."""


def default_cache_dir() -> Path | None:
    env = os.environ.get("MONHECKE_CACHE")
    return Path(env) if env else None


def _word(w) -> str:
    return ".".join(map(str, w.word)) if w.word else "e"


def _parse_word(text: str) -> tuple[int, ...]:
    if text == "e":
        return ()
    return tuple(int(x) for x in text.split("."))


def _body(table: KLTable) -> str:
    lines = []
    for y in table.elements():
        for x in table.elements():
            p = table.entries(x, y)
            if p:
                poly = ",".join(f"{e}:{c}" for e, c in p.terms)
                lines.append(f"{_word(x)}\t{_word(y)}\t{poly}")
    return "\n".join(lines) + "\n"


def write_table(table: KLTable, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = _body(table)
    digest = hashlib.sha256(body.encode()).hexdigest()[:16]
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(f"klcache v1 {table.coxeter_hash} {digest}\n{body}")
    tmp.replace(path)
    return path


def read_table(path: str | Path, datum: RootDatum) -> KLTable:
    """Load a table for ``datum``; raises StaleCache on a hash mismatch, CorruptCache on damage."""
    text = Path(path).read_text()
    header, _, body = text.partition("\n")
    m = HEADER_RE.fullmatch(header.strip())
    if not m:
        raise CorruptCache(f"{path}: bad header {header!r}")
    cox, digest = m.groups()
    if hashlib.sha256(body.encode()).hexdigest()[:16] != digest:
        raise CorruptCache(f"{path}: body hash mismatch")
    if cox != coxeter_hash(datum.gcm.coxeter_matrix()):
        raise StaleCache(f"{path}: table belongs to another Coxeter group")
    h: dict = {w: {} for w in datum.elements()}
    for lineno, line in enumerate(body.splitlines(), start=2):
        try:
            xs, ys, ps = line.split("\t")
            x, y = datum.normalize(_parse_word(xs)), datum.normalize(_parse_word(ys))
            terms = [tuple(int(a) for a in item.split(":")) for item in ps.split(",")]
            P = LaurentPoly(terms)
        except Exception as exc:
            raise CorruptCache(f"{path}:{lineno}: {exc}") from None
        h[y][x] = P.shift(x.length - y.length).bar()
    return KLTable(datum, h)


def load_or_compute(datum: RootDatum, cache_dir: str | Path | None = None,
                    label: str | None = None) -> tuple[KLTable, str]:
    """Returns the table and one of ``"computed"``, ``"hit"``, ``"stale"``."""
    cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
    if cache_dir is None:
        return kl_table_for(datum), "computed"
    path = cache_dir / f"kl-{label or datum.name or 'anon'}-{datum.n}.klcache"
    status = "computed"
    if path.exists():
        try:
            return read_table(path, datum), "hit"
        except StaleCache:
            status = "stale"
    table = kl_table_for(datum)
    write_table(table, path)
    return table, status
