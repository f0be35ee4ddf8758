"""``monhecke`` command-line interface.

Exit codes: 0 success, 2 input error, 3 verification failure, 4 invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import hecke, verify
from .cache import default_cache_dir, load_or_compute
from .charmod import MultLocalSystem, orbit, parse_char
from .endoscopy import endo_datum, endosimple_generators
from .errors import InputError, InvariantBreach, MonHeckeError
from .rootdatum import RootDatum, load_datum

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_BREACH = 0, 2, 3, 4


def parse_word(text: str | None) -> tuple[int, ...]:
    if text is None:
        raise InputError("missing word")
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        return tuple(int(x) for x in text.replace(".", ",").split(","))
    except ValueError:
        raise InputError(f"cannot parse word {text!r}; use comma-separated indices") from None


def _datum(args) -> RootDatum:
    return load_datum(args.datum)


def _char(args, d: RootDatum) -> MultLocalSystem:
    return parse_char(d, args.char, args.modulus)


def _elt_report(A, L) -> dict:
    orb = orbit(L, bound=10_000)
    return {
        "source": A.source.to_json(),
        "target": A.target.to_json(),
        "orbit": [M.to_json() for M in orb],
        "terms": A.to_json(orb),
    }


# -- commands ------------------------------------------------------------------


def cmd_datum_show(args) -> tuple[dict, int]:
    d = _datum(args)
    bound = args.bound if args.bound is not None else (None if d.is_finite else 4)
    elems = d.enumerate(bound)
    roots = d.positive_roots(bound)
    return {
        "name": d.name,
        "rank": d.n,
        "lattice_rank": d.r,
        "gcm": [list(r) for r in d.gcm.entries],
        "simple_roots": [list(x) for x in d.simple_roots],
        "simple_coroots": [list(x) for x in d.simple_coroots],
        "classification": d.kind,
        "length_bound": bound,
        "elements": len(elems),
        "positive_roots": len(roots),
        "complete": bound is None,
    }, EXIT_OK


def cmd_endoscopy_compute(args) -> tuple[dict, int]:
    d = _datum(args)
    L = _char(args, d)
    endo = endosimple_generators(L, None if d.is_finite and args.bound is None else (args.bound or 4))
    out = {"character": L.to_json()}
    out.update(endo.to_json())
    return out, EXIT_OK


def cmd_hecke_mul(args) -> tuple[dict, int]:
    d = _datum(args)
    L = _char(args, d)
    x, y = d.normalize(parse_word(args.x)), d.normalize(parse_word(args.y))
    Ty = hecke.t_basis(y, L)
    return _elt_report(hecke.compose(hecke.t_basis(x, Ty.target), Ty), L), EXIT_OK


def cmd_hecke_inv(args) -> tuple[dict, int]:
    d = _datum(args)
    L = _char(args, d)
    return _elt_report(hecke.invert_t(d.normalize(parse_word(args.w)), L), L), EXIT_OK


def cmd_hecke_bar(args) -> tuple[dict, int]:
    d = _datum(args)
    L = _char(args, d)
    return _elt_report(hecke.bar(hecke.t_basis(d.normalize(parse_word(args.w)), L)), L), EXIT_OK


def cmd_hecke_canonical(args) -> tuple[dict, int]:
    d = _datum(args)
    L = _char(args, d)
    C = hecke.canonical_basis(d.normalize(parse_word(args.w)), L, args.normalization)
    out = _elt_report(C, L)
    out["normalization"] = args.normalization
    out["bar_invariant"] = hecke.bar(C) == C
    return out, EXIT_OK


def cmd_hecke_bs_decompose(args) -> tuple[dict, int]:
    d = _datum(args)
    L = _char(args, d)
    mult = hecke.bs_decompose(parse_word(args.word), L)
    return {
        "word": list(parse_word(args.word)),
        "multiplicities": [{"word": list(w.word), "poly": str(p)} for w, p in sorted(mult.items())],
    }, EXIT_OK


def cmd_hecke_pair(args) -> tuple[dict, int]:
    d = _datum(args)
    L = _char(args, d)
    p = hecke.hom_pairing(parse_word(args.x), parse_word(args.y), L, args.form)
    return {"x": list(parse_word(args.x)), "y": list(parse_word(args.y)), "form": args.form,
            "pairing": str(p)}, EXIT_OK


def cmd_hecke_kl(args) -> tuple[dict, int]:
    d = _datum(args)
    L = _char(args, d)
    endo = endo_datum(L)
    cache_dir = args.cache or default_cache_dir()
    table, status = load_or_compute(endo.abstract, cache_dir, label=f"{d.name}-endo")
    entries = []
    for y in table.elements():
        for x in table.elements():
            p = table.entries(x, y)
            if p:
                entries.append({"x": list(x.word), "y": list(y.word), "poly": str(p), "mu": table.mu(x, y)})
    return {"S_endo": [list(t.word) for t in endo.S_endo], "coxeter_hash": table.coxeter_hash,
            "cache": status, "entries": entries}, EXIT_OK


def cmd_endo_theta_check(args) -> tuple[dict, int]:
    d = _datum(args)
    L = _char(args, d)
    geo = verify.theta_failures(L, "geometric")
    lit = verify.theta_failures(L, "literal")
    out = {
        "character": L.to_json(),
        "orbit_size": len(orbit(L)),
        "geometric": {"multiplicative": geo is None, "witness": geo},
        "literal": {"multiplicative": lit is None, "witness": lit},
        "quadratic": verify.quadratic_relation_witness(L, args.normalization),
        "normalization": args.normalization,
    }
    ok = (geo if args.normalization == "geometric" else lit) is None
    return out, EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args) -> tuple[dict, int]:
    kwargs: dict[str, Any] = {"seed": args.seed}
    if args.suite != "endoscopy-example":
        kwargs["d"] = _datum(args)
        kwargs["moduli"] = (args.modulus,) if args.modulus else (2,)
    checks = verify.run_suite(args.suite, **kwargs)
    ok = all(c["status"] != "fail" for c in checks)
    return {"suite": args.suite, "ok": ok, "checks": checks}, EXIT_OK if ok else EXIT_VERIFY


# -- output --------------------------------------------------------------------


def _is_leaf(val) -> bool:
    if isinstance(val, dict):
        return not val
    if isinstance(val, list):
        return all(not isinstance(x, (dict, list)) for x in val)
    return True


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return pad + "{}"
        width = max(len(str(k)) for k in obj)
        lines = []
        for k, val in obj.items():
            if not _is_leaf(val):
                lines.append(f"{pad}{str(k):<{width}} :")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{str(k):<{width}} : {json.dumps(val) if not isinstance(val, str) else val}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(_is_leaf(x) for x in obj):
            return "\n".join(pad + json.dumps(x) for x in obj)
        return "\n".join(render_text(x, indent) + ("\n" + pad + "-" if i < len(obj) - 1 else "")
                         for i, x in enumerate(obj))
    return pad + str(obj)


def emit(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2, sort_keys=True)
    return render_text(obj)


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--datum", default="A2", help="built-in name or JSON file")
    common.add_argument("--char", default=None, help='e.g. "Z/2:1,0" or "trivial"')
    common.add_argument("--modulus", type=int, default=None, help="shorthand for target Z/m")
    common.add_argument("--bound", type=int, default=None)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--cache", default=None, help="KL cache directory (default $MONHECKE_CACHE)")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="monhecke", description="Monodromic Hecke algebroid toolkit")
    sub = p.add_subparsers(dest="group", required=True)

    g = sub.add_parser("datum").add_subparsers(dest="cmd", required=True)
    g.add_parser("show", parents=[common]).set_defaults(fn=cmd_datum_show)

    g = sub.add_parser("endoscopy").add_subparsers(dest="cmd", required=True)
    g.add_parser("compute", parents=[common]).set_defaults(fn=cmd_endoscopy_compute)

    g = sub.add_parser("hecke").add_subparsers(dest="cmd", required=True)
    c = g.add_parser("mul", parents=[common])
    c.add_argument("--x", required=True)
    c.add_argument("--y", required=True)
    c.set_defaults(fn=cmd_hecke_mul)
    for name, fn in (("inv", cmd_hecke_inv), ("bar", cmd_hecke_bar)):
        c = g.add_parser(name, parents=[common])
        c.add_argument("--w", required=True)
        c.set_defaults(fn=fn)
    c = g.add_parser("canonical", parents=[common])
    c.add_argument("--w", required=True)
    c.add_argument("--normalization", choices=("c", "geom"), default="geom")
    c.set_defaults(fn=cmd_hecke_canonical)
    c = g.add_parser("bs-decompose", parents=[common])
    c.add_argument("--word", required=True)
    c.set_defaults(fn=cmd_hecke_bs_decompose)
    c = g.add_parser("pair", parents=[common])
    c.add_argument("--x", required=True)
    c.add_argument("--y", required=True)
    c.add_argument("--form", choices=("flat", "wlen"), default="flat")
    c.set_defaults(fn=cmd_hecke_pair)
    g.add_parser("kl", parents=[common]).set_defaults(fn=cmd_hecke_kl)

    g = sub.add_parser("endo").add_subparsers(dest="cmd", required=True)
    c = g.add_parser("theta-check", parents=[common])
    c.add_argument("--normalization", choices=("geometric", "literal"), default="geometric")
    c.set_defaults(fn=cmd_endo_theta_check)

    c = sub.add_parser("verify", parents=[common])
    c.add_argument("suite")
    c.set_defaults(fn=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        obj, code = args.fn(args)
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except MonHeckeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(emit(obj, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
