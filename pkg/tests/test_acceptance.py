"""Acceptance criteria 1-8.

Statements that do not hold as literally worded are run as strict xfails with
their witnesses; the summary line of the criterion then reports FAIL for them.
"""

import itertools
import time

import pytest
from conftest import note, record

from monhecke import hecke
from monhecke import verify as V
from monhecke.charmod import MultLocalSystem, all_characters, orbit
from monhecke.endoscopy import endo_datum
from monhecke.laurent import ONE, V as VAR, v
from monhecke.rootdatum import build_root_datum, gcm_from_coxeter, named_datum

pytestmark = pytest.mark.acceptance


def reps(name, m):
    return V.orbit_representatives(all_characters(named_datum(name), m))


# -- 1 -------------------------------------------------------------------------------


def test_c1_defining_relations():
    t0 = time.perf_counter()
    bad = []
    for name in ("A2", "B2", "G2"):
        for rec in V.suite_algebra(named_datum(name), moduli=(2, 3, 4, 6)):
            if rec["status"] != "pass":
                bad.append(rec)
    elapsed = time.perf_counter() - t0
    record(1, "associativity+inversion on A2/B2/G2, m in 2,3,4,6", not bad, str(bad[:1]))
    record(1, "runtime < 60 s", elapsed < 60, f"{elapsed:.1f}s")
    assert not bad and elapsed < 60


# -- 2 -------------------------------------------------------------------------------


def test_c2_rank4_example():
    t0 = time.perf_counter()
    recs = {r["id"]: r for r in V.suite_endoscopy_example(length_bound=6)}
    elapsed = time.perf_counter() - t0
    for cid in ("reflection-of-coroot", "conjugates-endosimple", "conjugates-distinct"):
        record(2, cid, recs[cid]["status"] == "pass", str(recs[cid]["witness"]))
    record(2, "runtime < 30 s", elapsed < 30, f"{elapsed:.1f}s")
    assert recs["conjugate-count"]["count"] >= 7
    assert all(recs[c]["status"] == "pass" for c in ("reflection-of-coroot", "conjugates-endosimple",
                                                      "conjugates-distinct"))


# -- 3 -------------------------------------------------------------------------------


def test_c3_theta_multiplication_tables():
    t0 = time.perf_counter()
    bad = None
    quad = []
    for name in ("B2", "G2"):
        for L in reps(name, 2):
            bad = bad or V.theta_failures(L, "geometric")
            quad += V.quadratic_relation_witness(L, "geometric")
    elapsed = time.perf_counter() - t0
    record(3, "theta multiplicative on full tables (geometric normalization)", bad is None, str(bad))
    record(3, "theta(T~_t^2) = T_t T_t for endosimple non-simple t", bool(quad) and all(q["holds"] for q in quad))
    record(3, "runtime < 60 s", elapsed < 60, f"{elapsed:.1f}s")
    assert bad is None and quad and all(q["holds"] for q in quad)


@pytest.mark.xfail(strict=True, reason="unnormalized theta (T~_w -> T_w) is not multiplicative")
def test_c3_literal_theta_quadratic():
    d = named_datum("B2")
    L = MultLocalSystem.cyclic(d, 2, [1, 0])
    t = d.normalize((0, 1, 0))
    Tt = hecke.endo_t_basis(t, L)
    lhs = hecke.theta(hecke.endo_compose(Tt, Tt), "literal")
    expected = hecke.t_basis(t, L).scale(v(2) - 1) + hecke.identity(L).scale(v(2))
    assert lhs == expected
    T = hecke.t_basis(t, L)
    rhs = hecke.compose(T, T)
    note(3, f"unnormalized theta fails the quadratic relation: theta(T~_t^2) = {lhs}, T_t T_t = {rhs}")
    assert lhs == rhs, f"theta(T~_t^2) = {lhs}, T_t T_t = {rhs}"


# -- 4 -------------------------------------------------------------------------------


def _canonical_cases():
    cases = []
    for name in ("B2", "G2"):
        for L0 in reps(name, 2):
            for L in orbit(L0):
                cases += V.neutral_block_cases(L)
    triv = MultLocalSystem.trivial(named_datum("A3"))
    cases += [(w, triv) for w in triv.datum.elements()]
    return cases


def test_c4_geometric_canonical_basis():
    t0 = time.perf_counter()
    fails = V.canonical_failures(_canonical_cases())
    elapsed = time.perf_counter() - t0
    for k in ("geom-bar-invariant", "geom-leading-term", "geom-lower-terms", "c-leading-term"):
        record(4, k, fails[k] is None, str(fails[k]))
    record(4, "runtime < 120 s", elapsed < 120, f"{elapsed:.1f}s")
    assert all(fails[k] is None for k in ("geom-bar-invariant", "geom-leading-term",
                                          "geom-lower-terms", "c-leading-term"))


@pytest.mark.xfail(strict=True, reason="C_w mixes l_L-weights with the bar involution of H")
def test_c4_c_basis_bar_invariant():
    fails = V.canonical_failures(_canonical_cases())
    record(4, "C_w bar-invariant", fails["c-bar-invariant"] is None, f"witness {fails['c-bar-invariant']}")
    assert fails["c-bar-invariant"] is None


@pytest.mark.xfail(strict=True, reason="lower coefficients of C_w lie in v^-1 Z[v^-1]")
def test_c4_c_basis_positive_lower_exponents():
    fails = V.canonical_failures(_canonical_cases())
    record(4, "C_w lower terms have positive exponents", fails["c-lower-positive-exponents"] is None,
           f"witness {fails['c-lower-positive-exponents']}")
    assert fails["c-lower-positive-exponents"] is None


# -- 5 -------------------------------------------------------------------------------


def test_c5_ch_multiplication():
    seen = set()
    bad = None
    for name in ("B2", "G2"):
        for L in reps(name, 2):
            b, cases = V.ch_mult_failures(L)
            bad = bad or b
            seen |= {k for k, c in cases.items() if c}
    record(5, "four case formulas on every (w, s)", bad is None, str(bad))
    record(5, "all four cases exercised", len(seen) == 4, str(sorted(seen)))
    assert bad is None and len(seen) == 4


# -- 6 -------------------------------------------------------------------------------


@pytest.mark.parametrize("name,m", [("A1", 2), ("A2", 3), ("B2", 2), ("B2", 4), ("G2", 2), ("G2", 3),
                                    ("A3", 2), ("B3", 2), ("C3", 2)])
def test_c6_block_identities(name, m):
    agg = {}
    for L in reps(name, m):
        for k, val in V.block_checks(L).items():
            if val is not None and k not in agg:
                agg[k] = {"char": L.label(), "witness": val}
    record(6, f"block identities {name}/Z{m}", not agg, str(agg))
    assert not agg


@pytest.mark.parametrize("name", ["A1~", "A2~", "A2"])
def test_c6_counting_formula(name):
    d = named_datum(name)
    bad = V.counting_formula_failures(d, trials=1000, max_len=12, seed=2024, rule="stabilizer")
    record(6, f"counting formula, 1000 words, {name}", not bad, str(bad[:1]))
    assert not bad


# -- 7 -------------------------------------------------------------------------------


def _form_orbits():
    return [L for name in ("B2", "G2") for L in reps(name, 2)] + reps("A2", 3)


def test_c7_form_preservation():
    bad = {}
    for L in _form_orbits():
        f = V.form_failures(L, pairs=500, seed=7)
        for k in ("literal-flat", "geometric-wlen"):
            if f[k] is not None:
                bad.setdefault(k, f[k])
    record(7, "<theta A, theta B> = <A, B>, unnormalized theta, flat forms", "literal-flat" not in bad)
    record(7, "<theta A, theta B> = <A, B>, geometric theta, length-weighted forms", "geometric-wlen" not in bad)
    assert not bad


def test_c7_biadjunction_report(capsys):
    lines = []
    for L in _form_orbits():
        for weight, tally in V.biadjunction_matrix(L, seed=0).items():
            lines.append(f"{L.datum.name}:{L.label()} {weight}: pass={tally['pass']} fail={tally['fail']}")
    flat = V.biadjunction_counterexample("flat")
    wlen = V.biadjunction_counterexample("wlen")
    with capsys.disabled():
        print("\nbiadjunction matrix (reported, not asserted):")
        for ln in lines:
            print("  " + ln)
        print(f"  SL2 trivial, A=T_s, B=T_e: flat {flat[0]} vs {flat[1]}; wlen {wlen[0]} vs {wlen[1]}")
    record(7, "biadjunction matrix reported", True)
    assert flat[0] == VAR and flat[1] == v(-1)
    assert wlen[0] == wlen[1]


# -- 8 -------------------------------------------------------------------------------


def test_c8_dihedral_kl():
    ok = True
    for m in (2, 3, 4, 6):
        ok &= V.dihedral_all_ones(build_root_datum(gcm_from_coxeter([[1, m], [m, 1]]), "sc"))
    for name in ("B2", "G2"):
        for L in reps(name, 2) + reps(name, 3):
            endo = endo_datum(L)
            if endo.rank == 2:
                ok &= V.dihedral_all_ones(endo.abstract)
    record(8, "dihedral KL polynomials are all 1", ok)
    assert ok


def test_c8_bs_decompose_ss():
    bad = []
    for name, m in (("B2", 2), ("G2", 2), ("A2", 3), ("SL2", 2)):
        d = named_datum(name)
        for L in all_characters(d, m):
            for s in range(d.n):
                got = hecke.bs_decompose((s, s), L)
                want = ({d.simple(s): VAR + v(-1)} if L.kills_simple(s) else {d.identity: ONE})
                if got != want:
                    bad.append((name, L.label(), s))
    record(8, "bs_decompose of (s, s)", not bad, str(bad[:1]))
    assert not bad


def _matrix_closure(d):
    def refl(i):
        a, c = d.simple_roots[i], d.simple_coroots[i]
        return tuple(tuple((p == q) - c[p] * a[q] for q in range(d.r)) for p in range(d.r))

    def mul(x, y):
        return tuple(tuple(sum(x[p][k] * y[k][q] for k in range(d.r)) for q in range(d.r)) for p in range(d.r))

    gens = [refl(i) for i in range(d.n)]
    ident = tuple(tuple(int(p == q) for q in range(d.r)) for p in range(d.r))
    length = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in length:
                    length[y] = length[x] + 1
                    nxt.append(y)
        frontier = nxt
    return length, gens, mul


def test_c8_b2_brute_force():
    d = named_datum("B2")
    length, gens, mul = _matrix_closure(d)
    elems = d.enumerate()
    ok = len(elems) == len(length) == 8
    ok &= {d.lattice_matrix(w) for w in elems} == set(length)
    ok &= all(length[d.lattice_matrix(w)] == w.length for w in elems)
    for n in range(7):
        for word in itertools.product(range(2), repeat=n):
            m = tuple(tuple(int(p == q) for q in range(d.r)) for p in range(d.r))
            for i in word:
                m = mul(m, gens[i])
            w = d.normalize(word)
            ok &= d.lattice_matrix(w) == m and len(w.word) == length[m]
            ok &= w.word == min((x.word for x in elems if d.lattice_matrix(x) == m))
    record(8, "normalize/enumerate agree with matrix closure on B2", ok)
    assert ok
