import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monhecke.errors import (
    DimensionMismatch,
    InvalidGCM,
    PairingMismatch,
    ParseError,
    SingularAdjoint,
)
from monhecke.rootdatum import (
    GCM,
    RootDatum,
    build_root_datum,
    bruhat_leq,
    load_datum,
    named_datum,
)

FINITE = ["A1", "A2", "A3", "B2", "G2", "B3", "C3"]
ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "G2": 12, "B3": 48, "C3": 48}


def words(n, max_len):
    return st.lists(st.integers(0, n - 1), max_size=max_len).map(tuple)


# -- construction --------------------------------------------------------------


def test_sl2_and_pgl2():
    sl2, pgl2 = named_datum("SL2"), named_datum("PGL2")
    assert sl2.simple_coroots == ((1,),) and sl2.simple_roots == ((2,),)
    assert pgl2.simple_roots == ((1,),) and pgl2.simple_coroots == ((2,),)


def test_rank4_example_is_indefinite():
    d = named_datum("rank4-indefinite")
    assert d.r == 4 and d.n == 4
    assert d.kind == "indefinite"


def test_classification():
    assert named_datum("B2").kind == "finite"
    assert named_datum("A1~").kind == "affine"
    assert named_datum("A2~").kind == "affine"


def test_invalid_gcm():
    with pytest.raises(InvalidGCM):
        GCM(((2, -1), (0, 2)))
    with pytest.raises(InvalidGCM):
        GCM(((1,),))


def test_pairing_mismatch():
    with pytest.raises(PairingMismatch):
        RootDatum(GCM(((2,),)), [[1]], [[1]])
    with pytest.raises(DimensionMismatch):
        RootDatum(GCM(((2,),)), [[2, 0]], [[1]])


def test_singular_adjoint():
    with pytest.raises(SingularAdjoint):
        build_root_datum([[2, -2], [-2, 2]], "ad")
    d = build_root_datum([[2, -2], [-2, 2]], "ad-ext")
    assert d.r == 3


def test_load_datum_parse_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"gcm": [[2, -1], [-1, 2]\n  "lattice": "sc"}')
    with pytest.raises(ParseError) as exc:
        load_datum(str(bad))
    assert exc.value.line == 2


def test_load_datum_file(tmp_path):
    f = tmp_path / "mine.json"
    f.write_text(json.dumps({"gcm": [[2, -1], [-3, 2]], "lattice": "sc"}))
    assert len(load_datum(str(f)).elements()) == 12


# -- action ------------------------------------------------------------------


def test_rank1_reflection(SL2):
    assert SL2.simple(0).apply((1,)) == (-1,)
    assert SL2.identity.apply((5,)) == (5,)


def test_rank4_coroot_image():
    d = named_datum("rank4-indefinite")
    assert d.simple(2).apply(d.simple_coroots[3]) == tuple(
        a + 3 * b for a, b in zip(d.simple_coroots[3], d.simple_coroots[2]))


@pytest.mark.parametrize("name", FINITE + ["A1~", "A2~", "rank4-indefinite"])
def test_action_is_a_group_action(name):
    d = named_datum(name)
    elems = d.enumerate(3)
    lam = tuple(range(1, d.r + 1))
    for x in elems[:10]:
        for y in elems[:10]:
            assert (x * y).apply(lam) == x.apply(y.apply(lam))


@pytest.mark.parametrize("name", FINITE + ["A1~", "rank4-indefinite"])
def test_pairing_invariance(name):
    d = named_datum(name)
    lam, mu = tuple(range(1, d.r + 1)), tuple((-1) ** k * (k + 2) for k in range(d.r))
    for w in d.enumerate(3):
        wmu = _char_action(d, w, mu)
        assert sum(a * b for a, b in zip(wmu, w.apply(lam))) == sum(a * b for a, b in zip(mu, lam))


def _char_action(d, w, mu):
    """Act on characters by s(mu) = mu - <mu, alpha_i^vee> alpha_i, applied right to left."""
    mu = list(mu)
    for i in reversed(w.word):
        c = sum(a * b for a, b in zip(mu, d.simple_coroots[i]))
        mu = [m - c * r for m, r in zip(mu, d.simple_roots[i])]
    return tuple(mu)


# -- normalize / enumerate ----------------------------------------------------------


def test_normalize_examples(A2):
    assert A2.normalize((0, 0)).word == ()
    assert A2.normalize((1, 0, 1)).word == (0, 1, 0)
    assert A2.normalize((0,)).word == (0,)


@pytest.mark.parametrize("name", FINITE)
def test_orders(name):
    d = named_datum(name)
    elems = d.enumerate()
    assert len(elems) == ORDERS[name]
    assert len({w.key for w in elems}) == ORDERS[name]


def test_affine_a1_bound3():
    d = named_datum("A1~")
    got = {w.word for w in d.enumerate(3)}
    assert got == {(), (0,), (1,), (0, 1), (1, 0), (0, 1, 0), (1, 0, 1)}


def _brute_force_group(d):
    """Close the generating matrices on X_* under multiplication (no words involved)."""
    def mat(i):
        a, c = d.simple_roots[i], d.simple_coroots[i]
        return tuple(tuple((p == q) - c[p] * a[q] for q in range(d.r)) for p in range(d.r))

    def mul(x, y):
        return tuple(tuple(sum(x[p][k] * y[k][q] for k in range(d.r)) for q in range(d.r))
                     for p in range(d.r))

    ident = tuple(tuple(int(p == q) for q in range(d.r)) for p in range(d.r))
    dist = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(d.n):
                y = mul(x, mat(i))
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


def test_b2_matches_matrix_brute_force(B2):
    brute = _brute_force_group(B2)
    elems = B2.enumerate()
    assert len(elems) == len(brute) == 8
    assert {B2.lattice_matrix(w) for w in elems} == set(brute)
    for w in elems:
        assert brute[B2.lattice_matrix(w)] == w.length
    for word in itertools.product(range(2), repeat=5):
        w = B2.normalize(word)
        assert B2.normalize(w.word) == w
        m = brute_matrix(B2, word)
        assert B2.lattice_matrix(w) == m


def brute_matrix(d, word):
    m = tuple(tuple(int(p == q) for q in range(d.r)) for p in range(d.r))
    for i in word:
        a, c = d.simple_roots[i], d.simple_coroots[i]
        s = [[(p == q) - c[p] * a[q] for q in range(d.r)] for p in range(d.r)]
        m = tuple(tuple(sum(m[p][k] * s[k][q] for k in range(d.r)) for q in range(d.r)) for p in range(d.r))
    return m


@given(words(2, 10))
def test_normalize_is_shortlex_reduced_b2(word):
    d = named_datum("B2")
    w = d.normalize(word)
    same = [x for x in d.elements() if x == w]
    assert len(same) == 1
    assert w.word == same[0].word
    assert len(w.word) <= len(word) and (len(word) - len(w.word)) % 2 == 0


@given(words(3, 8), words(3, 8))
def test_multiplication_matches_concatenation(a, b):
    d = named_datum("A2~")
    assert d.normalize(a) * d.normalize(b) == d.normalize(a + b)


@given(words(4, 6))
def test_rank4_inverse(word):
    d = named_datum("rank4-indefinite")
    w = d.normalize(word)
    assert (w * w.inverse()).is_identity()
    assert w.inverse() == d.normalize(tuple(reversed(word)))


# -- inversions ------------------------------------------------------------------


def test_inversion_examples(A2):
    assert A2.identity.inversions() == []
    assert [r.root for r in A2.simple(0).inversions()] == [A2.simple(0).inversions()[0].root]
    assert A2.simple(0).inversions()[0].root == (1, 0)
    w0 = A2.longest_element()
    assert {r.root for r in w0.inversions()} == {r.root for r in A2.positive_roots()}
    assert len(A2.positive_roots()) == 3


@pytest.mark.parametrize("name", ["B2", "G2", "A3"])
def test_inversion_count_is_length(name):
    d = named_datum(name)
    for w in d.elements():
        inv = w.inversions()
        assert len(inv) == w.length
        for r in inv:
            assert r.positive and w.sends_negative(r.root)


@given(words(3, 7))
def test_affine_inversions(word):
    d = named_datum("A2~")
    w = d.normalize(word)
    assert len(w.inversions()) == w.length


# -- Bruhat order -----------------------------------------------------------------


def subword_leq(x, y):
    """x <= y iff some subword of the reduced word of y evaluates to x."""
    d = y.datum
    word = y.word
    for mask in itertools.product((0, 1), repeat=len(word)):
        if d.normalize(tuple(s for s, keep in zip(word, mask) if keep)) == x:
            return True
    return False


def test_bruhat_examples(A2):
    s0, s1 = A2.simple(0), A2.simple(1)
    assert bruhat_leq(A2.identity, s1)
    assert not bruhat_leq(s0, s1)
    assert bruhat_leq(s0, A2.normalize((0, 1, 0)))


@pytest.mark.parametrize("name", ["B2", "G2", "A3"])
def test_bruhat_matches_subword_oracle(name):
    d = named_datum(name)
    for x in d.elements():
        for y in d.elements():
            assert bruhat_leq(x, y) == subword_leq(x, y), (x.word, y.word)


def test_bruhat_affine_subword_oracle():
    d = named_datum("A2~")
    elems = d.enumerate(4)
    for x in elems:
        for y in elems:
            assert bruhat_leq(x, y) == subword_leq(x, y)


def test_reflections(B2):
    refl = [w for w in B2.elements() if w.is_reflection()]
    assert len(refl) == 4
    for t in refl:
        r = t.reflection_root()
        assert r.reflection() == t
        assert (t * t).is_identity()
    # the longest element of B2 is central and an involution, but not a reflection
    assert not B2.longest_element().is_reflection()
