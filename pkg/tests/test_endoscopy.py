import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monhecke.charmod import MultLocalSystem, act, orbit
from monhecke.endoscopy import (
    block_of,
    block_product,
    blocks,
    endo_datum,
    endo_step_count,
    endosimple_generators,
    ell_beta,
    ell_L,
    in_endo_group,
    is_endo_reduced,
    is_endosimple,
    min_block_element,
    neutral_block,
    palindrome_decompose,
    satisfies_min_criterion,
)
from monhecke.errors import InfiniteGroup, NotInBlock, NotPalindromic
from monhecke.rootdatum import named_datum
from monhecke.verify import counting_formula_failures, random_reduced_word


@pytest.fixture(scope="module")
def rank4():
    d = named_datum("rank4-indefinite")
    return d, MultLocalSystem.cyclic(d, 2, [1, 1, 1, 1])


@pytest.fixture(scope="module")
def a2_order3():
    d = named_datum("A2")
    return d, MultLocalSystem.cyclic(d, 3, [1, 2])


@pytest.fixture(scope="module")
def b2_a1a1():
    d = named_datum("B2")
    return d, MultLocalSystem.cyclic(d, 2, [1, 0])


def test_endosimple_examples(A2, rank4):
    triv = MultLocalSystem.trivial(A2)
    assert is_endosimple(A2.simple(0), triv)
    assert not is_endosimple(A2.normalize((0, 1, 0)), triv)
    d, chi = rank4
    assert is_endosimple(d.normalize((2, 3, 2)), chi)


def test_endo_datum_examples(SL2, sl2_order2, b2_a1a1):
    e = endo_datum(MultLocalSystem.trivial(SL2))
    assert [t.word for t in e.S_endo] == [(0,)]
    assert e.endo_gcm.entries == ((2,),)
    e = endo_datum(sl2_order2)
    assert e.S_endo == [] and [u.word for u in e.elements()] == [()]
    d, L = b2_a1a1
    e = endo_datum(L)
    assert [t.word for t in e.S_endo] == [(1,), (0, 1, 0)]
    assert e.coxeter_matrix[0][1] == 2
    # the vanishing coroots are exactly the two long ones
    killed = {rt.coroot for rt in e.phi_L if rt.positive}
    assert len(killed) == 2
    assert len(e.elements()) == 4


def test_endo_datum_needs_bound_for_infinite(rank4):
    d, chi = rank4
    with pytest.raises(InfiniteGroup):
        endo_datum(chi)
    partial = endosimple_generators(chi, 3)
    assert not partial.complete
    assert d.normalize((2, 3, 2)) in partial.S_endo


def test_ell_L_examples(B2, sl2_order2, SL2):
    triv = MultLocalSystem.trivial(B2)
    for w in B2.elements():
        assert ell_L(w, triv) == w.length
    assert ell_L(B2.identity, triv) == 0
    assert ell_L(SL2.simple(0), sl2_order2) == 0


def test_blocks_examples(A2, SL2, sl2_order2, b2_a1a1):
    triv = MultLocalSystem.trivial(A2)
    bs = blocks(triv, triv)
    assert len(bs) == 1 and bs[0].is_neutral
    bs = blocks(sl2_order2, sl2_order2)
    assert [b.min_elt.word for b in bs] == [(), (0,)]
    d, L = b2_a1a1
    stab = [w for w in d.elements() if act(w, L) == L]
    assert len(blocks(L, L)) == len(stab) // len(endo_datum(L).elements())


def test_block_product_examples(sl2_order2):
    b_s = blocks(sl2_order2, sl2_order2)[1]
    n = neutral_block(sl2_order2)
    assert block_product(n, b_s) == b_s
    assert block_product(b_s, b_s) == n


def test_block_product_associative_b2(b2_a1a1):
    _, L0 = b2_a1a1
    orb = orbit(L0)
    bl = {(a, b): blocks(a, b) for a in orb for b in orb}
    for a in orb:
        for b in orb:
            for c in orb:
                for x in bl[(a, b)]:
                    for y in bl[(b, c)]:
                        for z in bl[(c, c)]:
                            assert block_product(z, block_product(y, x)) == block_product(block_product(z, y), x)


def test_ell_beta_examples(sl2_order2, SL2, b2_a1a1):
    b_s = blocks(sl2_order2, sl2_order2)[1]
    assert ell_beta(SL2.simple(0), b_s) == 0
    d, L = b2_a1a1
    n = neutral_block(L)
    for u in endo_datum(L).elements():
        assert ell_beta(u, n) == ell_L(u, L)
    for b in blocks(L, L):
        assert ell_beta(b.min_elt, b) == 0
    with pytest.raises(NotInBlock):
        ell_beta(d.simple(0), n)


@pytest.mark.parametrize("name,m", [("B2", 2), ("G2", 2), ("G2", 3), ("A3", 2), ("B3", 2)])
def test_min_block_element_is_unique_shortest(name, m):
    d = named_datum(name)
    rng = random.Random(1)
    for _ in range(6):
        L = MultLocalSystem.cyclic(d, m, [rng.randrange(m) for _ in range(d.r)])
        W0 = {u for u in d.elements() if in_endo_group(u, L)}
        assert len(W0) == len(endo_datum(L).elements())
        for w in d.elements():
            coset = [w * u for u in W0]
            shortest = min(coset, key=lambda x: x.length)
            assert min_block_element(w, L) == shortest
            assert satisfies_min_criterion(w, L) == (w == shortest)


def test_endo_reduced_examples(a2_order3, A2):
    d, L = a2_order3
    for _ in range(20):
        word = random_reduced_word(d, 3, random.Random(_))
        assert is_endo_reduced(word, L)
    s = 0
    assert act(d.simple(s), L) != L
    assert is_endo_reduced((s, s), L)
    triv = MultLocalSystem.trivial(A2)
    assert not is_endo_reduced((0, 0), triv)


def test_stabilizing_is_not_membership(SL2, sl2_order2):
    # s fixes L but is not in the endoscopic group
    s = SL2.simple(0)
    assert act(s, sl2_order2) == sl2_order2
    assert not in_endo_group(s, sl2_order2)
    assert endo_step_count((0,), sl2_order2, "stabilizer") == 1
    assert endo_step_count((0,), sl2_order2, "coroot") == 0
    assert ell_beta(s, block_of(s, sl2_order2)) == 0


@pytest.mark.parametrize("name", ["A1~", "A2", "A2~"])
def test_counting_rules_agree_on_surjective_roots(name):
    d = named_datum(name)
    for rule in ("coroot", "stabilizer"):
        assert counting_formula_failures(d, 150, 12, seed=7, rule=rule) == []


@pytest.mark.parametrize("name", ["B2", "G2", "B3", "rank4-indefinite"])
def test_coroot_rule_counts_block_length(name):
    d = named_datum(name)
    rng = random.Random(3)
    for _ in range(60):
        L = MultLocalSystem.cyclic(d, 2, [rng.randrange(2) for _ in range(d.r)])
        word = random_reduced_word(d, rng.randint(0, 8), rng)
        w = d.normalize(word)
        assert ell_L(w, L) == endo_step_count(word, L, "coroot")


def test_palindrome_examples(A2, a2_order3, rank4):
    triv = MultLocalSystem.trivial(A2)
    assert palindrome_decompose((1,), triv) == ((), 1, ())
    d, L = a2_order3
    assert is_endosimple(d.normalize((0, 1, 0)), L)
    assert palindrome_decompose((0, 1, 0), L) == ((0,), 1, (0,))
    d4, chi = rank4
    assert palindrome_decompose((2, 3, 2), chi) == ((2,), 3, (2,))
    with pytest.raises(NotPalindromic):
        palindrome_decompose((0, 1), L)


@given(st.lists(st.integers(0, 1), max_size=5).map(tuple))
def test_rank4_conjugates_are_endosimple(w):
    d = named_datum("rank4-indefinite")
    chi = MultLocalSystem.cyclic(d, 2, [1, 1, 1, 1])
    x = d.normalize(w)
    t = d.normalize(x.word + (2, 3, 2) + x.word[::-1])
    assert is_endosimple(t, chi)
