import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alcovewalk.affine import WalkType, affine_group
from alcovewalk.rootdata import AffineCoroot, datum_from_type
from conftest import random_reduced_word


def test_length_zero_products(A1, A2):
    G = affine_group(A2)
    x_w2_s2s1 = G.prod(G.x((0, 1)), G.s(2), G.s(1))
    assert G.mul(G.pi(1), G.pi(1)) == x_w2_s2s1 == G.pi(2)
    G1 = affine_group(A1)
    assert G1.mul(G1.pi(1), G1.pi(1)) == G1.identity
    for G_ in (G, G1):
        assert G_.mul(G_.s(0), G_.s(0)) == G_.identity
        assert G_.length(G_.pi(1)) == 0


def test_pi_relations(A2):
    G = affine_group(A2)
    pi = G.pi(1)
    assert G.mul(pi, G.s(0)) == G.mul(G.s(1), pi)
    assert G.mul(pi, G.s(1)) == G.mul(G.s(2), pi)


def test_action_on_affine_coroots(A1):
    G = affine_group(A1)
    a = AffineCoroot((1,), 0)
    for k in range(-3, 4):
        assert G.act_on_affine_coroot(G.x((k,)), a) == AffineCoroot((1,), -k)
    assert G.act_on_affine_coroot(G.s(1), a) == AffineCoroot((-1,), 0)
    assert G.act_on_affine_coroot(G.identity, a) == a


def test_inversion_sets(A1, A2):
    G = affine_group(A2)
    for i in (1, 2):
        assert G.inversion_set(G.s(i)) == {G.simple_coroot(i)}
    assert G.inversion_set(G.pi(1)) == set()
    G1 = affine_group(A1)
    assert G1.inversion_set(G1.x((2,))) == {AffineCoroot((-1,), 1), AffineCoroot((-1,), 2)}


def test_separating_sets(A1):
    G = affine_group(A1)
    w = G.mul(G.x((2,)), G.s(1))
    assert G.separating_set(w, w) == set()
    assert G.separating_set(G.identity, G.s(1)) == {AffineCoroot((1,), 0)}
    assert G.separating_set(w, G.x((2,))) == {AffineCoroot((-1,), 2)}


def test_reduced_words(A1):
    G = affine_group(A1)
    assert G.reduced_word(G.identity) == WalkType(0, ())
    m3 = G.m((3,))
    wt = G.reduced_word(m3)
    assert len(wt) == 2 and wt.pi == 1 and G.from_type(wt) == m3
    assert G.reduced_word(G.x((-8,))) == WalkType(0, (1, 0) * 4)


def test_crossing_signs(A1, A2):
    G = affine_group(A2)
    assert G.crossing_sign(G.identity, 1) == -1
    assert G.crossing_sign(G.identity, 0) == 1
    rng = random.Random(3)
    for _ in range(100):
        v = G.prod(*(G.s(rng.randrange(3)) for _ in range(6)))
        i = rng.randrange(3)
        assert G.crossing_sign(v, i) == -G.crossing_sign(G.step(v, i), i)


def test_dominant_chamber(A1):
    G = affine_group(A1)
    assert G.in_dominant_chamber(G.identity)
    assert not G.in_dominant_chamber(G.s(1))
    assert G.in_dominant_chamber(G.x((2,)))


def _elements_up_to(G, max_len):
    seen = {G.identity}
    frontier = [G.identity]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for i in range(G.n + 1):
                u = G.step(w, i)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return [w for w in seen if G.length(w) <= max_len]


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_length_properties(name):
    D = datum_from_type(name)
    G = affine_group(D)
    for w in _elements_up_to(G, 6):
        L = G.inversion_set(w)
        assert G.length(w) == len(L)
        wt = G.reduced_word(w)
        assert len(wt) == G.length(w) and G.from_type(wt) == w
        # sign changes along the reduced word
        cur, ups = G.pi(wt.pi), 0
        for i in wt.word:
            ups += G.wall(cur, i).is_positive()
            cur = G.step(cur, i)
        assert ups == len(wt)
        for j in G.pi_indices:
            assert G.length(G.mul(G.pi(j), w)) == G.length(w)
        for i in range(G.n + 1):
            assert abs(G.length(G.step(w, i)) - G.length(w)) == 1


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_m_mu_is_unique_minimum(name):
    D = datum_from_type(name)
    G = affine_group(D)
    for mu in itertools.product(range(-3, 4), repeat=D.rank):
        lengths = {k: G.length(G.mul(G.x(mu), G.finite(D.w_elem(k)))) for k in range(D.order)}
        best = min(lengths.values())
        winners = [k for k, v in lengths.items() if v == best]
        assert len(winners) == 1
        assert G.mul(G.x(mu), G.finite(D.w_elem(winners[0]))) == G.m(mu)


@given(st.lists(st.integers(0, 2), max_size=10), st.randoms(use_true_random=False))
def test_random_reduced_words_multiply_back(letters, rng):
    G = affine_group(datum_from_type("A2"))
    w = G.prod(*(G.s(i) for i in letters))
    wt = random_reduced_word(G, w, rng)
    assert G.from_type(wt) == w and len(wt) == G.length(w)


def test_inverse(A2):
    G = affine_group(A2)
    w = G.prod(G.x((1, -2)), G.s(1), G.s(0))
    assert G.mul(w, G.inv(w)) == G.identity


def _all_reduced_words(G, u):
    """Every reduced word of an element of the Coxeter part, by peeling left descents."""
    if G.length(u) == 0:
        return [()]
    out = []
    for i in range(G.n + 1):
        nxt = G.mul(G.s(i), u)
        if G.length(nxt) < G.length(u):
            out += [(i,) + rest for rest in _all_reduced_words(G, nxt)]
    return out


@pytest.mark.parametrize("name", ["A2", "B2"])
def test_reduced_word_is_lexicographically_least(name):
    D = datum_from_type(name)
    G = affine_group(D)
    for mu in itertools.product(range(-2, 3), repeat=D.rank):
        for w in (G.m(mu), G.x(mu)):
            wt = G.reduced_word(w)
            u = G.mul(G.inv(G.pi(wt.pi)), w)
            assert wt.word == min(_all_reduced_words(G, u))
