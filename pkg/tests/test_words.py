import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homrep import presentations
from homrep.groupring import A1, A2
from homrep.words import (
    SIGMA,
    XI,
    BraidWord,
    FreeGroupWord,
    SurfaceBraidWord,
    artin_act,
    bn_act_on_surface,
    generator,
    hom_T,
    hom_W,
    parse_braid,
    parse_free,
    parse_surface,
    phi,
    reduce,
    shift,
)

q, t = A2.var("q"), A2.var("t")


def test_reduce_examples():
    assert reduce(parse_braid("s1 s1^-1", 2)) == BraidWord(2)
    assert reduce(parse_braid("s1 s2 s2^-1 s1", 3)) == parse_braid("s1 s1", 3)
    assert reduce(BraidWord(3)) == BraidWord(3)


def test_artin_examples():
    s1 = generator(2, 1)
    assert artin_act(s1, parse_free("x1", 2)) == parse_free("x2", 2)
    assert artin_act(s1, parse_free("x2", 2)) == parse_free("x2^-1 x1 x2", 2)
    w = parse_free("x1 x2^-1 x1", 2)
    assert artin_act(parse_braid("s1 s1^-1", 2), w) == w


def test_artin_rank_mismatch():
    with pytest.raises(ValueError):
        artin_act(generator(3, 1), parse_free("x1", 2))


def test_surface_action_examples():
    s1 = generator(2, 1)
    assert bn_act_on_surface(s1, parse_surface("x1", 2, 2)) == parse_surface("x2", 2, 2)
    assert bn_act_on_surface(s1, parse_surface("x2", 2, 2)) == parse_surface("x2^-1 x1 x2", 2, 2)
    assert bn_act_on_surface(s1, parse_surface("s1", 2, 2)) == parse_surface("s1", 2, 2)


def test_hom_examples():
    assert hom_T(parse_surface("s1", 2, 2)) == 1
    assert hom_T(parse_surface("x2", 2, 2)) == 0
    assert hom_T(parse_surface("s1 x1 s1^-1", 2, 2)) == 0
    assert hom_W(parse_surface("x1", 2, 2)) == 1
    assert hom_W(parse_surface("s1", 2, 2)) == 0
    assert hom_W(parse_surface("x1^-1 x2", 2, 2)) == 0


def test_phi_examples():
    assert phi(parse_surface("s1", 2, 3), 2) == t
    assert phi(parse_surface("x3", 2, 3), 2) == q
    assert phi(parse_surface("x1 x2^-1", 1, 2), 1) == A1.one()
    assert phi(parse_surface("x1 x2", 1, 2), 1) == A1.var("x") ** 2


def test_shift_examples():
    assert shift(generator(2, 1), 1) == generator(3, 2)
    w = parse_braid("s1 s2^-1", 3)
    assert shift(w, 0) == w
    assert shift(parse_braid("s1 s2", 3), 2) == parse_braid("s3 s4", 5)


def test_bad_letters_rejected():
    with pytest.raises(ValueError):
        BraidWord(2, ((2, 1),))
    with pytest.raises(ValueError):
        SurfaceBraidWord(1, 2, ((SIGMA, 1, 1),))
    with pytest.raises(ValueError):
        parse_braid("s1 y2", 3)


@st.composite
def braids(draw, n):
    letters = draw(st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from([1, -1])), max_size=8))
    return BraidWord(n, tuple(letters))


@st.composite
def free_words(draw, n):
    letters = draw(st.lists(st.tuples(st.integers(1, n), st.sampled_from([1, -1])), max_size=8))
    return FreeGroupWord(n, tuple(letters))


@st.composite
def surface_words(draw, m, n):
    fams = [XI] + ([SIGMA] if m >= 2 else [])
    letters = []
    for _ in range(draw(st.integers(0, 8))):
        fam = draw(st.sampled_from(fams))
        idx = draw(st.integers(1, m - 1)) if fam == SIGMA else draw(st.integers(1, n))
        letters.append((fam, idx, draw(st.sampled_from([1, -1]))))
    return SurfaceBraidWord(m, n, tuple(letters))


@given(st.data())
def test_reduce_idempotent(data):
    n = data.draw(st.integers(2, 5))
    b = data.draw(braids(n))
    assert reduce(reduce(b)) == reduce(b)
    assert reduce(b * b.inverse()) == BraidWord(n)


@given(st.data())
def test_artin_is_a_left_action(data):
    n = data.draw(st.integers(2, 5))
    b1, b2 = data.draw(braids(n)), data.draw(braids(n))
    w = data.draw(free_words(n))
    assert artin_act(b1 * b2, w) == artin_act(b1, artin_act(b2, w))
    assert artin_act(b1.inverse(), artin_act(b1, w)) == reduce(w)


@given(st.data())
def test_artin_is_an_automorphism(data):
    n = data.draw(st.integers(2, 5))
    b = data.draw(braids(n))
    u, v = data.draw(free_words(n)), data.draw(free_words(n))
    assert artin_act(b, u * v) == reduce(artin_act(b, u) * artin_act(b, v))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_artin_respects_braid_relations(n):
    gens = [FreeGroupWord(n, ((j, 1),)) for j in range(1, n + 1)]
    for i in range(1, n - 1):
        lhs = BraidWord(n, ((i, 1), (i + 1, 1), (i, 1)))
        rhs = BraidWord(n, ((i + 1, 1), (i, 1), (i + 1, 1)))
        assert [artin_act(lhs, x) for x in gens] == [artin_act(rhs, x) for x in gens]
    for i in range(1, n):
        for j in range(i + 2, n):
            a = BraidWord(n, ((i, 1), (j, 1)))
            b = BraidWord(n, ((j, 1), (i, 1)))
            assert [artin_act(a, x) for x in gens] == [artin_act(b, x) for x in gens]


@given(st.data())
def test_surface_action_is_a_left_action(data):
    m, n = data.draw(st.integers(1, 3)), data.draw(st.integers(2, 5))
    b1, b2 = data.draw(braids(n)), data.draw(braids(n))
    w = data.draw(surface_words(m, n))
    assert bn_act_on_surface(b1 * b2, w) == bn_act_on_surface(b1, bn_act_on_surface(b2, w))


@given(st.data())
def test_homs_are_additive(data):
    m, n = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 4))
    u, v = data.draw(surface_words(m, n)), data.draw(surface_words(m, n))
    assert hom_T(u * v) == hom_T(u) + hom_T(v)
    assert hom_W(u * v) == hom_W(u) + hom_W(v)
    assert phi(u * v, m) == phi(u, m) * phi(v, m)
    assert phi(u.inverse(), m) == phi(u, m).inverse()


def _relator_word(p, rel, m, n):
    letters = []
    for g, s in rel:
        name = p.generators[g]
        fam = SIGMA if name[0] == "s" else XI
        letters.append((fam, int(name[1:]), s))
    return SurfaceBraidWord(m, n, tuple(letters))


@pytest.mark.parametrize("m,n", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 4)])
def test_homs_vanish_on_disc_relators(m, n):
    p = presentations.disc_braid_presentation(m, n)
    # one strand gives a free group
    assert bool(p.relators) == (m >= 2)
    for rel in p.relators:
        w = _relator_word(p, rel, m, n)
        assert hom_T(w) == 0
        assert hom_W(w) == 0
        assert phi(w, m) == 1


def test_phi_invariance_sample():
    # the heavy version lives in the acceptance suite
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(2, 5)
        b = BraidWord(n, tuple((rng.randrange(1, n), rng.choice((1, -1))) for _ in range(5)))
        w = SurfaceBraidWord(2, n, tuple((XI, rng.randint(1, n), rng.choice((1, -1))) for _ in range(5)))
        assert phi(bn_act_on_surface(b, w), 2) == phi(w, 2)
