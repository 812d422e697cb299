import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homrep import presentations as pr
from homrep.presentations import AbelianGroup, Presentation


def test_snf_examples():
    d, _, _ = pr.snf([[2, 0], [0, 3]])
    assert d == [[1, 0], [0, 6]]
    d, u, v = pr.snf([[0, 0], [0, 0], [0, 0]])
    assert d == [[0, 0]] * 3
    assert u == pr.identity(3) and v == pr.identity(2)
    d, _, _ = pr.snf([[1, -1]])
    assert d == [[1, 0]]


@given(
    st.integers(1, 6).flatmap(
        lambda r: st.integers(1, 6).flatmap(
            lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
def test_snf_postconditions(a):
    d, u, v = pr.snf(a)
    assert pr.matmul(pr.matmul(u, a), v) == d
    assert abs(pr.det(u)) == 1 and abs(pr.det(v)) == 1
    diag = pr.snf_diagonal(a)
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) if x == 0 else (y % x == 0)


def test_det_agrees_with_sympy():
    import sympy

    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 6)
        a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert pr.det(a) == sympy.Matrix(a).det()


def test_abelian_group_str():
    assert str(AbelianGroup(2, (2,))) == "Z^2 + Z/2"
    assert str(AbelianGroup(0, (2, 2, 2))) == "(Z/2)^3"
    assert str(AbelianGroup(0)) == "0"
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))


def test_braid_abelianization():
    assert pr.abelianization(pr.braid_presentation(3)) == AbelianGroup(1)


def test_bellingeri_generators():
    assert pr.bellingeri_presentation("orientable", 1, 0, 2).generators == ("s1", "a1", "b1")
    assert pr.bellingeri_presentation("nonorientable", 2, 0, 2).generators == ("s1", "c1", "c2")


def test_bellingeri_relator_count():
    # braid: 1; commuting a1, b1 with s1: 2; c s2 c commuting with s2: 2;
    # a1 s2 b1 = s2 b1 s2 a1 s2: 1
    assert len(pr.bellingeri_presentation("orientable", 1, 0, 3).relators) == 6


def test_bellingeri_range_errors():
    with pytest.raises(ValueError):
        pr.bellingeri_presentation("nonorientable", 1, 0, 2)
    with pytest.raises(ValueError):
        pr.bellingeri_presentation("klein", 1, 0, 2)
    with pytest.raises(ValueError):
        pr.bellingeri_presentation("orientable", 1, 0, 0)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_orientable_independent_of_n(g):
    groups = {pr.abelianization(pr.bellingeri_presentation("orientable", g, 0, n)) for n in range(2, 6)}
    assert groups == {AbelianGroup(2 * g, (2,))}
    assert pr.abelianization(pr.bellingeri_presentation("orientable", g, 0, 1)) == AbelianGroup(2 * g)


@pytest.mark.parametrize("c", [2, 3, 4])
def test_nonorientable_abelianization(c):
    # computed value; the free rank is c and a Z/2 appears once two strands exist
    for n in range(2, 5):
        assert pr.abelianization(pr.bellingeri_presentation("nonorientable", c, 0, n)) == AbelianGroup(c, (2,))


def test_disc_braid_abelianization():
    assert pr.abelianization(pr.disc_braid_presentation(1, 2)) == AbelianGroup(2)
    for m in range(2, 5):
        assert pr.abelianization(pr.disc_braid_presentation(m, 2)) == AbelianGroup(3)


def test_loop_braid_examples():
    assert pr.abelianization(pr.loop_braid_presentation(2)) == AbelianGroup(1, (2,))
    assert pr.abelianization(pr.loop_braid_presentation(2, True)) == AbelianGroup(0, (2, 2, 2))
    assert pr.abelianization(pr.loop_braid_presentation(1, True)) == AbelianGroup(0, (2,))
    assert pr.abelianization(pr.loop_braid_presentation(1)) == AbelianGroup(0)


def _tietze(p: Presentation, rng: random.Random) -> Presentation:
    """Add a generator y with the relator y = w for a random word w in the old generators."""
    k = len(p.generators)
    word = tuple((rng.randrange(k), rng.choice((1, -1))) for _ in range(rng.randint(0, 5)))
    rel = ((k, 1),) + tuple((g, -s) for g, s in reversed(word))
    return Presentation(p.generators + (f"y{k}",), p.relators + (rel,))


@pytest.mark.parametrize(
    "p",
    [
        pr.braid_presentation(4),
        pr.bellingeri_presentation("orientable", 2, 1, 3),
        pr.bellingeri_presentation("nonorientable", 3, 0, 2),
        pr.loop_braid_presentation(3, True),
    ],
)
def test_tietze_invariance(p):
    rng = random.Random(len(p.generators))
    base = pr.abelianization(p)
    q = p
    for _ in range(4):
        q = _tietze(q, rng)
        assert pr.abelianization(q) == base
    # a consequence relator (product of two existing ones) changes nothing either
    if len(p.relators) >= 2:
        extra = Presentation(p.generators, p.relators + (p.relators[0] + p.relators[1],))
        assert pr.abelianization(extra) == base


def test_presentation_json_round_trip():
    p = pr.loop_braid_presentation(3, True)
    assert Presentation.from_json(json.loads(json.dumps(p.to_json()))) == p


def test_subgroup_image_examples():
    amb = AbelianGroup(2, (2, 2))
    assert pr.subgroup_image(amb, [[0, 1, 0, 1], [1, 1, 1, 1], [0, 0, 1, 1]]) == AbelianGroup(2, (2,))
    assert pr.subgroup_image(AbelianGroup(1, (2,)), [[1, 1]]) == AbelianGroup(1)
    assert pr.subgroup_image(AbelianGroup(0, (2,) * 4), [[1, 0, 0, 1], [0, 1, 1, 0]]) == AbelianGroup(0, (2, 2))


def test_subgroup_image_torsion_only():
    assert pr.subgroup_image(AbelianGroup(0, (2,)), [[1], [1]]) == AbelianGroup(0, (2,))
    assert pr.subgroup_image(AbelianGroup(1), [[2], [3]]) == AbelianGroup(1)
    assert pr.subgroup_image(AbelianGroup(1), []) == AbelianGroup(0)


@pytest.mark.parametrize("theorem", ["alpha", "beta", "gamma"])
def test_loop_quotient_stable_in_m(theorem):
    assert len({pr.loop_quotient(theorem, m) for m in range(2, 6)}) == 1


def _loop_image(name, s, j):
    """Action on x_j of a loop braid generator: s acts by the Artin rule, t swaps, r inverts."""
    from homrep.words import _artin_image

    fam, i = name[0], int(name[1:])
    if fam == "s":
        return _artin_image(i, s, j)
    if fam == "t":
        return (({i: i + 1, i + 1: i}.get(j, j), 1),)
    return ((j, -1),) if j == i else ((j, 1),)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_loop_relators_hold_in_aut_free_group(n):
    from homrep.words import _invert, _reduce_letters

    p = pr.loop_braid_presentation(n, extended=True)
    for rel in p.relators:
        for j in range(1, n + 1):
            word = ((j, 1),)
            for g, s in reversed(rel):  # left action: the last letter acts first
                out = []
                for k, e in word:
                    im = _loop_image(p.generators[g], s, k)
                    out.extend(im if e == 1 else _invert(im))
                word = _reduce_letters(out)
            assert word == ((j, 1),), (p.tokens(rel), j)
