import random

import pytest

from homrep import functors as fn
from homrep.functors import BracketMorphism, CutoffExceeded
from homrep.partitions import enum_Q_delta
from homrep.repmatrix import RepMatrix
from homrep.words import BraidWord


def test_lb_tabulate_examples():
    f = fn.lb_tabulate(2, 5)
    assert f.rank(4) == 6
    assert f.rank(0) == 0 and f.rank(1) == 0
    g = fn.lb_tabulate(1, 5)
    s = g.stab(3)
    col = [s[r, g.labels(3).index((1, 0))] for r in range(s.rows)]
    assert g.labels(4)[[i for i, v in enumerate(col) if v][0]] == (0, 1, 0)
    assert [v == 1 for v in col] == [False, True, False]


def test_stabilizations_are_coordinate_injections():
    for m in (1, 2, 3):
        f = fn.lb_tabulate(m, 7)
        for n in range(7):
            assert f.stab(n).is_coordinate_injection()


def test_eval_identity_and_stabilization():
    f = fn.lb_tabulate(2, 6)
    assert fn.evaluate(f, BracketMorphism.identity(4)).is_identity()
    assert fn.evaluate(f, BracketMorphism.stabilization(3)) == f.stab(3)
    with pytest.raises(CutoffExceeded):
        fn.evaluate(f, BracketMorphism.stabilization(6))


def test_eval_composition_law():
    rng = random.Random(77)
    for m in (1, 2):
        f = fn.lb_tabulate(m, 6)
        for _ in range(25):
            a = rng.randint(0, 4)
            b = rng.randint(a, 5)
            c = rng.randint(b, 6)
            first = fn.random_bracket(rng, a, b)
            second = fn.random_bracket(rng, b, c)
            lhs = fn.evaluate(f, second.compose(first))
            rhs = fn.evaluate(f, second) @ fn.evaluate(f, first)
            assert lhs == rhs


def test_bracket_well_defined():
    rng = random.Random(78)
    f = fn.lb_tabulate(2, 6)
    for _ in range(20):
        src = rng.randint(0, 3)
        tgt = rng.randint(src + 2, 6)
        mor = fn.random_bracket(rng, src, tgt)
        k = tgt - src
        sigma = BraidWord(k, tuple((rng.randrange(1, k), rng.choice((1, -1))) for _ in range(4)))
        assert fn.bracket_well_defined(f, mor, sigma)


def test_bracket_morphism_validation():
    with pytest.raises(ValueError):
        BracketMorphism(3, 2, BraidWord(2))
    with pytest.raises(ValueError):
        BracketMorphism(1, 3, BraidWord(2))
    with pytest.raises(ValueError):
        BracketMorphism.identity(2).compose(BracketMorphism.identity(3))


def test_difference_example():
    assert fn.difference(fn.lb_tabulate(2, 6)).rank(3) == 3


def test_evanescence_is_zero():
    for m in (1, 2, 3):
        assert fn.is_zero(fn.evanescence(fn.lb_tabulate(m, 6)))


def test_difference_of_constant_is_zero():
    c = fn.constant_tabulate(3, 6)
    assert fn.is_zero(fn.difference(c))
    rep = fn.degree_report(c)
    assert rep.strong_degree == 0 and rep.weak_degree == 0 and rep.very_strong


def test_translate_shifts():
    f = fn.lb_tabulate(2, 6)
    t = fn.translate(f)
    assert [t.rank(n) for n in range(6)] == [f.rank(n + 1) for n in range(6)]
    assert t.gen(3, 1, 1) == f.gen(4, 2, 1)
    for n in range(2, 5):
        for i, s in fn.all_generators(n):
            assert fn.naturality_holds(t, n, i, s)


def test_degree_lb1_details():
    rep = fn.degree_report(fn.lb_tabulate(1, 8), 8)
    assert rep.ranks[2][:2] == [1, 0]
    assert rep.kernel_ranks[2][0] == 1
    assert rep.weak_support == [0]
    assert rep.status == "pass"


def test_degree_inconclusive_on_tiny_window():
    rep = fn.degree_report(fn.lb_tabulate(3, 2), 2)
    assert rep.status == "inconclusive"


def test_diffeva_rank_layer():
    assert fn.difference(fn.lb_tabulate(2, 6)).rank(3) == 3
    assert fn.translate(fn.lb_tabulate(1, 6)).rank(3) == fn.lb_tabulate(1, 6).rank(4) == 3


def test_diffeva_negative_control(monkeypatch):
    res = fn.diffeva_check(2, 4)
    assert res.ok and res.identification == "x->q"
    assert len(res.basis_map.maps) == 5
    # with only x -> t on offer the check must fail and point at an entry
    only_t = [c for c in fn._identifications(2) if c[0] == "x->t"]
    monkeypatch.setattr(fn, "_identifications", lambda m: only_t)
    bad = fn.diffeva_check(2, 4)
    assert not bad.ok
    assert {"object", "map", "row", "col", "delta", "tau", "identification"} <= set(bad.counterexample)


def test_moriyama_examples():
    f = fn.moriyama_tabulate(1, 5)
    assert [f.rank(g) for g in range(1, 6)] == [2, 4, 6, 8, 10]
    assert fn.moriyama_tabulate(2, 3).rank(1) == 6
    assert f.ranks_only


def test_moriyama_delta_m_witness():
    for m in (1, 2):
        d = fn.iterated_difference(fn.moriyama_tabulate(m, 6 + m), m)
        for g in range(5):
            assert sorted(d.labels(g)) == sorted(enum_Q_delta(m, m, g))
            assert fn.stab_is_bijection(d, g)
        assert d.rank(1) == len(enum_Q_delta(m, m, 1))


def test_ranks_only_functor_has_no_generators():
    with pytest.raises(ValueError):
        fn.moriyama_tabulate(1, 3).gen(2, 1, 1)


def test_unit_split_rejects_nonsplit_stabilization():
    from homrep.groupring import A2

    q = A2.var("q")
    s = RepMatrix(A2, 2, 1, {(0, 0): 1 + q, (1, 0): 2 * q})
    with pytest.raises(fn.NonSplit):
        fn.unit_split(s)


def test_lb0_convention():
    f = fn.lb_tabulate(0, 6)
    assert [f.rank(n) for n in range(7)] == [0, 0, 1, 1, 1, 1, 1]
