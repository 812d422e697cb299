from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homrep.partitions import (
    delta_bijection,
    enum_P,
    enum_P_delta,
    enum_Q,
    enum_Q_delta,
    forget_first,
    lb_rank,
    moriyama_rank,
    stab_insert,
    stab_insert_Q,
    unforget_first,
)


def test_enum_P_examples():
    assert enum_P(2, 3) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert enum_P(1, 2) == ((1, 0), (0, 1))
    assert enum_P(3, 1) == ((3,),)


def test_enum_P_delta_examples():
    assert enum_P_delta(2, 1, 3) == ((1, 1, 0), (1, 0, 1), (2, 0, 0))
    assert enum_P_delta(2, 1, 0) == ()
    for m in range(1, 5):
        for n in range(1, 6):
            assert enum_P_delta(m, m, n) == ((1,) * m + (0,) * (n - 1),)


def test_stab_insert_examples():
    assert stab_insert(2, 0, (1, 0, 1)) == (0, 1, 0, 1)
    assert stab_insert(2, 1, (2, 0)) == (2, 0, 0)
    assert stab_insert(3, 3, (1, 1, 1)) == (1, 1, 1, 0)
    with pytest.raises(ValueError):
        stab_insert(2, 1, (0, 2))


def test_forget_first_examples():
    assert forget_first((1, 1, 0)) == (0, 1, 0)
    assert forget_first((2, 0, 0)) == (1, 0, 0)
    assert len(enum_P_delta(2, 1, 3)) == 3 == len(enum_P(1, 3))
    with pytest.raises(ValueError):
        forget_first((0, 2))


def test_moriyama_examples():
    assert len(enum_Q(2, 1)) == 6 == moriyama_rank(2, 1)
    assert len(enum_Q_delta(2, 1, 1)) == 14 == len(enum_Q(2, 2)) - len(enum_Q(2, 1))
    for g in range(1, 6):
        assert len(enum_Q(1, g)) == 2 * g


def test_delta_bijection_counts():
    assert len(delta_bijection(2, 0, 3)) == 3
    for n in range(1, 8):
        assert len(enum_P_delta(1, 1, n)) == 1


def test_enum_P_sizes():
    for m in range(7):
        for length in range(11):
            if m == 0 and length == 0:
                continue
            assert len(enum_P(m, length)) == comb(m + length - 1, m)
            assert len(set(enum_P(m, length))) == len(enum_P(m, length))


def test_lb_rank():
    assert lb_rank(2, 4) == 6
    assert lb_rank(3, 0) == lb_rank(3, 1) == 0


def test_telescoping_P():
    # the only defect is the extra kernel at m = 1, k = 2, object 0
    defects = {}
    for m in range(1, 5):
        for k in range(0, m + 2):
            for n in range(8):
                d = len(enum_P_delta(m, k, n + 1)) - len(enum_P_delta(m, k + 1, n)) - len(enum_P_delta(m, k, n))
                if d:
                    defects[m, k, n] = d
    assert defects == {(1, 2, 0): -1}


def test_telescoping_Q():
    for m in range(1, 5):
        for k in range(0, m + 2):
            for g in range(8):
                assert len(enum_Q_delta(m, k + 1, g)) + len(enum_Q_delta(m, k, g)) == len(enum_Q_delta(m, k, g + 1))


def test_delta_m_is_a_bijection():
    for m in range(1, 5):
        for n in range(1, 7):
            src = enum_P_delta(m, m, n)
            dst = enum_P_delta(m, m, n + 1)
            assert sorted(stab_insert(m, m, w) for w in src) == sorted(dst)


@given(st.integers(1, 4), st.integers(0, 5), st.integers(1, 6))
def test_stab_insert_injective_into_codomain(m, k, n):
    src = enum_P_delta(m, k, n)
    image = [stab_insert(m, k, w) for w in src]
    assert len(set(image)) == len(image)
    assert set(image) <= set(enum_P_delta(m, k, n + 1))


@given(st.integers(1, 4), st.integers(0, 3), st.integers(1, 4))
def test_stab_insert_Q_injective(m, k, g):
    src = enum_Q_delta(m, k, g)
    image = [stab_insert_Q(k, a) for a in src]
    assert len(set(image)) == len(image)
    assert set(image) <= set(enum_Q_delta(m, k, g + 1))


@given(st.integers(1, 5), st.integers(1, 6))
def test_forget_first_bijection(m, n):
    src = enum_P_delta(m, 1, n)
    image = [forget_first(w) for w in src]
    assert sorted(image) == sorted(enum_P(m - 1, n))
    assert [unforget_first(w) for w in image] == list(src)


def test_moriyama_rank_formula():
    for m in range(1, 5):
        for g in range(0, 6):
            assert len(enum_Q(m, g)) == moriyama_rank(m, g)
