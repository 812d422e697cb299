from hypothesis import given
from hypothesis import strategies as st

from homrep import forkcalc
from homrep.groupring import A2
from homrep.repmatrix import RepMatrix


def test_json_round_trip_keeps_labels():
    mat = forkcalc.generator_matrix(2, 4, 2)
    back = RepMatrix.from_json(mat.to_json())
    assert back == mat
    assert back.row_labels == mat.row_labels and back.col_labels == mat.col_labels


def test_identity_and_transpose():
    labels = [(1, 0), (0, 1)]
    eye = RepMatrix.identity(A2, labels)
    assert eye.is_identity() and eye.is_coordinate_injection()
    mat = forkcalc.generator_matrix(2, 3, 1)
    assert mat.transpose().transpose() == mat


@given(st.integers(1, 3), st.sampled_from([1, -1]))
def test_matmul_associative(i, s):
    a = forkcalc.generator_matrix(2, 4, i, s)
    b = forkcalc.generator_matrix(2, 4, 4 - i, 1)
    c = forkcalc.generator_matrix(2, 4, 2, -s)
    assert (a @ b) @ c == a @ (b @ c)


def test_determinant_of_generator():
    d = forkcalc.generator_matrix(2, 3, 1).determinant()
    assert d.is_unit()


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-3, 3), st.integers(-3, 3)), max_size=5))
def test_sympy_round_trip(terms):
    from homrep.groupring import Elem
    from homrep.polyutil import from_sympy, to_sympy

    a = Elem.from_terms(A2, [(c, (e1, e2), ()) for c, e1, e2 in terms])
    assert from_sympy(A2, to_sympy(a)) == a
