import pytest
import sympy
from hypothesis import given, strategies as st

from axbq.ktheory.laurent import LaurentMatrix, LaurentPoly, shift_embedding_check, shift_matrix

z = LaurentPoly.z()
zs = sympy.Symbol("z")


def to_sympy(p: LaurentPoly):
    return sum(c * zs ** k for k, c in p.coeffs.items())


polys = st.dictionaries(st.integers(-3, 3), st.integers(-4, 4), max_size=3).map(LaurentPoly)


def mats(size):
    return st.dictionaries(st.tuples(st.integers(0, size - 1), st.integers(0, size - 1)), polys,
                           max_size=size * size).map(lambda e: LaurentMatrix(size, e))


def test_poly_arithmetic():
    p = LaurentPoly({-1: 2, 0: 1}) * LaurentPoly({1: 1, 2: -1})
    assert p == LaurentPoly({0: 2, 1: -1, 2: -1})
    assert (z ** 3).bar() == LaurentPoly.z(-3)
    assert str(LaurentPoly({-2: 1, 0: -3, 1: 1})) == "z^-2 - 3 + z"
    assert LaurentPoly() == 0 and z - z == 0


def test_exact_division():
    num = (z + 1) * (z - LaurentPoly.z(-1))
    assert num.exact_div(z + 1) == z - LaurentPoly.z(-1)
    with pytest.raises(ValueError):
        (z + 2).exact_div(z + 1)
    with pytest.raises(ZeroDivisionError):
        z.exact_div(LaurentPoly())


@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_division_round_trip(a, b):
    assert (a * b).exact_div(b) == a


def test_shift_matrix_small():
    assert shift_matrix(1) == LaurentMatrix(1, {(0, 0): z})
    v = shift_matrix(2)
    assert v == LaurentMatrix(2, {(0, 1): z, (1, 0): 1})
    assert v * v == LaurentMatrix.scalar(2, z)


@pytest.mark.parametrize("k", [1, 2, 3, 12, 64])
def test_shift_embedding(k):
    assert shift_embedding_check(k)


def test_shift_needs_positive_size():
    with pytest.raises(ValueError):
        shift_matrix(0)


@pytest.mark.parametrize("k", range(1, 9))
def test_shift_determinant_against_sympy(k):
    v = shift_matrix(k)
    dense = sympy.Matrix(k, k, lambda i, j: to_sympy(v[(i, j)]))
    assert sympy.expand(dense.det()) == to_sympy(v.det())
    assert v.det() == LaurentPoly({1: (-1) ** (k - 1)})


def test_lower_powers_are_not_scalar():
    v = shift_matrix(5)
    assert all(v ** j != LaurentMatrix.scalar(5, z) for j in range(1, 5))


@given(mats(3))
def test_bareiss_against_sympy(m):
    dense = sympy.Matrix(3, 3, lambda i, j: to_sympy(m[(i, j)]))
    assert sympy.expand(dense.det() - to_sympy(m._bareiss())) == 0
    assert sympy.expand(dense.det() - to_sympy(m.det())) == 0


@given(mats(3), mats(3), mats(3))
def test_matrix_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).adjoint() == b.adjoint() * a.adjoint()
    assert a.adjoint().adjoint() == a
    assert LaurentMatrix.identity(3) * a == a == a * LaurentMatrix.identity(3)


@given(mats(3), mats(3))
def test_determinant_multiplicative(a, b):
    assert (a * b).det() == a.det() * b.det()


def test_matrix_shape_errors():
    with pytest.raises(IndexError):
        LaurentMatrix(2, {(2, 0): 1})
    with pytest.raises(ValueError):
        LaurentMatrix.identity(2) * LaurentMatrix.identity(3)


def test_non_unitary():
    assert not LaurentMatrix(2, {(0, 0): 2, (1, 1): 1}).is_unitary()
