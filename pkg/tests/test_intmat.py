from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from axbq.ktheory.intmat import (determinant, integer_kernel, invariant_factors, lattice_basis,
                                 matmul, matvec, rank, smith_normal_form, solve_integer)


def minors_oracle(m):
    """Invariant factors from gcds of k x k minors (sympy determinants)."""
    rows, cols = len(m), len(m[0])
    M = sympy.Matrix(m)
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, int(M.extract(list(rs), list(cs)).det()))
        if g == 0:
            out.extend([0] * (min(rows, cols) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def test_snf_fixed_point():
    m = [[1, 0, 0], [0, 2, 0], [0, 0, 0]]
    D, _, _ = smith_normal_form(m)
    assert D == m


def test_snf_dihedral_two():
    m = [[2, 1, 0], [0, 0, 1], [0, 0, 1]]
    assert minors_oracle(m) == [1, 1, 0]
    assert invariant_factors(m) == [1, 1, 0]


def test_snf_dihedral_three():
    m = [[3, 1, 1], [0, 1, 0], [0, 0, 1]]
    assert minors_oracle(m) == [1, 1, 3]
    assert invariant_factors(m) == [1, 1, 3]


def test_snf_empty_and_zero():
    assert invariant_factors([]) == []
    assert invariant_factors([[0, 0], [0, 0]]) == [0, 0]
    D, U, V = smith_normal_form([], ncols=2)
    assert D == [] and V == [[1, 0], [0, 1]]


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_snf_decomposition(m):
    D, U, V = smith_normal_form(m)
    assert matmul(matmul(U, m), V) == D
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    diag = [D[i][i] for i in range(min(len(m), len(m[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b % a == 0) if a else b == 0


@given(matrices)
def test_snf_matches_minors(m):
    assert invariant_factors(m) == minors_oracle(m)


@given(matrices)
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


@given(matrices)
def test_kernel_basis(m):
    K = integer_kernel(m)
    cols = len(m[0])
    assert len(K) == cols - sympy.Matrix(m).rank()
    for v in K:
        assert matvec(m, v) == [0] * len(m)
    if K:
        # a lattice basis of a saturated sublattice extends to a unimodular basis
        assert [d for d in invariant_factors(K) if d] == [1] * len(K)


@given(matrices, st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_round_trip(m, x):
    x = x[:len(m[0])]
    b = matvec(m, x)
    sol = solve_integer(m, b)
    assert sol is not None and matvec(m, sol) == b


def test_solve_detects_no_integer_solution():
    assert solve_integer([[2, 0], [0, 3]], [1, 3]) is None
    assert solve_integer([[2, 4]], [6]) is not None


@given(matrices)
def test_lattice_basis_spans_rows(m):
    B = lattice_basis(m, len(m[0]))
    assert len(B) == sympy.Matrix(m).rank()
    for row in m:
        assert solve_integer([list(c) for c in zip(*B)], row) is not None if B else not any(row)
    for row in B:
        assert solve_integer([list(c) for c in zip(*m)], row) is not None


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_determinant_matches_sympy(m):
    assert determinant(m) == sympy.Matrix(m).det()


def test_determinant_empty():
    assert determinant([]) == 1


@pytest.mark.parametrize("m,want", [([[4, 6], [6, 4]], [2, 10]), ([[0, 5], [3, 0]], [1, 15])])
def test_snf_small_examples(m, want):
    assert invariant_factors(m) == minors_oracle(m) == want
