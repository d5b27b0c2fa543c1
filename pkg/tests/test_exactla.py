from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import fractions_matrix, nonzero_q, small_q
from einsolv.exactla import (DimensionError, Matrix, Q, det, integer_column_hnf, inverse, multiplicative_solve,
                             nullspace, rank, rational_sqrt, rref, signature, solve_linear)


def span_equal(a, b):
    return rank(Matrix(list(a) + list(b))) == rank(Matrix(list(a))) == rank(Matrix(list(b)))


def test_q_rejects_floats():
    with pytest.raises(TypeError):
        Q(0.5)
    assert Q("3/4") == F(3, 4)


def test_solve_scalar():
    sol = solve_linear(Matrix([[2]]), [1])
    assert sol.particular == (F(1, 2),)
    assert sol.nullspace_basis == ()


def test_solve_two_i_plus_j():
    A = Matrix([[3 if i == j else 1 for j in range(4)] for i in range(4)])  # 2I + J
    sol = solve_linear(A, [1, 1, 1, 1])
    assert sol.particular == (F(1, 6),) * 4
    assert sol.unique


def test_inconsistent_system_reports_nullspace():
    sol = solve_linear(Matrix([[1, 1], [1, 1]]), [1, 2])
    assert sol.particular is None and not sol.consistent
    assert span_equal(sol.nullspace_basis, [(1, -1)])


@pytest.mark.parametrize("S, expected", [
    (Matrix.diag([1, 1, 1, 1, F(-7, 3), F(-7, 3), F(98, 15), F(98, 15)]), (6, 2, 0)),
    (Matrix.diag([1, -1]), (1, 1, 0)),
    (Matrix([[0, 1], [1, 0]]), (1, 1, 0)),
    (Matrix([[1, 1], [1, 1]]), (1, 0, 1)),
])
def test_signature_examples(S, expected):
    assert tuple(signature(S)) == expected


def test_signature_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        signature(Matrix([[0, 1], [0, 0]]))


def test_nullspace_examples():
    assert span_equal(nullspace(Matrix([[-1, -1, 1]])), [(1, 0, 1), (0, 1, 1)])
    assert nullspace(Matrix.identity(3)) == []
    assert len(nullspace(Matrix.zeros(2, 3))) == 3


def test_multiplicative_heisenberg():
    sol = multiplicative_solve([(-1, -1, 1)], [F(1, 3)])
    assert sol.nfree == 2
    for t1, t2 in [(1, 1), (2, 3), (F(1, 2), 5)]:
        u = sol.instantiate([t1, t2])
        assert u[2] == F(1, 3) * u[0] * u[1]
    assert set(sol.sign_patterns) == {s for s in __import__("itertools").product((1, -1), repeat=3)
                                      if s[0] * s[1] * s[2] == 1}
    for s in sol.sign_patterns:
        assert sol.satisfied_by(sol.instantiate([2, 5], s))


def test_multiplicative_free_variable():
    sol = multiplicative_solve([(1, 0)], [F(4)])
    assert sol.nfree == 1
    assert sol.instantiate([7])[0] == 4
    assert {s[1] for s in sol.sign_patterns} == {1, -1}


def test_multiplicative_irrational():
    sol = multiplicative_solve([(2, 0)], [F(2)])
    assert sol.irrational
    with pytest.raises(ValueError):
        sol.instantiate()


def test_multiplicative_negative_square_has_no_sign_pattern():
    sol = multiplicative_solve([(2,)], [F(-4)])
    assert sol.sign_patterns == () or sol.constant_part is None


def test_instantiate_checks_parameters():
    sol = multiplicative_solve([(-1, -1, 1)], [F(1, 3)])
    with pytest.raises(DimensionError):
        sol.instantiate([1])
    with pytest.raises(ValueError):
        sol.instantiate([1, -2])


@pytest.mark.parametrize("x, r", [(F(9, 4), F(3, 2)), (F(2), None), (F(-1), None), (F(0), F(0))])
def test_rational_sqrt(x, r):
    assert rational_sqrt(x) == r


@given(fractions_matrix(3, 3))
def test_det_and_inverse_match_sympy(rows):
    A = Matrix(rows)
    S = sympy.Matrix(rows)
    assert det(A) == F(str(S.det()))
    if det(A):
        assert inverse(A) @ A == Matrix.identity(3)
    else:
        with pytest.raises(ValueError):
            inverse(A)


@given(fractions_matrix(3, 4))
def test_rref_and_rank_match_sympy(rows):
    R, piv = rref(Matrix(rows))
    SR, spiv = sympy.Matrix(rows).rref()
    assert tuple(piv) == tuple(spiv)
    assert [[F(str(x)) for x in SR.row(i)] for i in range(3)] == [list(r) for r in R]


@given(fractions_matrix(3, 4), st.lists(small_q, min_size=3, max_size=3))
def test_solve_linear_residual(rows, b):
    A = Matrix(rows)
    sol = solve_linear(A, b)
    for v in sol.nullspace_basis:
        assert not any(A @ list(v))
    assert len(sol.nullspace_basis) == 4 - rank(A)
    if sol.consistent:
        assert list(A @ list(sol.particular)) == list(b)
    else:
        assert rank(Matrix([list(r) + [x] for r, x in zip(rows, b)])) > rank(A)


@given(st.lists(nonzero_q, min_size=1, max_size=5), st.data())
def test_signature_is_congruence_invariant(diag, data):
    n = len(diag)
    P = Matrix(data.draw(fractions_matrix(n, n)))
    if det(P) == 0:
        return
    S = P.T @ Matrix.diag(diag) @ P
    sig = signature(S)
    assert (sig.plus, sig.minus, sig.null) == (sum(x > 0 for x in diag), sum(x < 0 for x in diag), 0)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_integer_column_hnf_is_unimodular_transform(E):
    H, U = integer_column_hnf(E)
    EU = [[sum(E[i][k] * U[k][j] for k in range(4)) for j in range(4)] for i in range(len(E))]
    assert EU == H
    assert abs(sympy.Matrix(U).det()) == 1


@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=1, max_size=2),
       st.lists(st.sampled_from([F(1), F(4), F(1, 9), F(-1), F(9, 4), F(2)]), min_size=2, max_size=2))
def test_multiplicative_solutions_satisfy_system(E, r):
    r = r[:len(E)]
    sol = multiplicative_solve(E, r)
    if sol.constant_part is None:
        return
    for s in sol.sign_patterns:
        for params in ([1] * sol.nfree, [F(2, 3)] * sol.nfree):
            assert sol.satisfied_by(sol.instantiate(params, s))
