from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given

from conftest import fractions_matrix
from einsolv.exactla import Matrix
from einsolv.polys import (charpoly, is_squarefree, linear_form, minimal_polynomial, mv_eval, mv_nonzero_point,
                           pfaffian, rational_roots, splits_over_rationals)

x = sympy.Symbol("x")


@given(fractions_matrix(3, 3))
def test_charpoly_matches_sympy(rows):
    expected = sympy.Matrix(rows).charpoly(x).all_coeffs()[::-1]
    assert charpoly(Matrix(rows)) == [F(str(c)) for c in expected]


@given(fractions_matrix(3, 3))
def test_minimal_polynomial_annihilates_and_divides(rows):
    A = Matrix(rows)
    mp = minimal_polynomial(A)
    acc = Matrix.zeros(3, 3)
    P = Matrix.identity(3)
    for c in mp:
        acc = acc + P * c
        P = P @ A
    assert acc.is_zero()
    assert sympy.rem(sympy.Poly(charpoly(A)[::-1], x), sympy.Poly(mp[::-1], x)).is_zero


def test_squarefree_and_rational_roots():
    N = Matrix.diag([F(2, 3), F(2, 3), F(4, 3)])
    assert is_squarefree(minimal_polynomial(N))
    assert not is_squarefree(minimal_polynomial(Matrix([[0, 1], [0, 0]])))
    assert sorted(rational_roots([F(-2, 9), F(1), F(-1), ][::1])) == sorted(
        F(str(r)) for r in sympy.roots(sympy.Poly([F(-1), 1, F(-2, 9)][::1], x)))
    assert splits_over_rationals(charpoly(N))
    assert not splits_over_rationals([F(-2), 0, 1])


def test_pfaffian_four_by_four():
    # Pf = a12 a34 - a13 a24 + a14 a23 in six variables
    names = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    A = [[{} for _ in range(4)] for _ in range(4)]
    for v, (i, j) in enumerate(names):
        A[i][j] = linear_form([int(k == v) for k in range(6)])
        A[j][i] = linear_form([-int(k == v) for k in range(6)])
    pf = pfaffian(A)
    pt = (2, 3, 5, 7, 11, 13)
    assert mv_eval(pf, pt) == 2 * 13 - 3 * 11 + 5 * 7
    assert pfaffian([[{}] * 3] * 3) == {}
    with pytest.raises(ValueError):
        pfaffian([])


def test_nonzero_point():
    p = {(1, 1): F(1), (2, 0): F(-1)}  # y1*y2 - y1^2
    pt = mv_nonzero_point(p, 2)
    assert mv_eval(p, pt) != 0
    assert mv_nonzero_point({}, 2) is None
