from fractions import Fraction as F

import pytest

from einsolv import catalog
from einsolv.curvature import MetricLieAlgebra
from einsolv.exactla import Matrix
from einsolv.liealg import LieAlgebra, derivations
from einsolv.nice import NiceViolation, NotNiceError, diagonal_ricci_fast, nice_structure, nikolayevsky, require_nice
from einsolv.notation import parse_algebra


def test_diagram_algebra_root_matrix():
    ns = nice_structure(catalog.DIAGRAM_6D.algebra())
    assert len(ns.arrows) == 4
    assert sorted(ns.root_matrix) == sorted(catalog.DIAGRAM_6D_ROOT_MATRIX)


def test_eight_dimensional_algebra_is_nice():
    ns = nice_structure(catalog.EINSTEIN_8D.algebra())
    assert not isinstance(ns, NiceViolation) and len(ns.arrows) == 10


def test_abelian_is_nice_and_empty():
    ns = nice_structure(LieAlgebra.abelian(3))
    assert ns.arrows == () and ns.root_matrix == ()
    assert nikolayevsky(LieAlgebra.abelian(3)) == Matrix.identity(3)


def test_not_nice():
    g = parse_algebra("0,0,e^{12},e^{12}")
    assert isinstance(nice_structure(g), NiceViolation)
    with pytest.raises(NotNiceError):
        require_nice(g)


@pytest.mark.parametrize("entry", catalog.NICE_LOW_DIM, ids=lambda e: e.name)
def test_nikolayevsky_table(entry):
    g = entry.algebra()
    N = nikolayevsky(g)
    assert N.diagonal() == entry.nikolayevsky
    # defining property, checked against every derivation
    for X in derivations(g).basis:
        assert (N @ X).trace() == X.trace()


def test_nikolayevsky_named_examples():
    assert nikolayevsky(catalog.lookup("31:1")).diagonal() == (F(2, 3), F(2, 3), F(4, 3))
    assert nikolayevsky(catalog.lookup("51:2")).diagonal() == tuple(F(3, 4) * x for x in (1, 1, 1, 1, 2))


def test_fast_ricci_examples():
    ric, X = diagonal_ricci_fast(catalog.lookup("31:1"), [1, 1, F(1, 3)])
    assert ric == (F(-1, 6), F(-1, 6), F(1, 6)) and X == (F(1, 3),)
    metric = catalog.einstein_8d_metrics()[0]
    ric, _ = diagonal_ricci_fast(catalog.EINSTEIN_8D.algebra(), metric)
    assert ric == (F(7, 15),) * 8 and sum(ric) == F(56, 15)
    assert diagonal_ricci_fast(LieAlgebra.abelian(3), [2, -1, 5])[0] == (0, 0, 0)


def test_fast_ricci_rejects_bad_metrics():
    g = catalog.lookup("31:1")
    with pytest.raises(ValueError):
        diagonal_ricci_fast(g, [1, 0, 1])
    with pytest.raises(ValueError):
        diagonal_ricci_fast(g, [1, 1])
