from fractions import Fraction as F

import pytest

from einsolv import catalog
from einsolv.curvature import MetricLieAlgebra, is_einstein
from einsolv.exactla import Matrix
from einsolv.extension import (ExtensionSpec, StandardDecomposition, pseudo_iwasawa_extend, rank_one_extension,
                               subalgebra, verify_correspondence, verify_pseudo_iwasawa)
from einsolv.liealg import ExtensionError, LieAlgebra, flags
from einsolv.nice import nikolayevsky
from einsolv.soliton import diagonal_soliton_solve, soliton_decompose

LAM = F(-1, 2)


def heis_ext():
    return rank_one_extension(MetricLieAlgebra.diagonal(catalog.lookup("31:1"), [1, 1, F(1, 3)]))


def test_heisenberg_extension():
    m, sd = heis_ext()
    assert m.algebra == catalog.lookup("31:1+N")
    assert m.metric == Matrix.diag([1, 1, F(1, 3), F(16, 3)])
    assert is_einstein(m) == LAM
    assert sd == StandardDecomposition((0, 1, 2), (3,))


def test_h5_extension_entry():
    prob = diagonal_soliton_solve(catalog.lookup("51:2"))
    m, _ = rank_one_extension(prob.metric_algebra([2, 3, 5]))
    assert m.metric[5, 5] == 9


def test_double_421_extension():
    g = catalog.lookup("421:1")
    base = MetricLieAlgebra.diagonal(g, [3, 3, 3, 3])
    m, sd = pseudo_iwasawa_extend(ExtensionSpec(base, (nikolayevsky(g), Matrix.diag(catalog.DOUBLE_421_D))))
    assert m.metric.diagonal()[4:] == (F(20, 3), F(20, 3))
    corr = verify_correspondence(m, sd)
    assert corr.ledger.ok


def test_printed_double_421_derivation_is_rejected():
    g = catalog.lookup("421:1")
    base = MetricLieAlgebra.diagonal(g, [3, 3, 3, 3])
    with pytest.raises(ExtensionError):
        pseudo_iwasawa_extend(ExtensionSpec(base, (nikolayevsky(g), Matrix.diag(catalog.DOUBLE_421_D_PRINTED))))


def test_pseudo_iwasawa_checks():
    m, sd = heis_ext()
    assert verify_pseudo_iwasawa(m, sd).ok
    bad = verify_pseudo_iwasawa(m, StandardDecomposition((0, 1, 3), (2,)))
    assert not bad["ideal"].passed
    base, ders, _, _, _ = catalog.abelian_rank_two(-1)
    m2, sd2 = pseudo_iwasawa_extend(ExtensionSpec(MetricLieAlgebra.diagonal(LieAlgebra.abelian(2), base), ders,
                                                  lam=LAM))
    assert sd2 == StandardDecomposition((0, 1), (2, 3))
    assert verify_pseudo_iwasawa(m2, sd2).ok


def test_correspondence_heisenberg():
    m, sd = heis_ext()
    corr = verify_correspondence(m, sd)
    assert corr.ledger.ok and corr.branch == "Nil4"
    assert corr.g_HH == F(4, 3) and corr.trace_D == F(4, 3) and corr.trace_D2 == F(2, 3)
    a = m.algebra.ad(3)
    assert (a @ a).trace() == -LAM * m.metric[3, 3] == F(8, 3)


def test_correspondence_unimodular_branch():
    m = MetricLieAlgebra.diagonal(catalog.EINSTEIN_8D.algebra(), catalog.einstein_8d_metrics()[0])
    corr = verify_correspondence(m, StandardDecomposition(tuple(range(8)), ()))
    assert corr.branch == "Nil3" and not any(corr.H) and corr.ledger.ok


def test_extension_preconditions():
    h = catalog.lookup("31:1")
    base = MetricLieAlgebra.diagonal(h, [1, 1, F(1, 3)])
    with pytest.raises(ExtensionError):  # D not in the span
        pseudo_iwasawa_extend(ExtensionSpec(base, (Matrix.diag([1, 0, 1]),)))
    with pytest.raises(ExtensionError):  # not a nilsoliton
        rank_one_extension(MetricLieAlgebra.diagonal(catalog.lookup("421:1"), [1, 2, 3, 4]))
    with pytest.raises(ExtensionError):  # abelian needs an explicit lambda
        rank_one_extension(MetricLieAlgebra.diagonal(LieAlgebra.abelian(2), [1, 1]))
    # a non-self-adjoint derivation for a non-diagonal metric
    G = Matrix([[1, 1, 0], [1, 2, 0], [0, 0, F(1, 3)]])
    D = Matrix.diag([F(1, 3), F(1, 3), F(2, 3)])
    spec = ExtensionSpec(MetricLieAlgebra(h, G), (Matrix.diag([1, 0, 1]),), soliton_decompose(base))
    with pytest.raises(ExtensionError):
        pseudo_iwasawa_extend(spec)


def test_subalgebra():
    g = catalog.lookup("31:1+N")
    assert subalgebra(g, [0, 1, 2]) == catalog.lookup("31:1")
    assert subalgebra(g, [0, 1, 3]) is None


@pytest.mark.parametrize("entry", [e for e in catalog.NICE_LOW_DIM if not e.algebra().is_abelian()],
                         ids=lambda e: e.name)
def test_extension_properties(entry):
    g = entry.algebra()
    prob = diagonal_soliton_solve(g)
    for s in prob.solutions.sign_patterns[:3]:
        base = prob.metric_algebra([2] * prob.solutions.nfree, s)
        m, sd = rank_one_extension(base)
        # same algebra as the Nikolayevsky extension
        assert m.algebra == catalog.lookup(entry.name + "+N")
        assert flags(m.algebra).solvable and not flags(m.algebra).unimodular
        # the ideal carries the input nilsoliton back, with D = ad H restricted
        restricted = m.restrict(sd.ideal_indices, subalgebra(m.algebra, sd.ideal_indices))
        assert restricted.metric == base.metric
        sol = soliton_decompose(restricted)
        assert sol.lambda_ == LAM
        adH = m.algebra.ad_vector(m.curvature.H)
        n = g.dim
        assert sol.D == Matrix([[adH[i, j] for j in range(n)] for i in range(n)])
