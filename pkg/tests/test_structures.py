import warnings
from fractions import Fraction as F

import pytest

from einsolv import catalog
from einsolv.curvature import MetricLieAlgebra
from einsolv.exactla import Matrix
from einsolv.liealg import LieAlgebra
from einsolv.soliton import diagonal_soliton_solve
from einsolv.structures import (PARA_KAHLER, PSEUDO_KAHLER, FormSpace, certificate_from_dict, certify,
                                closed_two_forms, eigenspaces, endo_from_form, exterior_d, form_matrix,
                                generalized_heisenberg, integrable, nijenhuis_witness, nondegenerate_element,
                                parallel_two_forms, pfaffian_polynomial, search_family, search_structures,
                                verify_certificate)
from einsolv.extension import rank_one_extension


def heis_m(g1=F(1), g2=F(1)):
    return MetricLieAlgebra.diagonal(catalog.lookup("31:1+N"), [g1, g2, g1 * g2 / 3, F(16, 3)])


def span(dim, *forms):
    return FormSpace(dim, tuple(form_matrix(f, dim) for f in forms), ())


def test_exterior_d_examples():
    h = catalog.lookup("31:1")
    assert exterior_d(h, [0, 0, 1]) == form_matrix({(0, 1): 1}, 3)
    assert exterior_d(h, form_matrix({(0, 1): 1}, 3)) == {}
    g = LieAlgebra(5, {(0, 1): {2: -1}, (0, 2): {3: -1}}, check=False)
    assert exterior_d(g, form_matrix({(1, 3): 1}, 5)) == {(0, 1, 2): 1}


def test_closed_forms_examples():
    fs = closed_two_forms(catalog.lookup("31:1+N"))
    expected = span(4, {(0, 1): 1, (2, 3): F(4, 3)}, {(0, 3): 1}, {(1, 3): 1})
    assert len(fs) == 3 and all(fs.contains(B) for B in expected.basis)
    aff = closed_two_forms(catalog.AFF.algebra())
    assert len(aff) == 1 and aff.contains(form_matrix({(0, 1): 1}, 2))
    assert len(closed_two_forms(LieAlgebra.abelian(4))) == 6


def test_parallel_forms_examples():
    par = parallel_two_forms(heis_m())
    assert len(par) == 1 and par.contains(form_matrix({(0, 1): 1, (2, 3): F(4, 3)}, 4))
    flat = MetricLieAlgebra.diagonal(LieAlgebra.abelian(4), [1, -1, 2, 3])
    assert len(parallel_two_forms(flat)) == 6


@pytest.mark.parametrize("params", [(1,), (2,), (F(2, 3),)])
def test_5321_forces_y23(params):
    prob = diagonal_soliton_solve(catalog.lookup("5321:2"))
    ext, _ = rank_one_extension(prob.metric_algebra(params))
    par = parallel_two_forms(ext)
    assert all(B[1, 2] == 0 for B in par.basis)
    assert nondegenerate_element(par) is None


def test_nondegenerate_element_examples():
    W = nondegenerate_element(span(4, {(0, 1): 1, (2, 3): F(4, 3)}))
    assert W == form_matrix({(0, 1): 1, (2, 3): F(4, 3)}, 4)
    assert nondegenerate_element(span(4, {(0, 3): 1}, {(1, 3): 1})) is None
    assert pfaffian_polynomial(span(4, {(0, 3): 1}, {(1, 3): 1})) == {}
    assert nondegenerate_element(span(2, {(0, 1): 1})) == form_matrix({(0, 1): 1}, 2)
    assert nondegenerate_element(span(3, {(0, 1): 1})) is None


@pytest.mark.parametrize("g1, y", [(1, 1), (2, 3), (-1, 2)])
def test_endo_from_form_heisenberg(g1, y):
    g1, y = F(g1), F(y)
    g2 = F(5, 7)
    m = heis_m(g1, g2)
    E = endo_from_form(m, form_matrix({(0, 1): y, (2, 3): F(4, 3) * y}, 4))
    expected = Matrix([[0, -y / g1, 0, 0], [y / g2, 0, 0, 0], [0, 0, 0, -4 * y / (g1 * g2)], [0, 0, y / 4, 0]])
    assert E == expected
    assert endo_from_form(m, Matrix.zeros(4, 4)).is_zero()


def test_aff_structures():
    for label, (metric, W, E) in catalog.aff_structures().items():
        m = MetricLieAlgebra.diagonal(catalog.AFF.algebra(), metric)
        eps = PSEUDO_KAHLER if label == "pseudo-kahler" else PARA_KAHLER
        assert endo_from_form(m, W) == E
        cert = certify(m, W, eps)
        assert cert.valid and cert.lambda_ == -1
        assert integrable(m.algebra, E)
    _, W, K = catalog.aff_structures()["para-kahler"]
    plus, minus = eigenspaces(K)
    assert len(plus) == len(minus) == 1
    assert plus[0][0] == plus[0][1] and minus[0][0] == -minus[0][1]


def test_nijenhuis():
    m = heis_m(F(1), F(1))
    _, _, J = catalog.heisenberg_structures(1, 1, -1)
    assert nijenhuis_witness(m.algebra, J) is None
    # J0 e1 = e3, J0 e2 = e4: N(e1, e2) computed by hand from the brackets
    J0 = Matrix([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])
    g = m.algebra
    col = lambda i: J0.col(i)
    br = g.bracket
    N12 = [a - b - c + d for a, b, c, d in zip(br(col(0), col(1)), J0 @ br(col(0), (0, 1, 0, 0)),
                                                 J0 @ br((1, 0, 0, 0), col(1)),
                                                 J0 @ (J0 @ br((1, 0, 0, 0), (0, 1, 0, 0))))]
    assert any(N12)
    assert nijenhuis_witness(g, J0) == (0, 1)
    assert not integrable(g, J0)


@pytest.mark.parametrize("eps", [PSEUDO_KAHLER, PARA_KAHLER])
def test_certify_heisenberg(eps):
    metric, W, E = catalog.heisenberg_structures(1, 1, eps)
    cert = certify(MetricLieAlgebra.diagonal(catalog.lookup("31:1+N"), metric), W, eps)
    assert cert.valid and cert.lambda_ == F(-1, 2) and cert.endo == E
    expected = ["fundamental_form", "square", "compatibility", "form_invariance", "closed", "parallel_form",
                "parallel_endo", "nijenhuis_zero"] + (["eigen_split"] if eps == PARA_KAHLER else []) + ["einstein"]
    assert cert.ledger.names() == expected


def test_certify_mismatched_metric_fails_square():
    W = form_matrix({(0, 1): 1, (2, 3): F(4, 3)}, 4)
    cert = certify(heis_m(F(1), F(2)), W, PSEUDO_KAHLER)
    assert not cert.ledger["square"].passed and cert.ledger["einstein"].passed
    with pytest.raises(ValueError):
        certify(heis_m(), W, 0)


def test_certificate_round_trip(tmp_path):
    metric, W, E = catalog.h5_structures(2, 3, 5, PARA_KAHLER)
    cert = certify(MetricLieAlgebra.diagonal(catalog.lookup("51:2+N"), metric), W, PARA_KAHLER)
    data = cert.to_dict()
    m, W2, eps, E2 = certificate_from_dict(data)
    assert m.algebra == cert.algebra and W2 == W and eps == PARA_KAHLER and E2 == E
    assert verify_certificate(data).valid
    data["metric"][0][0] = "7"
    assert not verify_certificate(data).valid


def test_search_h5_gives_both_kinds():
    res = search_family(diagonal_soliton_solve(catalog.lookup("51:2")))
    assert {c.kind for c in res.certificates} == {PSEUDO_KAHLER, PARA_KAHLER}
    assert all(c.valid for c in res.certificates)


@pytest.mark.parametrize("key, forced", [("5321:2", (1, 2)), ("521:2", (1, 5))])
def test_search_obstruction(key, forced):
    res = search_family(diagonal_soliton_solve(catalog.lookup(key)), limit=3)
    assert res.obstruction.stage == "no_parallel_nondegenerate"
    assert forced in res.obstruction.witness
    assert f"y{forced[0] + 1}{forced[1] + 1} = 0" in str(res.obstruction)


def test_search_without_closed_form():
    prob = diagonal_soliton_solve(catalog.lookup("421:1"))
    ext, _ = rank_one_extension(prob.metric_algebra())
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = search_structures(ext)
    assert res.obstruction.stage == "no_closed_nondegenerate"


def test_search_warns_off_einstein():
    with pytest.warns(UserWarning):
        search_structures(MetricLieAlgebra.diagonal(catalog.lookup("41:1"), [1, 1, 1, 1]))


def test_search_solves_residual_system_on_kodaira_thurston():
    G = Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    m = MetricLieAlgebra(catalog.lookup("41:1"), G)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = search_structures(m, [PSEUDO_KAHLER])
    (cert,) = res.certificates
    assert cert.valid and cert.lambda_ == 0 and m.curvature.ricci_tensor.is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("eps", [PSEUDO_KAHLER, PARA_KAHLER])
def test_generalized_heisenberg(n, eps):
    ext, cert = generalized_heisenberg(n, eps, F(3, 2), [F(i + 1) for i in range(n)])
    assert cert.valid and cert.lambda_ == F(-1, 2)
    if eps == PARA_KAHLER:
        s = ext.signature()
        assert (s.plus, s.minus) == (n + 1, n + 1)


def test_generalized_heisenberg_n1_is_heisenberg_example():
    ext, cert = generalized_heisenberg(1, PSEUDO_KAHLER, 1, [1])
    metric, W, E = catalog.heisenberg_structures(1, 1, PSEUDO_KAHLER)
    assert ext.algebra == catalog.lookup("31:1+N")
    assert ext.metric == Matrix.diag(metric) and cert.omega == W and cert.endo == E


def test_generalized_heisenberg_n2_is_h5_example():
    ext, cert = generalized_heisenberg(2, PARA_KAHLER, 2, [3, 5])
    metric, W, E = catalog.h5_structures(3, 5, 2, PARA_KAHLER)
    assert ext.algebra == catalog.lookup("51:2+N")
    assert ext.metric == Matrix.diag(metric) and cert.omega == W and cert.endo == E


def test_generalized_heisenberg_rejects_bad_input():
    with pytest.raises(ValueError):
        generalized_heisenberg(2, PSEUDO_KAHLER, 1, [1])
    with pytest.raises(ValueError):
        generalized_heisenberg(1, PSEUDO_KAHLER, 0, [1])
    with pytest.raises(ValueError):
        generalized_heisenberg(1, 2, 1, [1])
