"""Randomised invariants of the curvature, nice-basis and form machinery."""

from fractions import Fraction as F

from hypothesis import assume, given, strategies as st

import oracles
from conftest import nonzero_q, small_q
from einsolv import catalog
from einsolv.curvature import MetricLieAlgebra, bianchi_defect, connection_defects, covariant_derivative
from einsolv.exactla import Matrix, det, inverse
from einsolv.liealg import LieAlgebra
from einsolv.nice import diagonal_ricci_fast
from einsolv.notation import format_algebra, parse_algebra
from einsolv.structures import exterior_d

NICE = list(catalog.NICE_LOW_DIM) + [catalog.DIAGRAM_6D]
SMALL = list(catalog.NICE_LOW_DIM)


def rescale(g, ts):
    br = {(i, j): {k: v * ts[i] * ts[j] / ts[k] for k, v in vec.items()} for (i, j), vec in g.brackets().items()}
    return LieAlgebra(g.dim, br)


@st.composite
def rescaled_nice(draw, entries=NICE):
    e = draw(st.sampled_from(entries))
    g = e.algebra()
    ts = draw(st.lists(nonzero_q, min_size=g.dim, max_size=g.dim))
    return rescale(g, ts)


@st.composite
def with_diagonal_metric(draw, entries=NICE):
    g = draw(rescaled_nice(entries))
    return g, draw(st.lists(nonzero_q, min_size=g.dim, max_size=g.dim))


@st.composite
def with_full_metric(draw, entries=SMALL):
    g = draw(rescaled_nice(entries))
    n = g.dim
    S = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            S[i][j] = S[j][i] = draw(small_q)
    G = Matrix(S)
    assume(det(G) != 0)
    return g, G


@given(with_diagonal_metric())
def test_fast_ricci_matches_koszul(data):
    g, metric = data
    fast, _ = diagonal_ricci_fast(g, metric)
    m = MetricLieAlgebra.diagonal(g, metric)
    assert m.curvature.ricci_operator == Matrix.diag(fast)


@given(with_full_metric())
def test_ricci_matches_oracle_for_full_metrics(data):
    g, G = data
    assert MetricLieAlgebra(g, G).curvature.ricci_tensor.tolist() == oracles.ricci(g.brackets(), G.tolist())


@given(with_full_metric())
def test_levi_civita_identities(data):
    m = MetricLieAlgebra(*data)
    assert all(connection_defects(m).values())
    assert bianchi_defect(m) is None
    assert m.curvature.ricci_tensor.is_symmetric()


@given(with_full_metric())
def test_metric_is_parallel(data):
    m = MetricLieAlgebra(*data)
    assert all(D.is_zero() for D in covariant_derivative(m, m.metric, "form"))


@given(with_full_metric(), st.data())
def test_raising_index_commutes_with_nabla(data, draw):
    # since ∇g = 0, ∇(g^{-1} W) = g^{-1} ∇W, so parallel forms give parallel endomorphisms
    m = MetricLieAlgebra(*data)
    n = m.dim
    W = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            W[i][j] = draw.draw(small_q)
            W[j][i] = -W[i][j]
    W = Matrix(W)
    gi = inverse(m.metric)
    for dW, dE in zip(covariant_derivative(m, W, "form"), covariant_derivative(m, -(gi @ W), "endo")):
        assert dE == -(gi @ dW)


@given(with_diagonal_metric())
def test_bracket_sign_flip_preserves_ricci(data):
    g, metric = data
    a = MetricLieAlgebra.diagonal(g, metric).curvature
    b = MetricLieAlgebra.diagonal(g.negated(), metric).curvature
    assert a.ricci_tensor == b.ricci_tensor and a.scalar == b.scalar


@given(with_diagonal_metric(), nonzero_q)
def test_homothety_scales_ricci_operator(data, c):
    g, metric = data
    a = MetricLieAlgebra.diagonal(g, metric).curvature.ricci_operator
    b = MetricLieAlgebra.diagonal(g, [c * x for x in metric]).curvature.ricci_operator
    assert b == a * (1 / c)


@given(with_diagonal_metric(), st.data())
def test_rescaling_is_an_isometry(data, draw):
    # (g, diag(m)) in basis t_i e_i has metric diag(m_i t_i^2); the diagonal Ricci operator is unchanged
    g, metric = data
    ts = draw.draw(st.lists(nonzero_q, min_size=g.dim, max_size=g.dim))
    a = MetricLieAlgebra.diagonal(g, metric).curvature.ricci_operator
    b = MetricLieAlgebra.diagonal(rescale(g, ts), [x * t * t for x, t in zip(metric, ts)]).curvature.ricci_operator
    assert a == b


@given(st.sampled_from(catalog.all_entries()), st.data())
def test_d_squared_vanishes(entry, draw):
    g = entry.algebra()
    alpha = draw.draw(st.lists(small_q, min_size=g.dim, max_size=g.dim))
    assert exterior_d(g, exterior_d(g, alpha)) == {}


@given(rescaled_nice())
def test_notation_round_trip(g):
    assert parse_algebra(format_algebra(g)) == g
