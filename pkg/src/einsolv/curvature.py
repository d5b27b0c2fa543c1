"""Curvature of left-invariant pseudo-Riemannian metrics.

The Levi-Civita connection comes from the Koszul formula for left-invariant
fields,

    2 g(∇_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y),

and ``R(X,Y) = [∇_X, ∇_Y] - ∇_[X,Y]``, ``ric(Y,Z) = tr(X -> R(X,Y)Z)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactla import Matrix, Q, det, inverse, signature, SignatureResult
from .liealg import LieAlgebra

__all__ = [
    "DegenerateMetricError",
    "MetricLieAlgebra",
    "Connection",
    "CurvatureData",
    "levi_civita",
    "curvature",
    "ricci_operator",
    "adjoint",
    "mean_curvature",
    "covariant_derivative",
    "is_einstein",
    "connection_defects",
    "bianchi_defect",
]


class DegenerateMetricError(ValueError):
    pass


class MetricLieAlgebra:
    def __init__(self, algebra: LieAlgebra, metric):
        metric = metric if isinstance(metric, Matrix) else Matrix(metric)
        if metric.shape != (algebra.dim, algebra.dim):
            raise ValueError(f"metric shape {metric.shape} does not match dimension {algebra.dim}")
        if not metric.is_symmetric():
            raise ValueError("metric must be symmetric")
        if det(metric) == 0:
            raise DegenerateMetricError("metric is degenerate")
        self.algebra = algebra
        self.metric = metric

    @classmethod
    def diagonal(cls, algebra: LieAlgebra, entries: Sequence) -> "MetricLieAlgebra":
        return cls(algebra, Matrix.diag([Q(x) for x in entries]))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def metric_inverse(self) -> Matrix:
        return inverse(self.metric)

    @cached_property
    def connection(self) -> "Connection":
        return levi_civita(self)

    @cached_property
    def curvature(self) -> "CurvatureData":
        return curvature(self)

    def signature(self) -> SignatureResult:
        return signature(self.metric)

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(u, self.metric @ v)), Fraction(0))

    def restrict(self, indices: Sequence[int], algebra: LieAlgebra) -> "MetricLieAlgebra":
        g = self.metric
        return MetricLieAlgebra(algebra, Matrix([[g[i, j] for j in indices] for i in indices]))

    def __repr__(self) -> str:
        return f"MetricLieAlgebra({self.algebra!r}, {self.metric!r})"


@dataclass(frozen=True)
class Connection:
    """``ops[i]`` is ∇_{e_i} as a matrix; its column j is ∇_{e_i} e_j."""

    ops: tuple[Matrix, ...]

    def gamma(self, i: int, j: int, k: int) -> Fraction:
        return self.ops[i][k, j]

    def nabla(self, i: int, v: Sequence) -> tuple[Fraction, ...]:
        return self.ops[i] @ v

    def along(self, x: Sequence) -> Matrix:
        """∇_X for X = sum x_i e_i."""
        n = len(self.ops)
        out = Matrix.zeros(n, n)
        for i, a in enumerate(x):
            if a:
                out = out + self.ops[i] * a
        return out


def levi_civita(m: MetricLieAlgebra) -> Connection:
    n = m.dim
    c = m.algebra.c
    g = m.metric
    # cg[i][j][k] = g([e_i, e_j], e_k)
    cg = [[g.T @ c[i][j] for j in range(n)] for i in range(n)]
    half = Fraction(1, 2)
    ginv = m.metric_inverse
    ops = []
    for i in range(n):
        cols = []
        for j in range(n):
            low = [half * (cg[i][j][k] - cg[j][k][i] + cg[k][i][j]) for k in range(n)]
            cols.append(ginv @ low)
        ops.append(Matrix.from_columns(cols))
    return Connection(tuple(ops))


@dataclass(frozen=True)
class CurvatureData:
    riemann: tuple[tuple[Matrix, ...], ...]  # riemann[i][j] = R(e_i, e_j) as an operator
    ricci_tensor: Matrix
    ricci_operator: Matrix
    scalar: Fraction
    H: tuple[Fraction, ...]


def _riemann(m: MetricLieAlgebra, conn: Connection) -> tuple[tuple[Matrix, ...], ...]:
    n = m.dim
    c = m.algebra.c
    A = conn.ops
    zero = Matrix.zeros(n, n)
    R = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            Rij = A[i] @ A[j] - A[j] @ A[i] - conn.along(c[i][j])
            R[i][j] = Rij
            R[j][i] = -Rij
    return tuple(tuple(r) for r in R)


def curvature(m: MetricLieAlgebra) -> CurvatureData:
    n = m.dim
    R = _riemann(m, m.connection)
    ric = Matrix([[sum((R[i][j][i, k] for i in range(n)), Fraction(0)) for k in range(n)] for j in range(n)])
    op = m.metric_inverse @ ric
    return CurvatureData(R, ric, op, op.trace(), mean_curvature(m))


def ricci_operator(m: MetricLieAlgebra) -> Matrix:
    return m.curvature.ricci_operator


def adjoint(m: MetricLieAlgebra, E: Matrix) -> Matrix:
    """E* with g(E* X, Y) = g(X, E Y)."""
    return m.metric_inverse @ E.T @ m.metric


def mean_curvature(m: MetricLieAlgebra) -> tuple[Fraction, ...]:
    """H with g(H, X) = tr ad X."""
    traces = [m.algebra.ad(i).trace() for i in range(m.dim)]
    return m.metric_inverse @ traces


def covariant_derivative(m: MetricLieAlgebra, T: Matrix, kind: str = "form") -> tuple[Matrix, ...]:
    """∇T, one matrix per direction e_a.

    ``kind="form"`` treats ``T[b, c]`` as a bilinear form T(e_b, e_c);
    ``kind="endo"`` treats T as an endomorphism (column c is T e_c).
    """
    A = m.connection.ops
    if kind == "form":
        return tuple(-(Aa.T @ T) - T @ Aa for Aa in A)
    if kind == "endo":
        return tuple(Aa @ T - T @ Aa for Aa in A)
    raise ValueError(f"unknown tensor kind {kind!r}")


def is_einstein(m: MetricLieAlgebra) -> Fraction | None:
    op = m.curvature.ricci_operator
    lam = op[0, 0]
    return lam if op == Matrix.identity(m.dim) * lam else None


def connection_defects(m: MetricLieAlgebra) -> dict[str, bool]:
    """Exact checks of torsion-freeness and metricity on all basis pairs."""
    n = m.dim
    A = m.connection.ops
    torsion_free = all(
        tuple(a - b for a, b in zip(A[i].col(j), A[j].col(i))) == m.algebra.c[i][j]
        for i in range(n) for j in range(n))
    metric_ok = all(D.is_zero() for D in covariant_derivative(m, m.metric, "form"))
    return {"torsion_free": torsion_free, "metric": metric_ok}


def bianchi_defect(m: MetricLieAlgebra) -> tuple[int, int, int] | None:
    """First basis triple violating R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0, or None."""
    n = m.dim
    R = m.curvature.riemann
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = [a + b + c for a, b, c in zip(R[i][j].col(k), R[j][k].col(i), R[k][i].col(j))]
                if any(s):
                    return (i, j, k)
    return None
