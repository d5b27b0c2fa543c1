"""Nice bases, root matrices and the diagonal Ricci formula."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactla import Matrix, Q, solve_linear
from .liealg import LieAlgebra, derivations

__all__ = [
    "Arrow",
    "NiceStructure",
    "NiceViolation",
    "NotNiceError",
    "nice_structure",
    "require_nice",
    "nikolayevsky",
    "diagonal_ricci_fast",
    "root_row",
]


@dataclass(frozen=True, order=True)
class Arrow:
    """Nonzero ``c_ij^k`` with i < j (0-based)."""

    k: int
    i: int
    j: int
    coefficient: Fraction

    def __str__(self) -> str:
        return f"e{self.i + 1} -(e{self.j + 1})-> e{self.k + 1} [{self.coefficient}]"


@dataclass(frozen=True)
class NiceViolation:
    condition: int  # 1: a bracket hits two basis vectors; 2: overlapping pairs into one target
    witness: tuple

    def __str__(self) -> str:
        if self.condition == 1:
            i, j, ks = self.witness
            return f"[e{i + 1}, e{j + 1}] has components along " + ", ".join(f"e{k + 1}" for k in ks)
        (i, j), (l, m), k = self.witness
        return f"pairs ({i + 1},{j + 1}) and ({l + 1},{m + 1}) both hit e{k + 1} and share an index"


class NotNiceError(ValueError):
    pass


def root_row(n: int, i: int, j: int, k: int) -> tuple[int, ...]:
    row = [0] * n
    row[i] -= 1
    row[j] -= 1
    row[k] += 1
    return tuple(row)


@dataclass(frozen=True)
class NiceStructure:
    dim: int
    arrows: tuple[Arrow, ...]  # sorted by (k, i, j)

    @property
    def root_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(root_row(self.dim, a.i, a.j, a.k) for a in self.arrows)

    @property
    def c_vector(self) -> tuple[Fraction, ...]:
        return tuple(a.coefficient for a in self.arrows)

    def root_matrix_q(self) -> Matrix:
        return Matrix(self.root_matrix, cols=self.dim)


def nice_structure(g: LieAlgebra) -> NiceStructure | NiceViolation:
    arrows = []
    for (i, j), vec in sorted(g.brackets().items()):
        ks = sorted(vec)
        if len(ks) > 1:
            return NiceViolation(1, (i, j, tuple(ks)))
        arrows.append(Arrow(ks[0], i, j, vec[ks[0]]))
    arrows.sort(key=lambda a: (a.k, a.i, a.j))
    for x in range(len(arrows)):
        for y in range(x + 1, len(arrows)):
            a, b = arrows[x], arrows[y]
            if a.k == b.k and {a.i, a.j} & {b.i, b.j}:
                return NiceViolation(2, ((a.i, a.j), (b.i, b.j), a.k))
    return NiceStructure(g.dim, tuple(arrows))


def require_nice(g: LieAlgebra) -> NiceStructure:
    ns = nice_structure(g)
    if isinstance(ns, NiceViolation):
        raise NotNiceError(f"basis is not nice: {ns}")
    return ns


def nikolayevsky(g: LieAlgebra, ns: NiceStructure | None = None) -> Matrix:
    """Diagonal N with M n = 0 and tr(N X) = tr X for every derivation X."""
    ns = ns or require_nice(g)
    n = g.dim
    rows = [list(r) for r in ns.root_matrix]
    rhs: list[Fraction] = [Fraction(0)] * len(rows)
    for X in derivations(g).basis:
        d = X.diagonal()
        if any(d):
            rows.append(list(d))
            rhs.append(X.trace())
    sol = solve_linear(Matrix(rows, cols=n), rhs)
    if sol.particular is None:
        raise NotNiceError("no diagonal Nikolayevsky derivation in this basis")
    if sol.nullspace_basis:
        raise NotNiceError("diagonal Nikolayevsky derivation is not unique in this basis")
    return Matrix.diag(sol.particular)


def diagonal_ricci_fast(g: LieAlgebra, metric: Sequence, ns: NiceStructure | None = None) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Diagonal of the Ricci operator of a diagonal metric, and the vector X.

    ``X_h = c_h**2 g_k / (g_i g_j)`` for the h-th arrow, and Ric = 1/2 M^T X.
    """
    ns = ns or require_nice(g)
    gs = [Q(x) for x in metric]
    if len(gs) != g.dim:
        raise ValueError("metric length does not match dimension")
    if any(x == 0 for x in gs):
        raise ValueError("diagonal metric entries must be nonzero")
    X = tuple(a.coefficient ** 2 * gs[a.k] / (gs[a.i] * gs[a.j]) for a in ns.arrows)
    ric = [Fraction(0)] * g.dim
    for x, row in zip(X, ns.root_matrix):
        for l, e in enumerate(row):
            if e:
                ric[l] += Fraction(e, 2) * x
    return tuple(ric), X
