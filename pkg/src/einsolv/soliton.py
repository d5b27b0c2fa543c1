"""Nilsoliton decompositions Ric = λ·id + D and the diagonal nilsoliton solver."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .checks import Check, Ledger
from .curvature import MetricLieAlgebra
from .exactla import Matrix, MonomialSolution, Q, fmt, multiplicative_solve, nullspace, solve_linear
from .liealg import LieAlgebra, derivations, flags, is_derivation
from .nice import NiceStructure, diagonal_ricci_fast, nikolayevsky, require_nice
from .polys import charpoly, is_squarefree, minimal_polynomial, splits_over_rationals

__all__ = [
    "NilType",
    "SolitonDecomposition",
    "DiagonalSolitonProblem",
    "NoDiagonalMetricError",
    "soliton_decompose",
    "classify",
    "b_vector",
    "diagonal_soliton_solve",
    "verify_nilsoliton",
    "DEFAULT_LAMBDA",
]

DEFAULT_LAMBDA = Fraction(-1, 2)


class NilType(str, enum.Enum):
    NIL1 = "Nil1"  # λ = 0, D = 0
    NIL2 = "Nil2"  # λ = 0, D ≠ 0
    NIL3 = "Nil3"  # λ ≠ 0, D = 0
    NIL4 = "Nil4"  # λ ≠ 0, D ≠ 0
    NOT_SOLITON = "NotSoliton"


def classify(lam: Fraction, D: Matrix) -> NilType:
    if lam == 0:
        return NilType.NIL1 if D.is_zero() else NilType.NIL2
    return NilType.NIL3 if D.is_zero() else NilType.NIL4


@dataclass(frozen=True)
class SolitonDecomposition:
    lambda_: Fraction | None
    D: Matrix | None
    type: NilType
    D_semisimple: bool | None = None
    D_eigenvalues_rational: bool | None = None
    degenerate: bool = False  # abelian case: every λ works, canonical λ = 0 reported

    @classmethod
    def from_pair(cls, lam, D: Matrix) -> "SolitonDecomposition":
        lam = Q(lam)
        return cls(lam, D, classify(lam, D), *_spectral_flags(D))


def _spectral_flags(D: Matrix) -> tuple[bool, bool]:
    return is_squarefree(minimal_polynomial(D)), splits_over_rationals(charpoly(D))


def soliton_decompose(m: MetricLieAlgebra) -> SolitonDecomposition:
    """Solve Ric = λ id + D with D a derivation."""
    g = m.algebra
    n = g.dim
    if not flags(g).nilpotent:
        warnings.warn("nilsoliton decomposition requested on a non-nilpotent algebra", stacklevel=2)
    ric = m.curvature.ricci_operator
    if g.is_abelian():
        if ric.is_zero():
            Z = Matrix.zeros(n, n)
            return SolitonDecomposition(Fraction(0), Z, NilType.NIL1, True, True, degenerate=True)
        return SolitonDecomposition(None, None, NilType.NOT_SOLITON)
    basis = derivations(g).basis
    # unknowns: λ, then one coordinate per derivation basis element
    cols = [[Fraction(int(i == j)) for i in range(n) for j in range(n)]]
    cols += [[x for row in X.tolist() for x in row] for X in basis]
    target = [x for row in ric.tolist() for x in row]
    sol = solve_linear(Matrix.from_columns(cols), target)
    if sol.particular is None:
        return SolitonDecomposition(None, None, NilType.NOT_SOLITON)
    if sol.nullspace_basis:  # identity is not a derivation of a non-abelian algebra
        raise AssertionError("non-unique nilsoliton decomposition on a non-abelian algebra")
    lam = sol.particular[0]
    D = ric - Matrix.identity(n) * lam
    return SolitonDecomposition.from_pair(lam, D)


def verify_nilsoliton(m: MetricLieAlgebra, claim: SolitonDecomposition) -> Ledger:
    ric = m.curvature.ricci_operator
    n = m.dim
    checks = []
    if claim.lambda_ is None or claim.D is None:
        return Ledger([Check("ricci_decomposition", False, "claim carries no (lambda, D)")])
    residual = ric - Matrix.identity(n) * claim.lambda_ - claim.D
    checks.append(Check("ricci_decomposition", residual.is_zero(),
                        "" if residual.is_zero() else f"Ric - lambda*id - D = {residual!r}"))
    checks.append(Check("derivation", is_derivation(m.algebra, claim.D)))
    if claim.lambda_ != 0:
        rational = splits_over_rationals(charpoly(claim.D))
        checks.append(Check("rational_eigenvalues", rational,
                            "" if rational else "characteristic polynomial of D has irrational roots"))
    checks.append(Check("type", classify(claim.lambda_, claim.D) == claim.type,
                        f"computed {classify(claim.lambda_, claim.D).value}, claimed {claim.type.value}"))
    return Ledger(checks)


def b_vector(ns: NiceStructure) -> tuple[Fraction, ...]:
    """A solution of M M^T b = [1] (free coordinates set to zero)."""
    if not ns.arrows:
        return ()
    M = ns.root_matrix_q()
    sol = solve_linear(M @ M.T, [1] * len(ns.arrows))
    if sol.particular is None:
        raise NoDiagonalMetricError("M M^T b = [1] is inconsistent: no diagonal nilsoliton of this shape")
    return sol.particular


class NoDiagonalMetricError(ValueError):
    pass


@dataclass(frozen=True)
class DiagonalSolitonProblem:
    algebra: LieAlgebra
    nice: NiceStructure
    lambda_: Fraction
    b: tuple[Fraction, ...]
    X: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    N: Matrix
    solutions: MonomialSolution

    @property
    def irrational(self) -> bool:
        return self.solutions.irrational

    def metric(self, params: Sequence | None = None, signs: Sequence[int] | None = None) -> tuple[Fraction, ...]:
        return self.solutions.instantiate(params, signs)

    def metric_algebra(self, params=None, signs=None) -> MetricLieAlgebra:
        return MetricLieAlgebra.diagonal(self.algebra, self.metric(params, signs))

    def expected_ricci(self) -> tuple[Fraction, ...]:
        return tuple(self.lambda_ * (1 - x) for x in self.N.diagonal())

    def check_instance(self, metric: Sequence) -> bool:
        """Ric = λ(id - N) for this diagonal metric, via the fast formula."""
        ric, _ = diagonal_ricci_fast(self.algebra, metric, self.nice)
        return ric == self.expected_ricci()

    def describe(self) -> list[str]:
        """Human-readable family, e.g. ``g3 = 1/3*g1*g2``."""
        sol = self.solutions
        if sol.constant_part is None:
            return ["irrational family: no rational diagonal metric"]
        n = len(sol.constant_part)
        out = []
        for l in range(n):
            factors = []
            for j in range(sol.nfree):
                e = sol.exponent_basis[l][j]
                if e:
                    name = f"t{j + 1}"
                    factors.append(name if e == 1 else f"{name}^{e}")
            c = sol.constant_part[l]
            body = "*".join(factors) or "1"
            out.append(f"g{l + 1} = " + (body if c == 1 else f"{fmt(c)}*{body}"))
        return out


def diagonal_soliton_solve(g: LieAlgebra, lam=DEFAULT_LAMBDA, kernel: Sequence | None = None) -> DiagonalSolitonProblem:
    """Diagonal metrics with Ric = λ(id - N) on a nice nilpotent algebra.

    ``kernel`` gives coefficients of the added element of ker M^T (default 0).
    """
    lam = Q(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    ns = require_nice(g)
    N = nikolayevsky(g, ns)
    b = b_vector(ns)
    X = [-2 * lam * x for x in b]
    if ns.arrows:
        ker = nullspace(ns.root_matrix_q().T)
        coeffs = [Q(x) for x in (kernel or [0] * len(ker))]
        if len(coeffs) != len(ker):
            raise ValueError(f"ker M^T has dimension {len(ker)}, got {len(coeffs)} coefficients")
        for a, v in zip(coeffs, ker):
            X = [x + a * y for x, y in zip(X, v)]
    elif kernel:
        raise ValueError("ker M^T is trivial for an abelian algebra")
    if any(x == 0 for x in X):
        raise NoDiagonalMetricError("some component of X vanishes; no diagonal metric realizes it")
    c = ns.c_vector
    r = [x / ci ** 2 for x, ci in zip(X, c)]
    sols = multiplicative_solve(ns.root_matrix, r, nvars=g.dim)
    return DiagonalSolitonProblem(g, ns, lam, tuple(b), tuple(X), c, N, sols)
