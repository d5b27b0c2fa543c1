"""Lie algebras given by rational structure constants on a fixed basis.

Indices are 0-based internally; the notation module converts to the usual
1-based ``e^{ij}`` strings.  The bracket is ``[e_i, e_j] = sum_k c[i][j][k] e_k``
and ``de^k = -sum_{i<j} c[i][j][k] e^{ij}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactla import Matrix, Q, nullspace, rank, rref, solve_linear

Endomorphism = Matrix  # column j holds the image of e_j

__all__ = [
    "LieAlgebra",
    "Endomorphism",
    "JacobiViolation",
    "JacobiError",
    "ExtensionError",
    "AlgebraFlags",
    "DerivationSpace",
    "jacobi_check",
    "flags",
    "derivations",
    "derivations_traceless",
    "is_derivation",
    "trace_form",
    "gram",
    "semidirect_extend",
    "commutator",
    "span_basis",
]


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[int, int, int]  # 0-based
    residual: tuple[Fraction, ...]

    def __str__(self) -> str:
        i, j, k = (t + 1 for t in self.triple)
        return f"Jacobi identity fails on (e{i}, e{j}, e{k})"


class JacobiError(ValueError):
    def __init__(self, violation: JacobiViolation):
        super().__init__(str(violation))
        self.violation = violation


class ExtensionError(ValueError):
    pass


class LieAlgebra:
    """Structure tensor on a fixed basis, antisymmetric by construction.

    ``brackets`` maps 0-based pairs ``(i, j)`` to ``{k: c_ij^k}``; pairs with
    ``i > j`` are folded in with a sign flip.
    """

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
                 name: str | None = None, check: bool = True):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.name = name
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim) or any(not 0 <= k < dim for k in vec):
                raise IndexError(f"bracket index out of range in {(i, j)}")
            if i == j:
                if any(Q(v) for v in vec.values()):
                    raise ValueError("[e_i, e_i] must vanish")
                continue
            for k, v in vec.items():
                v = Q(v)
                c[i][j][k] += v
                c[j][i][k] -= v
        self.c = tuple(tuple(tuple(row) for row in plane) for plane in c)
        if check:
            bad = jacobi_check(self)
            if bad is not None:
                raise JacobiError(bad)

    @classmethod
    def abelian(cls, dim: int, name: str | None = None) -> "LieAlgebra":
        return cls(dim, {}, name=name)

    def brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        out = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                vec = {k: x for k, x in enumerate(self.c[i][j]) if x}
                if vec:
                    out[(i, j)] = vec
        return out

    def bracket(self, u: Sequence, v: Sequence) -> tuple[Fraction, ...]:
        n = self.dim
        out = [Fraction(0)] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b or i == j:
                    continue
                ab = a * b
                for k, x in enumerate(self.c[i][j]):
                    if x:
                        out[k] += ab * x
        return tuple(out)

    def ad(self, i: int) -> Matrix:
        """ad e_i as a matrix (column j is [e_i, e_j])."""
        return Matrix.from_columns([self.c[i][j] for j in range(self.dim)])

    def ad_vector(self, x: Sequence) -> Matrix:
        cols = [self.bracket(x, _unit(self.dim, j)) for j in range(self.dim)]
        return Matrix.from_columns(cols)

    def is_abelian(self) -> bool:
        return not self.brackets()

    def negated(self) -> "LieAlgebra":
        """Same algebra with every structure constant negated (basis e_i -> -e_i)."""
        return LieAlgebra(self.dim, {p: {k: -v for k, v in vec.items()} for p, vec in self.brackets().items()},
                          name=self.name, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.dim, self.c))

    def __repr__(self) -> str:
        from .notation import format_algebra
        label = f"{self.name}: " if self.name else ""
        return f"LieAlgebra({label}{format_algebra(self)})"


def _unit(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(k == i)) for k in range(n))


def jacobi_check(g: LieAlgebra) -> JacobiViolation | None:
    """First triple i<j<k (lexicographic) on which the Jacobi identity fails."""
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                e_i, e_j, e_k = _unit(n, i), _unit(n, j), _unit(n, k)
                r = [a + b + c for a, b, c in zip(
                    g.bracket(g.c[i][j], e_k), g.bracket(g.c[j][k], e_i), g.bracket(g.c[k][i], e_j))]
                if any(r):
                    return JacobiViolation((i, j, k), tuple(r))
    return None


def span_basis(vectors: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    vectors = [tuple(Q(x) for x in v) for v in vectors if any(v)]
    if not vectors:
        return []
    m, piv = rref(vectors)
    return [tuple(m[r]) for r in range(len(piv))]


def _bracket_spaces(g: LieAlgebra, A, B) -> list[tuple[Fraction, ...]]:
    return span_basis([g.bracket(a, b) for a in A for b in B])


@dataclass(frozen=True)
class AlgebraFlags:
    lower_central_dims: tuple[int, ...]
    derived_dims: tuple[int, ...]
    nilpotent: bool
    step: int | None
    solvable: bool
    depth: int | None
    unimodular: bool
    rank: int


def flags(g: LieAlgebra) -> AlgebraFlags:
    n = g.dim
    full = [_unit(n, i) for i in range(n)]

    lower = [n]
    cur = full
    while True:
        nxt = _bracket_spaces(g, full, cur)
        if len(nxt) == lower[-1]:
            break
        lower.append(len(nxt))
        cur = nxt
        if not nxt:
            break
    derived = [n]
    cur = full
    while True:
        nxt = _bracket_spaces(g, cur, cur)
        if len(nxt) == derived[-1]:
            break
        derived.append(len(nxt))
        cur = nxt
        if not nxt:
            break
    nilpotent = lower[-1] == 0
    solvable = derived[-1] == 0
    unimodular = all(g.ad(i).trace() == 0 for i in range(n))
    return AlgebraFlags(
        lower_central_dims=tuple(lower),
        derived_dims=tuple(derived),
        nilpotent=nilpotent,
        step=len(lower) - 1 if nilpotent else None,
        solvable=solvable,
        depth=len(derived) - 1 if solvable else None,
        unimodular=unimodular,
        rank=n - (derived[1] if len(derived) > 1 else n),
    )


def _derivation_rows(g: LieAlgebra) -> list[list[Fraction]]:
    """Linear conditions on the n*n entries of X (index l*n + i for X[l][i])."""
    n = g.dim
    c = g.c
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for m in range(n):
                row = [Fraction(0)] * (n * n)
                # X[e_i, e_j]_m
                for l in range(n):
                    if c[i][j][l]:
                        row[m * n + l] += c[i][j][l]
                # -[X e_i, e_j]_m - [e_i, X e_j]_m
                for l in range(n):
                    if c[l][j][m]:
                        row[l * n + i] -= c[l][j][m]
                    if c[i][l][m]:
                        row[l * n + j] -= c[i][l][m]
                if any(row):
                    rows.append(row)
    return rows


@dataclass(frozen=True)
class DerivationSpace:
    basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, X: Matrix) -> bool:
        if not self.basis:
            return X.is_zero()
        cols = [[x for row in B.tolist() for x in row] for B in self.basis]
        target = [x for row in X.tolist() for x in row]
        return solve_linear(Matrix.from_columns(cols), target).consistent

    def coordinates(self, X: Matrix) -> tuple[Fraction, ...] | None:
        cols = [[x for row in B.tolist() for x in row] for B in self.basis]
        sol = solve_linear(Matrix.from_columns(cols, rows=len(X.tolist()) ** 2), [x for row in X.tolist() for x in row])
        return sol.particular


def derivations(g: LieAlgebra) -> DerivationSpace:
    n = g.dim
    rows = _derivation_rows(g)
    if rows:
        null = nullspace(Matrix(rows))
    else:
        null = [_unit(n * n, t) for t in range(n * n)]
    basis = tuple(Matrix([v[l * n:(l + 1) * n] for l in range(n)]) for v in null)
    return DerivationSpace(basis)


def is_derivation(g: LieAlgebra, X: Matrix) -> bool:
    n = g.dim
    if X.shape != (n, n):
        return False
    flat = [x for row in X.tolist() for x in row]
    return all(sum((a * b for a, b in zip(row, flat) if a), Fraction(0)) == 0 for row in _derivation_rows(g))


def derivations_traceless(g: LieAlgebra) -> bool:
    return all(X.trace() == 0 for X in derivations(g).basis)


def trace_form(A: Matrix, B: Matrix) -> Fraction:
    return (A @ B).trace()


def gram(ops: Sequence[Matrix]) -> Matrix:
    return Matrix([[trace_form(a, b) for b in ops] for a in ops], cols=len(ops))


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return A @ B - B @ A


def semidirect_extend(g: LieAlgebra, ders: Sequence[Matrix], name: str | None = None) -> LieAlgebra:
    """g ⋊ span(ders): new basis vectors a_s appended after g, with [a_s, x] = ders[s] x."""
    n = g.dim
    for s, D in enumerate(ders):
        if not is_derivation(g, D):
            raise ExtensionError(f"operator {s} is not a derivation")
    for s in range(len(ders)):
        for t in range(s + 1, len(ders)):
            if not commutator(ders[s], ders[t]).is_zero():
                raise ExtensionError(f"derivations {s} and {t} do not commute")
    br: dict[tuple[int, int], dict[int, Fraction]] = {p: dict(v) for p, v in g.brackets().items()}
    for s, D in enumerate(ders):
        a = n + s
        for i in range(n):
            img = D.col(i)
            # [e_i, a_s] = -D e_i
            vec = {k: -x for k, x in enumerate(img) if x}
            if vec:
                br[(i, a)] = vec
    return LieAlgebra(n + len(ders), br, name=name)
