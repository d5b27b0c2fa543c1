"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`.  Matrices are small
(a few dozen rows at most), so dense row-major storage and plain Gaussian
elimination are all that is needed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Q",
    "Matrix",
    "LinearSolution",
    "SignatureResult",
    "MonomialSolution",
    "DimensionError",
    "SingularMatrixError",
    "solve_linear",
    "nullspace",
    "rank",
    "rref",
    "signature",
    "inverse",
    "det",
    "multiplicative_solve",
    "integer_column_hnf",
    "fmt",
    "rational_sqrt",
]


class SingularMatrixError(ValueError):
    pass


class DimensionError(ValueError):
    pass


def Q(x) -> Fraction:
    """Coerce ``x`` (int, str like ``"2/3"``, Fraction) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact code paths")
    return Fraction(x)


def fmt(x: Fraction) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_sqrt(x) -> Fraction | None:
    """Nonnegative rational square root of ``x``, or None if there is none."""
    x = Q(x)
    if x < 0:
        return None
    p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_a")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        a = tuple(tuple(Q(x) for x in row) for row in entries)
        if a:
            width = len(a[0])
            if any(len(r) != width for r in a):
                raise DimensionError("ragged matrix")
        else:
            width = cols or 0
        self._a = a
        self.rows = len(a)
        self.cols = width if a else (cols or 0)

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls(list(zip(*columns)), cols=len(columns))

    # access
    def __getitem__(self, ij):
        if isinstance(ij, tuple):
            i, j = ij
            return self._a[i][j]
        return self._a[ij]

    def row(self, i: int) -> tuple:
        return self._a[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._a)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._a]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self._a), cols=self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    def diagonal(self) -> tuple:
        return tuple(self._a[i][i] for i in range(min(self.rows, self.cols)))

    def trace(self) -> Fraction:
        return sum(self.diagonal(), Fraction(0))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._a for x in r)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self._a[i][j] == self._a[j][i] for i in range(self.rows) for j in range(i))

    def is_antisymmetric(self) -> bool:
        return self.rows == self.cols and all(
            self._a[i][j] == -self._a[j][i] for i in range(self.rows) for j in range(i + 1))

    def is_diagonal(self) -> bool:
        return all(self._a[i][j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    # arithmetic
    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(([x + y for x, y in zip(r, s)] for r, s in zip(self._a, other._a)), cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(([x - y for x, y in zip(r, s)] for r, s in zip(self._a, other._a)), cols=self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix(([-x for x in r] for r in self._a), cols=self.cols)

    def __mul__(self, k) -> "Matrix":
        k = Q(k)
        return Matrix(([k * x for x in r] for r in self._a), cols=self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.T._a
            return Matrix(([_dot(r, c) for c in ocols] for r in self._a), cols=other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise DimensionError(f"cannot apply {self.shape} matrix to vector of length {len(v)}")
        return tuple(_dot(r, v) for r in self._a)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._a == other._a

    def __hash__(self) -> int:
        return hash((self.shape, self._a))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self._a)
        return f"Matrix[{self.rows}x{self.cols}]({body})"

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")


def _dot(u, v) -> Fraction:
    s = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def _as_matrix(A) -> Matrix:
    return A if isinstance(A, Matrix) else Matrix(A)


def rref(A) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are taken as the first nonzero entry scanning columns left to right
    and rows top to bottom, so the output is deterministic.
    """
    A = _as_matrix(A)
    m = A.tolist()
    pivots: list[int] = []
    r = 0
    for c in range(A.cols):
        p = next((i for i in range(r, A.rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(A.rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == A.rows:
            break
    return m, pivots


def rank(A) -> int:
    return len(rref(A)[1])


def nullspace(A) -> list[tuple[Fraction, ...]]:
    """Basis of ker A, one vector per free column of the reduced echelon form."""
    A = _as_matrix(A)
    m, pivots = rref(A)
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * A.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class LinearSolution:
    particular: tuple[Fraction, ...] | None
    nullspace_basis: tuple[tuple[Fraction, ...], ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.particular is not None and not self.nullspace_basis


def solve_linear(A, b: Sequence) -> LinearSolution:
    """Solve ``A x = b`` exactly.

    The particular solution sets every free variable to zero.
    """
    A = _as_matrix(A)
    b = [Q(x) for x in b]
    if A.rows != len(b):
        raise DimensionError(f"A has {A.rows} rows but b has length {len(b)}")
    aug = Matrix([list(r) + [bi] for r, bi in zip(A._a, b)], cols=A.cols + 1)
    m, pivots = rref(aug)
    null = tuple(nullspace(A))
    if A.cols in pivots:
        return LinearSolution(None, null)
    x = [Fraction(0)] * A.cols
    for r, p in enumerate(pivots):
        x[p] = m[r][A.cols]
    return LinearSolution(tuple(x), null)


def det(A) -> Fraction:
    A = _as_matrix(A)
    if A.rows != A.cols:
        raise DimensionError("determinant of non-square matrix")
    m = A.tolist()
    n = A.rows
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(A) -> Matrix:
    A = _as_matrix(A)
    n = A.rows
    if n != A.cols:
        raise DimensionError("inverse of non-square matrix")
    aug = Matrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A._a)], cols=2 * n)
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return Matrix([r[n:] for r in m], cols=n)


@dataclass(frozen=True)
class SignatureResult:
    plus: int
    minus: int
    null: int

    @property
    def nondegenerate(self) -> bool:
        return self.null == 0

    def __iter__(self):
        return iter((self.plus, self.minus, self.null))


def signature(S) -> SignatureResult:
    """Inertia of a symmetric form by symmetric Gaussian (Lagrange) reduction."""
    S = _as_matrix(S)
    if not S.is_symmetric():
        raise ValueError("signature requires a symmetric matrix")
    m = S.tolist()
    n = S.rows
    active = list(range(n))
    plus = minus = 0
    while active:
        k = next((i for i in active if m[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            # replace e_i by e_i + e_j so that the diagonal entry 2*m[i][j] is nonzero
            i, j = pair
            for t in range(n):
                m[i][t] += m[j][t]
            for t in range(n):
                m[t][i] += m[t][j]
            k = i
        piv = m[k][k]
        if piv > 0:
            plus += 1
        else:
            minus += 1
        active.remove(k)
        for i in active:
            f = m[i][k] / piv
            if f:
                for j in active:
                    m[i][j] -= f * m[k][j]
        for i in active:
            m[i][k] = m[k][i] = Fraction(0)
    return SignatureResult(plus, minus, n - plus - minus)


# --- integer-exponent multiplicative systems -------------------------------


def integer_column_hnf(E: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite form: returns ``(H, U)`` with ``E U = H``.

    ``U`` is unimodular and ``H`` is in column echelon form: the pivot of
    column ``c`` lies strictly below the pivot of column ``c - 1`` and all
    columns after the last pivot column are zero.
    """
    rows = len(E)
    cols = len(E[0]) if rows else 0
    H = [list(map(int, r)) for r in E]
    U = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def colop(dst: int, src: int, k: int) -> None:  # col[dst] += k * col[src]
        for M in (H, U):
            for r in M:
                r[dst] += k * r[src]

    def swap(a: int, b: int) -> None:
        for M in (H, U):
            for r in M:
                r[a], r[b] = r[b], r[a]

    def negate(a: int) -> None:
        for M in (H, U):
            for r in M:
                r[a] = -r[a]

    c = 0
    for r in range(rows):
        if c >= cols:
            break
        while True:
            nz = [j for j in range(c, cols) if H[r][j] != 0]
            if not nz:
                break
            j = min(nz, key=lambda t: abs(H[r][t]))
            if j != c:
                swap(c, j)
            done = True
            for t in range(c + 1, cols):
                if H[r][t]:
                    colop(t, c, -(H[r][t] // H[r][c]))
                    if H[r][t]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            negate(c)
        for t in range(c):
            colop(t, c, -(H[r][t] // H[r][c]))
        c += 1
    return H, U


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _valuation(x: Fraction, p: int) -> int:
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _solve_gf2(E: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[tuple[int, ...]] | None:
    """All solutions in {0,1}^n of ``E s = rhs`` over GF(2), or None."""
    n = len(E[0]) if E else 0
    m = [[x % 2 for x in row] + [b % 2] for row, b in zip(E, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = [(x + y) % 2 for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(row[n] and not any(row[:n]) for row in m):
        return None
    free = [c for c in range(n) if c not in pivots]
    sols = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        s = [0] * n
        for f, b in zip(free, bits):
            s[f] = b
        for i, p in enumerate(pivots):
            s[p] = (m[i][n] + sum(m[i][f] * s[f] for f in free)) % 2
        sols.append(tuple(s))
    return sols


@dataclass(frozen=True)
class MonomialSolution:
    """Solutions ``u`` of ``prod_l u_l ** E[h][l] == r[h]`` over the rationals.

    Every solution is ``u_l = sigma_l * constant_part[l] * prod_j t_j ** exponent_basis[l][j]``
    for positive rationals ``t_j`` and a sign vector ``sigma`` from ``sign_patterns``.
    When ``irrational`` is set, no rational constant part exists; only the sign
    patterns and the reduced system (``hnf``, ``log_targets``) are reported.
    """

    exponents: tuple[tuple[int, ...], ...]
    targets: tuple[Fraction, ...]
    constant_part: tuple[Fraction, ...] | None
    exponent_basis: tuple[tuple[int, ...], ...]
    sign_patterns: tuple[tuple[int, ...], ...]
    irrational: bool = False
    reduced_system: dict = field(default_factory=dict, compare=False)

    @property
    def nfree(self) -> int:
        return len(self.exponent_basis[0]) if self.exponent_basis else 0

    def instantiate(self, params: Sequence | None = None, signs: Sequence[int] | None = None) -> tuple[Fraction, ...]:
        if self.constant_part is None:
            raise ValueError("no rational solution family")
        params = [Q(t) for t in (params if params is not None else [1] * self.nfree)]
        if len(params) != self.nfree:
            raise DimensionError(f"expected {self.nfree} parameters")
        if any(t <= 0 for t in params):
            raise ValueError("free parameters must be positive")
        signs = signs if signs is not None else self.sign_patterns[0]
        out = []
        for l, c in enumerate(self.constant_part):
            v = c * signs[l]
            for j, t in enumerate(params):
                v *= t ** self.exponent_basis[l][j]
            out.append(v)
        return tuple(out)

    def satisfied_by(self, u: Sequence) -> bool:
        return all(_monomial(row, u) == r for row, r in zip(self.exponents, self.targets))


def _monomial(row: Sequence[int], u: Sequence) -> Fraction:
    v = Fraction(1)
    for e, x in zip(row, u):
        if e:
            v *= Q(x) ** e
    return v


def multiplicative_solve(E: Sequence[Sequence[int]], r: Sequence, nvars: int | None = None) -> MonomialSolution:
    """Solve ``prod_l u_l ** E[h][l] = r[h]`` for nonzero rationals ``u``.

    Absolute values are handled prime by prime through the column Hermite form
    of ``E``; signs are handled separately over GF(2).
    """
    E = [tuple(int(x) for x in row) for row in E]
    r = [Q(x) for x in r]
    if len(E) != len(r):
        raise DimensionError("one target per row of E is required")
    if any(x == 0 for x in r):
        raise ValueError("right-hand side components must be nonzero")
    n = len(E[0]) if E else (nvars or 0)
    if nvars is not None and n != nvars:
        raise DimensionError(f"E has {n} columns, expected {nvars}")
    rows = len(E)

    sign_bits = [1 if x < 0 else 0 for x in r]
    sols = _solve_gf2(E, sign_bits) if rows else list(itertools.product((0, 1), repeat=n))
    patterns = tuple(tuple(-1 if b else 1 for b in s) for s in (sols or []))

    primes = sorted({p for x in r for p in _prime_factors(x.numerator) + _prime_factors(x.denominator)})
    log_targets = {p: [_valuation(x, p) for x in r] for p in primes}

    natural = _natural_parametrization(E, n, log_targets)
    if natural is not None:
        const, kernel = natural
        return MonomialSolution(tuple(E), tuple(r), const, kernel, patterns)

    if rows == 0:
        H, U = [], [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    else:
        H, U = integer_column_hnf(E)
    npiv = sum(1 for c in range(n) if any(H[i][c] for i in range(rows)))
    kernel = tuple(tuple(U[l][c] for c in range(npiv, n)) for l in range(n))

    const = [Fraction(1)] * n
    for p in primes:
        y = _forward_integer(H, log_targets[p], npiv)
        if y is None:
            return MonomialSolution(tuple(E), tuple(r), None, kernel, patterns, irrational=True,
                                    reduced_system={"hnf": H, "log_targets": log_targets})
        x = [sum(U[l][c] * y[c] for c in range(npiv)) for l in range(n)]
        const = [c * Fraction(p) ** e for c, e in zip(const, x)]
    return MonomialSolution(tuple(E), tuple(r), tuple(const), kernel, patterns)


def _natural_parametrization(E, n, log_targets):
    """Parametrize by the leading unknowns when that stays integral.

    Row reduction is done with the columns reversed, so later unknowns become
    pivots and are expressed through the earlier (free) ones; this is the
    shape a root-matrix system usually has (``g_k`` in terms of ``g_i g_j``).
    """
    rev = [list(reversed(row)) for row in E]
    m, pivots = rref(rev) if E else ([], [])
    if any(x.denominator != 1 for row in m for x in row):
        return None
    free = sorted((c for c in range(n) if c not in pivots), reverse=True)
    kernel = [[0] * len(free) for _ in range(n)]
    for j, f in enumerate(free):
        kernel[n - 1 - f][j] = 1
        for i, p in enumerate(pivots):
            kernel[n - 1 - p][j] = int(-m[i][f])
    const = [Fraction(1)] * n
    for p, v in log_targets.items():
        sol = solve_linear(rev, v)
        if sol.particular is None or any(x.denominator != 1 for x in sol.particular):
            return None
        for c, e in enumerate(sol.particular):
            const[n - 1 - c] *= Fraction(p) ** int(e)
    return tuple(const), tuple(tuple(row) for row in kernel)


def _forward_integer(H: list[list[int]], v: Sequence[int], npiv: int) -> list[int] | None:
    """Integer ``y`` with ``H[:, :npiv] y = v`` for column-echelon ``H``, or None."""
    y = [0] * npiv
    c = 0
    for i, row in enumerate(H):
        acc = v[i] - sum(row[j] * y[j] for j in range(c))
        if c < npiv and row[c] != 0:
            if acc % row[c]:
                return None
            y[c] = acc // row[c]
            c += 1
        elif acc != 0:
            return None
    return y
