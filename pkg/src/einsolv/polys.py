"""Small exact polynomial toolkit.

Univariate polynomials are coefficient lists, lowest degree first.
Multivariate polynomials are dicts ``{exponent tuple: Fraction}``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .exactla import Matrix, Q, nullspace

Poly = list  # list[Fraction], low -> high


def trim(p: Sequence) -> list[Fraction]:
    p = [Q(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def derivative(p: Sequence) -> list[Fraction]:
    return trim([i * c for i, c in enumerate(p)][1:])


def divmod_poly(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        f = r[-1] / b[-1]
        q[k] = f
        for i, c in enumerate(b):
            r[i + k] -= f * c
        r = trim(r)
    return trim(q), r


def gcd_poly(a: Sequence, b: Sequence) -> list[Fraction]:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def evaluate(p: Sequence, x) -> Fraction:
    v = Fraction(0)
    for c in reversed(p):
        v = v * x + c
    return v


def charpoly(A: Matrix) -> list[Fraction]:
    """det(t I - A) by the Faddeev-LeVerrier recursion."""
    n = A.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = Matrix.zeros(n, n)
    I = Matrix.identity(n)
    for k in range(1, n + 1):
        M = A @ M + I * coeffs[n - k + 1]
        coeffs[n - k] = -(A @ M).trace() / k
    return coeffs


def minimal_polynomial(A: Matrix) -> list[Fraction]:
    """Monic minimal polynomial, from the first linear dependency among powers of A."""
    n = A.rows
    powers = [Matrix.identity(n)]
    while True:
        cols = [[x for row in P.tolist() for x in row] for P in powers]
        null = nullspace(Matrix.from_columns(cols, rows=n * n))
        if null:
            v = null[0]
            return [c / v[-1] for c in v]
        powers.append(powers[-1] @ A)


def is_squarefree(p: Sequence) -> bool:
    return degree(gcd_poly(p, derivative(p))) == 0


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Sequence) -> list[Fraction]:
    """Rational roots with multiplicity."""
    p = trim(p)
    roots: list[Fraction] = []
    while p and p[0] == 0:
        roots.append(Fraction(0))
        p = p[1:]
    if len(p) <= 1:
        return roots
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    cands = sorted({Fraction(s * a, b) for a in _divisors(ints[0]) for b in _divisors(ints[-1]) for s in (1, -1)})
    for r in cands:
        while len(p) > 1 and evaluate(p, r) == 0:
            roots.append(r)
            p, _ = divmod_poly(p, [-r, 1])
    return roots


def splits_over_rationals(p: Sequence) -> bool:
    return len(rational_roots(p)) == degree(p)


# --- sparse multivariate -------------------------------------------------


def mv_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def mv_scale(a: dict, k) -> dict:
    k = Q(k)
    return {e: c * k for e, c in a.items()} if k else {}


def mv_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def mv_eval(a: dict, point: Sequence) -> Fraction:
    total = Fraction(0)
    for e, c in a.items():
        t = c
        for x, k in zip(point, e):
            if k:
                t *= Q(x) ** k
        total += t
    return total


def linear_form(coeffs: Sequence) -> dict:
    n = len(coeffs)
    return {tuple(int(i == j) for j in range(n)): Q(c) for i, c in enumerate(coeffs) if c}


def pfaffian(A: list[list[dict]]) -> dict:
    """Pfaffian of an antisymmetric matrix of multivariate polynomials.

    Expansion along the first row; fine for the sizes used here (n <= 10).
    """
    n = len(A)
    if n == 0:
        raise ValueError("Pfaffian of an empty matrix needs an explicit variable count")
    if n % 2:
        return {}
    return _pf(A, list(range(n)))


def _pf(A, idx):
    if len(idx) == 2:
        return A[idx[0]][idx[1]]
    i = idx[0]
    total: dict = {}
    for pos in range(1, len(idx)):
        j = idx[pos]
        if not A[i][j]:
            continue
        rest = idx[1:pos] + idx[pos + 1:]
        sub = _pf(A, rest)
        if not sub:
            continue
        term = mv_mul(A[i][j], sub)
        total = mv_add(total, term if pos % 2 == 1 else mv_scale(term, -1))
    return total


def mv_substitute(a: dict, var: int, value) -> dict:
    """Fix one variable to a value; the exponent slot stays, set to zero."""
    value = Q(value)
    out: dict = {}
    for e, c in a.items():
        k = e[var]
        e2 = e[:var] + (0,) + e[var + 1:]
        t = c * value ** k if k else c
        s = out.get(e2, 0) + t
        if s:
            out[e2] = s
        else:
            out.pop(e2, None)
    return out


def mv_degree_in(a: dict, var: int) -> int:
    return max((e[var] for e in a), default=0)


def mv_nonzero_point(a: dict, nvars: int, prefer: Sequence[int] = ()) -> tuple[Fraction, ...] | None:
    """A rational point where a nonzero polynomial does not vanish.

    Variables are fixed one at a time, trying 0, 1, 2, ... in turn; a nonzero
    polynomial of degree d in a variable stays nonzero for one of d+1 values.
    Variables listed in ``prefer`` are tried with 1 first.
    """
    if not a:
        return None
    point = []
    cur = a
    for v in range(nvars):
        d = mv_degree_in(cur, v)
        order = list(range(d + 1))
        if v in prefer:
            order = [1] + [t for t in order if t != 1]
        for t in order:
            nxt = mv_substitute(cur, v, t)
            if nxt:
                point.append(Fraction(t))
                cur = nxt
                break
        else:  # pragma: no cover - impossible for a nonzero polynomial
            raise AssertionError("no nonvanishing value found")
    return tuple(point)
