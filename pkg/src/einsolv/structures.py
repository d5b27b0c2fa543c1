"""Closed and parallel 2-forms, structure endomorphisms and Kähler-type certificates.

A 2-form is stored as an antisymmetric matrix ``W`` with ``W[i, j] = ω(e_i, e_j)``;
``e^{ij}`` has ``W[i, j] = 1``.  The structure endomorphism ``E`` of ``ω`` with
respect to ``g`` is defined by ``g(EX, Y) = ω(X, Y)``, so as matrices
``E = -g^{-1} W``.  A certificate with ``eps = -1`` is pseudo-Kähler
(``E² = -id``), one with ``eps = +1`` is para-Kähler (``E² = id``).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .checks import Check, Ledger
from .curvature import MetricLieAlgebra, covariant_derivative, is_einstein
from .exactla import Matrix, Q, det, fmt, nullspace, rational_sqrt, signature, solve_linear
from .liealg import LieAlgebra
from .notation import format_algebra, format_form
from .polys import linear_form, mv_add, mv_eval, mv_mul, mv_nonzero_point, mv_scale, pfaffian

__all__ = [
    "form_matrix",
    "form_terms",
    "exterior_d",
    "FormSpace",
    "closed_two_forms",
    "parallel_two_forms",
    "pfaffian_polynomial",
    "nondegenerate_element",
    "endo_from_form",
    "nijenhuis",
    "nijenhuis_witness",
    "integrable",
    "eigenspaces",
    "StructureCertificate",
    "certify",
    "certificate_from_dict",
    "verify_certificate",
    "ObstructionReport",
    "ResidualSystem",
    "SearchResult",
    "forced_zero_coordinates",
    "search_structures",
    "search_family",
    "generalized_heisenberg",
    "generalized_heisenberg_endomorphism",
    "PSEUDO_KAHLER",
    "PARA_KAHLER",
]

PSEUDO_KAHLER = -1
PARA_KAHLER = 1


# --- forms ---------------------------------------------------------------


def form_matrix(terms: Mapping[tuple[int, int], object], dim: int) -> Matrix:
    W = [[Fraction(0)] * dim for _ in range(dim)]
    for (i, j), v in terms.items():
        v = Q(v)
        W[i][j] += v
        W[j][i] -= v
    return Matrix(W, cols=dim)


def form_terms(W: Matrix) -> dict[tuple[int, int], Fraction]:
    n = W.shape[0]
    return {(i, j): W[i, j] for i in range(n) for j in range(i + 1, n) if W[i, j]}


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def exterior_d(g: LieAlgebra, form):
    """Chevalley-Eilenberg differential.

    A 1-form (sequence of length dim) maps to a 2-form matrix with
    ``dα(X, Y) = -α([X, Y])``.  A 2-form matrix maps to a dict of 3-form
    components on sorted triples, using
    ``dβ(X,Y,Z) = -β([X,Y],Z) + β([X,Z],Y) - β([Y,Z],X)``.
    """
    n = g.dim
    c = g.c
    if not isinstance(form, Matrix):
        a = [Q(x) for x in form]
        if len(a) != n:
            raise ValueError("1-form length does not match dimension")
        W = [[-sum((x * y for x, y in zip(a, c[i][j]) if y), Fraction(0)) for j in range(n)] for i in range(n)]
        return Matrix(W, cols=n)
    W = form

    def beta(vec, k):
        return sum((x * W[l, k] for l, x in enumerate(vec) if x), Fraction(0))

    out = {}
    for i, j, k in itertools.combinations(range(n), 3):
        v = -beta(c[i][j], k) + beta(c[i][k], j) - beta(c[j][k], i)
        if v:
            out[(i, j, k)] = v
    return out


@dataclass(frozen=True)
class FormSpace:
    dim: int  # dimension of the algebra
    basis: tuple[Matrix, ...]
    constraints: frozenset = frozenset()

    def __len__(self) -> int:
        return len(self.basis)

    def combination(self, coeffs: Sequence) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for y, B in zip(coeffs, self.basis):
            y = Q(y)
            if y:
                out = out + B * y
        return out

    def contains(self, W: Matrix) -> bool:
        if not self.basis:
            return W.is_zero()
        cols = [[B[i, j] for i, j in _pairs(self.dim)] for B in self.basis]
        return solve_linear(Matrix.from_columns(cols), [W[i, j] for i, j in _pairs(self.dim)]).consistent


def _kernel_space(n: int, images: list[list[Fraction]], constraints: Iterable[str]) -> FormSpace:
    """Forms sum y_p e^p whose stacked linear images vanish; ``images[p]`` is the image of e^p."""
    pairs = _pairs(n)
    if not images or not images[0]:
        basis = [form_matrix({p: 1}, n) for p in pairs]
    else:
        A = Matrix.from_columns(images)
        basis = [form_matrix(dict(zip(pairs, v)), n) for v in nullspace(A)]
    return FormSpace(n, tuple(basis), frozenset(constraints))


def _d_image(g: LieAlgebra, W: Matrix) -> list[Fraction]:
    d = exterior_d(g, W)
    return [d.get(t, Fraction(0)) for t in itertools.combinations(range(g.dim), 3)]


def closed_two_forms(g: LieAlgebra) -> FormSpace:
    n = g.dim
    images = [_d_image(g, form_matrix({p: 1}, n)) for p in _pairs(n)]
    return _kernel_space(n, images, {"closed"})


def parallel_two_forms(m: MetricLieAlgebra) -> FormSpace:
    """Closed 2-forms with ∇ω = 0 for the Levi-Civita connection of ``m``."""
    n = m.dim
    pairs = _pairs(n)
    images = []
    for p in pairs:
        W = form_matrix({p: 1}, n)
        col = _d_image(m.algebra, W)
        for T in covariant_derivative(m, W, "form"):
            col.extend(T[i, j] for i, j in pairs)
        images.append(col)
    return _kernel_space(n, images, {"closed", "parallel"})


def pfaffian_polynomial(fs: FormSpace) -> dict:
    """Pf(sum y_a B_a) as a polynomial in the coefficients y_a (empty dict if identically 0)."""
    n, k = fs.dim, len(fs.basis)
    if n % 2 or k == 0:
        return {}
    entries = [[linear_form([B[i, j] for B in fs.basis]) for j in range(n)] for i in range(n)]
    return pfaffian(entries)


def nondegenerate_element(fs: FormSpace) -> Matrix | None:
    """A nondegenerate member of the space, or None when the Pfaffian vanishes identically."""
    pf = pfaffian_polynomial(fs)
    if not pf:
        return None
    point = mv_nonzero_point(pf, len(fs.basis))
    W = fs.combination(point)
    assert det(W) != 0
    return W


def endo_from_form(m: MetricLieAlgebra, W: Matrix) -> Matrix:
    return -(m.metric_inverse @ W)


# --- integrability -------------------------------------------------------


def _unit(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(k == i)) for k in range(n))


def nijenhuis(g: LieAlgebra, E: Matrix) -> dict[tuple[int, int], tuple[Fraction, ...]]:
    """N_E(e_i, e_j) for i < j, with N_E(X,Y) = [EX,EY] - E[EX,Y] - E[X,EY] + E²[X,Y]."""
    n = g.dim
    E2 = E @ E
    out = {}
    for i, j in _pairs(n):
        x, y = _unit(n, i), _unit(n, j)
        ex, ey = E.col(i), E.col(j)
        t1 = g.bracket(ex, ey)
        t2 = E @ g.bracket(ex, y)
        t3 = E @ g.bracket(x, ey)
        t4 = E2 @ g.c[i][j]
        out[(i, j)] = tuple(a - b - c + d for a, b, c, d in zip(t1, t2, t3, t4))
    return out


def nijenhuis_witness(g: LieAlgebra, E: Matrix) -> tuple[int, int] | None:
    return next((p for p, v in nijenhuis(g, E).items() if any(v)), None)


def integrable(g: LieAlgebra, E: Matrix) -> bool:
    return nijenhuis_witness(g, E) is None


def eigenspaces(E: Matrix) -> tuple[list[tuple[Fraction, ...]], list[tuple[Fraction, ...]]]:
    """Bases of the +1 and -1 eigenspaces."""
    n = E.shape[0]
    I = Matrix.identity(n)
    return nullspace(E - I), nullspace(E + I)


def _closed_under_bracket(g: LieAlgebra, basis: list) -> bool:
    if not basis:
        return True
    A = Matrix.from_columns(basis)
    for u, v in itertools.combinations(basis, 2):
        if not solve_linear(A, g.bracket(u, v)).consistent:
            return False
    return True


# --- certificates --------------------------------------------------------


@dataclass(frozen=True)
class StructureCertificate:
    kind: int  # -1 pseudo-Kähler, +1 para-Kähler
    algebra: LieAlgebra
    metric: Matrix
    omega: Matrix
    endo: Matrix
    lambda_: Fraction | None
    ledger: Ledger

    @property
    def valid(self) -> bool:
        return self.ledger.ok

    @property
    def label(self) -> str:
        return "pseudo-Kahler" if self.kind == PSEUDO_KAHLER else "para-Kahler"

    def to_dict(self) -> dict:
        n = self.algebra.dim
        mat = lambda M: [[fmt(x) for x in row] for row in M.tolist()]
        return {
            "kind": self.kind,
            "structure": self.label,
            "algebra": {
                "dim": n,
                "notation": format_algebra(self.algebra),
                "brackets": [[i + 1, j + 1, k + 1, fmt(x)] for (i, j), vec in sorted(self.algebra.brackets().items())
                             for k, x in sorted(vec.items())],
            },
            "metric": mat(self.metric),
            "omega": format_form(form_terms(self.omega), n),
            "omega_matrix": mat(self.omega),
            "endo": mat(self.endo),
            "lambda": None if self.lambda_ is None else fmt(self.lambda_),
            "ledger": [c.as_dict() for c in self.ledger],
        }


def certify(m: MetricLieAlgebra, W: Matrix, eps: int, E: Matrix | None = None) -> StructureCertificate:
    """Run every structure check on (g, ω, E); E defaults to the endomorphism of ω."""
    if eps not in (PSEUDO_KAHLER, PARA_KAHLER):
        raise ValueError("eps must be -1 or +1")
    g = m.algebra
    n = g.dim
    G = m.metric
    E = endo_from_form(m, W) if E is None else E
    I = Matrix.identity(n)
    checks = []

    def add(name, ok, witness=""):
        checks.append(Check(name, bool(ok), "" if ok else witness))

    ff = E.T @ G
    add("fundamental_form", ff == W, f"g(E.,.) - omega = {(ff - W)!r}")
    sq = E @ E
    add("square", sq == I * eps, f"E^2 = {sq!r}")
    comp = E.T @ G @ E
    add("compatibility", comp == G * (-eps), f"g(E.,E.) = {comp!r}")
    inv = E.T @ W @ E
    add("form_invariance", inv == W * (-eps), f"omega(E.,E.) = {inv!r}")
    d = exterior_d(g, W)
    add("closed", not d, "d omega has components " + ", ".join(
        f"e^{{{i + 1}{j + 1}{k + 1}}}: {fmt(v)}" for (i, j, k), v in sorted(d.items())))
    pf = [a for a, T in enumerate(covariant_derivative(m, W, "form")) if not T.is_zero()]
    add("parallel_form", not pf, "nabla_e%d omega != 0" % (pf[0] + 1) if pf else "")
    pe = [a for a, T in enumerate(covariant_derivative(m, E, "endo")) if not T.is_zero()]
    add("parallel_endo", not pe, "nabla_e%d E != 0" % (pe[0] + 1) if pe else "")
    nw = nijenhuis_witness(g, E)
    add("nijenhuis_zero", nw is None, f"N_E(e{nw[0] + 1}, e{nw[1] + 1}) != 0" if nw else "")
    if eps == PARA_KAHLER:
        plus, minus = eigenspaces(E)
        problems = []
        if len(plus) != len(minus) or len(plus) + len(minus) != n:
            problems.append(f"eigenspace dimensions {len(plus)}, {len(minus)}")
        for label, sp in (("+1", plus), ("-1", minus)):
            if not _closed_under_bracket(g, sp):
                problems.append(f"{label} eigenspace is not a subalgebra")
            if any(m.inner(u, v) for u in sp for v in sp):
                problems.append(f"{label} eigenspace is not null")
        sig = signature(G)
        if sig.plus != sig.minus:
            problems.append(f"metric signature ({sig.plus},{sig.minus}) is not neutral")
        add("eigen_split", not problems, "; ".join(problems))
    lam = is_einstein(m)
    add("einstein", lam is not None, f"Ricci operator {m.curvature.ricci_operator!r}")
    return StructureCertificate(eps, g, G, W, E, lam, Ledger(checks))


def _mat(rows) -> Matrix:
    return Matrix([[Q(x) for x in row] for row in rows])


def certificate_from_dict(data: Mapping) -> tuple[MetricLieAlgebra, Matrix, int, Matrix]:
    """Rebuild (metric algebra, ω, eps, E) from a serialized certificate."""
    alg = data["algebra"]
    br: dict = {}
    for i, j, k, x in alg["brackets"]:
        br.setdefault((i - 1, j - 1), {})[k - 1] = Q(x)
    g = LieAlgebra(int(alg["dim"]), br)
    m = MetricLieAlgebra(g, _mat(data["metric"]))
    return m, _mat(data["omega_matrix"]), int(data["kind"]), _mat(data["endo"])


def verify_certificate(data: Mapping) -> StructureCertificate:
    """Recompute every check of a serialized certificate from its raw tensors."""
    m, W, eps, E = certificate_from_dict(data)
    return certify(m, W, eps, E)


# --- search --------------------------------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    stage: str  # no_closed_nondegenerate | no_parallel_nondegenerate | no_square_solution
    witness: tuple = ()
    message: str = ""

    def __str__(self) -> str:
        if self.stage in ("no_closed_nondegenerate", "no_parallel_nondegenerate") and self.witness:
            forced = ", ".join(f"y{i + 1}{j + 1} = 0" for i, j in self.witness)
            return f"{self.stage}: forced {forced}"
        return f"{self.stage}: {self.message}" if self.message else self.stage


@dataclass(frozen=True)
class ResidualSystem:
    """E(y)^2 = eps*id left unsolved: one polynomial per nonzero matrix entry."""

    eps: int
    nvars: int
    equations: tuple[dict, ...]

    def __str__(self) -> str:
        def mono(e, c):
            vs = "*".join(f"y{a + 1}" + (f"^{k}" if k > 1 else "") for a, k in enumerate(e) if k)
            return fmt(c) + ("*" + vs if vs else "")
        return "; ".join(" + ".join(mono(e, c) for e, c in sorted(eq.items())) + " = 0" for eq in self.equations)


@dataclass
class SearchResult:
    certificates: list[StructureCertificate] = field(default_factory=list)
    obstruction: ObstructionReport | None = None
    unsolved: list[ResidualSystem] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    parallel: FormSpace | None = None

    def by_kind(self, eps: int) -> list[StructureCertificate]:
        return [c for c in self.certificates if c.kind == eps]


def forced_zero_coordinates(wide: FormSpace, narrow: FormSpace) -> tuple[tuple[int, int], ...]:
    """Coordinates y_ij free on ``wide`` but identically zero on ``narrow``."""
    def support(fs):
        return {p for B in fs.basis for p in form_terms(B)}
    return tuple(sorted(support(wide) - support(narrow)))


GRID_VALUES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(-1, 2))
GRID_MAX_VARS = 4


def _grid_solutions(eqs: list[dict], k: int, limit: int = 4) -> list[tuple[Fraction, ...]]:
    """Small rational points of a polynomial system (only tried for few unknowns)."""
    if k > GRID_MAX_VARS:
        return []
    out = []
    for y in itertools.product(GRID_VALUES, repeat=k):
        if any(y) and all(mv_eval(p, y) == 0 for p in eqs):
            out.append(y)
            if len(out) >= limit:
                break
    return out


def _square_candidates(Es: list[Matrix], eps: int) -> tuple[list[tuple[Fraction, ...]], ResidualSystem | None, str]:
    """Coefficient vectors y with (sum y_a E_a)^2 = eps*id, when the system is binomial."""
    n = Es[0].shape[0]
    k = len(Es)
    cross = [(a, b) for a, b in itertools.combinations(range(k), 2)
             if not (Es[a] @ Es[b] + Es[b] @ Es[a]).is_zero()]
    if cross:
        y = [linear_form([int(i == a) for i in range(k)]) for a in range(k)]
        eqs = []
        for r in range(n):
            for c in range(n):
                p: dict = {}
                for a in range(k):
                    for b in range(k):
                        v = (Es[a] @ Es[b])[r, c]
                        if v:
                            p = mv_add(p, mv_scale(mv_mul(y[a], y[b]), v))
                if r == c:
                    p = mv_add(p, {(0,) * k: Fraction(-eps)})
                if p:
                    eqs.append(p)
        eqs = list(dict.fromkeys(tuple(sorted(p.items())) for p in eqs))
        eqs = [dict(p) for p in eqs]
        found = _grid_solutions(eqs, k)
        if found:
            return found, None, ""
        return [], ResidualSystem(eps, k, tuple(eqs)), "cross terms present"
    # only squares: sum z_a E_a^2 = eps*id with z_a = y_a^2
    cols = [[x for row in (E @ E).tolist() for x in row] for E in Es]
    target = [Fraction(eps * int(i == j)) for i in range(n) for j in range(n)]
    sol = solve_linear(Matrix.from_columns(cols), target)
    if not sol.consistent:
        return [], None, "E^2 = eps*id has no solution"
    zs = [sol.particular]
    for coeffs in itertools.product(range(-2, 3), repeat=min(len(sol.nullspace_basis), 2)):
        if any(coeffs):
            zs.append(tuple(z + sum((c * v[i] for c, v in zip(coeffs, sol.nullspace_basis)), Fraction(0))
                            for i, z in enumerate(sol.particular)))
    out = []
    for z in zs:
        roots = [rational_sqrt(x) for x in z]
        if all(r is not None for r in roots):
            out.append(tuple(roots))
    if out:
        return out, None, ""
    z = sol.particular
    why = "needs y^2 < 0" if any(x < 0 for x in z) else "needs irrational y"
    return [], None, f"{why} (y^2 = " + ", ".join(fmt(x) for x in z) + ")"


def search_structures(m: MetricLieAlgebra, epsilons: Sequence[int] = (PSEUDO_KAHLER, PARA_KAHLER)) -> SearchResult:
    """Look for parallel symplectic forms and Kähler-type endomorphisms on a fixed metric."""
    res = SearchResult()
    if is_einstein(m) is None:
        warnings.warn("structure search on a non-Einstein metric", stacklevel=2)
    closed = closed_two_forms(m.algebra)
    if nondegenerate_element(closed) is None:
        res.obstruction = ObstructionReport("no_closed_nondegenerate", (), "no closed nondegenerate 2-form")
        return res
    par = parallel_two_forms(m)
    res.parallel = par
    if nondegenerate_element(par) is None:
        res.obstruction = ObstructionReport("no_parallel_nondegenerate", forced_zero_coordinates(closed, par),
                                            f"parallel closed forms: dimension {len(par)}, Pfaffian identically 0")
        return res
    Es = [endo_from_form(m, B) for B in par.basis]
    for eps in epsilons:
        ys, system, why = _square_candidates(Es, eps)
        if system is not None:
            res.unsolved.append(system)
        found = False
        for y in ys:
            W = par.combination(y)
            if det(W) == 0:
                continue
            cert = certify(m, W, eps)
            if cert.valid:
                res.certificates.append(cert)
                found = True
                break
            res.notes.append(f"eps={eps}: candidate failed {', '.join(c.name for c in cert.ledger.failures())}")
        if not found and why:
            res.notes.append(f"eps={eps}: {why}")
    if not res.certificates and not res.unsolved:
        res.obstruction = ObstructionReport("no_square_solution", (), "; ".join(res.notes))
    return res


DEFAULT_GRID = (Fraction(1), Fraction(2), Fraction(3, 2), Fraction(2, 3), Fraction(3))


def search_family(problem, params: Sequence[Fraction] = DEFAULT_GRID, epsilons=(PSEUDO_KAHLER, PARA_KAHLER),
                  signs: Sequence[Sequence[int]] | None = None, limit: int | None = None) -> SearchResult:
    """Run :func:`search_structures` on rank-one extensions across a diagonal nilsoliton family.

    Stops once every requested kind has a certificate (or after ``limit`` metrics).
    """
    from .extension import rank_one_extension

    sol = problem.solutions
    out = SearchResult()
    if sol.irrational:
        out.notes.append("irrational family")
        return out
    patterns = list(signs) if signs is not None else list(sol.sign_patterns)
    tried = 0
    for pt in itertools.product(params, repeat=sol.nfree):
        for s in patterns:
            metric = problem.metric(pt, s)
            ext, _ = rank_one_extension(MetricLieAlgebra.diagonal(problem.algebra, metric))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                res = search_structures(ext, [e for e in epsilons if not out.by_kind(e)])
            out.certificates.extend(res.certificates)
            if res.obstruction is not None and res.obstruction.stage != "no_square_solution":
                out.obstruction = res.obstruction
                return out
            tried += 1
            if all(out.by_kind(e) for e in epsilons) or (limit and tried >= limit):
                return out
    if not out.certificates:
        out.obstruction = ObstructionReport("no_square_solution", (), f"none of {tried} sampled metrics admits a solution")
    return out


# --- generalized Heisenberg family ---------------------------------------


def _heisenberg(n: int) -> LieAlgebra:
    top = 2 * n
    return LieAlgebra(2 * n + 1, {(2 * i, 2 * i + 1): {top: -1} for i in range(n)}, name=f"h{2 * n + 1}")


def generalized_heisenberg(n: int, eps: int, alpha, g_odd: Sequence) -> tuple[MetricLieAlgebra, StructureCertificate]:
    """Rank-one extension of h_{2n+1} with its Einstein (para-)Kähler structure.

    Base metric: g_{2i-1} e^{2i-1}², -eps*α²/g_{2i-1} e^{2i}², -eps*α²/(n+2) e^{2n+1}²;
    ω = α Σ e^{2i-1,2i} + 2α(n+1)/(n+2) e^{2n+1,2n+2}.
    """
    from .extension import rank_one_extension

    alpha = Q(alpha)
    gs = [Q(x) for x in g_odd]
    if n < 1 or len(gs) != n:
        raise ValueError("need n >= 1 and exactly n odd-index metric entries")
    if alpha == 0 or any(x == 0 for x in gs):
        raise ValueError("alpha and all metric parameters must be nonzero")
    if eps not in (PSEUDO_KAHLER, PARA_KAHLER):
        raise ValueError("eps must be -1 or +1")
    diag = []
    for x in gs:
        diag += [x, -eps * alpha ** 2 / x]
    diag.append(-eps * alpha ** 2 / (n + 2))
    base = MetricLieAlgebra.diagonal(_heisenberg(n), diag)
    ext, _ = rank_one_extension(base, name=f"h{2 * n + 1}+N")
    terms = {(2 * i, 2 * i + 1): alpha for i in range(n)}
    terms[(2 * n, 2 * n + 1)] = 2 * alpha * Fraction(n + 1, n + 2)
    W = form_matrix(terms, 2 * n + 2)
    return ext, certify(ext, W, eps)


def generalized_heisenberg_endomorphism(n: int, eps: int, alpha, g_odd: Sequence) -> Matrix:
    """Closed form of J_eps for :func:`generalized_heisenberg` (column j is J e_j)."""
    alpha = Q(alpha)
    dim = 2 * n + 2
    J = [[Fraction(0)] * dim for _ in range(dim)]
    for i, x in enumerate(Q(v) for v in g_odd):
        J[2 * i + 1][2 * i] = -eps * x / alpha
        J[2 * i][2 * i + 1] = -alpha / x
    J[2 * n + 1][2 * n] = alpha / (2 * (n + 1))
    J[2 * n][2 * n + 1] = eps * Fraction(2 * (n + 1)) / alpha
    return Matrix(J, cols=dim)
