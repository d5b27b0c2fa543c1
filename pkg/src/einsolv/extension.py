"""Pseudo-Iwasawa Einstein extensions of nilsolitons and their verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .checks import Check, Ledger
from .curvature import MetricLieAlgebra, adjoint, is_einstein
from .exactla import Matrix, Q, det, fmt, solve_linear
from .liealg import ExtensionError, LieAlgebra, flags, gram, is_derivation, semidirect_extend, trace_form
from .soliton import SolitonDecomposition, soliton_decompose

__all__ = [
    "ExtensionSpec",
    "StandardDecomposition",
    "Correspondence",
    "pseudo_iwasawa_extend",
    "rank_one_extension",
    "subalgebra",
    "verify_pseudo_iwasawa",
    "verify_correspondence",
]


@dataclass(frozen=True)
class ExtensionSpec:
    base: MetricLieAlgebra
    derivations: tuple[Matrix, ...]
    soliton: SolitonDecomposition | None = None
    lam: Fraction | None = None  # fixes λ when the base is abelian (any λ works there)

    def __post_init__(self):
        object.__setattr__(self, "derivations", tuple(self.derivations))
        if self.soliton is None:
            if self.lam is None:
                sol = soliton_decompose(self.base)
            else:
                lam = Q(self.lam)
                D = self.base.curvature.ricci_operator - Matrix.identity(self.base.dim) * lam
                sol = SolitonDecomposition.from_pair(lam, D)
            object.__setattr__(self, "soliton", sol)

    @property
    def lambda_(self) -> Fraction:
        return self.soliton.lambda_

    @property
    def gram(self) -> Matrix:
        return gram(self.derivations)


@dataclass(frozen=True)
class StandardDecomposition:
    ideal_indices: tuple[int, ...]
    abelian_indices: tuple[int, ...]
    pseudo_iwasawa: bool = True


def _in_span(ops: Sequence[Matrix], D: Matrix) -> bool:
    if D.is_zero():
        return True
    cols = [[x for row in A.tolist() for x in row] for A in ops]
    if not cols:
        return False
    return solve_linear(Matrix.from_columns(cols), [x for row in D.tolist() for x in row]).consistent


def pseudo_iwasawa_extend(spec: ExtensionSpec, name: str | None = None) -> tuple[MetricLieAlgebra, StandardDecomposition]:
    """Extension g ⋊ a with metric g ⊕ (-1/λ)·⟨,⟩_Tr; aborts unless the result is Einstein."""
    base, sol = spec.base, spec.soliton
    if sol.lambda_ is None or sol.D is None:
        raise ExtensionError("base metric is not a nilsoliton")
    lam = sol.lambda_
    if lam == 0:
        raise ExtensionError("extension needs lambda != 0")
    if not is_derivation(base.algebra, sol.D):
        raise ExtensionError("Ric - lambda*id is not a derivation of the base")
    ders = spec.derivations
    for s, A in enumerate(ders):
        if adjoint(base, A) != A:
            raise ExtensionError(f"derivation {s} is not self-adjoint for the base metric")
    if not _in_span(ders, sol.D):
        raise ExtensionError("the nilsoliton derivation D is not in the span of the given derivations")
    G = spec.gram
    if det(G) == 0:
        raise ExtensionError(f"trace form is degenerate on the given derivations: {G!r}")
    algebra = semidirect_extend(base.algebra, ders, name=name)
    n, r = base.dim, len(ders)
    metric = [[Fraction(0)] * (n + r) for _ in range(n + r)]
    for i in range(n):
        for j in range(n):
            metric[i][j] = base.metric[i, j]
    for s in range(r):
        for t in range(r):
            metric[n + s][n + t] = -G[s, t] / lam
    m = MetricLieAlgebra(algebra, Matrix(metric))
    got = is_einstein(m)
    if got != lam:
        raise ExtensionError(f"extension is not Einstein with lambda={fmt(lam)}; Ric = {m.curvature.ricci_operator!r}")
    return m, StandardDecomposition(tuple(range(n)), tuple(range(n, n + r)), True)


def rank_one_extension(base: MetricLieAlgebra, name: str | None = None, lam=None) -> tuple[MetricLieAlgebra, StandardDecomposition]:
    """Extension by the single derivation -D/λ (the Nikolayevsky derivation for diagonal Nil4 metrics).

    Pass ``lam`` for abelian bases, where every λ is admissible.
    """
    spec = ExtensionSpec(base, (), lam=lam)
    sol = spec.soliton
    if sol.lambda_ is None or sol.lambda_ == 0 or sol.D is None:
        raise ExtensionError(f"rank-one extension needs a nilsoliton with lambda != 0, got {sol.type.value}")
    N = sol.D * (-1 / sol.lambda_)
    return pseudo_iwasawa_extend(ExtensionSpec(base, (N,), sol), name=name)


def subalgebra(g: LieAlgebra, indices: Sequence[int], name: str | None = None) -> LieAlgebra | None:
    """The span of the given basis vectors as a Lie algebra, or None if it is not closed."""
    idx = list(indices)
    pos = {v: p for p, v in enumerate(idx)}
    br = {}
    for a, i in enumerate(idx):
        for b in range(a + 1, len(idx)):
            vec = g.c[i][idx[b]]
            if any(x and k not in pos for k, x in enumerate(vec)):
                return None
            img = {pos[k]: x for k, x in enumerate(vec) if x}
            if img:
                br[(a, b)] = img
    return LieAlgebra(len(idx), br, name=name, check=False)


def _is_ideal(g: LieAlgebra, indices: Sequence[int]) -> tuple[int, int] | None:
    inside = set(indices)
    for i in indices:
        for j in range(g.dim):
            if any(x for k, x in enumerate(g.c[i][j]) if k not in inside):
                return (i, j)
    return None


def verify_pseudo_iwasawa(m: MetricLieAlgebra, sd: StandardDecomposition) -> Ledger:
    g = m.algebra
    ideal, ab = list(sd.ideal_indices), list(sd.abelian_indices)
    checks = []
    bad = _is_ideal(g, ideal)
    checks.append(Check("ideal", bad is None,
                        "" if bad is None else f"[e{bad[0] + 1}, e{bad[1] + 1}] leaves the ideal"))
    sub = subalgebra(g, ideal)
    nil = sub is not None and flags(sub).nilpotent
    checks.append(Check("nilpotent_ideal", nil))
    ab_bad = next(((i, j) for i in ab for j in ab if any(g.c[i][j])), None)
    checks.append(Check("abelian_complement", ab_bad is None,
                        "" if ab_bad is None else f"[e{ab_bad[0] + 1}, e{ab_bad[1] + 1}] != 0"))
    orth_bad = next(((i, j) for i in ideal for j in ab if m.metric[i, j]), None)
    checks.append(Check("orthogonal", orth_bad is None,
                        "" if orth_bad is None else f"g(e{orth_bad[0] + 1}, e{orth_bad[1] + 1}) != 0"))
    restricted = Matrix([[m.metric[i, j] for j in ideal] for i in ideal], cols=len(ideal))
    checks.append(Check("nondegenerate_restriction", not ideal or det(restricted) != 0))
    sa_bad = [i for i in ab if adjoint(m, g.ad(i)) != g.ad(i)]
    checks.append(Check("self_adjoint", not sa_bad,
                        "" if not sa_bad else "ad e" + ", ad e".join(str(i + 1) for i in sa_bad) + " not self-adjoint"))
    return Ledger(checks)


@dataclass(frozen=True)
class Correspondence:
    ledger: Ledger
    branch: str  # "Nil3" (unimodular, H = 0) or "Nil4" (g(H,H) != 0, Tr D != 0)
    H: tuple[Fraction, ...]
    g_HH: Fraction
    trace_D: Fraction
    trace_D2: Fraction
    details: dict = field(default_factory=dict)


def verify_correspondence(m: MetricLieAlgebra, sd: StandardDecomposition, lam=None) -> Correspondence:
    """Check the nilsoliton/Einstein-extension identities on a standard decomposition."""
    g = m.algebra
    ideal, ab = list(sd.ideal_indices), list(sd.abelian_indices)
    lam = Q(lam) if lam is not None else is_einstein(m)
    checks = []
    H = m.curvature.H
    adH = g.ad_vector(H)
    D = Matrix([[adH[i, j] for j in ideal] for i in ideal], cols=len(ideal))
    sub = subalgebra(g, ideal)
    if sub is None or lam is None:
        checks.append(Check("ricci_nilsoliton", False, "ideal is not a subalgebra or metric is not Einstein"))
    else:
        base = m.restrict(ideal, sub)
        ric = base.curvature.ricci_operator
        resid = ric - Matrix.identity(len(ideal)) * lam - D
        checks.append(Check("ricci_nilsoliton", resid.is_zero(),
                            "" if resid.is_zero() else f"Ric - lambda*id - ad H = {resid!r}"))
        bad = None
        for a in ab:
            for b in ab:
                lhs = trace_form(g.ad(a), g.ad(b))
                if lhs != -lam * m.metric[a, b]:
                    bad = (a, b, lhs)
                    break
            if bad:
                break
        checks.append(Check("trace_form", bad is None,
                            "" if bad is None else
                            f"<ad e{bad[0] + 1}, ad e{bad[1] + 1}> = {fmt(bad[2])} != -lambda*g"))
    trD, trD2 = D.trace(), (D @ D).trace()
    if lam is not None:
        checks.append(Check("trace_identity", trD2 == -lam * trD,
                            f"Tr D^2 = {fmt(trD2)}, -lambda Tr D = {fmt(-lam * trD)}"))
    unimodular = flags(g).unimodular
    gHH = m.inner(H, H)
    if unimodular and not any(H):
        branch = "Nil3"
        ok = True
    else:
        branch = "Nil4"
        ok = not unimodular and gHH != 0 and trD != 0
    checks.append(Check("dichotomy", ok, f"unimodular={unimodular}, g(H,H)={fmt(gHH)}, Tr D={fmt(trD)}"))
    return Correspondence(Ledger(checks), branch, H, gHH, trD, trD2, {"lambda": lam})
