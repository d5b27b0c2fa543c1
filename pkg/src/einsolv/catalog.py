"""Built-in algebras, published metrics and structures used by the CLI and test suite.

Keys follow the usual naming (``31:1``, ``51:2``, ``123457E``).  A key of the
form ``<name>+N`` denotes the rank-one extension of a nice algebra by its
Nikolayevsky derivation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactla import Matrix, Q
from .liealg import LieAlgebra, semidirect_extend
from .nice import nikolayevsky
from .notation import parse_algebra

F = Fraction


@dataclass(frozen=True)
class Entry:
    name: str
    notation: str
    group: str
    nikolayevsky: tuple[Fraction, ...] | None = None
    note: str = ""

    def algebra(self) -> LieAlgebra:
        return parse_algebra(self.notation, name=self.name)


def _n(scale, *xs) -> tuple[Fraction, ...]:
    return tuple(Q(scale) * x for x in xs)


# Nice nilpotent algebras of dimension <= 5 with their diagonal Nikolayevsky derivation.
NICE_LOW_DIM = (
    Entry("1:1", "0", "nice", (F(1),)),
    Entry("2:1", "0,0", "nice", (F(1), F(1))),
    Entry("31:1", "0,0,e^{12}", "nice", _n(F(2, 3), 1, 1, 2)),
    Entry("3:1", "0,0,0", "nice", (F(1),) * 3),
    Entry("421:1", "0,0,e^{12},e^{13}", "nice", _n(F(1, 3), 1, 2, 3, 4)),
    Entry("41:1", "0,0,0,e^{12}", "nice", _n(F(1, 3), 2, 2, 3, 4)),
    Entry("4:1", "0,0,0,0", "nice", (F(1),) * 4),
    Entry("5321:1", "0,0,e^{12},e^{13},e^{14}", "nice", _n(F(1, 12), 2, 9, 11, 13, 15)),
    Entry("5321:2", "0,0,e^{12},e^{13},e^{14}+e^{23}", "nice", _n(F(3, 11), 1, 2, 3, 4, 5)),
    Entry("532:1", "0,0,e^{12},e^{13},e^{23}", "nice", _n(F(5, 12), 1, 1, 2, 3, 3)),
    # printed with an extra leading zero; the five-entry reading matches its Nikolayevsky diagonal
    Entry("521:1", "0,0,0,e^{12},e^{14}", "nice", _n(F(1, 3), 1, 2, 3, 3, 4),
          note="printed as 0,0,0,0,e^{12},e^{14}"),
    Entry("521:2", "0,0,0,e^{12},e^{24}+e^{13}", "nice", _n(F(1, 7), 4, 3, 6, 7, 10)),
    Entry("52:1", "0,0,0,e^{12},e^{13}", "nice", _n(F(1, 4), 2, 3, 3, 5, 5)),
    Entry("51:1", "0,0,0,0,e^{12}", "nice", _n(F(1, 3), 2, 2, 3, 3, 4)),
    Entry("51:2", "0,0,0,0,e^{12}+e^{34}", "nice", _n(F(3, 4), 1, 1, 1, 1, 2)),
    Entry("5:1", "0,0,0,0,0", "nice", (F(1),) * 5),
)

# Seven-dimensional nilpotent algebras whose derivations are all traceless.
# Parametric families are instantiated at the listed value of the parameter.
TRACELESS_7D = (
    Entry("123457E", "0,0,e^{12},e^{13},e^{14},e^{23}+e^{15},e^{23}+e^{24}+e^{16}", "traceless"),
    Entry("123457H", "0,0,e^{12},e^{13},e^{14}+e^{23},e^{15}+e^{24},e^{25}+e^{23}+e^{16}", "traceless"),
    Entry("123457H_1", "0,0,e^{12},e^{13},e^{14}+e^{23},e^{15}+e^{24},-e^{16}-e^{25}+e^{23}", "traceless"),
    Entry("13457I", "0,0,e^{12},e^{13},e^{14},e^{23},e^{25}+e^{26}-e^{34}+e^{15}", "traceless"),
    Entry("12457J", "0,0,e^{12},e^{13},e^{23},e^{24}+e^{15},e^{34}+e^{25}+e^{16}+e^{14}", "traceless"),
    Entry("12457J_1", "0,0,e^{12},e^{13},e^{23},e^{24}+e^{15},e^{34}-e^{25}+e^{16}+e^{14}", "traceless"),
    Entry("12457N", "0,0,e^{12},e^{13},e^{23},e^{24}+e^{15},e^{25}+e^{26}+e^{34}-e^{35}+e^{16}+e^{14}",
          "traceless", note="parameter lambda = 1"),
    Entry("12457N_1", "0,0,e^{12},e^{13},e^{23},-e^{25}-e^{14},-e^{35}+e^{25}+e^{16}", "traceless"),
    Entry("12457N_2", "0,0,e^{12},e^{13},e^{23},-e^{14}-e^{25},e^{15}-e^{35}+e^{16}+e^{24}", "traceless",
          note="parameter lambda = 0"),
    Entry("123457F", "0,0,e^{12},e^{13},e^{14},e^{15}+e^{23},e^{16}-e^{34}+e^{24}+e^{25}", "traceless"),
    Entry("12457G", "0,0,e^{12},e^{13},0,e^{25}+e^{14}+e^{23},-e^{34}+e^{26}+e^{15}", "traceless"),
)


def _lam_term(lam) -> str:
    lam = Q(lam)
    if lam == 0:
        return ""
    return ("+" if lam > 0 else "-") + f"{abs(lam)}e^{{25}}"


def parametric_12457N(lam) -> str:
    return "0,0,e^{12},e^{13},e^{23},e^{24}+e^{15},e^{26}+e^{34}-e^{35}+e^{16}+e^{14}" + _lam_term(lam)


def parametric_12457N_2(lam) -> str:
    return "0,0,e^{12},e^{13},e^{23},-e^{14}-e^{25},e^{15}-e^{35}+e^{16}+e^{24}" + _lam_term(lam)


# Rank-one extensions carrying a closed nondegenerate 2-form, with that form.
SYMPLECTIC_EXTENSIONS = {
    "1:1": ("e^{12},0", "e^{12}"),
    "31:1": ("2/3e^{14},2/3e^{24},4/3e^{34}+e^{12},0", "e^{12}+4/3e^{34}"),
    "5321:2": ("3/11e^{16},6/11e^{26},9/11e^{36}+e^{12},12/11e^{46}+e^{13},15/11e^{56}+e^{14}+e^{23},0",
               "e^{14}+e^{23}+15/11e^{56}"),
    "521:2": ("4/7e^{16},3/7e^{26},6/7e^{36},e^{46}+e^{12},10/7e^{56}+e^{24}+e^{13},0",
              "e^{13}+e^{24}+10/7e^{56}"),
    "51:2": ("3/4e^{16},3/4e^{26},3/4e^{36},3/4e^{46},3/2e^{56}+e^{12}+e^{34},0", "e^{12}+e^{34}+3/2e^{56}"),
}

DIAGRAM_6D = Entry("6:diagram", "0,0,0,0,e^{13}+e^{24},e^{12}+e^{34}", "misc")
DIAGRAM_6D_ROOT_MATRIX = (
    (-1, 0, -1, 0, 1, 0),
    (0, -1, 0, -1, 1, 0),
    (-1, -1, 0, 0, 0, 1),
    (0, 0, -1, -1, 0, 1),
)

EINSTEIN_8D = Entry("8:einstein", "0,0,0,0,e^{12}+e^{34},e^{14}-e^{23},e^{16}-e^{24}+e^{35},-e^{13}+e^{26}+e^{45}",
                    "misc")

AFF = Entry("aff", "e^{12},0", "misc")
DOUBLE_421 = Entry("421:1+{N,D'}", "1/3e^{15}+e^{16},2/3e^{25}-4/3e^{26},e^{35}-1/3e^{36}+e^{12},"
                   "4/3e^{45}+2/3e^{46}+e^{13},0,0", "extension")
ABELIAN_RANK_TWO = Entry("2:1+{N,D}", "e^{13}+e^{24},e^{23}-e^{14},0,0", "extension")

_MISC = (DIAGRAM_6D, EINSTEIN_8D, AFF, DOUBLE_421, ABELIAN_RANK_TWO)


def all_entries() -> list[Entry]:
    return list(NICE_LOW_DIM) + list(TRACELESS_7D) + list(_MISC) + [
        Entry(f"{k}+N", v[0], "extension") for k, v in SYMPLECTIC_EXTENSIONS.items()]


def lookup(key: str) -> LieAlgebra:
    """Algebra by catalog key; ``<name>+N`` is built on the fly for any nice entry."""
    for e in all_entries():
        if e.name == key:
            return e.algebra()
    if key.endswith("+N"):
        base = lookup(key[:-2])
        return semidirect_extend(base, [nikolayevsky(base)], name=key)
    raise KeyError(f"unknown catalog key {key!r}")


# --- published metrics and structures -----------------------------------


def einstein_8d_metrics() -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """The two diagonal Einstein metrics (upper and lower sign choice)."""
    out = []
    for s in (1, -1):
        out.append((F(1), F(1), F(s), F(s), F(-7, 3), F(-7 * s, 3), F(98 * s, 15), F(98 * s, 15)))
    return tuple(out)


def _form(terms: dict[tuple[int, int], object], dim: int) -> Matrix:
    """2-form from 1-based coefficients ``{(i, j): c}`` of ``e^{ij}``."""
    from .structures import form_matrix
    return form_matrix({(i - 1, j - 1): c for (i, j), c in terms.items()}, dim)


def _endo(images: dict[int, dict[int, Fraction]], dim: int) -> Matrix:
    """Endomorphism from 1-based images ``{j: {k: coef}}`` meaning E e_j = sum coef e_k."""
    M = [[F(0)] * dim for _ in range(dim)]
    for j, img in images.items():
        for k, v in img.items():
            M[k - 1][j - 1] = Q(v)
    return Matrix(M, cols=dim)


def heisenberg_structures(g1, y, eps: int) -> tuple[tuple[Fraction, ...], Matrix, Matrix]:
    """Diagonal metric, ω and J (eps=-1) or K (eps=+1) on the extension of 31:1."""
    g1, y = Q(g1), Q(y)
    s = -eps  # +1 for J, -1 for K
    metric = (g1, s * y * y / g1, s * y * y / 3, F(16, 3))
    W = _form({(1, 2): y, (3, 4): F(4, 3) * y}, 4)
    E = _endo({1: {2: -eps * g1 / y}, 2: {1: -y / g1}, 3: {4: y / 4}, 4: {3: eps * 4 / y}}, 4)
    return metric, W, E


def h5_structures(g1, g3, y, eps: int) -> tuple[tuple[Fraction, ...], Matrix, Matrix]:
    """Diagonal metric, ω and J/K on the extension of 51:2."""
    g1, g3, y = Q(g1), Q(g3), Q(y)
    s = -eps
    metric = (g1, s * y * y / g1, g3, s * y * y / g3, s * y * y / 4, F(9))
    W = _form({(1, 2): y, (3, 4): y, (5, 6): F(3, 2) * y}, 6)
    E = _endo({1: {2: -eps * g1 / y}, 2: {1: -y / g1}, 3: {4: -eps * g3 / y}, 4: {3: -y / g3},
               5: {6: y / 6}, 6: {5: eps * 6 / y}}, 6)
    return metric, W, E


def twisted_521_2(g1) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """Non-diagonal metric on 521:2, its stated extension metric, ω and the printed K.

    ``e^i ⊙ e^j`` is read as ``e^i ⊗ e^j + e^j ⊗ e^i``.
    """
    g1 = Q(g1)
    base = [[F(0)] * 5 for _ in range(5)]
    base[0][2] = base[2][0] = g1
    base[1][3] = base[3][1] = -g1
    base[4][4] = -g1 * g1 / 4
    ext = [row + [F(0)] for row in base] + [[F(0)] * 5 + [F(400, 49)]]
    W = _form({(1, 3): g1, (2, 4): g1, (5, 6): F(10, 7) * g1}, 6)
    K = _endo({1: {1: 1}, 2: {2: -1}, 3: {3: -1}, 4: {4: -1}, 5: {6: -F(10, 7) * g1}, 6: {5: F(10, 7) * g1}}, 6)
    return Matrix(base), Matrix(ext), W, K


def abelian_rank_two(eps: int) -> tuple[tuple[Fraction, ...], tuple[Matrix, Matrix], tuple[Fraction, ...], Matrix, Matrix]:
    """Base metric, derivations (N, D), extension metric, ω and J/K for the rank-two extension of R^2."""
    s = -eps  # J variant: -1/4, 1/4 on the base
    base = (F(-s, 4), F(s, 4))
    N = Matrix.identity(2)
    D = _endo({1: {2: -1}, 2: {1: 1}}, 2)
    ext = base + (F(4), F(-4))
    W = _form({(1, 4): -1, (2, 3): 1}, 4)
    E = _endo({4: {1: 4 * eps}, 3: {2: 4 * eps}, 2: {3: F(1, 4)}, 1: {4: F(1, 4)}}, 4)
    return base, (N, D), ext, W, E


DOUBLE_421_D_PRINTED = (F(1), F(-4, 3), F(-1, 3), F(8))
DOUBLE_421_D = (F(1), F(-4, 3), F(-1, 3), F(2, 3))  # read off the structure equations


def double_421(g1, eps: int) -> tuple[tuple[Fraction, ...], Matrix, Matrix]:
    """Published metric, ω and J (eps=-1) or K (eps=+1) on the rank-two extension of 421:1.

    The endomorphism is kept as printed, including the image of e_1 along e_1.
    """
    g1 = Q(g1)
    if eps == -1:
        metric = (3 / g1, 3 * g1, 3 * g1, F(3), F(20, 3), F(20, 3))
        W = _form({(1, 3): 3, (2, 5): 2 * g1, (2, 6): -4 * g1, (4, 5): 4, (4, 6): 2}, 6)
        E = _endo({1: {1: 1 / g1}, 2: {5: 3 * g1 / 10, 6: -3 * g1 / 5}, 3: {1: -g1},
                   4: {5: F(3, 5), 6: F(3, 10)}, 5: {2: -2 / (3 * g1), 4: F(-4, 3)},
                   6: {2: 4 / (3 * g1), 4: F(-2, 3)}}, 6)
    else:
        metric = (-3 / g1, -3 * g1, 3 * g1, F(-3), F(20, 3), F(20, 3))
        W = _form({(1, 3): 3, (2, 5): -2 * g1, (2, 6): 4 * g1, (4, 5): 4, (4, 6): 2}, 6)
        E = _endo({1: {1: 1 / g1}, 2: {5: -3 * g1 / 10, 6: 3 * g1 / 5}, 3: {1: g1},
                   4: {5: F(3, 5), 6: F(3, 10)}, 5: {2: -2 / (3 * g1), 4: F(4, 3)},
                   6: {2: 4 / (3 * g1), 4: F(2, 3)}}, 6)
    return metric, W, E


DOUBLE_421_PARA_LAMBDA_PRINTED = F(1, 2)


def aff_structures() -> dict[str, tuple[tuple[Fraction, ...], Matrix, Matrix]]:
    W = _form({(1, 2): 1}, 2)
    return {
        "pseudo-kahler": ((F(1), F(1)), W, _endo({1: {2: 1}, 2: {1: -1}}, 2)),
        "para-kahler": ((F(-1), F(1)), W, _endo({1: {2: 1}, 2: {1: 1}}, 2)),
    }


def metric_matrix(entries: Sequence) -> Matrix:
    return Matrix.diag([Q(x) for x in entries])
