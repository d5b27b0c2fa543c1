"""Parse and print structure equations such as ``0,0,e^{12},2/3e^{14}+e^{23}``.

Entry ``k`` lists ``de^k``.  The coefficient of ``e^{ij}`` in ``de^k`` is
``-c_ij^k``, so ``0,0,e^{12}`` means ``[e_1, e_2] = -e_3``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exactla import Q, fmt
from .liealg import LieAlgebra

__all__ = ["NotationError", "parse_algebra", "format_algebra", "parse_form", "format_form", "split_entries"]


class NotationError(ValueError):
    def __init__(self, msg: str, position: int | None = None):
        super().__init__(msg if position is None else f"{msg} (at position {position})")
        self.position = position


_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:/\d+)?)?\s*\*?\s*e\^(?:\{(?P<braced>[\d,\s]+)\}|(?P<bare>\d+))\s*")


def split_entries(text: str) -> list[tuple[int, str]]:
    """Split on top-level commas, returning (offset, entry) pairs."""
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
        offset += 1
    out, depth, start = [], 0, 0
    for pos, ch in enumerate(s):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise NotationError("unbalanced '}'", offset + pos)
        elif ch == "," and depth == 0:
            out.append((offset + start, s[start:pos]))
            start = pos + 1
    if depth:
        raise NotationError("unbalanced '{'", offset + len(s))
    out.append((offset + start, s[start:]))
    return out


def _indices(spec: str, dim: int | None, pos: int) -> tuple[int, ...]:
    spec = spec.replace(" ", "")
    if "," in spec:
        idx = tuple(int(t) for t in spec.split(","))
    elif dim is not None and dim > 9:
        raise NotationError(f"indices '{spec}' are ambiguous above dimension 9; separate them with commas", pos)
    else:
        idx = tuple(int(ch) for ch in spec)
    if dim is not None and any(not 1 <= i <= dim for i in idx):
        raise NotationError(f"index out of range 1..{dim} in e^{{{spec}}}", pos)
    return idx


def _parse_terms(entry: str, offset: int, dim: int | None, degree: int) -> dict[tuple[int, ...], Fraction]:
    body = entry.strip()
    if body in ("0", ""):
        if body == "":
            raise NotationError("empty entry", offset)
        return {}
    terms: dict[tuple[int, ...], Fraction] = {}
    pos = 0
    first = True
    while pos < len(entry):
        if not entry[pos:].strip():
            break
        m = _TERM.match(entry, pos)
        if m is None or (not first and m.group("sign") is None):
            raise NotationError(f"cannot parse term '{entry[pos:].strip()}'", offset + pos)
        first = False
        coef = Q(m.group("coef") or 1)
        if m.group("sign") == "-":
            coef = -coef
        idx = _indices(m.group("braced") or m.group("bare"), dim, offset + pos)
        if len(idx) != degree:
            raise NotationError(f"expected a {degree}-form term, got e^{{{''.join(map(str, idx))}}}", offset + pos)
        if len(set(idx)) != len(idx):
            coef = Fraction(0)
        # sort indices, tracking the permutation sign
        perm = list(idx)
        sign = 1
        for a in range(len(perm)):
            for b in range(len(perm) - 1 - a):
                if perm[b] > perm[b + 1]:
                    perm[b], perm[b + 1] = perm[b + 1], perm[b]
                    sign = -sign
        key = tuple(i - 1 for i in perm)
        terms[key] = terms.get(key, Fraction(0)) + sign * coef
        pos = m.end()
    return {k: v for k, v in terms.items() if v}


def parse_algebra(text: str, name: str | None = None) -> LieAlgebra:
    entries = split_entries(text)
    dim = len(entries)
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for k, (offset, entry) in enumerate(entries):
        for (i, j), coef in _parse_terms(entry, offset, dim, 2).items():
            brackets.setdefault((i, j), {})[k] = -coef
    return LieAlgebra(dim, brackets, name=name)


def parse_form(text: str, dim: int, degree: int = 2) -> dict[tuple[int, ...], Fraction]:
    """Parse a single form like ``e^{12}+4/3e^{34}`` into ``{(0, 1): 1, (2, 3): 4/3}``."""
    return _parse_terms(text, 0, dim, degree)


def _fmt_coef(c: Fraction, leading: bool) -> str:
    sign = "-" if c < 0 else ("" if leading else "+")
    a = abs(c)
    return sign + ("" if a == 1 else fmt(a))


def _fmt_idx(idx: tuple[int, ...], dim: int) -> str:
    sep = "," if dim > 9 else ""
    return "e^{" + sep.join(str(i + 1) for i in idx) + "}"


def format_form(terms: dict[tuple[int, ...], Fraction], dim: int) -> str:
    items = sorted((k, v) for k, v in terms.items() if v)
    if not items:
        return "0"
    return "".join(_fmt_coef(v, n == 0) + _fmt_idx(k, dim) for n, (k, v) in enumerate(items))


def format_algebra(g: LieAlgebra) -> str:
    out = []
    for k in range(g.dim):
        terms = {(i, j): -g.c[i][j][k] for i in range(g.dim) for j in range(i + 1, g.dim) if g.c[i][j][k]}
        out.append(format_form(terms, g.dim))
    return ",".join(out)

