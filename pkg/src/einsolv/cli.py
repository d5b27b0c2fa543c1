"""Command-line interface: ``einsolv <command> [options]``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import catalog, suite
from .checks import Check
from .curvature import MetricLieAlgebra, is_einstein
from .exactla import Matrix, fmt
from .extension import rank_one_extension, verify_correspondence, verify_pseudo_iwasawa
from .liealg import LieAlgebra, derivations, derivations_traceless, flags
from .nice import NiceViolation, nice_structure, nikolayevsky
from .notation import format_algebra, format_form, parse_algebra
from .soliton import DEFAULT_LAMBDA, diagonal_soliton_solve, soliton_decompose, verify_nilsoliton
from .structures import (PARA_KAHLER, PSEUDO_KAHLER, closed_two_forms, form_terms, nondegenerate_element,
                         parallel_two_forms, search_family, search_structures, verify_certificate)

KINDS = {"pseudo-kahler": PSEUDO_KAHLER, "para-kahler": PARA_KAHLER}


class InputError(Exception):
    pass


# --- argument helpers -----------------------------------------------------

def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def rational_list(text: str) -> list[Fraction]:
    return [rational(t) for t in text.split(",") if t.strip()]


def load_algebra(arg: str) -> LieAlgebra:
    """Catalog key, path to a UTF-8 notation file, or notation text."""
    try:
        return catalog.lookup(arg)
    except KeyError:
        pass
    path = Path(arg)
    if path.suffix and path.is_file():
        return parse_algebra(path.read_text(encoding="utf-8").strip(), name=path.stem)
    return parse_algebra(arg)


def parse_signs(text: str | None, patterns) -> list[tuple[int, ...]]:
    if text is None:
        return [patterns[0]]
    if text == "all":
        return list(patterns)
    raw = text.replace(",", "")
    signs = []
    i = 0
    while i < len(raw):
        if raw[i] in "+-" and raw[i + 1:i + 2] == "1":
            signs.append(1 if raw[i] == "+" else -1)
            i += 2
        elif raw[i] in "+-":
            signs.append(1 if raw[i] == "+" else -1)
            i += 1
        elif raw[i] == "1":
            signs.append(1)
            i += 1
        else:
            raise InputError(f"bad sign pattern {text!r}")
    pattern = tuple(signs)
    if pattern not in patterns:
        raise InputError(f"sign pattern {text!r} is not admissible; choose from "
                         + ", ".join("".join("+" if s > 0 else "-" for s in p) for p in patterns))
    return [pattern]


def _mat(M: Matrix) -> list[list[str]]:
    return [[fmt(x) for x in row] for row in M.tolist()]


def _vec(v) -> list[str]:
    return [fmt(x) for x in v]


def _metric_of(g: LieAlgebra, entries) -> MetricLieAlgebra:
    if len(entries) == g.dim:
        return MetricLieAlgebra.diagonal(g, entries)
    if len(entries) == g.dim ** 2:
        return MetricLieAlgebra(g, Matrix([entries[i * g.dim:(i + 1) * g.dim] for i in range(g.dim)]))
    raise InputError(f"--metric needs {g.dim} diagonal entries or {g.dim ** 2} matrix entries")


# --- commands -------------------------------------------------------------

def cmd_info(args) -> dict:
    g = load_algebra(args.algebra)
    fl = flags(g)
    ns = nice_structure(g)
    res = {
        "dim": g.dim,
        "nilpotent": fl.nilpotent, "step": fl.step,
        "solvable": fl.solvable, "unimodular": fl.unimodular,
        "lower_central_series": list(fl.lower_central_dims),
        "derived_series": list(fl.derived_dims),
        "derivation_dim": derivations(g).dim,
        "derivations_traceless": derivations_traceless(g),
        "nice": not isinstance(ns, NiceViolation),
    }
    if isinstance(ns, NiceViolation):
        res["nice_violation"] = str(ns)
    else:
        res["root_matrix"] = [list(r) for r in ns.root_matrix]
        if fl.nilpotent:
            res["nikolayevsky"] = _vec(nikolayevsky(g, ns).diagonal())
    return {"algebra": g, "results": [res], "checks": []}


def cmd_nilsoliton(args) -> dict:
    g = load_algebra(args.algebra)
    prob = diagonal_soliton_solve(g, args.lam, args.kernel)
    res = {
        "lambda": fmt(prob.lambda_),
        "nikolayevsky": _vec(prob.N.diagonal()),
        "b": _vec(prob.b), "X": _vec(prob.X),
        "irrational": prob.irrational,
        "sign_patterns": ["".join("+" if s > 0 else "-" for s in p) for p in prob.solutions.sign_patterns],
        "family": prob.describe(),
        "instances": [],
    }
    checks = []
    if prob.irrational:
        checks.append(Check("rational_family", False, "no rational diagonal metric for this b and kernel choice"))
        return {"algebra": g, "results": [res], "checks": checks}
    for pt in itertools.product(args.params, repeat=prob.solutions.nfree):
        for signs in parse_signs(args.signs, prob.solutions.sign_patterns):
            metric = prob.metric(pt, signs)
            m = MetricLieAlgebra.diagonal(g, metric)
            ledger = verify_nilsoliton(m, soliton_decompose(m))
            ok = prob.check_instance(metric) and m.curvature.ricci_operator == Matrix.diag(prob.expected_ricci())
            tag = "(" + ",".join(_vec(metric)) + ")"
            checks.append(Check(f"ricci {tag}", ok, "Ric != lambda(id - N)"))
            checks.extend(Check(f"{c.name} {tag}", c.passed, c.witness) for c in ledger)
            res["instances"].append({"params": _vec(pt), "metric": _vec(metric),
                                     "ricci": _vec(m.curvature.ricci_operator.diagonal())})
    return {"algebra": g, "results": [res], "checks": checks}


def _base_metric(args, g: LieAlgebra) -> MetricLieAlgebra:
    if args.metric is not None:
        return _metric_of(g, args.metric)
    if g.is_abelian():
        return MetricLieAlgebra.diagonal(g, [1] * g.dim)
    prob = diagonal_soliton_solve(g, args.lam, args.kernel)
    pt = args.params[:1] * prob.solutions.nfree
    return prob.metric_algebra(pt, parse_signs(args.signs, prob.solutions.sign_patterns)[0])


def cmd_extend(args) -> dict:
    g = load_algebra(args.algebra)
    base = _base_metric(args, g)
    ext, sd = rank_one_extension(base, name=(g.name or "g") + "+N", lam=args.lam if g.is_abelian() else None)
    lam = is_einstein(ext)
    corr = verify_correspondence(ext, sd, lam)
    checks = [Check("einstein", lam is not None, f"Ricci operator {ext.curvature.ricci_operator!r}")]
    checks += list(verify_pseudo_iwasawa(ext, sd)) + list(corr.ledger)
    res = {
        "base_metric": _mat(base.metric),
        "extension": format_algebra(ext.algebra),
        "metric": _mat(ext.metric),
        "lambda": None if lam is None else fmt(lam),
        "branch": corr.branch,
        "H": _vec(corr.H), "g(H,H)": fmt(corr.g_HH),
        "trace_D": fmt(corr.trace_D), "trace_D2": fmt(corr.trace_D2),
        "signature": list(ext.signature()),
    }
    return {"algebra": g, "results": [res], "checks": checks}


def _search(args, g: LieAlgebra, epsilons):
    if args.metric is not None:
        m = _metric_of(g, args.metric)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return search_structures(m, epsilons)
    if not flags(g).nilpotent:
        raise InputError("give --metric for a non-nilpotent algebra")
    prob = diagonal_soliton_solve(g, args.lam, args.kernel)
    signs = None if args.signs in (None, "all") else parse_signs(args.signs, prob.solutions.sign_patterns)
    return search_family(prob, args.params, epsilons, signs=signs)


def cmd_structures(args) -> dict:
    g = load_algebra(args.algebra)
    checks = []
    if args.structure == "symplectic":
        closed = closed_two_forms(g)
        W = nondegenerate_element(closed)
        res = {"closed_forms_dim": len(closed), "symplectic": W is not None,
               "omega": None if W is None else format_form(form_terms(W), g.dim)}
        if args.metric is not None:
            par = parallel_two_forms(_metric_of(g, args.metric))
            Wp = nondegenerate_element(par)
            res.update(parallel_forms_dim=len(par),
                       parallel_omega=None if Wp is None else format_form(form_terms(Wp), g.dim))
        return {"algebra": g, "results": [res], "checks": checks}
    epsilons = [KINDS[args.structure]] if args.structure else [PSEUDO_KAHLER, PARA_KAHLER]
    result = _search(args, g, epsilons)
    res = {"certificates": [c.to_dict() for c in result.certificates],
           "obstruction": None if result.obstruction is None else str(result.obstruction),
           "unsolved": [str(s) for s in result.unsolved], "notes": result.notes}
    for c in result.certificates:
        checks.extend(Check(f"{c.label}: {x.name}", x.passed, x.witness) for x in c.ledger)
    conclusive = bool(result.certificates) or (
        result.obstruction is not None and result.obstruction.stage != "no_square_solution")
    checks.append(Check("search_conclusive", conclusive,
                        "sampled metrics left undecided: " + "; ".join(res["unsolved"] or result.notes)))
    return {"algebra": g, "results": [res], "checks": checks}


def cmd_verify(args) -> dict:
    try:
        data = json.loads(Path(args.certificate).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read certificate: {exc}") from exc
    if isinstance(data, dict) and "results" in data:  # a saved structures report
        data = [c for r in data["results"] for c in r.get("certificates", [])]
    items = data if isinstance(data, list) else [data]
    if not items:
        raise InputError("no certificates found in file")
    results, checks, alg = [], [], None
    for k, item in enumerate(items):
        try:
            cert = verify_certificate(item)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed certificate: missing {exc}") from exc
        alg = cert.algebra
        stored = {c["name"]: c["status"] for c in item.get("ledger", [])}
        results.append({"structure": cert.label, "lambda": None if cert.lambda_ is None else fmt(cert.lambda_),
                        "valid": cert.valid})
        for c in cert.ledger:
            checks.append(Check(f"#{k + 1} {c.name}", c.passed, c.witness))
            if c.name in stored and stored[c.name] != c.status:
                checks.append(Check(f"#{k + 1} {c.name} matches stored ledger", False,
                                    f"stored {stored[c.name]}, recomputed {c.status}"))
    return {"algebra": alg, "results": results, "checks": checks}


def cmd_suite(args) -> dict:
    numbers = args.criteria or [n for n, _, _ in suite.CRITERIA]
    results, checks = [], []
    for n in numbers:
        out = suite.run_criterion(n)
        if not args.json:
            print(out.line(), flush=True)
            for c in out.ledger.failures():
                print(f"    fail {c.name}: {c.witness}")
            for note in out.notes:
                print(f"    note {note}")
        results.append({"criterion": n, "title": out.title, "status": "pass" if out.passed else "fail",
                        "seconds": round(out.seconds, 3), "notes": out.notes})
        checks.extend(Check(f"{n}: {c.name}", c.passed, c.witness) for c in out.checks)
    return {"algebra": None, "results": results, "checks": checks, "printed": True}


# --- entry point ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="einsolv", description="Exact Einstein (para-)Kahler solvmanifold toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, algebra=True):
        if algebra:
            sp.add_argument("algebra", help="catalog key (e.g. 31:1, 51:2+N), notation text, or a notation file")
        sp.add_argument("--json", action="store_true", help="print a JSON report")

    def soliton_opts(sp):
        sp.add_argument("--lambda", dest="lam", type=rational, default=DEFAULT_LAMBDA, help="Einstein constant p/q")
        sp.add_argument("--kernel", type=rational_list, default=None, help="coefficients of the ker M^T element")
        sp.add_argument("--params", type=rational_list, default=[Fraction(1)], help="grid of positive parameters")
        sp.add_argument("--signs", default=None, help="'all' or a sign pattern such as ++-")

    sp = sub.add_parser("info", help="flags, derivations and nice-basis data")
    common(sp)
    sp = sub.add_parser("nilsoliton", help="diagonal nilsoliton metrics on a nice nilpotent algebra")
    common(sp)
    soliton_opts(sp)
    sp = sub.add_parser("extend", help="rank-one Einstein extension of a nilsoliton")
    common(sp)
    soliton_opts(sp)
    sp.add_argument("--metric", type=rational_list, default=None, help="base metric: diagonal or full row-major")
    sp = sub.add_parser("structures", help="search for Einstein pseudo- and para-Kahler structures")
    common(sp)
    soliton_opts(sp)
    sp.add_argument("--structure", choices=["pseudo-kahler", "para-kahler", "symplectic"], default=None)
    sp.add_argument("--metric", type=rational_list, default=None,
                    help="fixed metric on the given algebra instead of the family of extensions")
    sp = sub.add_parser("verify", help="recheck a JSON certificate from its raw tensors")
    common(sp, algebra=False)
    sp.add_argument("--certificate", required=True, help="certificate JSON file")
    sp = sub.add_parser("acceptance", aliases=["paper-suite"], help="run the acceptance criteria")
    common(sp, algebra=False)
    sp.add_argument("--criteria", type=lambda t: [int(x) for x in t.split(",")], default=None)
    return p


COMMANDS = {"info": cmd_info, "nilsoliton": cmd_nilsoliton, "extend": cmd_extend, "structures": cmd_structures,
            "verify": cmd_verify, "acceptance": cmd_suite, "paper-suite": cmd_suite}


def _print_text(report: dict) -> None:
    g = report.get("algebra")
    if g is not None:
        print(f"algebra: {format_algebra(g)}")
    for res in report["results"]:
        for k, v in res.items():
            if k == "certificates":
                for c in v:
                    print(f"certificate: {c['structure']} lambda={c['lambda']}")
                    print(f"  metric: {c['metric']}")
                    print(f"  omega:  {c['omega']}")
                    print(f"  endo:   {c['endo']}")
            elif k == "instances":
                for inst in v:
                    print(f"instance: metric ({', '.join(inst['metric'])}) ricci ({', '.join(inst['ricci'])})")
            else:
                print(f"{k}: {v}")
    for c in report["checks"]:
        print(f"[{c.status}] {c.name}" + (f": {c.witness}" if c.witness and not c.passed else ""))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except (InputError, ValueError, KeyError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    checks = report["checks"]
    if args.json:
        g = report.get("algebra")
        print(json.dumps({
            "command": args.command,
            "algebra": None if g is None else format_algebra(g),
            "results": report["results"],
            "checks": [c.as_dict() for c in checks],
        }, indent=2))
    elif not report.get("printed"):
        _print_text(report)
    return 0 if all(c.passed for c in checks) else 1


if __name__ == "__main__":
    sys.exit(main())
