"""Command line front end: one subcommand per pipeline.

Numbers are printed as exact rationals (``"p/q"``) unless ``--float`` is
given.  Exit status is 0 on success, 1 for a structured failure (printed as
JSON with a stable ``code``) and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import GroebOptError, ParseError
from .polyring import (
    Polynomial,
    RingContext,
    format_poly,
    matrix_order,
    parse_order,
    parse_poly,
    read_poly_lines,
    variables_in,
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Helpers


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from None


def _equation_poly(text: str, ring: RingContext) -> Polynomial:
    if "=" in text:
        lhs, rhs = text.split("=", 1)
        return parse_poly(lhs, ring) - parse_poly(rhs, ring)
    return parse_poly(text, ring)


def _ring_for(texts, names=None) -> RingContext:
    if names:
        return RingContext(names)
    seen = []
    for t in texts:
        for v in variables_in(t.replace("=", " ")):
            if v not in seen:
                seen.append(v)
    if not seen:
        seen = ["x"]
    return RingContext(sorted(seen, key=_natural_key))


def _names(arg: str | None):
    if not arg:
        return None
    return [s.strip() for s in arg.split(",") if s.strip()]


def _matrix(path: str) -> list[list[Fraction]]:
    from .linalg import read_matrix

    try:
        return read_matrix(_read(path))
    except ValueError as e:
        raise UsageError(f"{path}: {e}") from None


def _int_matrix(path: str) -> list[list[int]]:
    rows = _matrix(path)
    if any(v.denominator != 1 for r in rows for v in r):
        raise UsageError(f"{path}: integer entries expected")
    return [[int(v) for v in r] for r in rows]


class _Num:
    def __init__(self, as_float: bool):
        self.as_float = as_float

    def __call__(self, v):
        if v is None:
            return None
        v = Fraction(v)
        return float(v) if self.as_float else str(v)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _order_from(text: str, ring: RingContext):
    if text.startswith("matrix:"):
        rows = _int_matrix(text[len("matrix:"):])
        return matrix_order(rows)
    return parse_order(text, ring)


# ---------------------------------------------------------------------------
# Commands


def cmd_gb(a, num):
    from .groebner import IdealGens, buchberger, eliminate, restrict_to

    lines = read_poly_lines(_read(a.file))
    ring = _ring_for(lines, _names(a.vars))
    order = _order_from(a.order, ring)
    order.check_arity(ring.arity)
    gb = buchberger(IdealGens([_equation_poly(t, ring) for t in lines], ring), order)
    if a.eliminate is not None:
        gb = eliminate(gb, a.eliminate)
    for g in gb.elements:
        sys.stdout.write(format_poly(g, order) + "\n")


def _binary_problem(a):
    from .binopt import BinaryProblem

    obj_lines = read_poly_lines(_read(a.file))
    if len(obj_lines) != 1:
        raise UsageError("objective file must hold exactly one polynomial")
    cons = read_poly_lines(_read(a.constraints)) if a.constraints else []
    ring = _ring_for(obj_lines + cons, _names(a.vars))
    return BinaryProblem(parse_poly(obj_lines[0], ring), [_equation_poly(c, ring) for c in cons])


def cmd_binopt(a, num):
    from .binopt import solve_by_eigenvalues, solve_by_elimination

    p = _binary_problem(a)
    if a.method == "eigen":
        if p.equality_constraints:
            raise UsageError("the eigenvalue method takes an unconstrained objective")
        opt = solve_by_eigenvalues(p.objective)
        out = {
            "method": "eigen",
            "variables": list(p.ring.names),
            "value": num(opt.value),
            "minimizers": [list(x) for x in opt.minimizers],
            "eigenvalues": [num(v) for v in opt.value_spectrum],
            "standard_monomials": [str(m) for m in opt.details["quotient"].as_polynomials()],
        }
        v = opt.details.get("eigenvector")
        if v is not None:
            out["eigenvector"] = [num(x) for x in v]
    else:
        opt = solve_by_elimination(p)
        out = {
            "method": "elim",
            "variables": list(p.variables),
            "value": num(opt.value),
            "minimizers": [list(x) for x in opt.minimizers],
            "value_spectrum": [num(v) for v in opt.value_spectrum],
        }
    _emit(out)


def cmd_feas(a, num):
    from .binopt import feasibility_conditions

    lines = read_poly_lines(_read(a.file))
    params = _names(a.params) or []
    ring = _ring_for(lines, _names(a.vars))
    for p in params:
        if p not in ring:
            raise UsageError(f"parameter {p} does not occur in the system")
    binary = [v for v in ring.names if v not in params]
    gb = feasibility_conditions([_equation_poly(t, ring) for t in lines], binary, params, ring)
    for g in gb.elements:
        sys.stdout.write(format_poly(g) + "\n")


def cmd_qubo_reduce(a, num):
    from .quboc import DynamicRange, reduce_to_qubo

    lines = read_poly_lines(_read(a.file))
    if len(lines) != 1:
        raise UsageError("expected exactly one polynomial H")
    ring = _ring_for(lines, _names(a.vars))
    H = parse_poly(lines[0], ring)
    margin = Fraction(a.margin)
    rng = DynamicRange(Fraction(a.epsilon), margin) if a.epsilon is not None else None
    r = reduce_to_qubo(H, rng, margin=margin)
    _emit({
        "variables": list(ring.names),
        "h_plus": format_poly(r.h_plus),
        "combination": [{"element": format_poly(t), "coefficient": num(c)} for t, c in r.combination],
        "qubo": r.qubo.to_dict() if not num.as_float else {
            "n": r.qubo.n,
            "linear": [num(v) for v in r.qubo.linear],
            "quadratic": [[i, j, num(v)] for (i, j), v in sorted(r.qubo.quadratic.items())],
            "offset": num(r.qubo.offset),
        },
        "verified": True,
        "lp_nodes": r.nodes,
    })


def _graph(path):
    from .embed import Graph

    try:
        return Graph.from_json(_read(path))
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"{path}: {e}") from None


def _pick_fold(X):
    from .embed import find_automorphisms, fold_by_symmetry

    best = None
    for aut in find_automorphisms(X):
        if list(aut) == list(range(len(X))):
            continue
        try:
            f = fold_by_symmetry(X, aut)
        except ValueError:
            continue
        if best is None or len(f.orbits) < len(best.orbits):
            best = f
    return best or fold_by_symmetry(X, tuple(range(len(X))))


def _support_lines(run):
    if run.gb is None:
        return None
    if run.gb.is_unit():
        return ["1"]
    return [format_poly(g) for g in run.support_ideal()]


def cmd_embed(a, num):
    from .embed import enumerate_embeddings, enumerate_embeddings_folded

    X, Y = _graph(a.hardware), _graph(a.logical)
    if a.fold == "auto":
        fold = _pick_fold(X)
        fs, gb, sols = enumerate_embeddings_folded(X, Y, fold, full=True)
        _emit({
            "fold": {
                "orbits": [[X.vertices[v] for v in o] for o in fold.orbits],
                "invariants": fold.invariant_names,
                "folded_quadratic": format_poly(fold.folded_quadratic),
            },
            "variables": fs.ring.arity,
            "count": len(sols),
            "unfolded_count": sum(s.multiplicity for s in sols),
            "solutions": [dict(s.to_dict(X), orbit_counts=s.orbit_counts) for s in sols],
        })
    else:
        run = enumerate_embeddings(X, Y, connectivity=a.connectivity, full=True)
        _emit({
            "variables": run.system.ring.arity,
            "count": len(run.solutions),
            "support_ideal": _support_lines(run),
            "solutions": [s.to_dict(X) for s in run.solutions],
        })


def cmd_toric_gb(a, num):
    from .polyring import grevlex
    from .solvers import AnnealSchedule
    from .toric import DigitEncoding, toric_gb_annealed, toric_gb_classical

    A = _int_matrix(a.matrix)
    order = matrix_order(_int_matrix(a.order_matrix)) if a.order_matrix else grevlex()
    if a.backend == "classical":
        gb = toric_gb_classical(A, order)
        _emit({"basis": [format_poly(g, order) for g in gb.elements], "backend": "classical"})
        return
    sched = AnnealSchedule(a.sweeps, None, None, a.restarts, a.seed)
    r = toric_gb_annealed(A, order, DigitEncoding(a.bits), a.backend, sched, rounds=a.rounds, jobs=a.jobs)
    _emit({
        "basis": [format_poly(g, order) for g in r.gb.elements],
        "backend": a.backend,
        "provenance": [{"binomial": format_poly(g, order), "source": p["source"]} for g, p in zip(r.gb.elements, r.provenance)],
        "harvested": [list(b.vector) for b in r.harvested],
        "lattice_completed": r.completed_lattice,
    })


def cmd_toric_ip(a, num):
    from .toric import conti_traverso_ip

    A = _int_matrix(a.matrix)
    b = [v for r in _int_matrix(a.rhs) for v in r]
    if a.order_matrix:
        cost = matrix_order(_int_matrix(a.order_matrix))
    elif a.cost:
        cost = [int(c) for c in a.cost.split(",")]
    else:
        cost = None
    v = conti_traverso_ip(A, b, cost)
    _emit({"solution": v})


def cmd_anticross(a, num):
    from .spectra import HamiltonianPair, char_surface, find_critical_points

    pair = HamiltonianPair(_matrix(a.hinit), _matrix(a.hfinal))
    sf = char_surface(pair)
    pts = find_critical_points(sf, Fraction(a.tol), None if a.all_s else (0, 1))
    _emit({
        "surface": format_poly(sf.f),
        "critical_points": [
            dict(p.to_dict(as_float=num.as_float), point=[num(p.refined[0]), num(p.refined[1])]) for p in pts
        ],
    })


def cmd_qubo_solve(a, num):
    from .quboc import Qubo
    from .solvers import AnnealSchedule, simulated_anneal, solve_exhaustive

    try:
        q = Qubo.from_json(_read(a.file))
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"{a.file}: {e}") from None
    if a.method == "exhaustive":
        ss = solve_exhaustive(q)
    else:
        ss = simulated_anneal(q, AnnealSchedule(a.sweeps, None, None, a.restarts, a.seed), jobs=a.jobs)
    d = ss.to_dict()
    if num.as_float:
        for s in d["samples"]:
            s["energy"] = num(s["energy"])
        d["best"] = num(d["best"])
    _emit(d)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="groebopt", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--float", action="store_true", help="print decimals instead of exact rationals")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gb", help="Groebner basis of the polynomials in FILE")
    s.add_argument("--vars", help="comma separated variable names (default: as found, natural order)")
    s.add_argument("--order", default="lex", help="lex | grlex | grevlex | lex:z,y,x | matrix:FILE")
    s.add_argument("--eliminate", type=int, metavar="K", help="keep only elements in the last K variables")
    s.add_argument("file")
    s.set_defaults(func=cmd_gb)

    s = sub.add_parser("binopt", help="minimise a polynomial over binary points")
    s.add_argument("--method", choices=["elim", "eigen"], default="elim")
    s.add_argument("--constraints", help="file of equality constraints, one per line")
    s.add_argument("--vars")
    s.add_argument("file")
    s.set_defaults(func=cmd_binopt)

    s = sub.add_parser("feas", help="conditions on parameters for binary solvability")
    s.add_argument("--params", required=True)
    s.add_argument("--vars")
    s.add_argument("file")
    s.set_defaults(func=cmd_feas)

    s = sub.add_parser("qubo-reduce", help="positive quadratic with the zero set of H")
    s.add_argument("--epsilon", help="coupling range half width (omit for no range constraint)")
    s.add_argument("--margin", default="1")
    s.add_argument("--vars")
    s.add_argument("file")
    s.set_defaults(func=cmd_qubo_reduce)

    s = sub.add_parser("embed", help="enumerate fiber-map embeddings of a logical graph")
    s.add_argument("--logical", required=True)
    s.add_argument("--hardware", required=True)
    s.add_argument("--fold", choices=["auto", "none"], default="none")
    s.add_argument("--connectivity", choices=["polynomial", "filter"], default="polynomial")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("toric-gb", help="Groebner basis of a toric ideal")
    s.add_argument("--matrix", required=True)
    s.add_argument("--order-matrix")
    s.add_argument("--backend", choices=["classical", "exhaustive", "anneal"], default="classical")
    s.add_argument("--bits", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sweeps", type=int, default=2000)
    s.add_argument("--restarts", type=int, default=100)
    s.add_argument("--rounds", type=int, default=6)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_toric_gb)

    s = sub.add_parser("toric-ip", help="integer program by normal form reduction")
    s.add_argument("--matrix", required=True)
    s.add_argument("--rhs", required=True)
    s.add_argument("--order-matrix")
    s.add_argument("--cost", help="comma separated cost weights")
    s.set_defaults(func=cmd_toric_ip)

    s = sub.add_parser("anticross", help="critical points of det(H(s) - lam I)")
    s.add_argument("--hinit", required=True)
    s.add_argument("--hfinal", required=True)
    s.add_argument("--tol", default="1/1000000000")
    s.add_argument("--all-s", action="store_true", help="report critical points outside 0 <= s <= 1")
    s.set_defaults(func=cmd_anticross)

    s = sub.add_parser("qubo-solve", help="solve a QUBO given as JSON")
    s.add_argument("--method", choices=["exhaustive", "anneal"], default="exhaustive")
    s.add_argument("--sweeps", type=int, default=1000)
    s.add_argument("--restarts", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("file")
    s.set_defaults(func=cmd_qubo_solve)
    return p


def _fail(code: str, message: str, status: int) -> int:
    _emit({"error": code, "message": message})
    return status


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    num = _Num(a.float)
    try:
        a.func(a, num)
    except UsageError as e:
        return _fail("usage", str(e), 2)
    except ParseError as e:
        return _fail(e.code, str(e), 2)
    except GroebOptError as e:
        return _fail(e.code, str(e), 1)
    except ValueError as e:
        return _fail("invalid_input", str(e), 2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
