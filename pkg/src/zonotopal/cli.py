"""Command line front end: ``zonotopal <command> [options]``.

Every command prints one JSON document with sorted keys.  Exit codes: 0 on
success, 1 for usage or parse errors, 2 for violated preconditions, 3 when an
internal certification fails.
"""

import argparse
import json
import math
import sys
from fractions import Fraction
from itertools import product

from . import acceptance, corpus, dpv, ext, linalg
from .cones import big_cells, cell_by_index, pointedness_certificate
from .errors import InvalidVectorList, PreconditionError, UsageError, ZonotopalError
from .ideals import dual_dimensions, ideal_J
from .matroid import (UpSetFamily, VectorList, bases, cocircuits, is_unimodular,
                      rational_subspaces, upset_L, upset_L_Omega, upset_S, zonotope_lattice_points,
                      zonotope_volume)
from .partition import (fit_p_omega, fit_q_omega, partition_bruteforce, partition_recursive,
                        spline_value)

COMMANDS = ("analyze", "cells", "partition", "spline", "qpoly", "dual-dim", "ext-check",
            "ktheory", "verify")
SAFE_INT = 2 ** 53


# ---------------------------------------------------------------- JSON rendering

def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > SAFE_INT else obj
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return to_jsonable(obj.numerator)
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    raise TypeError(f"cannot render {type(obj).__name__}")


def render(report):
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2)


# ---------------------------------------------------------------- input

def parse_input(text):
    """``{"d": int, "vectors": [[int, ...], ...]}`` to a validated VectorList."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict) or "d" not in data or "vectors" not in data:
        raise UsageError('input must be an object with keys "d" and "vectors"')
    d, vecs = data["d"], data["vectors"]
    if not isinstance(d, int) or isinstance(d, bool) or not isinstance(vecs, list):
        raise UsageError('"d" must be an integer and "vectors" a list')
    for v in vecs:
        if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                              for x in v):
            raise UsageError("every vector must be a list of integers")
    try:
        return VectorList(d, tuple(tuple(v) for v in vecs))
    except InvalidVectorList as exc:
        raise InvalidVectorList(
            f"{exc} (the list must consist of nonzero integer vectors spanning the space)"
        ) from None


def load_list(args):
    given = [x for x in (args.input, args.inline, args.named) if x is not None]
    if len(given) > 1:
        raise UsageError("give at most one of --input, --inline, --named")
    if args.input is not None:
        try:
            with open(args.input) as fh:
                return parse_input(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    if args.inline is not None:
        return parse_input(args.inline)
    if args.named is not None:
        try:
            return corpus.named(args.named)
        except (KeyError, ValueError):
            raise UsageError(f"unknown named list {args.named!r}") from None
    return None


def _require(X, command):
    if X is None:
        raise UsageError(f"{command} needs a vector list (--input, --inline or --named)")
    return X


def _point(text, d):
    try:
        lam = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"point must be comma separated integers, got {text!r}") from None
    if len(lam) != d:
        raise UsageError(f"point has {len(lam)} coordinates, expected {d}")
    return lam


def parse_family(X, text):
    """``L``, ``S``, ``LOmega:ID`` or a JSON list of minimal sets."""
    if text == "L":
        return upset_L(X)
    if text == "S":
        return upset_S(X)
    if text.startswith("LOmega:"):
        try:
            i = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad cell id in {text!r}") from None
        return upset_L_Omega(X, cell_by_index(X, i))
    try:
        sets = json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f"unknown family {text!r}") from None
    if not isinstance(sets, list) or not all(isinstance(A, list) for A in sets):
        raise UsageError("a custom family is a JSON list of lists of positions")
    for A in sets:
        if not all(isinstance(i, int) and 0 <= i < X.n for i in A):
            raise UsageError(f"position out of range in {A}")
    return UpSetFamily(X.n, [frozenset(A) for A in sets])


# ---------------------------------------------------------------- commands

def cmd_analyze(X, args):
    subs = rational_subspaces(X)
    try:
        phi = pointedness_certificate(X)
    except PreconditionError:
        phi = None
    return {"list": X, "n": X.n, "d": X.d, "bases": len(bases(X)),
            "cocircuits": [sorted(C) for C, _ in cocircuits(X)],
            "rational_subspaces": [{"members": sorted(s.indices), "dim": s.dim} for s in subs],
            "zonotope_volume": zonotope_volume(X),
            "zonotope_lattice_points": zonotope_lattice_points(X),
            "unimodular": is_unimodular(X), "pointed": phi is not None,
            "pointedness_certificate": phi, "lattice_index": linalg.lattice_index(X.matrix)}


def cmd_cells(X, args):
    cells = big_cells(X)
    return {"list": X, "count": len(cells),
            "cells": [dict(c.to_json(), representative=list(c.representative)) for c in cells]}


def cmd_partition(X, args):
    lam = _point(_need_point(args), X.d)
    value = (partition_bruteforce if args.method == "bruteforce" else partition_recursive)(X, lam)
    return {"list": X, "point": lam, "value": value, "method": args.method}


def cmd_spline(X, args):
    lam = _point(_need_point(args), X.d)
    pointedness_certificate(X)
    return {"list": X, "point": lam, "value": spline_value(X, lam, args.normalization),
            "normalization": args.normalization}


def _need_point(args):
    if args.point is not None and args.point_opt is not None:
        raise UsageError("give the point once")
    if args.point is None:
        args.point = args.point_opt
    if args.point is None:
        raise UsageError(f"{args.command} needs a point argument, e.g. 2,1")
    return args.point


def _cells_of(X, args):
    if args.cell is None:
        return big_cells(X)
    return [cell_by_index(X, args.cell)]


def cmd_qpoly(X, args):
    out = []
    for c in _cells_of(X, args):
        fit = fit_q_omega(X, c, box=args.box)
        spline = fit_p_omega(X, c, args.normalization)
        out.append({"q": fit, "p": spline})
    return {"list": X, "cells": out}


def cmd_dual_dim(X, args):
    T = parse_family(X, args.family)
    return {"list": X, "family": T, "differential_dimension": ideal_J(X, T, "partial", args.order)
            .quotient_dimension(), "dimension": ideal_J(X, T, "nabla", args.order).dimension()}


def cmd_ext_check(X, args):
    reports = []
    if args.random:
        for i, M in enumerate(ext.random_modules(args.random, seed=args.seed)):
            reports.append({"label": f"random {i}", "module": M,
                            "report": ext.ext_report(M, args.truncation, args.route)})
    if X is not None:
        T = parse_family(X, args.family)
        M, order, reasons = ext.staircase_module(ideal_J(X, T))
        if M is None:
            raise PreconditionError("no integral staircase presentation: " + "; ".join(reasons))
        reports.append({"label": "staircase", "module": M, "term_order": order,
                        "report": ext.ext_report(M, args.truncation, args.route)})
    if not reports:
        raise UsageError("ext-check needs a vector list or --random COUNT")
    return {"modules": reports,
            "all_pass": all(r["report"]["cohomology_as_expected"]
                            and r["report"]["top_cokernel_is_transpose"] for r in reports)}


def cmd_ktheory(X, args):
    i = X.d if args.upto is None else args.upto
    Q = dpv.admissible_sets_up_to(X, i)
    orderings = dpv.admissible_orderings(X, Q)
    if not args.all_orderings:
        orderings = orderings[:1]
    runs = [{"ordering": [sorted(s.indices) for s in o],
             "steps": dpv.certify_ordering(X, o, args.order)} for o in orderings]
    pres = dpv.ktheory_presentation(X, Q, args.order)
    return {"list": X, "upto": i, "admissible_set": Q, "presentation": pres,
            "presentation_dimension": pres.dimension(), "orderings": runs,
            "filtration": dpv.dpv_filtration_certify(X, i, args.order),
            "rank_decomposition": dpv.dpv_rank_decomposition(X),
            "telescopes": [{"cell": c.index, "chains": dpv.rank_telescope(X, c)}
                           for c in big_cells(X)]}


def cmd_verify(X, args):
    if X is not None:
        return {"list": X, "checks": verify_list(X, args)}
    which = args.criteria or list(acceptance.CRITERIA)
    table = []
    for i in which:
        if i not in acceptance.CRITERIA:
            raise UsageError(f"no criterion {i}")
        ok, detail = acceptance.run(i)
        table.append({"criterion": i, "description": acceptance.DESCRIPTIONS[i],
                      "status": "PASS" if ok else "FAIL", "detail": detail})
    return {"criteria": table, "all_pass": all(r["status"] == "PASS" for r in table)}


def verify_list(X, args):
    """Module-by-module consistency checks on one list."""
    checks = []

    def add(name, fn):
        try:
            ok, detail = fn()
        except ZonotopalError as exc:
            ok, detail = False, {"error": type(exc).__name__, "message": str(exc)}
        checks.append({"check": name, "status": "PASS" if ok else "FAIL", "detail": detail})

    def trio():
        dstar, dmstar = dual_dimensions(X, order=args.order)
        nb, vol = len(bases(X)), zonotope_volume(X)
        return nb == dstar and vol == dmstar, {"bases": nb, "D*": dstar, "volume": vol,
                                                "DM*": dmstar}

    def partitions():
        R = 4
        bad = [lam for lam in product(range(-R, R + 1), repeat=X.d)
               if partition_recursive(X, lam) != partition_bruteforce(X, lam)]
        return not bad, {"radius": R, "mismatches": bad}

    def qfits():
        rows = [fit_q_omega(X, c, box=args.box) for c in big_cells(X)]
        return True, [{"cell": f.cell, "checked": f.checked} for f in rows]

    def pfits():
        rows = [fit_p_omega(X, c, args.normalization) for c in big_cells(X)]
        return all(f.polynomial.degree() == X.n - X.d for f in rows), \
            [{"cell": f.cell, "degree": f.polynomial.degree()} for f in rows]

    def decomposition():
        rep = dpv.dpv_rank_decomposition(X)
        return rep["holds"], {"layers": rep["layers"], "points": rep["lattice_points"]}

    def ktheory():
        Q = dpv.admissible_sets_up_to(X, X.d)
        steps = dpv.certify_ordering(X, Q.subspaces, args.order)
        pres = dpv.ktheory_presentation(X, Q, args.order)
        ok = pres.dimension() == zonotope_volume(X)
        return ok, {"steps": len(steps), "presentation_dimension": pres.dimension()}

    def telescope():
        rows = [t for c in big_cells(X) for t in dpv.rank_telescope(X, c)]
        return all(t["telescopes"] for t in rows), [{"start": t["start"], "end": t["end"]}
                                                    for t in rows]

    pointed = True
    try:
        pointedness_certificate(X)
    except PreconditionError:
        pointed = False
    add("bases and volumes match dual dimensions", trio)
    add("rank decomposition", decomposition)
    add("induction over admissible sets", ktheory)
    if pointed:
        add("recursive and brute force partition functions agree", partitions)
        add("quasi-polynomials on big cells", qfits)
        add("spline pieces on big cells", pfits)
        add("semilocal rank telescope", telescope)
    return checks


HANDLERS = {"analyze": cmd_analyze, "cells": cmd_cells, "partition": cmd_partition,
            "spline": cmd_spline, "qpoly": cmd_qpoly, "dual-dim": cmd_dual_dim,
            "ext-check": cmd_ext_check, "ktheory": cmd_ktheory, "verify": cmd_verify}
OPTIONAL_LIST = {"ext-check", "verify"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="zonotopal", description="Zonotopal algebra and partition functions.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("point", nargs="?", help="lattice point for partition/spline, e.g. 2,1")
    p.add_argument("--point", dest="point_opt", metavar="POINT",
                   help="the same point; use for negative coordinates, e.g. --point=-1,2")
    src = p.add_argument_group("input")
    src.add_argument("--input", metavar="PATH")
    src.add_argument("--inline", metavar="JSON")
    src.add_argument("--named", metavar="NAME", help="X1, X3, Xk:<k>, basis, doubled, random:<seed>")
    p.add_argument("--k", type=int, help="shorthand for --named Xk:<k>")
    p.add_argument("--cell", type=int)
    p.add_argument("--box", type=int, default=8)
    p.add_argument("--truncation", type=int, default=4)
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    p.add_argument("--upto", type=int)
    p.add_argument("--family", default="L")
    p.add_argument("--normalization", choices=("kernel", "lebesgue"), default="kernel")
    p.add_argument("--method", choices=("recursive", "bruteforce"), default="recursive")
    p.add_argument("--all-orderings", action="store_true")
    p.add_argument("--random", type=int, default=0, metavar="COUNT")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--route", choices=ext.ROUTES, default="gauge",
                   help="basis for truncated cohomology in ext-check")
    p.add_argument("--criteria", type=int, nargs="*")
    return p


def flags(args):
    return {"term_order": args.order, "normalization": args.normalization,
            "truncation": args.truncation, "box": args.box, "agreement_region": "open",
            "arithmetic": "exact"}


def run(argv=None, out=None, err=None):
    """Parse ``argv``, run the command and write JSON; return the exit code.

    Reports go to ``out``; errors are written as JSON to ``err``."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.k is not None:
            if args.named is not None:
                raise UsageError("give either --k or --named")
            args.named = f"Xk:{args.k}"
        if args.box < 0 or args.truncation < 2:
            raise UsageError("--box must be >= 0 and --truncation >= 2")
        X = load_list(args)
        if args.command not in OPTIONAL_LIST:
            _require(X, args.command)
        report = HANDLERS[args.command](X, args)
        report = dict(report, command=args.command, flags=flags(args))
        out.write(render(report) + "\n")
        failed = not report.get("all_pass", True) or any(
            c["status"] == "FAIL" for c in report.get("checks", ()))
        return 3 if args.command == "verify" and failed else 0
    except ZonotopalError as exc:
        report = {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
        details = getattr(exc, "details", None)
        if details:
            report["details"] = {k: v if isinstance(v, (int, str, list, tuple)) else repr(v)
                                 for k, v in details.items()}
        err.write(render(report) + "\n")
        return exc.exit_code


def main():
    sys.exit(run())
