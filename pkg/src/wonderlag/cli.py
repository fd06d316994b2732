"""Command-line front end.

    wonderlag <command> --algebra <spec> [--J 1,3] [--involution neg-transpose]
              [--format json|csv|text] [--out PATH]

Exit status: 0 success, 1 a verified invariant failed (the witness is in
the report), 2 usage error.  ``WONDERLAG_THREADS`` sets the worker count
for the per-point loops; it never changes the output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .doubles import (
    abelian_triple,
    cobracket,
    cocycle_violation,
    diagonal_subspace,
    is_lagrangian,
    semidirect_triple,
    standard_triple,
)
from .lagrangian import (
    InvalidDatum,
    adjoint_translate,
    cocharacter_limit,
    degeneration_cocharacter,
    drinfeld_image_of_point,
    drinfeld_subalgebra,
    graph_of_involution,
    is_model_point,
    poisson_datum_from_lagrangian,
    random_sl_element,
)
from .lie import INVOLUTIONS, algebra_metadata, parse_algebra
from .poisson import (
    R_SCALE,
    SCHOUTEN_FACTOR,
    jacobiator_vanishes,
    reduced_bivector_rank,
    schouten_constant,
    schouten_identity_violation,
)
from .projective import naive_compactification_report
from .wonderful import all_subsets, fiber_product_lagrangian, orbit_table

COMMANDS = ("orbits", "verify-lagrangian", "drinfeld", "bivector", "wonderful-check", "schouten")
THREADS_ENV = "WONDERLAG_THREADS"
N_TRANSLATES = 5

CONVENTIONS = {
    "killing_form": "kappa(x,y) = tr(ad x ad y)",
    "double_form": "kappa(x1,y1) - kappa(x2,y2) on g+g; evaluation pairing on g x| g*",
    "standard_splitting": "u = g_diag, u* = n+ x n- x {(h,-h)}",
    "r_matrix": "R = c * sum_i e_i ^ eps^i",
    "r_matrix_scale": R_SCALE,
    "schouten_constant": SCHOUTEN_FACTOR,
    "cocharacter": "t -> 0 limit (lowest weight), dominant coweight on the second factor",
    "subset_indexing": "1-based simple roots",
}


class UsageError(Exception):
    pass


# -- serialization ---------------------------------------------------------------

def jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def subspace_rows(s):
    return [[str(x) for x in v] for v in s.basis]


ORBIT_COLUMNS = ("J", "dim_orbit", "dim_closure", "codim", "divisors",
                 "dim_flag_base", "dim_fiber_group")


def emit(report, fmt):
    if fmt == "json":
        return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        if report["command"] != "orbits":
            raise UsageError(f"csv output is only available for orbits, not {report['command']}")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(ORBIT_COLUMNS)
        for rec in report["results"]["orbits"]:
            w.writerow([";".join(map(str, v)) if isinstance(v, list) else v
                        for v in (rec[c] for c in ORBIT_COLUMNS)])
        return buf.getvalue()
    lines = []
    _text(jsonable(report), "", lines)
    return "\n".join(lines) + "\n"


def _text(x, indent, out):
    if isinstance(x, dict):
        for k in sorted(x):
            v = x[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                out.append(f"{indent}{k}:")
                _text(v, indent + "  ", out)
            else:
                out.append(f"{indent}{k}: {_scalar(v)}")
    else:
        for i, v in enumerate(x):
            if isinstance(v, (dict, list)) and not _flat_list(v):
                out.append(f"{indent}- [{i}]")
                _text(v, indent + "  ", out)
            else:
                out.append(f"{indent}- {_scalar(v)}")


def _flat_list(v):
    return isinstance(v, list) and all(not isinstance(y, (dict, list)) for y in v)


def _scalar(v):
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(y) for y in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# -- helpers -----------------------------------------------------------------------

def thread_count():
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def pmap(f, items, threads):
    if threads == 1:
        return [f(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(f, items))


def parse_J(raw, g):
    if raw is None:
        return None
    rd = g.root_datum
    try:
        J = tuple(int(x) for x in raw.split(",") if x.strip()) if raw.strip() else ()
        return rd.check_subset(J)
    except (ValueError, IndexError):
        raise UsageError(f"bad --J {raw!r} for rank {rd.rank}")


def subsets(args, g):
    J = parse_J(args.J, g)
    return [J] if J is not None else list(all_subsets(g.root_datum.rank))


def jname(J):
    return "{" + ",".join(map(str, J)) + "}"


def lagrangian_corpus(g, args):
    """Named points of L(g + g), in a fixed order."""
    pts = [("g_diag", diagonal_subspace(g))]
    for J in subsets(args, g):
        pts.append((f"fiber_product J={jname(J)}", fiber_product_lagrangian(g, J)))
    T = standard_triple(g)
    pts.append(("u* of the standard triple", T.u_star))
    if args.involution:
        pts.append((f"graph of {args.involution}",
                    graph_of_involution(g, INVOLUTIONS[args.involution](g))))
    if g.root_datum.series == "A":
        rng = random.Random(0)
        n = g.model.size
        for k in range(N_TRANSLATES):
            a = random_sl_element(n, rng)
            pts.append((f"adjoint translate {k}", adjoint_translate(g, a, "left", diagonal_subspace(g))))
    D = T.double
    for J in subsets(args, g):
        chi = degeneration_cocharacter(g, J)
        pts.append((f"limit J={jname(J)}", cocharacter_limit(D, chi, diagonal_subspace(g))))
    return pts


# -- commands ----------------------------------------------------------------------

def cmd_orbits(g, args, threads):
    rows = [r.as_dict() for r in orbit_table(g)]
    J = parse_J(args.J, g)
    if J is not None:
        rows = [r for r in rows if tuple(r["J"]) == J]
    if args.codim is not None:
        rows = [r for r in rows if r["codim"] == args.codim]
    return {"orbits": rows, "count": len(rows)}, None


def cmd_verify_lagrangian(g, args, threads):
    D = standard_triple(g).double
    pts = lagrangian_corpus(g, args)
    flags = pmap(lambda p: is_lagrangian(D, p[1]), pts, threads)
    results = [{"point": name, "dim": s.dim, "lagrangian": ok} for (name, s), ok in zip(pts, flags)]
    failure = None
    for (name, s), ok in zip(pts, flags):
        if not ok:
            failure = {"point": name, "basis": subspace_rows(s)}
            break
    return {"points": results, "all_lagrangian": failure is None}, failure


def cmd_drinfeld(g, args, threads):
    T = standard_triple(g)
    pts = [("g_diag", T.u)]
    pts += [(f"fiber_product J={jname(J)}", fiber_product_lagrangian(g, J)) for J in subsets(args, g)]
    pts.append(("u*", T.u_star))

    def one(p):
        name, l = p
        model = is_model_point(T, l)
        fixed = drinfeld_image_of_point(T, l) == l
        rec = {"point": name, "model_point": model, "fixed_by_drinfeld_image": fixed}
        try:
            datum = poisson_datum_from_lagrangian(T, l)
        except InvalidDatum:
            rec.update(stab_dim=None, pi=None, round_trip=False)
        else:
            rec.update(stab_dim=datum.stab.dim, pi=[list(r) for r in datum.pi],
                       round_trip=drinfeld_subalgebra(datum) == l)
        return rec

    results = pmap(one, pts, threads)
    failure = None
    for rec in results:
        if rec["model_point"] != rec["fixed_by_drinfeld_image"] or not rec["round_trip"]:
            failure = {"point": rec["point"]}
            break
    return {"points": results}, failure


def cmd_bivector(g, args, threads):
    T = standard_triple(g)
    pts = lagrangian_corpus(g, args)

    def one(p):
        name, l = p
        rk = reduced_bivector_rank(T, l)
        jz = jacobiator_vanishes(T, l)
        return {"point": name, "rank": rk, "jacobiator_zero": jz}

    results = pmap(one, pts, threads)
    failure = None
    for rec in results:
        if rec["rank"] % 2 or not rec["jacobiator_zero"]:
            failure = {"point": rec["point"]}
            break
    return {"points": results}, failure


def cmd_wonderful_check(g, args, threads):
    rd = g.root_datum
    if rd.series != "A":
        raise UsageError("wonderful-check compares PGL_n with P(M_n); use a type A algebra")
    n = rd.rank + 1
    if not 2 <= n <= 4:
        raise UsageError("wonderful-check supports sl2, sl3, sl4")
    v = naive_compactification_report(n)
    out = v.as_dict()
    out["det_irreducible"] = v.det_irreducible
    out["singular_ranks"] = list(v.singular_ranks)
    return out, None


def cmd_schouten(g, args, threads):
    triples = [("abelian", abelian_triple()), ("semidirect", semidirect_triple(g)),
               ("standard", standard_triple(g))]

    def one(p):
        name, T = p
        bad = schouten_identity_violation(T, factor=SCHOUTEN_FACTOR)
        plain = schouten_identity_violation(T)
        return {
            "triple": name,
            "constant": schouten_constant(T),
            "identity_with_constant": bad is None,
            "identity_with_factor_one": plain is None,
            "factor_one_counterexample": list(plain) if plain else None,
            "cocycle": cocycle_violation(T) is None,
            "cobracket_zero": cobracket(T).is_zero(),
            "witness": list(bad) if bad else None,
        }

    results = pmap(one, triples, threads)
    failure = next(({"triple": r["triple"], "basis_triple": r["witness"]}
                    for r in results if not r["identity_with_constant"] or not r["cocycle"]), None)
    return {"triples": results}, failure


HANDLERS = {
    "orbits": cmd_orbits,
    "verify-lagrangian": cmd_verify_lagrangian,
    "drinfeld": cmd_drinfeld,
    "bivector": cmd_bivector,
    "wonderful-check": cmd_wonderful_check,
    "schouten": cmd_schouten,
}


def build_parser():
    p = argparse.ArgumentParser(
        prog="wonderlag",
        description="Exact reports on Lagrangian subalgebras and wonderful compactifications.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--algebra", required=True, help="sl<n>, A<l>, B<l>, C<l> or D<l>")
    p.add_argument("--J", default=None, help="comma-separated simple roots, e.g. 1,3")
    p.add_argument("--involution", choices=sorted(INVOLUTIONS), default=None)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", default=None, help="write here instead of stdout")
    p.add_argument("--codim", type=int, default=None, help="orbits: keep this codimension only")
    p.add_argument("--timing", action="store_true",
                   help="add wall-clock seconds (output is then not reproducible)")
    return p


def run(args):
    """Build the report for parsed ``args``; returns ``(report, failure)``."""
    try:
        g = parse_algebra(args.algebra)
    except ValueError as e:
        raise UsageError(str(e))
    if args.involution and g.model is None:
        raise UsageError(f"{g.name} has no matrix model for {args.involution}")
    threads = thread_count()
    t0 = time.perf_counter()
    results, failure = HANDLERS[args.command](g, args, threads)
    report = {
        "command": args.command,
        "params": {"J": args.J, "involution": args.involution, "codim": args.codim},
        "algebra": algebra_metadata(g),
        "conventions": CONVENTIONS,
        "version": __version__,
        "results": results,
        "status": "ok" if failure is None else "invariant-failure",
        "failure": failure,
    }
    if args.timing:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    return report, failure


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        report, failure = run(args)
        text = emit(report, args.format)
    except UsageError as e:
        print(f"wonderlag: error: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if failure is not None:
        print(f"wonderlag: invariant failure: {json.dumps(jsonable(failure), sort_keys=True)}",
              file=sys.stderr)
        return 1
    return 0
