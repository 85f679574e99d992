"""Command-line front end.

    latticeopt lattice <inf|sup|sum|residual|relation|wmin> FAMILY.json
    latticeopt calculus <support|conjugate|dirderiv|subdiff> FUNCTION.json --zstar ... [--x ...]
    latticeopt lvo solve PROBLEM.json [--eps E] [--c VEC]
    latticeopt lvo verify PRIMAL.json DUAL.json
    latticeopt risk solve MARKET.json PAYOFF.json
    latticeopt risk verify MARKET.json PAYOFF.json

Results go to stdout as JSON (or CSV/OFF with --format). ``--report DIR``
additionally writes CSV tables, OFF meshes and PNG figures. Exit status is 0
on success, 1 on domain errors (with an error object on stdout) and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import io
import logging
import os
import sys
from fractions import Fraction

from . import jsonio as J
from . import lattice_sets as L
from . import lvo_engine as V
from . import report
from . import risk_engine as R
from . import scalar_calculus as S
from .exact_geom import Cone, DimensionError, HRep, VRep
from .lp_core import CertificateError

log = logging.getLogger("latticeopt")


class UsageError(Exception):
    pass


def _setup_logging():
    level = os.environ.get("LATTICEOPT_LOG", "off").lower()
    if level not in ("off", "info", "debug"):
        level = "off"
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s",
                        level={"off": logging.CRITICAL + 1, "info": logging.INFO, "debug": logging.DEBUG}[level])


def _vector_arg(text: str | None, name: str):
    if text is None:
        return None
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    try:
        return tuple(J.rat(p) for p in parts)
    except J.FormatError as exc:
        raise J.FormatError(f"--{name}: {exc}") from exc


def _need(args, name):
    v = _vector_arg(getattr(args, name), name)
    if v is None:
        raise UsageError(f"--{name} is required for this command")
    return v


# -- lattice --------------------------------------------------------------

def _raw_polys(doc, q):
    return [J.poly_from_json(s.get("poly", s), q) for s in doc.get("sets", [])]


def cmd_lattice(args):
    doc = J.load(args.file)
    cone, sets = J.family_from_json(doc)
    op = args.op
    if op == "relation":
        polys = [p if isinstance(p, VRep) else _h_to_v(p) for p in _raw_polys(doc, cone.dim)]
        if len(polys) != 2:
            raise UsageError("relation needs exactly two sets")
        a, b = polys
        return {"le_curly": L.relation_le_curly(a, b, cone), "le_curlyeq": L.relation_le_curlyeq(a, b, cone)}, None
    if not sets:
        raise UsageError("the family is empty")
    if op == "inf":
        res = L.infimum(sets)
    elif op == "sup":
        res = L.supremum(sets)
    elif op == "sum":
        res = sets[0]
        for s in sets[1:]:
            res = L.minkowski_sum(res, s)
    elif op == "residual":
        if len(sets) != 2:
            raise UsageError("residual needs exactly two sets A and B")
        res = L.inf_residuation(sets[0], sets[1])
    elif op == "wmin":
        out = []
        for s in sets:
            w = L.weakly_minimal_points(s)
            out.append({"marker": w.marker, "faces": [J.vrep_to_json(f) for f in w.faces]})
        return {"wmin": out}, None
    else:
        raise UsageError(f"unknown lattice operation {op!r}")
    return J.upper_to_json(res), res


def _h_to_v(h: HRep) -> VRep:
    from .exact_geom import h_to_v
    return h_to_v(h)


# -- calculus -------------------------------------------------------------

def cmd_calculus(args):
    doc = J.load(args.file)
    zstar = _need(args, "zstar")
    op = args.op
    if op == "support" and ("kind" in doc or "poly" in doc):
        a = J.upper_from_json(doc)
        return {"value": str(S.support_scalarization(a, zstar))}, None
    f = J.function_from_json(doc)
    if op == "support":
        phi = S.scalarization_of_function(f, zstar)
        return {"value": str(phi(_need(args, "x")))}, None
    if op == "conjugate":
        pair = S.DualPair(_need(args, "xstar"), zstar)
        res = S.conjugate(f, pair)
        return J.upper_to_json(res), res
    if op == "dirderiv":
        res = S.directional_derivative(f, zstar, _need(args, "x"), _need(args, "dir"))
        return J.upper_to_json(res), res
    if op == "subdiff":
        return {"member": S.subdifferential_membership(f, zstar, _need(args, "x"), _need(args, "xstar"))}, None
    raise UsageError(f"unknown calculus operation {op!r}")


# -- lvo ------------------------------------------------------------------

def problem_from_json(d) -> V.LvoProblem:
    P = J.rmat(d["P"])
    A = J.rmat(d.get("A", []))
    b = J.rvec(d.get("b", []))
    q = len(P)
    if "cone" in d:
        cone = J.order_cone_from_json(d["cone"])
    elif "W" in d:
        # each entry of W is one column w_k, so C = {z | w_k.z >= 0 for all k}
        cone = L.OrderCone(Cone.from_normals(q, J.rmat(d["W"])))
    else:
        cone = L.OrderCone.orthant(q)
    return V.LvoProblem(P, A, b, cone)


def problem_to_json(p: V.LvoProblem) -> dict:
    return {"P": J.fmat(p.P), "A": J.fmat(p.A), "b": J.fvec(p.b), "W": J.fmat(p.W)}


def _solution_json(p, sol, dual):
    weak = all(V.check_weak_duality(p, x, u, w) for x in sol.points for u, w in dual.pairs)
    strong = V.check_strong_duality(p, sol, dual) if sol.epsilon == 0 else None
    return {
        "problem": problem_to_json(p),
        "eps": J.fmt(sol.epsilon),
        "c": J.fvec(sol.c),
        "iterations": sol.iterations,
        "primal": {"points": J.fmat(sol.points), "images": J.fmat(sol.images),
                   "facets": J.hrep_to_json(sol.image.hrep)},
        "dual": {"pairs": [{"u": J.fvec(u), "w": J.fvec(w)} for u, w in dual.pairs],
                 "outer": J.hrep_to_json(sol.outer_hrep)},
        "certificate": {"weak_duality": weak, "strong_duality": strong},
    }


def cmd_lvo(args):
    if args.op == "solve":
        if len(args.files) != 1:
            raise UsageError("lvo solve takes one problem file")
        p = problem_from_json(J.load(args.files[0]))
        eps = J.rat(args.eps)
        if eps < 0:
            raise UsageError("--eps must be nonnegative")
        c = _vector_arg(args.c, "c")
        sol, dual = V.solve_primal_benson(p, eps, c)
        out = _solution_json(p, sol, dual)
        if args.report:
            gd = V.geometric_dual(p, sol.c) if p.q in (2, 3) else None
            files = report.lvo_report(args.report, sol.image, gd.hrep if gd else None,
                                      gd.vrep if gd else None, sol.images)
            out["report"] = [os.path.basename(f) for f in files]
        return out, sol.image
    if args.op == "verify":
        if len(args.files) != 2:
            raise UsageError("lvo verify takes a primal and a dual file")
        pd, dd = J.load(args.files[0]), J.load(args.files[1])
        p = problem_from_json(pd["problem"])
        prim = pd.get("primal", pd)
        dual = dd.get("dual", dd)
        points = [J.rvec(x) for x in prim["points"]]
        pairs = [(J.rvec(e["u"]), J.rvec(e["w"])) for e in dual["pairs"]]
        c = J.rvec(pd["c"]) if "c" in pd else V.interior_direction(p.cone)
        sol = V.LvoSolution(p, points, [p.image(x) for x in points], Fraction(0), c, 0)
        ds = V.DualSolution(p, pairs, c)
        checks = {
            "feasible": all(p.is_feasible(x) for x in points),
            "minimizers": all(V.is_minimizer(p, x) for x in points),
            "dual_feasible": all(V._in_T(p, u, w) for u, w in pairs),
            "weak_duality": all(V.check_weak_duality(p, x, u, w) for x in points for u, w in pairs),
            "strong_duality": V.check_strong_duality(p, sol, ds),
        }
        checks["ok"] = all(checks.values())
        return checks, None
    if args.op == "dual":
        p = problem_from_json(J.load(args.files[0]))
        gd = V.geometric_dual(p, _vector_arg(args.c, "c"))
        return {"c": J.fvec(gd.c), "hrep": J.hrep_to_json(gd.hrep), "vrep": J.vrep_to_json(gd.vrep)}, None
    raise UsageError(f"unknown lvo operation {args.op!r}")


# -- risk -----------------------------------------------------------------

def market_from_json(d) -> R.MarketModel:
    scen = d["scenarios"]
    return R.MarketModel(int(d["d"]), tuple(J.rat(s["p"]) for s in scen), J.cone_from_json(d["K0"]),
                         tuple(J.cone_from_json(s["KT"]) for s in scen), J.rmat(d["M"]))


def payoff_from_json(d):
    return J.rmat(d["X"] if isinstance(d, dict) else d)


def _result_json(res: R.RiskResult) -> dict:
    return {
        "risk_set": J.upper_to_json(res.risk_set),
        "basis": J.fmat(res.basis),
        "method": res.method,
        "certificate": [{"Q": J.fmat(ps.Q), "w": J.fvec(ps.w)} for ps in res.certificate],
    }


def cmd_risk(args):
    if len(args.files) != 2:
        raise UsageError("risk commands take a market file and a payoff file")
    m = market_from_json(J.load(args.files[0]))
    X = payoff_from_json(J.load(args.files[1]))
    if args.op == "solve":
        res = R.risk_measure(m, X, args.method)
        out = _result_json(res)
        if args.report:
            files = report.export_upper(args.report, "risk_set", res.risk_set, "risk set R(X)")
            out["report"] = [os.path.basename(f) for f in files]
        return out, res.risk_set
    if args.op == "verify":
        res = R.risk_measure(m, X)
        checks = {
            "dual_representation": R.dual_representation_check(m, X, res),
            "market_compatible": R.is_market_compatible_value(m, res),
        }
        try:
            checks["cross_route"] = R.risk_measure(m, X, "benson").risk_set == res.risk_set
        except (V.LvoError, ValueError):
            checks["cross_route"] = None
        checks["ok"] = all(v is not False for v in checks.values())
        return checks, None
    raise UsageError(f"unknown risk operation {args.op!r}")


# -- plumbing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latticeopt", description="Exact set optimization toolkit.")
    ap.add_argument("--seed", type=int, default=None, help="reserved; no core path is random")
    ap.add_argument("--format", choices=("json", "csv", "off"), default="json")
    ap.add_argument("--out", help="write the main output to this file instead of stdout")
    ap.add_argument("--report", metavar="DIR", help="write CSV tables, OFF meshes and PNG figures here")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice")
    p.add_argument("op", choices=("inf", "sup", "sum", "residual", "relation", "wmin"))
    p.add_argument("file")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("calculus")
    p.add_argument("op", choices=("support", "conjugate", "dirderiv", "subdiff"))
    p.add_argument("file")
    for name in ("x", "xstar", "zstar", "dir"):
        p.add_argument(f"--{name}", help="comma-separated rationals")
    p.set_defaults(func=cmd_calculus)

    p = sub.add_parser("lvo")
    p.add_argument("op", choices=("solve", "verify", "dual"))
    p.add_argument("files", nargs="+")
    p.add_argument("--eps", default="0")
    p.add_argument("--c", help="interior direction, comma-separated")
    p.set_defaults(func=cmd_lvo)

    p = sub.add_parser("risk")
    p.add_argument("op", choices=("solve", "verify"))
    p.add_argument("files", nargs="+")
    p.add_argument("--method", choices=("projection", "benson"), default="projection")
    p.set_defaults(func=cmd_risk)

    for sp in sub.choices.values():
        sp.add_argument("--report", metavar="DIR", default=argparse.SUPPRESS)
        sp.add_argument("--format", choices=("json", "csv", "off"), default=argparse.SUPPRESS)
        sp.add_argument("--out", default=argparse.SUPPRESS)
    return ap


def _render(fmt_name: str, doc, upper) -> str:
    if fmt_name == "json":
        return J.dumps(doc)
    if upper is None or not upper.is_proper:
        raise UsageError(f"--format {fmt_name} needs a command whose result is a proper upper set")
    if fmt_name == "csv":
        buf = io.StringIO()
        q = upper.dim
        buf.write(",".join([f"a{i + 1}" for i in range(q)] + ["b"]) + "\n")
        for a, b in upper.hrep.ineqs:
            buf.write(",".join(J.fvec(a) + [J.fmt(b)]) + "\n")
        return buf.getvalue()
    if upper.dim not in (2, 3):
        raise UsageError("OFF output needs a set in two or three dimensions")
    import tempfile
    pts = list(upper.vrep.points)
    box = report.bounding_box(pts)
    mesh_pts, faces = report.clipped_mesh(upper.hrep, box)
    with tempfile.TemporaryDirectory() as tmp:
        path = report.write_off(os.path.join(tmp, "out.off"), mesh_pts, faces)
        with open(path, encoding="utf-8") as fh:
            return fh.read()


def _error(kind: str, msg: str) -> str:
    return J.dumps({"error": {"type": kind, "message": msg}})


def main(argv=None) -> int:
    _setup_logging()
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc, upper = args.func(args)
        text = _render(args.format, doc, upper)
    except UsageError as exc:
        print(f"latticeopt: error: {exc}", file=sys.stderr)
        return 2
    except (J.FormatError, DimensionError, ValueError, KeyError, TypeError, OSError,
            CertificateError) as exc:
        log.debug("domain error", exc_info=True)
        kind = type(exc).__name__
        msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        sys.stdout.write(_error(kind, msg))
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if isinstance(doc, dict) and doc.get("ok") is False:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
