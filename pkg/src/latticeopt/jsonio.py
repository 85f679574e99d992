"""JSON encoding of the library's objects.

Rationals are always written as "p/q" strings; on input, integers, "p/q"
strings and terminating decimals are accepted and converted exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .exact_geom import Cone, DimensionError, HRep, VRep, frac, unit
from .lattice_sets import OrderCone, UpperSet
from .scalar_calculus import PolySetFunction


class FormatError(ValueError):
    pass


def loads(text: str) -> Any:
    # decimals stay strings so no float ever touches a value
    return json.loads(text, parse_float=str)


def load(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def rat(x) -> Fraction:
    if isinstance(x, (dict, list)) or x is None:
        raise FormatError(f"expected a rational literal, got {x!r}")
    try:
        return frac(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"malformed rational literal {x!r}") from exc


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rvec(xs) -> tuple:
    if not isinstance(xs, list):
        raise FormatError("expected a list of rationals")
    return tuple(rat(x) for x in xs)


def rmat(rows) -> tuple:
    if not isinstance(rows, list):
        raise FormatError("expected a list of rows")
    return tuple(rvec(r) for r in rows)


def fvec(v) -> list:
    return [fmt(x) for x in v]


def fmat(rows) -> list:
    return [fvec(r) for r in rows]


# -- polyhedra ------------------------------------------------------------

def hrep_to_json(h: HRep) -> dict:
    out = {"dim": h.dim, "ineqs": [{"a": fvec(a), "b": fmt(b)} for a, b in h.ineqs]}
    if h.empty:
        out["empty"] = True
    return out


def hrep_from_json(d: dict, dim: int | None = None) -> HRep:
    ineqs = tuple((rvec(r["a"]), rat(r["b"])) for r in d.get("ineqs", []))
    q = d.get("dim", dim)
    if q is None:
        if not ineqs:
            raise FormatError("HRep without inequalities needs an explicit dim")
        q = len(ineqs[0][0])
    if d.get("empty"):
        return HRep.make_empty(q)
    return HRep(q, ineqs)


def vrep_to_json(v: VRep) -> dict:
    return {"dim": v.dim, "points": fmat(v.points), "dirs": fmat(v.directions)}


def vrep_from_json(d: dict, dim: int | None = None) -> VRep:
    pts = rmat(d.get("points", []))
    dirs = rmat(d.get("dirs", []))
    q = d.get("dim", dim)
    if q is None:
        if pts:
            q = len(pts[0])
        elif dirs:
            q = len(dirs[0])
        else:
            raise FormatError("empty VRep needs an explicit dim")
    return VRep(q, pts, dirs)


def poly_from_json(d: dict, dim: int | None = None):
    return vrep_from_json(d, dim) if "points" in d or "dirs" in d else hrep_from_json(d, dim)


def cone_to_json(c: Cone) -> dict:
    return {"dim": c.dim, "rays": fmat(c.generators)}


def cone_from_json(d) -> Cone:
    """{"rays": [...]} or {"normals": [...]} or {"orthant": q}."""
    if isinstance(d, dict) and "orthant" in d:
        q = int(d["orthant"])
        return Cone(q, tuple(unit(q, i) for i in range(q)))
    if not isinstance(d, dict):
        raise FormatError("cone must be an object")
    if "normals" in d:
        normals = rmat(d["normals"])
        q = d.get("dim") or (len(normals[0]) if normals else None)
        if q is None:
            raise FormatError("cone needs a dim")
        return Cone.from_normals(q, normals)
    rays = rmat(d.get("rays", []))
    q = d.get("dim") or (len(rays[0]) if rays else None)
    if q is None:
        raise FormatError("cone needs a dim")
    return Cone(q, rays)


def order_cone_from_json(d) -> OrderCone:
    try:
        return OrderCone(cone_from_json(d))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# -- upper sets -----------------------------------------------------------

def upper_to_json(a: UpperSet) -> dict:
    out = {"kind": a.kind, "cone": cone_to_json(a.cone.cone)}
    if a.is_proper:
        out["poly"] = hrep_to_json(a.hrep)
        out["vertices"] = vrep_to_json(a.vrep)
    return out


def upper_from_json(d: dict, cone: OrderCone | None = None) -> UpperSet:
    if "cone" in d:
        cone = order_cone_from_json(d["cone"])
    if cone is None:
        raise FormatError("upper set needs a cone")
    kind = d.get("kind", "proper")
    if kind == "top":
        return UpperSet.top(cone)
    if kind == "bottom":
        return UpperSet.bottom(cone)
    if kind != "proper":
        raise FormatError(f"unknown kind {kind!r}")
    poly = poly_from_json(d["poly"], cone.dim)
    if poly.dim != cone.dim:
        raise DimensionError("set and cone dimensions differ")
    if isinstance(poly, VRep):
        return UpperSet.from_vrep(cone, poly, close=bool(d.get("close", False)))
    return UpperSet.from_hrep(cone, poly)


def family_from_json(d: dict) -> tuple[OrderCone, list]:
    """{"cone": Cone, "sets": [UpperSet | VRep | HRep, ...]}."""
    cone = order_cone_from_json(d["cone"])
    sets = []
    for s in d.get("sets", []):
        if "kind" in s or "poly" in s:
            sets.append(upper_from_json(s, cone))
        else:
            poly = poly_from_json(s, cone.dim)
            sets.append(UpperSet.from_vrep(cone, poly, close=True) if isinstance(poly, VRep)
                        else UpperSet.from_hrep(cone, poly))
    return cone, sets


# -- functions ------------------------------------------------------------

def function_to_json(f: PolySetFunction) -> dict:
    return {"n": f.n, "q": f.q, "graph": hrep_to_json(f.graph), "cone": cone_to_json(f.cone.cone)}


def function_from_json(d: dict) -> PolySetFunction:
    cone = order_cone_from_json(d["cone"])
    n, q = int(d["n"]), int(d["q"])
    return PolySetFunction(n, q, hrep_from_json(d["graph"], n + q), cone)
