"""Exact rational polyhedra.

Vectors are tuples of ``Fraction``. A polyhedron is held either as a list of
inequalities ``a.z >= b`` (:class:`HRep`) or as points plus directions
(:class:`VRep`). Conversion between the two runs the double description method
on integer rows, so nothing in here ever touches a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


class DimensionError(ValueError):
    pass


# -- small vector helpers -------------------------------------------------

def frac(x) -> Fraction:
    """Exact conversion. Accepts ints, Fractions, and strings like '3/4' or '0.25'."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> tuple:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"add of lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"sub of lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(t, u: Sequence) -> Vector:
    return tuple(t * a for a in u)


def neg(u: Sequence) -> Vector:
    return tuple(-a for a in u)


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> tuple:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(col) for col in zip(*m))


def normalize(v: Sequence) -> Vector:
    """Positive rescaling so the first nonzero entry has absolute value 1."""
    for a in v:
        if a != 0:
            s = abs(a)
            return tuple(Fraction(x) / s for x in v)
    return tuple(Fraction(x) for x in v)


def _int_row(v: Sequence) -> list[int]:
    """Positive multiple of a rational vector that is a primitive integer vector."""
    den = 1
    for a in v:
        den = den * a.denominator // math.gcd(den, a.denominator)
    row = [int(a * den) for a in v]
    return _primitive(row)


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for a in row:
        g = math.gcd(g, a)
    if g > 1:
        row = [a // g for a in row]
    return row


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-exact Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Sequence[Sequence], n: int) -> list[Vector]:
    """Basis of {x in Q^n | row.x = 0 for every row}."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][fc]
        basis.append(tuple(x))
    return basis


def solve_square(m: Sequence[Sequence], rhs: Sequence) -> Vector | None:
    """Unique solution of m x = rhs, or None when m is singular."""
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(m, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(row[n] for row in a)


# -- double description ---------------------------------------------------

def double_description(rows: Sequence[Sequence[int]], dim: int,
                       equalities: Sequence[Sequence[int]] = ()):
    """Generators of the cone {x | e.x = 0 for e in equalities, r.x >= 0 for r in rows}.

    Works on primitive integer vectors. Returns ``(lineality, rays)`` where
    the cone equals span(lineality) + cone(rays) and the rays are extreme
    modulo the lineality space.
    """
    lin: list[list[int]] = [[1 if j == i else 0 for j in range(dim)] for i in range(dim)]
    rays: list[list[int]] = []
    zsets: list[int] = []  # bitmask of processed inequalities tight at each ray
    processed = 0
    amb = dim

    for e in equalities:
        # an equality only cuts the lineality space; rays stay empty here
        k = next((i for i, l in enumerate(lin) if _idot(e, l) != 0), None)
        if k is None:
            continue
        piv = lin.pop(k)
        amb -= 1
        ap = _idot(e, piv)
        lin = [_primitive([ap * x - _idot(e, l) * y for x, y in zip(l, piv)]) for l in lin]

    order = sorted(range(len(rows)), key=lambda i: tuple(rows[i]))
    for idx in order:
        a = rows[idx]
        bit = 1 << processed
        processed += 1
        k = next((i for i, l in enumerate(lin) if _idot(a, l) != 0), None)
        if k is not None:
            piv = lin.pop(k)
            ap = _idot(a, piv)
            if ap < 0:
                piv = [-x for x in piv]
                ap = -ap
            lin = [_primitive([ap * x - _idot(a, l) * y for x, y in zip(l, piv)]) for l in lin]
            new_rays = []
            for r, z in zip(rays, zsets):
                ar = _idot(a, r)
                nr = _primitive([ap * x - ar * y for x, y in zip(r, piv)]) if ar else r
                new_rays.append(nr)
            # every old ray is now tight on the new row; the pivot is not
            zsets = [z | bit for z in zsets]
            rays = new_rays + [piv]
            zsets.append(bit - 1)  # it was lineality, so tight on all earlier rows
            continue

        vals = [_idot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg_ = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        if not neg_:
            zsets = [z | bit if vals[i] == 0 else z for i, z in enumerate(zsets)]
            continue
        need = amb - len(lin) - 2  # tight rows two adjacent rays must share
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_z = [zsets[i] for i in pos] + [zsets[i] | bit for i in zer]
        for p in pos:
            for n in neg_:
                common = zsets[p] & zsets[n]
                if need > 0 and common.bit_count() < need:
                    continue
                adjacent = True
                for j in range(len(rays)):
                    if j != p and j != n and (zsets[j] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[p], vals[n]
                r = _primitive([vp * x - vn * y for x, y in zip(rays[n], rays[p])])
                new_rays.append(r)
                new_z.append(common | bit)
        rays, zsets = new_rays, new_z
    return lin, rays


# -- representations ------------------------------------------------------

@dataclass(frozen=True)
class HRep:
    """Intersection of halfspaces ``a.z >= b``. ``empty`` tags the empty set."""

    dim: int
    ineqs: tuple = ()  # tuple of (normal, offset)
    empty: bool = False

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError("dimension must be at least 1")
        seen = set()
        out = []
        for a, b in self.ineqs:
            a = vec(a)
            b = frac(b)
            if len(a) != self.dim:
                raise DimensionError(f"inequality of length {len(a)} in dimension {self.dim}")
            s = next((abs(x) for x in a if x != 0), None)
            if s is None:
                if b > 0:
                    object.__setattr__(self, "empty", True)
                continue  # 0 >= b with b <= 0 says nothing
            key = (tuple(x / s for x in a), b / s)
            if key not in seen:
                seen.add(key)
                out.append(key)
        object.__setattr__(self, "ineqs", () if self.empty else tuple(out))

    @classmethod
    def make_empty(cls, dim: int) -> "HRep":
        return cls(dim, (), True)

    @classmethod
    def whole(cls, dim: int) -> "HRep":
        return cls(dim, ())

    def normals(self) -> list[Vector]:
        return [a for a, _ in self.ineqs]

    def intersect(self, other: "HRep") -> "HRep":
        if other.dim != self.dim:
            raise DimensionError("intersecting sets of different dimension")
        return HRep(self.dim, self.ineqs + other.ineqs, self.empty or other.empty)

    def contains(self, z: Sequence) -> bool:
        if len(z) != self.dim:
            raise DimensionError("point dimension mismatch")
        if self.empty:
            return False
        return all(dot(a, z) >= b for a, b in self.ineqs)

    def contains_direction(self, d: Sequence) -> bool:
        """True when d lies in the recession cone (only meaningful if nonempty)."""
        return all(dot(a, d) >= 0 for a, _ in self.ineqs)

    def contains_vrep(self, v: "VRep") -> bool:
        if not v.points:
            return True
        if self.empty:
            return False
        return all(self.contains(p) for p in v.points) and all(
            self.contains_direction(d) for d in v.directions)

    def equality_pairs(self) -> list[int]:
        """Indices of inequalities whose exact negation is also present."""
        keys = {(a, b) for a, b in self.ineqs}
        return [i for i, (a, b) in enumerate(self.ineqs) if (neg(a), -b) in keys]

    def __repr__(self):
        if self.empty:
            return f"HRep(dim={self.dim}, empty)"
        body = ", ".join(f"{list(map(str, a))}>={b}" for a, b in self.ineqs)
        return f"HRep(dim={self.dim}, [{body}])"


@dataclass(frozen=True)
class VRep:
    """conv(points) + cone(directions). No points means the empty set."""

    dim: int
    points: tuple = ()
    directions: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError("dimension must be at least 1")
        pts = []
        seen = set()
        for p in self.points:
            p = vec(p)
            if len(p) != self.dim:
                raise DimensionError(f"point of length {len(p)} in dimension {self.dim}")
            if p not in seen:
                seen.add(p)
                pts.append(p)
        dirs = []
        seen = set()
        for d in self.directions:
            d = vec(d)
            if len(d) != self.dim:
                raise DimensionError(f"direction of length {len(d)} in dimension {self.dim}")
            if all(x == 0 for x in d):
                continue
            d = normalize(d)
            if d not in seen:
                seen.add(d)
                dirs.append(d)
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "directions", tuple(dirs) if pts else ())

    @property
    def is_empty(self) -> bool:
        return not self.points

    def contains(self, z: Sequence) -> bool:
        from .lp_core import feasible_combination
        if len(z) != self.dim:
            raise DimensionError("point dimension mismatch")
        if not self.points:
            return False
        return feasible_combination(self.points, self.directions, vec(z))

    def __repr__(self):
        p = [list(map(str, x)) for x in self.points]
        d = [list(map(str, x)) for x in self.directions]
        return f"VRep(dim={self.dim}, points={p}, dirs={d})"


def h_to_v(h: HRep, equalities: Sequence = ()) -> VRep:
    """Vertices and extreme directions of an H-represented polyhedron.

    ``equalities`` optionally adds constraints ``a.z = b`` given as ``(a, b)`` pairs;
    they are eliminated first, which is much cheaper than two opposite rows.
    """
    q = h.dim
    if h.empty:
        return VRep(q)
    rows = [_int_row(tuple(a) + (-b,)) for a, b in h.ineqs]
    rows.append([0] * q + [1])
    eqs = []
    for a, b in equalities:
        a = vec(a)
        if len(a) != q:
            raise DimensionError("equality of wrong length")
        eqs.append(_int_row(a + (-frac(b),)))
    lin, rays = double_description(rows, q + 1, eqs)
    points, dirs = [], []
    for r in rays:
        t = r[q]
        if t > 0:
            points.append(tuple(Fraction(x, t) for x in r[:q]))
        else:
            dirs.append(tuple(Fraction(x) for x in r[:q]))
    if not points:
        return VRep(q)
    for l in lin:
        d = tuple(Fraction(x) for x in l[:q])
        dirs.append(d)
        dirs.append(neg(d))
    points.sort()
    dirs = sorted({normalize(d) for d in dirs})
    return VRep(q, tuple(points), tuple(dirs))


def v_to_h(v: VRep) -> HRep:
    """Facet description of conv(points) + cone(directions)."""
    q = v.dim
    if not v.points:
        return HRep.make_empty(q)
    gens = [_int_row(tuple(p) + (Fraction(1),)) for p in v.points]
    gens += [_int_row(tuple(d) + (Fraction(0),)) for d in v.directions]
    lin, rays = double_description(gens, q + 1)
    ineqs = []
    for y in rays:
        a = tuple(Fraction(x) for x in y[:q])
        if all(x == 0 for x in a):
            continue  # the face at infinity
        ineqs.append((a, Fraction(-y[q])))
    for y in lin:
        a = tuple(Fraction(x) for x in y[:q])
        ineqs.append((a, Fraction(-y[q])))
        ineqs.append((neg(a), Fraction(y[q])))
    h = HRep(q, tuple(ineqs))
    return HRep(q, tuple(sorted(h.ineqs)))


def canonical_hrep(h: HRep) -> HRep:
    return v_to_h(h_to_v(h))


def remove_redundancy(h: HRep) -> HRep:
    """Drop inequalities implied by the others, one LP per inequality."""
    from .lp_core import LpProblem, solve_lp
    if h.empty:
        return h
    q = h.dim
    if not h.ineqs:
        return h
    feas = solve_lp(LpProblem(zeros(q), h))
    if feas.status == "infeasible":
        return HRep.make_empty(q)
    keep = list(h.ineqs)
    i = 0
    while i < len(keep):
        a, b = keep[i]
        rest = keep[:i] + keep[i + 1:]
        out = solve_lp(LpProblem(a, HRep(q, tuple(rest))))
        if out.status == "optimal" and out.optimum >= b:
            keep = rest
        else:
            i += 1
    return HRep(q, tuple(keep))


def contains(s: HRep | VRep, z: Sequence) -> bool:
    return s.contains(vec(z))


def same_set(h1: HRep | VRep, h2: HRep | VRep) -> bool:
    """Mutual containment of two polyhedra given in any representation."""
    v1 = h1 if isinstance(h1, VRep) else h_to_v(h1)
    v2 = h2 if isinstance(h2, VRep) else h_to_v(h2)
    a1 = h1 if isinstance(h1, HRep) else v_to_h(h1)
    a2 = h2 if isinstance(h2, HRep) else v_to_h(h2)
    return a1.contains_vrep(v2) and a2.contains_vrep(v1)


@dataclass(frozen=True)
class Cone:
    """Polyhedral convex cone given by generators (``rays``) or inner normals."""

    dim: int
    rays: tuple = field(default=())
    normals: tuple | None = None

    def __post_init__(self):
        if self.normals is not None:
            h = HRep(self.dim, tuple((a, 0) for a in self.normals))
            v = h_to_v(h)
            object.__setattr__(self, "rays", v.directions)
        else:
            v = VRep(self.dim, (zeros(self.dim),), self.rays)
            object.__setattr__(self, "rays", v.directions)

    @classmethod
    def from_normals(cls, dim: int, normals: Iterable) -> "Cone":
        return cls(dim, (), tuple(vec(a) for a in normals))

    @classmethod
    def orthant(cls, dim: int) -> "Cone":
        return cls(dim, tuple(unit(dim, i) for i in range(dim)))

    @cached_property
    def vrep(self) -> VRep:
        return VRep(self.dim, (zeros(self.dim),), self.rays)

    @cached_property
    def hrep(self) -> HRep:
        return v_to_h(self.vrep)

    @property
    def generators(self) -> tuple:
        return self.rays

    @cached_property
    def lineality(self) -> list[Vector]:
        """Basis of the largest subspace contained in the cone."""
        return nullspace(self.hrep.normals(), self.dim)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def has_interior(self) -> bool:
        return not self.hrep.equality_pairs()

    @property
    def is_whole_space(self) -> bool:
        return not self.hrep.ineqs

    def contains(self, z: Sequence) -> bool:
        return self.hrep.contains(vec(z))

    def __eq__(self, other):
        return isinstance(other, Cone) and self.dim == other.dim and \
            self.hrep.contains_vrep(other.vrep) and other.hrep.contains_vrep(self.vrep)

    def __hash__(self):
        return hash(self.dim)
