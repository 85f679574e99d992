"""Upper sets of R^q ordered by reverse inclusion.

An :class:`UpperSet` is a closed convex polyhedron ``A`` with ``A + C = A`` for
an order cone ``C``. Together with the empty set (top) and the whole space
(bottom) these form a complete lattice under ``⊇``: the infimum of a family is
the closed convex hull of the union, the supremum is the intersection.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exact_geom import (Cone, HRep, VRep, DimensionError, add, dot, h_to_v, neg,
                         scale as vscale, unit, v_to_h, vec, zeros)

log = logging.getLogger(__name__)

BOTTOM, TOP, PROPER = "bottom", "top", "proper"


class ConeMismatch(ValueError):
    pass


class OrderCone:
    """Polyhedral order cone C != R^q together with generators of its dual cone."""

    def __init__(self, cone: Cone):
        if cone.is_whole_space:
            raise ValueError("the order cone must not be the whole space")
        self.cone = cone
        self.dim = cone.dim

    @classmethod
    def orthant(cls, q: int) -> "OrderCone":
        return cls(Cone.orthant(q))

    @classmethod
    def from_rays(cls, q: int, rays: Iterable) -> "OrderCone":
        return cls(Cone(q, tuple(vec(r) for r in rays)))

    @classmethod
    def from_normals(cls, q: int, normals: Iterable) -> "OrderCone":
        return cls(Cone.from_normals(q, normals))

    @property
    def generators(self) -> tuple:
        return self.cone.rays

    @cached_property
    def dual_generators(self) -> tuple:
        # C = {z | a.z >= 0}, so C^+ = cone(a); equality pairs contribute both signs
        return tuple(a for a, _ in self.cone.hrep.ineqs)

    @cached_property
    def dual_cone(self) -> Cone:
        return Cone(self.dim, self.dual_generators)

    def in_dual(self, w: Sequence) -> bool:
        return all(dot(w, g) >= 0 for g in self.generators)

    def in_dual_nonzero(self, w: Sequence) -> bool:
        return any(x != 0 for x in w) and self.in_dual(w)

    @property
    def has_interior(self) -> bool:
        return self.cone.has_interior

    def __eq__(self, other):
        return isinstance(other, OrderCone) and self.cone == other.cone

    def __hash__(self):
        return hash(self.dim)

    def __repr__(self):
        return f"OrderCone(dim={self.dim}, rays={[list(map(str, r)) for r in self.generators]})"


@dataclass(frozen=True, eq=False)
class UpperSet:
    """Element of the lattice: bottom (R^q), top (empty set) or a proper polyhedron."""

    kind: str
    cone: OrderCone
    hrep: HRep | None = None
    vrep: VRep | None = field(default=None, repr=False)

    # -- construction -----------------------------------------------------

    @classmethod
    def top(cls, cone: OrderCone) -> "UpperSet":
        return cls(TOP, cone)

    @classmethod
    def bottom(cls, cone: OrderCone) -> "UpperSet":
        return cls(BOTTOM, cone)

    @classmethod
    def from_hrep(cls, cone: OrderCone, h: HRep) -> "UpperSet":
        if h.dim != cone.dim:
            raise DimensionError("set and cone dimensions differ")
        return cls._build(cone, h_to_v(h))

    @classmethod
    def from_vrep(cls, cone: OrderCone, v: VRep, close: bool = False) -> "UpperSet":
        """From points and directions. ``close`` adds the cone, giving conv(V) + C."""
        if v.dim != cone.dim:
            raise DimensionError("set and cone dimensions differ")
        if close and v.points:
            v = VRep(v.dim, v.points, v.directions + cone.generators)
        return cls._build(cone, v)

    @classmethod
    def generated(cls, cone: OrderCone, points: Iterable, directions: Iterable = ()) -> "UpperSet":
        """conv(points) + cone(directions) + C."""
        pts = tuple(vec(p) for p in points)
        return cls.from_vrep(cone, VRep(cone.dim, pts, tuple(vec(d) for d in directions)), close=True)

    @classmethod
    def halfspace(cls, cone: OrderCone, zstar: Sequence, offset=0) -> "UpperSet":
        """{z | z*.z >= offset}; z* must lie in C^+ for this to be an upper set."""
        zstar = vec(zstar)
        if all(x == 0 for x in zstar):
            return cls.bottom(cone) if Fraction(offset) <= 0 else cls.top(cone)
        return cls.from_hrep(cone, HRep(cone.dim, ((zstar, offset),)))

    @classmethod
    def cone_set(cls, cone: OrderCone) -> "UpperSet":
        return cls.from_vrep(cone, cone.cone.vrep)

    @classmethod
    def _build(cls, cone: OrderCone, v: VRep) -> "UpperSet":
        if not v.points:
            return cls.top(cone)
        h = v_to_h(v)
        if not h.ineqs:
            return cls.bottom(cone)
        v = h_to_v(h)
        for g in cone.generators:
            if not h.contains_direction(g):
                raise ValueError("set is not an upper set for this cone (recession cone misses C)")
        return cls(PROPER, cone, h, v)

    # -- predicates -------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.cone.dim

    @property
    def is_top(self) -> bool:
        return self.kind == TOP

    @property
    def is_bottom(self) -> bool:
        return self.kind == BOTTOM

    @property
    def is_proper(self) -> bool:
        return self.kind == PROPER

    def as_vrep(self) -> VRep:
        q = self.dim
        if self.is_top:
            return VRep(q)
        if self.is_bottom:
            return VRep(q, (zeros(q),), tuple(unit(q, i) for i in range(q)) +
                        tuple(neg(unit(q, i)) for i in range(q)))
        return self.vrep

    def as_hrep(self) -> HRep:
        if self.is_top:
            return HRep.make_empty(self.dim)
        if self.is_bottom:
            return HRep.whole(self.dim)
        return self.hrep

    def contains_point(self, z: Sequence) -> bool:
        return self.as_hrep().contains(vec(z))

    def contains_set(self, other: "UpperSet") -> bool:
        """self ⊇ other."""
        if other.is_top or self.is_bottom:
            return True
        if self.is_top or other.is_bottom:
            return False
        return self.hrep.contains_vrep(other.vrep)

    def __le__(self, other):
        """Lattice order: self <= other iff self ⊇ other."""
        return self.contains_set(other)

    def __ge__(self, other):
        return other.contains_set(self)

    def __eq__(self, other):
        if not isinstance(other, UpperSet):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if not self.is_proper:
            return True
        if self.hrep.ineqs == other.hrep.ineqs:
            return True
        return self.contains_set(other) and other.contains_set(self)

    def __hash__(self):
        return hash((self.kind, self.dim))

    def __repr__(self):
        if not self.is_proper:
            return f"UpperSet({self.kind}, q={self.dim})"
        return f"UpperSet({self.hrep!r})"

    # -- operators as sugar -----------------------------------------------

    def __add__(self, other):
        return minkowski_sum(self, other)

    def __sub__(self, other):
        return inf_residuation(self, other)

    def translate(self, z: Sequence) -> "UpperSet":
        if not self.is_proper:
            return self
        z = vec(z)
        v = self.vrep
        return UpperSet.from_vrep(self.cone, VRep(v.dim, tuple(add(p, z) for p in v.points), v.directions))


def _check_family(members: Sequence[UpperSet]) -> OrderCone:
    if not members:
        raise ValueError("a family needs at least one member")
    cone = members[0].cone
    for m in members[1:]:
        if m.cone is not cone and m.cone != cone:
            raise ConeMismatch("family members use different order cones")
    return cone


def _check_pair(a: UpperSet, b: UpperSet) -> OrderCone:
    return _check_family([a, b])


# -- lattice operations ---------------------------------------------------

def infimum(members: Sequence[UpperSet]) -> UpperSet:
    """Closed convex hull of the union."""
    cone = _check_family(members)
    if any(m.is_bottom for m in members):
        return UpperSet.bottom(cone)
    live = [m for m in members if m.is_proper]
    if not live:
        return UpperSet.top(cone)
    if len(live) == 1:
        return live[0]
    pts, dirs = [], []
    for m in live:
        pts += m.vrep.points
        dirs += m.vrep.directions
    return UpperSet.from_vrep(cone, VRep(cone.dim, tuple(pts), tuple(dirs)))


def supremum(members: Sequence[UpperSet]) -> UpperSet:
    """Intersection of the members."""
    cone = _check_family(members)
    if any(m.is_top for m in members):
        return UpperSet.top(cone)
    live = [m for m in members if m.is_proper]
    if not live:
        return UpperSet.bottom(cone)
    if len(live) == 1:
        return live[0]
    ineqs = []
    for m in live:
        ineqs += m.hrep.ineqs
    return UpperSet.from_hrep(cone, HRep(cone.dim, tuple(ineqs)))


def minkowski_sum(a: UpperSet, b: UpperSet) -> UpperSet:
    cone = _check_pair(a, b)
    if a.is_top or b.is_top:
        return UpperSet.top(cone)
    if a.is_bottom or b.is_bottom:
        return UpperSet.bottom(cone)
    pts = tuple(add(p, r) for p in a.vrep.points for r in b.vrep.points)
    return UpperSet.from_vrep(cone, VRep(cone.dim, pts, a.vrep.directions + b.vrep.directions))


def scale(a: UpperSet, t) -> UpperSet:
    """t·A for t >= 0; 0·A is the cone itself, also for A empty."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("scaling factor must be nonnegative")
    if t == 0:
        return UpperSet.cone_set(a.cone)
    if not a.is_proper:
        return a
    v = a.vrep
    return UpperSet.from_vrep(a.cone, VRep(v.dim, tuple(vscale(t, p) for p in v.points), v.directions))


def inf_residuation(a: UpperSet, b: UpperSet) -> UpperSet:
    """A ∸ B = {z | B + z ⊆ A}, the largest D (by inclusion) with B ⊕ D ⊆ A."""
    cone = _check_pair(a, b)
    if b.is_top or a.is_bottom:
        return UpperSet.bottom(cone)
    if a.is_top:
        return UpperSet.top(cone)
    if b.is_bottom:
        return UpperSet.top(cone)
    for d in b.vrep.directions:
        if not a.hrep.contains_direction(d):
            return UpperSet.top(cone)
    ineqs = []
    for n, beta in a.hrep.ineqs:
        lo = min(dot(n, p) for p in b.vrep.points)
        ineqs.append((n, beta - lo))
    return UpperSet.from_hrep(cone, HRep(cone.dim, tuple(ineqs)))


def residuation_oracle(a: UpperSet, b: UpperSet) -> UpperSet:
    """Same set as :func:`inf_residuation`, built as an intersection of translates A - b."""
    cone = _check_pair(a, b)
    if b.is_top or a.is_bottom:
        return UpperSet.bottom(cone)
    if a.is_top or b.is_bottom:
        return UpperSet.top(cone)
    if not all(a.hrep.contains_direction(d) for d in b.vrep.directions):
        return UpperSet.top(cone)
    return supremum([a.translate(neg(p)) for p in b.vrep.points])


def negate_polyhedron(v: VRep) -> VRep:
    return VRep(v.dim, tuple(neg(p) for p in v.points), tuple(neg(d) for d in v.directions))


def relation_le_curly(a: VRep, b: VRep, cone: Cone | OrderCone) -> bool:
    """A ≼_C B, i.e. B ⊆ A + C."""
    c = cone.cone if isinstance(cone, OrderCone) else cone
    if not a.points:
        return not b.points
    hull = v_to_h(VRep(a.dim, a.points, a.directions + c.rays))
    return hull.contains_vrep(b)


def relation_le_curlyeq(a: VRep, b: VRep, cone: Cone | OrderCone) -> bool:
    """A ≼'_C B, i.e. A ⊆ B - C."""
    c = cone.cone if isinstance(cone, OrderCone) else cone
    if not b.points:
        return not a.points
    hull = v_to_h(VRep(b.dim, b.points, b.directions + tuple(neg(r) for r in c.rays)))
    return hull.contains_vrep(a)


def is_total_order(cone: OrderCone | Cone) -> bool:
    """⊇ is total on the lattice exactly when the closed cone is a halfspace."""
    c = cone.cone if isinstance(cone, OrderCone) else cone
    h = c.hrep
    return len(h.ineqs) == 1 and not h.equality_pairs()


# -- minimality -----------------------------------------------------------

def minimal_elements(members: Sequence[UpperSet]) -> list[int]:
    """Indices i with: A_j ⊇ A_i implies A_j = A_i."""
    _check_family(members)
    out = []
    for i, ai in enumerate(members):
        ok = True
        for j, aj in enumerate(members):
            if i != j and aj.contains_set(ai) and not ai.contains_set(aj):
                ok = False
                break
        if ok:
            out.append(i)
    return out


def is_infimizer(sub_idx: Iterable[int], members: Sequence[UpperSet]) -> bool:
    idx = list(sub_idx)
    if not idx:
        return False
    return infimum([members[i] for i in idx]) == infimum(members)


def is_solution(sub_idx: Iterable[int], members: Sequence[UpperSet]) -> bool:
    idx = list(sub_idx)
    mins = set(minimal_elements(members))
    return is_infimizer(idx, members) and all(i in mins for i in idx)


def has_domination_property(members: Sequence[UpperSet]) -> tuple[bool, dict[int, int]]:
    """Always true for finite families; returns a minimal dominating member for each index."""
    mins = minimal_elements(members)
    witness = {}
    for i, ai in enumerate(members):
        if i in mins:
            witness[i] = i
            continue
        # the largest member containing A_i that is minimal
        witness[i] = next(j for j in mins if members[j].contains_set(ai))
    return True, witness


@dataclass(frozen=True)
class WeakMinimal:
    """wMin A as a list of faces, or one of the markers '-inf' / '+inf'."""

    marker: str | None
    faces: tuple = ()


def weakly_minimal_points(a: UpperSet) -> WeakMinimal:
    """Faces of A whose outer normals meet the dual cone; their union is wMin A."""
    if not a.cone.has_interior:
        raise ValueError("weak minimality needs an order cone with nonempty interior")
    if a.is_bottom:
        return WeakMinimal("-inf")
    if a.is_top:
        return WeakMinimal("+inf")
    faces = []
    h = a.hrep
    for i, (n, beta) in enumerate(h.ineqs):
        if not a.cone.in_dual_nonzero(n):
            continue
        face = HRep(h.dim, h.ineqs + ((neg(n), -beta),))
        faces.append(h_to_v(face))
    return WeakMinimal(None, tuple(faces))
