"""Scalarization of set-valued polyhedral functions and the calculus built on it.

A :class:`PolySetFunction` maps ``x in R^n`` to the upper set
``{z | (x, z) in graph}``. Every set-level notion here (conjugate, directional
derivative, subdifferential) is reduced to the scalar functions
``phi_{z*}(x) = inf {z*.z | z in f(x)}`` and lifted back as the halfspace
``{z | value <= z*.z}``. Values of scalar functions live in the extended
rationals with inf-addition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Iterable, Sequence

from .exact_geom import (HRep, VRep, DimensionError, Cone, dot, h_to_v, matvec, neg,
                         normalize, transpose, unit, v_to_h, vec, zeros, double_description,
                         _int_row)
from .lattice_sets import (OrderCone, UpperSet, inf_residuation, minkowski_sum,
                           supremum)
from .lp_core import solve_rows


@total_ordering
class ExtendedRational:
    """An element of Q ∪ {-inf, +inf} with inf-addition: (+inf) + (-inf) = +inf."""

    __slots__ = ("value", "inf")

    def __init__(self, value=0, inf: int = 0):
        if inf not in (-1, 0, 1):
            raise ValueError("inf flag must be -1, 0 or 1")
        self.inf = inf
        self.value = Fraction(0) if inf else Fraction(value)

    @classmethod
    def of(cls, x) -> "ExtendedRational":
        if isinstance(x, ExtendedRational):
            return x
        if isinstance(x, str):
            s = x.strip().lower()
            if s in ("inf", "+inf"):
                return POS_INF
            if s == "-inf":
                return NEG_INF
        return cls(Fraction(x))

    @property
    def is_finite(self) -> bool:
        return self.inf == 0

    def __add__(self, other):
        other = ExtendedRational.of(other)
        if self.inf == 1 or other.inf == 1:
            return POS_INF
        if self.inf == -1 or other.inf == -1:
            return NEG_INF
        return ExtendedRational(self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        if self.inf:
            return ExtendedRational(0, -self.inf)
        return ExtendedRational(-self.value)

    def __mul__(self, t):
        """Scaling by a nonnegative rational, with 0 * (±inf) = 0."""
        t = Fraction(t)
        if t < 0:
            raise ValueError("only nonnegative scaling is defined")
        if t == 0:
            return ExtendedRational(0)
        if self.inf:
            return self
        return ExtendedRational(self.value * t)

    __rmul__ = __mul__

    def residual(self, other) -> "ExtendedRational":
        """self ∸ other = inf {t in Q | self <= other + t}."""
        r, s = self, ExtendedRational.of(other)
        if s.inf == 1:
            return NEG_INF
        if s.inf == -1:
            return NEG_INF if r.inf == -1 else POS_INF
        if r.inf:
            return r
        return ExtendedRational(r.value - s.value)

    def _key(self):
        return (self.inf, self.value)

    def __eq__(self, other):
        try:
            other = ExtendedRational.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        other = ExtendedRational.of(other)
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        if self.inf:
            return "+inf" if self.inf > 0 else "-inf"
        v = self.value
        return f"{v.numerator}/{v.denominator}"

    def __repr__(self):
        return f"ExtendedRational({self})"


POS_INF = ExtendedRational(0, 1)
NEG_INF = ExtendedRational(0, -1)


def ext_max(values: Iterable) -> ExtendedRational:
    out = NEG_INF
    for v in values:
        v = ExtendedRational.of(v)
        if v > out:
            out = v
    return out


def ext_min(values: Iterable) -> ExtendedRational:
    out = POS_INF
    for v in values:
        v = ExtendedRational.of(v)
        if v < out:
            out = v
    return out


@dataclass(frozen=True)
class DualPair:
    xstar: tuple
    zstar: tuple

    def __post_init__(self):
        object.__setattr__(self, "xstar", vec(self.xstar))
        object.__setattr__(self, "zstar", vec(self.zstar))

    def check(self, cone: OrderCone) -> None:
        if len(self.zstar) != cone.dim:
            raise DimensionError("z* has the wrong dimension")
        if not cone.in_dual_nonzero(self.zstar):
            raise ValueError("z* must be a nonzero element of the dual cone")


def _halfspace_or_marker(cone: OrderCone, zstar, value: ExtendedRational) -> UpperSet:
    """{z | value <= z*.z}, which is empty for +inf and everything for -inf."""
    if value.inf == 1:
        return UpperSet.top(cone)
    if value.inf == -1:
        return UpperSet.bottom(cone)
    return UpperSet.halfspace(cone, zstar, value.value)


# -- support function -----------------------------------------------------

def support_scalarization(a: UpperSet, zstar: Sequence) -> ExtendedRational:
    """inf {z*.z | z in A}."""
    zstar = vec(zstar)
    if len(zstar) != a.dim:
        raise DimensionError("z* has the wrong dimension")
    if all(x == 0 for x in zstar):
        raise ValueError("z* must be nonzero")
    if a.is_top:
        return POS_INF
    if a.is_bottom:
        return NEG_INF
    v = a.vrep
    if any(dot(zstar, d) < 0 for d in v.directions):
        return NEG_INF
    return ExtendedRational(min(dot(zstar, p) for p in v.points))


def conlinear_value(pair: DualPair, x: Sequence, cone: OrderCone) -> UpperSet:
    """S_(x*,z*)(x) = {z | x*.x <= z*.z}."""
    pair.check(cone)
    return UpperSet.halfspace(cone, pair.zstar, dot(pair.xstar, vec(x)))


# -- scalar polyhedral functions ------------------------------------------

class ScalarPolyFunction:
    """Convex polyhedral phi: R^n -> Q ∪ {±inf} stored by its closed epigraph in R^(n+1)."""

    def __init__(self, n: int, epigraph: HRep):
        if epigraph.dim != n + 1:
            raise DimensionError("epigraph must live in R^(n+1)")
        self.n = n
        self.epigraph = epigraph
        for a, _ in epigraph.ineqs:
            if a[n] < 0:
                raise ValueError("not an epigraph: some row bounds r from above")

    @cached_property
    def epi_vrep(self) -> VRep:
        return h_to_v(self.epigraph)

    @property
    def is_identically_plus_inf(self) -> bool:
        return self.epigraph.empty

    @cached_property
    def pieces(self) -> list:
        """Affine minorants (slope x*, intercept) with phi = max of x*.x + intercept on the domain."""
        n = self.n
        out = []
        for a, beta in self.epigraph.ineqs:
            c = a[n]
            if c > 0:
                out.append((tuple(-x / c for x in a[:n]), beta / c))
        return out

    @cached_property
    def domain_rows(self) -> list:
        n = self.n
        return [(a[:n], beta) for a, beta in self.epigraph.ineqs if a[n] == 0]

    @property
    def takes_minus_inf(self) -> bool:
        return not self.epigraph.empty and not self.pieces

    def in_domain(self, x: Sequence) -> bool:
        if self.epigraph.empty:
            return False
        return all(dot(a, x) >= b for a, b in self.domain_rows)

    def __call__(self, x: Sequence) -> ExtendedRational:
        x = vec(x)
        if len(x) != self.n:
            raise DimensionError("argument has the wrong dimension")
        if not self.in_domain(x):
            return POS_INF
        if not self.pieces:
            return NEG_INF
        return ExtendedRational(max(dot(s, x) + c for s, c in self.pieces))

    def conjugate(self, xstar: Sequence) -> ExtendedRational:
        """phi*(x*) = sup {x*.x - r | (x, r) in epi phi}, from the epigraph's generators."""
        xstar = vec(xstar)
        v = self.epi_vrep
        if not v.points:
            return NEG_INF
        n = self.n
        for d in v.directions:
            if dot(xstar, d[:n]) - d[n] > 0:
                return POS_INF
        return ExtendedRational(max(dot(xstar, p[:n]) - p[n] for p in v.points))

    def minimum(self) -> ExtendedRational:
        return -self.conjugate(zeros(self.n))


# -- set-valued polyhedral functions --------------------------------------

class PolySetFunction:
    """f: R^n -> upper sets of R^q given by a polyhedral graph {(x, z) | G_x x + G_z z >= g}."""

    def __init__(self, n: int, q: int, graph: HRep, cone: OrderCone):
        if graph.dim != n + q:
            raise DimensionError("graph must live in R^(n+q)")
        if cone.dim != q:
            raise DimensionError("cone dimension differs from q")
        self.n, self.q, self.cone = n, q, cone
        self.graph_vrep = h_to_v(graph)
        self.graph = v_to_h(self.graph_vrep)
        for a, _ in self.graph.ineqs:
            zb = a[n:]
            if any(dot(zb, g) < 0 for g in cone.generators):
                raise ValueError("graph slices are not upper sets for the given cone")

    # constructors for the usual suspects

    @classmethod
    def linear(cls, P: Sequence[Sequence], cone: OrderCone) -> "PolySetFunction":
        """f(x) = Px + C."""
        P = tuple(vec(r) for r in P)
        q = len(P)
        n = len(P[0])
        Pt = transpose(P)
        rows = []
        for w in cone.dual_generators:
            # w.(z - Px) >= 0
            rows.append((tuple(-dot(w, col) for col in Pt) + tuple(w), 0))
        return cls(n, q, HRep(n + q, tuple(rows)), cone)

    @classmethod
    def indicator(cls, a: HRep, cone: OrderCone) -> "PolySetFunction":
        """C on A, empty elsewhere."""
        n, q = a.dim, cone.dim
        rows = [(tuple(r) + zeros(q), b) for r, b in a.ineqs]
        rows += [(zeros(n) + tuple(w), 0) for w in cone.dual_generators]
        return cls(n, q, HRep(n + q, tuple(rows), a.empty), cone)

    @classmethod
    def conlinear(cls, pair: DualPair, cone: OrderCone) -> "PolySetFunction":
        pair.check(cone)
        n, q = len(pair.xstar), cone.dim
        row = (neg(pair.xstar) + pair.zstar, 0)
        return cls(n, q, HRep(n + q, (row,)), cone)

    @classmethod
    def empty(cls, n: int, cone: OrderCone) -> "PolySetFunction":
        return cls(n, cone.dim, HRep.make_empty(n + cone.dim), cone)

    @classmethod
    def whole(cls, n: int, cone: OrderCone) -> "PolySetFunction":
        return cls(n, cone.dim, HRep.whole(n + cone.dim), cone)

    # evaluation

    def __call__(self, x: Sequence) -> UpperSet:
        return self.evaluate(x)

    def evaluate(self, x: Sequence) -> UpperSet:
        x = vec(x)
        if len(x) != self.n:
            raise DimensionError("argument has the wrong dimension")
        n = self.n
        if self.graph.empty:
            return UpperSet.top(self.cone)
        rows = tuple((a[n:], b - dot(a[:n], x)) for a, b in self.graph.ineqs)
        return UpperSet.from_hrep(self.cone, HRep(self.q, rows))

    @cached_property
    def domain(self) -> HRep:
        v = self.graph_vrep
        if not v.points:
            return HRep.make_empty(self.n)
        return v_to_h(VRep(self.n, tuple(p[:self.n] for p in v.points),
                           tuple(d[:self.n] for d in v.directions)))

    @property
    def is_proper(self) -> bool:
        if self.graph.empty:
            return False
        # some slice equals R^q exactly when the graph has no row touching z
        return any(any(x != 0 for x in a[self.n:]) for a, _ in self.graph.ineqs)

    def default_grid(self) -> list:
        """Facet normals of the graph restricted to the z-block, plus dual cone generators."""
        out = []
        for a, _ in self.graph.ineqs:
            zb = a[self.n:]
            if any(x != 0 for x in zb):
                out.append(normalize(zb))
        out += [normalize(w) for w in self.cone.dual_generators]
        seen, grid = set(), []
        for w in out:
            if w not in seen and self.cone.in_dual_nonzero(w):
                seen.add(w)
                grid.append(w)
        return grid


def scalarization_of_function(f: PolySetFunction, zstar: Sequence) -> ScalarPolyFunction:
    """phi(x) = inf {z*.z | z in f(x)} as the image of the graph under (x, z) -> (x, z*.z)."""
    zstar = vec(zstar)
    if not f.cone.in_dual_nonzero(zstar):
        raise ValueError("z* must be a nonzero element of the dual cone")
    n = f.n
    v = f.graph_vrep
    if not v.points:
        return ScalarPolyFunction(n, HRep.make_empty(n + 1))
    pts = tuple(p[:n] + (dot(zstar, p[n:]),) for p in v.points)
    dirs = tuple(d[:n] + (dot(zstar, d[n:]),) for d in v.directions)
    dirs += (unit(n + 1, n),)
    # a linear image of a polyhedron is a polyhedron, so this epigraph is already closed
    return ScalarPolyFunction(n, v_to_h(VRep(n + 1, pts, dirs)))


# -- conjugation ----------------------------------------------------------

def conjugate(f: PolySetFunction, pair: DualPair) -> UpperSet:
    """f*(x*, z*) = {z | phi*(x*) <= z*.z}."""
    pair.check(f.cone)
    phi = scalarization_of_function(f, pair.zstar)
    return _halfspace_or_marker(f.cone, pair.zstar, phi.conjugate(pair.xstar))


def negative_conjugate(f: PolySetFunction, pair: DualPair) -> UpperSet:
    """-f*(x*, z*) = H^+(z*) ∸ f*(x*, z*)."""
    h = UpperSet.halfspace(f.cone, pair.zstar)
    return inf_residuation(h, conjugate(f, pair))


def biconjugate_value(f: PolySetFunction, x: Sequence, grid: Sequence | None = None) -> UpperSet:
    """f**(x) as the intersection of S_(x*,z*)(x) ∸ f*(x*, z*) over the relevant dual pairs.

    For each z* the relevant x* are the slopes of the affine pieces of phi_{z*};
    points outside the closed domain of phi are handled as the limit along the
    recession directions of dom phi*, which sends the value to the empty set.
    """
    x = vec(x)
    cone = f.cone
    grid = [vec(w) for w in (grid if grid is not None else f.default_grid())]
    parts = []
    for zs in grid:
        phi = scalarization_of_function(f, zs)
        if phi.is_identically_plus_inf:
            # f* is Z everywhere, and S(x) ∸ Z is empty
            parts.append(inf_residuation(conlinear_value(DualPair(zeros(f.n), zs), x, cone),
                                         conjugate(f, DualPair(zeros(f.n), zs))))
            continue
        if phi.takes_minus_inf:
            continue  # f* is empty for every x*, each term is Z
        if not all(dot(a, x) >= b for a, b in phi.domain_rows):
            parts.append(UpperSet.top(cone))
            continue
        for slope, _ in phi.pieces:
            pair = DualPair(slope, zs)
            parts.append(inf_residuation(conlinear_value(pair, x, cone), conjugate(f, pair)))
    if not parts:
        return UpperSet.bottom(cone)
    return supremum(parts)


# -- derivatives ----------------------------------------------------------

def dini_derivative(phi: ScalarPolyFunction, xbar: Sequence, x: Sequence) -> ExtendedRational:
    """inf over t > 0 of (phi(xbar + t x) ∸ phi(xbar)) / t for convex polyhedral phi."""
    xbar, x = vec(xbar), vec(x)
    v0 = phi(xbar)
    if v0.inf == 1:
        return NEG_INF
    # directions that stay in the domain for small t > 0 (by convexity, for none or for an interval)
    active_dom = [a for a, b in phi.domain_rows if dot(a, xbar) == b]
    stays = all(dot(a, x) >= 0 for a in active_dom)
    if v0.inf == -1:
        return NEG_INF if stays else POS_INF
    if not stays:
        return POS_INF
    slopes = [s for s, c in phi.pieces if dot(s, xbar) + c == v0.value]
    return ExtendedRational(max(dot(s, x) for s in slopes))


def difference_quotient(f: PolySetFunction, zstar: Sequence, xbar: Sequence, x: Sequence, t) -> UpperSet:
    """(1/t)[(f(xbar + t x) ⊕ H^+(z*)) ∸ f(xbar)] evaluated with lattice operations."""
    from .lattice_sets import scale
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    xbar, x = vec(xbar), vec(x)
    moved = tuple(a + t * b for a, b in zip(xbar, x))
    h = UpperSet.halfspace(f.cone, zstar)
    q = inf_residuation(minkowski_sum(f.evaluate(moved), h), f.evaluate(xbar))
    return scale(q, 1 / t) if q.is_proper else q


def directional_derivative(f: PolySetFunction, zstar: Sequence, xbar: Sequence, x: Sequence) -> UpperSet:
    zstar = vec(zstar)
    phi = scalarization_of_function(f, zstar)
    return _halfspace_or_marker(f.cone, zstar, dini_derivative(phi, xbar, x))


def subdifferential_membership(f: PolySetFunction, zstar: Sequence, xbar: Sequence,
                               xstar: Sequence) -> bool:
    """x* in the z*-subdifferential at xbar: x*.xbar - phi(xbar) = phi*(x*), both finite."""
    phi = scalarization_of_function(f, vec(zstar))
    v = phi(vec(xbar))
    if not v.is_finite:
        return False
    c = phi.conjugate(vec(xstar))
    if not c.is_finite:
        return False
    return dot(vec(xstar), vec(xbar)) - v.value == c.value


def as_conlinear(f: PolySetFunction) -> DualPair | None:
    """Recover (x*, z*) if the graph is one homogeneous halfspace {x*.x <= z*.z}."""
    g = f.graph
    if g.empty or len(g.ineqs) != 1:
        return None
    a, b = g.ineqs[0]
    if b != 0:
        return None
    xs, zs = neg(a[:f.n]), a[f.n:]
    if not f.cone.in_dual_nonzero(zs):
        return None
    return DualPair(xs, zs)


# -- translative functions ------------------------------------------------

def translative_function(acceptance: HRep, T: Sequence[Sequence], cone: OrderCone) -> PolySetFunction:
    """f(x) = {z | x - Tz in A} for an injective T: R^q -> R^n."""
    T = tuple(vec(r) for r in T)
    n, q = acceptance.dim, cone.dim
    if len(T) != n or any(len(r) != q for r in T):
        raise DimensionError("T must be an n x q matrix")
    Tt = transpose(T)
    rows = tuple((tuple(a) + tuple(-dot(col, a) for col in Tt), b) for a, b in acceptance.ineqs)
    return PolySetFunction(n, q, HRep(n + q, rows, acceptance.empty), cone)


def _adjoint(T, xstar):
    return tuple(dot(col, xstar) for col in transpose(T))


def translative_conjugate(acceptance: HRep, T: Sequence[Sequence], cone: OrderCone,
                          pair: DualPair) -> UpperSet:
    """Closed form: ⋂_{x in A} S_(x*,z*)(x) when z* = T^T x*, otherwise empty."""
    T = tuple(vec(r) for r in T)
    if _adjoint(T, pair.xstar) != pair.zstar:
        return UpperSet.top(cone)
    out = solve_rows(pair.xstar, [a for a, _ in acceptance.ineqs],
                     [b for _, b in acceptance.ineqs], "max") if not acceptance.empty else None
    if out is None or out.status == "infeasible":
        return UpperSet.bottom(cone)
    if out.status == "unbounded":
        return UpperSet.top(cone)
    return UpperSet.halfspace(cone, pair.zstar, out.optimum)


def _polar_dual_generators(acceptance_cone: Cone, T, cone: OrderCone) -> tuple[list, list]:
    """Generators of {x* in A^- | T^T x* in C^+}, split by whether T^T x* vanishes."""
    n = acceptance_cone.dim
    rows = [_int_row(neg(a)) for a in acceptance_cone.rays]
    rows += [_int_row(matvec(T, g)) for g in cone.generators]
    lin, rays = double_description(rows, n)
    gens = [tuple(Fraction(v) for v in r) for r in rays]
    for l in lin:
        l = tuple(Fraction(v) for v in l)
        gens += [l, neg(l)]
    live, dead = [], []
    for g in gens:
        (live if any(v != 0 for v in _adjoint(T, g)) else dead).append(g)
    return live, dead


def translative_sublinear_value(acceptance_cone: Cone, T: Sequence[Sequence], cone: OrderCone,
                                x: Sequence) -> UpperSet:
    """Dual formula for sublinear translative f: ⋂ S_(x*, T^T x*)(x) over x* in A^- with T^T x* in C^+.

    Generators with T^T x* = 0 only cut the domain: their term is Z or empty.
    """
    T = tuple(vec(r) for r in T)
    x = vec(x)
    live, dead = _polar_dual_generators(acceptance_cone, T, cone)
    if any(dot(g, x) > 0 for g in dead):
        return UpperSet.top(cone)
    if not live:
        return UpperSet.bottom(cone)
    parts = [UpperSet.halfspace(cone, _adjoint(T, g), dot(g, x)) for g in live]
    return supremum(parts)


def translative_subdiff_membership(acceptance_cone: Cone, T: Sequence[Sequence], cone: OrderCone,
                                   xbar: Sequence, xstar: Sequence, zstar: Sequence) -> bool:
    """z* = T^T x*, x* in A^-, and S_(x*,z*)(xbar) = f(xbar) ⊕ H^+(z*)."""
    T = tuple(vec(r) for r in T)
    xstar, zstar = vec(xstar), vec(zstar)
    if _adjoint(T, xstar) != zstar or not cone.in_dual_nonzero(zstar):
        return False
    if any(dot(xstar, a) > 0 for a in acceptance_cone.rays):
        return False
    f = translative_function(acceptance_cone.hrep, T, cone)
    lhs = conlinear_value(DualPair(xstar, zstar), xbar, cone)
    rhs = minkowski_sum(f.evaluate(xbar), UpperSet.halfspace(cone, zstar))
    return lhs == rhs
