"""Linear vector optimization: min_C Px subject to Ax >= b.

The problem is solved on the level of its upper image ``P[S] + C`` with a
Benson-type outer approximation. Each cut comes from the dual of a
point-in-image LP and is a feasible element ``(u, w)`` of the dual problem,
so the same run yields a primal solution (finitely many minimizers) and a dual
solution (finitely many supporting halfspaces ``{z | w.z >= b.u}``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_geom import (HRep, VRep, DimensionError, dot, h_to_v, matvec, neg, normalize,
                         transpose, unit, v_to_h, vec, zeros, add)
from .lattice_sets import OrderCone, UpperSet, infimum, minkowski_sum, supremum
from .lp_core import solve_rows
from .scalar_calculus import ExtendedRational, NEG_INF, POS_INF, support_scalarization

log = logging.getLogger(__name__)

ZERO, ONE = Fraction(0), Fraction(1)


class LvoError(ValueError):
    pass


class InfeasibleProblem(LvoError):
    def __init__(self, farkas):
        super().__init__("the feasible set is empty")
        self.farkas = farkas


class UnboundedProblem(LvoError):
    def __init__(self, weight, ray):
        super().__init__("the upper image is not bounded below with respect to the cone")
        self.weight, self.ray = weight, ray


@dataclass(frozen=True)
class LvoProblem:
    P: tuple  # q x n
    A: tuple  # m x n
    b: tuple
    cone: OrderCone

    def __post_init__(self):
        P = tuple(vec(r) for r in self.P)
        A = tuple(vec(r) for r in self.A)
        b = vec(self.b)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        if not P:
            raise DimensionError("P needs at least one row")
        n = len(P[0])
        if any(len(r) != n for r in P) or any(len(r) != n for r in A):
            raise DimensionError("P and A must have n columns")
        if len(A) != len(b):
            raise DimensionError("A and b disagree on m")
        if self.cone.dim != len(P):
            raise DimensionError("cone dimension differs from q")
        if not self.cone.has_interior:
            raise LvoError("the order cone must have nonempty interior")

    @property
    def n(self) -> int:
        return len(self.P[0])

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def q(self) -> int:
        return len(self.P)

    @property
    def W(self) -> tuple:
        """Columns w_k with C = {z | W^T z >= 0}, i.e. generators of C^+."""
        return self.cone.dual_generators

    def image(self, x: Sequence) -> tuple:
        return matvec(self.P, vec(x))

    def is_feasible(self, x: Sequence) -> bool:
        x = vec(x)
        return all(dot(a, x) >= bi for a, bi in zip(self.A, self.b))

    def objective_set(self, x: Sequence) -> UpperSet:
        """f(x) = Px + C."""
        return UpperSet.generated(self.cone, [self.image(x)])

    def feasible_set(self) -> HRep:
        return HRep(self.n, tuple(zip(self.A, self.b)))

    def scalarized(self, w: Sequence, sense: str = "min"):
        """LP over S of w.Px; multipliers index the rows of A."""
        Pt = transpose(self.P)
        obj = tuple(dot(w, col) for col in Pt)
        return solve_rows(obj, self.A, self.b, sense)


def interior_direction(cone: OrderCone) -> tuple:
    """A rational interior point c of C with c_q != 0, from an LP maximizing the slack."""
    q = cone.dim
    W = cone.dual_generators
    # variables (z, s): w.z - s >= 0 for all w, s <= 1, maximize s
    rows = [tuple(w) + (-ONE,) for w in W] + [zeros(q) + (-ONE,)]
    rhs = [ZERO] * len(W) + [-ONE]
    out = solve_rows(zeros(q) + (ONE,), rows, rhs, "max")
    if out.status != "optimal" or out.optimum <= 0:
        raise LvoError("the order cone has empty interior")
    c = list(out.point[:q])
    if c[-1] == 0:
        # nudge along e_q while staying interior
        slack = min(dot(w, c) for w in W)
        big = max(abs(w[-1]) for w in W) or ONE
        c[-1] = slack / (2 * big)
    return tuple(c)


def _check_interior(cone: OrderCone, c) -> None:
    if any(dot(w, c) <= 0 for w in cone.dual_generators):
        raise LvoError("c is not an interior point of the cone")


@dataclass
class LvoSolution:
    problem: LvoProblem
    points: list
    images: list
    epsilon: Fraction
    c: tuple
    iterations: int
    outer_hrep: HRep = None

    @property
    def image(self) -> UpperSet:
        """inf f[points] = conv{Px} + C."""
        return UpperSet.generated(self.problem.cone, self.images)

    @property
    def outer(self) -> UpperSet:
        return UpperSet.from_hrep(self.problem.cone, self.outer_hrep)


@dataclass
class DualSolution:
    problem: LvoProblem
    pairs: list  # (u, w)
    c: tuple

    @property
    def outer(self) -> UpperSet:
        return supremum([dual_objective(self.problem, u, w) for u, w in self.pairs])


@dataclass
class BensonStep:
    """One cut: the outer vertex v, its distance t to the image along c, and the cut."""

    vertex: tuple
    t: Fraction
    point: tuple
    pair: tuple
    outer_before: HRep


def _in_T(p: LvoProblem, u, w, c=None) -> bool:
    if len(u) != p.m or len(w) != p.q:
        return False
    if any(x < 0 for x in u):
        return False
    if not p.cone.in_dual_nonzero(w):
        return False
    At = transpose(p.A, p.n) if p.m else tuple(() for _ in range(p.n))
    Pt = transpose(p.P)
    for j in range(p.n):
        lhs = sum((u[i] * p.A[i][j] for i in range(p.m)), ZERO)
        if lhs != dot(w, Pt[j]):
            return False
    if c is not None and dot(c, w) != 1:
        return False
    return True


def dual_objective(p: LvoProblem, u: Sequence, w: Sequence) -> UpperSet:
    """D(u, w) = {z | b.u <= w.z} on dual-feasible directions, R^q otherwise."""
    u, w = vec(u), vec(w)
    if not _in_T(p, u, w):
        return UpperSet.bottom(p.cone)
    return UpperSet.halfspace(p.cone, w, dot(p.b, u))


def _distance_lp(p: LvoProblem, v, c):
    """min t s.t. Ax >= b, W^T(v + t c - Px) >= 0. Returns (t, x, u, w)."""
    n, W = p.n, p.W
    Pt = transpose(p.P)
    rows, rhs = [], []
    for a, bi in zip(p.A, p.b):
        rows.append(tuple(a) + (ZERO,))
        rhs.append(bi)
    for w in W:
        rows.append(tuple(-dot(w, col) for col in Pt) + (dot(w, c),))
        rhs.append(-dot(w, v))
    out = solve_rows(zeros(n) + (ONE,), rows, rhs, "min")
    if out.status != "optimal":
        raise LvoError(f"distance LP ended {out.status}")
    u = out.duals[:p.m]
    lam = out.duals[p.m:]
    wsum = tuple(sum((l * w[k] for l, w in zip(lam, W)), ZERO) for k in range(p.q))
    return out.optimum, out.point[:n], u, wsum


def _efficient_below(p: LvoProblem, x):
    """A minimizer x' with Px' <=_C Px, from min (sum W)^T P x' over that region."""
    W = p.W
    wbar = tuple(sum((w[k] for w in W), ZERO) for k in range(p.q))
    Pt = transpose(p.P)
    y = p.image(x)
    rows = list(p.A)
    rhs = list(p.b)
    for w in W:
        rows.append(tuple(-dot(w, col) for col in Pt))
        rhs.append(-dot(w, y))
    out = solve_rows(tuple(dot(wbar, col) for col in Pt), rows, rhs, "min")
    if out.status != "optimal":
        raise LvoError(f"efficiency LP ended {out.status}")
    return out.point


def is_minimizer(p: LvoProblem, x: Sequence) -> bool:
    """No feasible x' with Px' + C strictly larger than Px + C, decided by one LP."""
    x = vec(x)
    if not p.is_feasible(x):
        return False
    W = p.W
    wbar = tuple(sum((w[k] for w in W), ZERO) for k in range(p.q))
    Pt = transpose(p.P)
    y = p.image(x)
    rows, rhs = list(p.A), list(p.b)
    for w in W:
        rows.append(tuple(-dot(w, col) for col in Pt))
        rhs.append(-dot(w, y))
    # maximize sum_k w_k.(Px - Px'), which is zero iff nothing dominates x
    out = solve_rows(tuple(-dot(wbar, col) for col in Pt), rows, rhs, "max")
    return out.status == "optimal" and out.optimum == -dot(wbar, y)


def solve_primal_benson(p: LvoProblem, eps=0, c: Sequence | None = None,
                        max_iter: int = 100000, trace: list | None = None):
    """Outer approximation of the upper image. Returns (LvoSolution, DualSolution).

    Each round evaluates every vertex of the current outer set, then cuts at the
    vertex farthest from the image (ties go to the lexicographically smallest
    vertex). Because the cut sequence does not depend on eps, runs with a
    smaller eps extend runs with a larger one, and the returned points grow
    with them. Points whose images are not vertices of the inner set are
    dropped, so that set is all the monotonicity refers to.
    """
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    c = vec(c) if c is not None else interior_direction(p.cone)
    if len(c) != p.q:
        raise DimensionError("c has the wrong dimension")
    _check_interior(p.cone, c)

    feas = solve_rows(zeros(p.n), p.A, p.b)
    if feas.status == "infeasible":
        raise InfeasibleProblem(feas.farkas)

    pairs = []
    ineqs = []
    for w in p.W:
        out = p.scalarized(w)
        if out.status == "unbounded":
            raise UnboundedProblem(w, out.ray)
        s = dot(c, w)
        pairs.append((tuple(x / s for x in out.duals), tuple(x / s for x in w)))
        ineqs.append((w, out.optimum))
    outer = HRep(p.q, tuple(ineqs))

    cache = {}
    iterations = 0
    while True:
        verts = sorted(h_to_v(outer).points)
        worst = None
        for v in verts:
            if v not in cache:
                cache[v] = _distance_lp(p, v, c)
            t = cache[v][0]
            if worst is None or t > cache[worst][0]:
                worst = v
        t, x, u, w = cache[worst]
        if t <= eps:
            break
        if iterations >= max_iter:
            raise LvoError("iteration limit reached")
        if trace is not None:
            trace.append(BensonStep(worst, t, x, (u, w), outer))
        pairs.append((u, w))
        outer = HRep(p.q, outer.ineqs + ((w, dot(p.b, u)),))
        iterations += 1
        log.debug("cut %d at vertex %s, distance %s", iterations, worst, t)

    # every evaluated vertex contributes, so a run with smaller eps keeps all earlier points
    points, images, seen = [], [], set()
    for v in cache:
        xv = _efficient_below(p, cache[v][1])
        y = p.image(xv)
        if y not in seen:
            seen.add(y)
            points.append(xv)
            images.append(y)
    # keep the points whose images are vertices; inf f[points] does not change
    corners = set(UpperSet.generated(p.cone, images).vrep.points)
    keep = [i for i, y in enumerate(images) if y in corners]
    points, images = [points[i] for i in keep], [images[i] for i in keep]
    sol = LvoSolution(p, points, images, eps, c, iterations, outer)
    dual = DualSolution(p, _dedupe_pairs(pairs), c)
    return sol, dual


def _dedupe_pairs(pairs):
    out, seen = [], set()
    for u, w in pairs:
        key = (tuple(u), tuple(w))
        if key not in seen:
            seen.add(key)
            out.append((tuple(u), tuple(w)))
    return out


# -- verifiers ------------------------------------------------------------

def check_weak_duality(p: LvoProblem, x: Sequence, u: Sequence, w: Sequence) -> bool | None:
    """D(u,w) ⊇ Px + C for feasible x and dual-feasible (u, w); None if not applicable."""
    x, u, w = vec(x), vec(u), vec(w)
    if len(x) != p.n or not p.is_feasible(x) or not _in_T(p, u, w):
        return None
    return dual_objective(p, u, w).contains_set(p.objective_set(x))


def covers_with_tolerance(p: LvoProblem, sol: LvoSolution, upper_image: UpperSet) -> bool:
    """inf f[M] ⊕ (C - eps c) ⊇ upper image."""
    inner = sol.image
    shifted = UpperSet.generated(p.cone, [tuple(-sol.epsilon * ci for ci in sol.c)])
    return minkowski_sum(inner, shifted).contains_set(upper_image)


def check_strong_duality(p: LvoProblem, primal: LvoSolution, dual: DualSolution) -> bool:
    """inf f[points] equals the intersection of the dual halfspaces, facet by facet."""
    if not primal.points or not dual.pairs:
        return False
    if not all(p.is_feasible(x) for x in primal.points):
        return False
    if not all(_in_T(p, u, w) for u, w in dual.pairs):
        return False
    inner = primal.image
    outer = dual.outer
    if not (inner == outer):
        return False
    for n, _ in inner.hrep.ineqs:
        target = minkowski_sum(inner, UpperSet.halfspace(p.cone, n))
        nn = normalize(n)
        if not any(normalize(w) == nn and dual_objective(p, u, w) == target for u, w in dual.pairs):
            return False
    return True


def reconstruct_primal(p: LvoProblem, x: Sequence, grid: Sequence | None = None) -> UpperSet:
    """Supremum over u >= 0 and grid z* of the Lagrangian L(x, u, z*)."""
    x = vec(x)
    grid = [vec(w) for w in (grid if grid is not None else p.W)]
    slack = tuple(bi - dot(a, x) for a, bi in zip(p.A, p.b))  # b - Ax
    # sup over u >= 0 of u.(b - Ax): one LP in u
    rows = [unit(p.m, i) for i in range(p.m)]
    if p.m:
        out = solve_rows(slack, rows, zeros(p.m), "max")
        bonus = POS_INF if out.status == "unbounded" else ExtendedRational(out.optimum)
    else:
        bonus = ExtendedRational(0)
    parts = []
    for zs in grid:
        val = ExtendedRational(dot(zs, p.image(x))) + bonus
        parts.append(UpperSet.top(p.cone) if val.inf == 1 else UpperSet.halfspace(p.cone, zs, val.value))
    return supremum(parts)


def _g_hat(p: LvoProblem, M) -> UpperSet:
    """cl co of the union of b - Ax + R^m_+ over x in M."""
    cone = OrderCone.orthant(p.m)
    pts = [tuple(bi - dot(a, x) for a, bi in zip(p.A, p.b)) for x in M]
    return UpperSet.generated(cone, pts)


def _inf_conlinear_over(p: LvoProblem, ghat: UpperSet, u, zstar) -> UpperSet:
    """inf over y in ĝ of S_(u,z*)(y) = {z | inf_y u.y <= z*.z}."""
    if any(x < 0 for x in u):
        return UpperSet.bottom(p.cone)
    if all(x == 0 for x in u):
        s = ExtendedRational(0) if not ghat.is_top else POS_INF
    else:
        s = support_scalarization(ghat, u)
    if s.inf == 1:
        return UpperSet.top(p.cone)
    if s.inf == -1:
        return UpperSet.bottom(p.cone)
    return UpperSet.halfspace(p.cone, zstar, s.value)


def _inf_lagrangian(p: LvoProblem, u, zstar) -> UpperSet:
    """inf over all x of L(x, u, z*) = (Px + C) ⊕ {z | u.(b - Ax) <= z*.z}."""
    if any(x < 0 for x in u):
        return UpperSet.bottom(p.cone)
    Pt = transpose(p.P)
    coef = tuple(dot(zstar, Pt[j]) - sum((u[i] * p.A[i][j] for i in range(p.m)), ZERO)
                 for j in range(p.n))
    out = solve_rows(coef, [], [], "min")
    if out.status == "unbounded":
        return UpperSet.bottom(p.cone)
    return UpperSet.halfspace(p.cone, zstar, out.optimum + dot(u, p.b))


def lagrange_conditions(p: LvoProblem, M: Sequence, zstar: Sequence, u: Sequence,
                        active_only: bool = True) -> tuple[bool, bool]:
    """The two sufficient conditions for one z*: Lagrangian infimizer equality and complementary slackness.

    With ``active_only`` the conditions are applied to the part of M that
    minimizes z*.Px; that part has the same z*-scalarized infimum as M, and it
    is all the sufficiency argument needs for this z*.
    """
    zstar, u = vec(zstar), vec(u)
    M = [vec(x) for x in M]
    if active_only:
        vals = [dot(zstar, p.image(x)) for x in M]
        lo = min(vals)
        M = [x for x, v in zip(M, vals) if v == lo]
    fhat = infimum([p.objective_set(x) for x in M])
    ghat = _g_hat(p, M)
    slack_part = _inf_conlinear_over(p, ghat, u, zstar)
    lhs = minkowski_sum(fhat, slack_part)
    rhs = _inf_lagrangian(p, u, zstar)
    comp = slack_part == UpperSet.halfspace(p.cone, zstar)
    return lhs == rhs, comp


def lagrange_grid(p: LvoProblem, M: Sequence, upper_image: UpperSet | None = None) -> list:
    """Facet normals of the upper image and of inf f[M], plus generators of C^+."""
    if upper_image is None:
        upper_image = solve_primal_benson(p, 0)[0].image
    out = []
    for s in (upper_image, infimum([p.objective_set(x) for x in M])):
        if s.is_proper:
            out += [normalize(a) for a, _ in s.hrep.ineqs]
    out += [normalize(w) for w in p.W]
    seen, grid = set(), []
    for w in out:
        if w not in seen and p.cone.in_dual_nonzero(w):
            seen.add(w)
            grid.append(w)
    return grid


def default_multiplier(p: LvoProblem, zstar: Sequence):
    """Dual multipliers of min z*.Px over S, or None if that LP is unbounded."""
    out = p.scalarized(vec(zstar))
    return out.duals if out.status == "optimal" else None


def check_lagrange_sufficiency(p: LvoProblem, M: Sequence, assignments: dict | None = None,
                               grid: Sequence | None = None, upper_image: UpperSet | None = None,
                               active_only: bool = True) -> bool:
    """True iff every grid z* has a multiplier meeting both sufficient conditions."""
    M = [vec(x) for x in M]
    if not M or not all(p.is_feasible(x) for x in M):
        return False
    if grid is None:
        grid = lagrange_grid(p, M, upper_image)
    for zs in grid:
        zs = vec(zs)
        u = assignments.get(zs) if assignments else None
        if u is None:
            u = default_multiplier(p, zs)
        if u is None:
            return False
        inf_ok, comp_ok = lagrange_conditions(p, M, zs, u, active_only)
        if not (inf_ok and comp_ok):
            return False
    return True


# -- geometric dual -------------------------------------------------------

@dataclass
class GeometricDual:
    problem: LvoProblem
    c: tuple
    hrep: HRep
    vrep: VRep

    @property
    def kmax_facets(self) -> list:
        """Facets a.y >= beta with a_q < 0, i.e. bounding y_q from above."""
        return [(a, b) for a, b in self.hrep.ineqs if a[-1] < 0]


def dual_weight(c: Sequence, y: Sequence) -> tuple:
    """w(y) = (y_1, ..., y_{q-1}, (1 - sum_{i<q} c_i y_i) / c_q), so that c.w = 1."""
    q = len(c)
    head = tuple(y[:q - 1])
    last = (ONE - sum((c[i] * y[i] for i in range(q - 1)), ZERO)) / c[q - 1]
    return head + (last,)


def geometric_dual(p: LvoProblem, c: Sequence | None = None) -> GeometricDual:
    """𝒟 = {D*(u, w) - K | (u, w) in T} by projecting T with the double description method."""
    c = vec(c) if c is not None else interior_direction(p.cone)
    _check_interior(p.cone, c)
    if c[-1] == 0:
        raise LvoError("the geometric dual needs c_q != 0")
    m, q, n = p.m, p.q, p.n
    d = m + q
    ineqs = [(unit(d, i), 0) for i in range(m)]
    ineqs += [(zeros(m) + tuple(g), 0) for g in p.cone.generators]
    Pt = transpose(p.P)
    eqs = []
    for j in range(n):
        eqs.append((tuple(p.A[i][j] for i in range(m)) + tuple(-x for x in Pt[j]), 0))
    eqs.append((zeros(m) + tuple(c), 1))
    tv = h_to_v(HRep(d, tuple(ineqs)), eqs)
    if not tv.points:
        raise LvoError("the dual feasible set is empty")

    def dstar(uw, homogeneous=False):
        u, w = uw[:m], uw[m:]
        return tuple(w[:q - 1]) + (dot(p.b, u),)

    pts = tuple(dstar(x) for x in tv.points)
    dirs = tuple(dstar(x) for x in tv.directions) + (neg(unit(q, q - 1)),)
    v = VRep(q, pts, dirs)
    h = v_to_h(v)
    return GeometricDual(p, c, h, h_to_v(h))


@dataclass
class FaceMap:
    ok: bool
    dual_facet_to_vertex: dict = field(default_factory=dict)  # K-maximal facet -> vertex
    dual_vertex_to_facet: dict = field(default_factory=dict)  # dual vertex -> facet (normal, offset)
    reason: str = ""


def _facet_key(a, beta):
    s = next(abs(x) for x in a if x != 0)
    return (tuple(x / s for x in a), beta / s)


def verify_geometric_duality(upper: UpperSet, gd: GeometricDual) -> FaceMap:
    """Pair vertices of the upper image with K-maximal facets of 𝒟 and facets with dual vertices.

    The incidence check compares the two polyhedra as computed independently:
    vertex v lies on facet F of the upper image iff the dual vertex of F lies on
    the dual facet of v.
    """
    c = gd.c
    q = len(c)
    if not upper.is_proper:
        return FaceMap(False, reason="upper image is not proper")
    p_verts = list(upper.vrep.points)
    p_facets = [_facet_key(a, b) for a, b in upper.hrep.ineqs]

    # K-maximal facet: y_q <= sum_{i<q} alpha_i y_i + gamma, read back as a point of R^q
    dual_facet_to_vertex = {}
    for a, beta in gd.kmax_facets:
        s = -a[-1]
        alpha = tuple(x / s for x in a[:q - 1])
        gamma = -beta / s
        v = tuple(alpha[i] + gamma * c[i] for i in range(q - 1)) + (gamma * c[q - 1],)
        dual_facet_to_vertex[(a, beta)] = v
    if len(dual_facet_to_vertex) != len(p_verts) or set(dual_facet_to_vertex.values()) != set(p_verts):
        return FaceMap(False, reason="vertices of the upper image and K-maximal facets of the dual differ")

    dual_vertex_to_facet = {}
    for y in gd.vrep.points:
        w = dual_weight(c, y)
        dual_vertex_to_facet[y] = _facet_key(w, y[-1])
    if len(dual_vertex_to_facet) != len(p_facets) or set(dual_vertex_to_facet.values()) != set(p_facets):
        return FaceMap(False, reason="facets of the upper image and vertices of the dual differ")

    for (a, beta), v in dual_facet_to_vertex.items():
        for y, (wn, off) in dual_vertex_to_facet.items():
            on_primal = dot(wn, v) == off
            on_dual = dot(a, y) == beta
            if on_primal != on_dual:
                return FaceMap(False, reason=f"incidence mismatch at vertex {v} and dual vertex {y}")
    return FaceMap(True, dual_facet_to_vertex, dual_vertex_to_facet)


def solves_dual(p: LvoProblem, pairs: Sequence, upper: UpperSet) -> bool:
    """Pairs are dual feasible, each halfspace supports the upper image, and they cut it out exactly."""
    if not pairs or not all(_in_T(p, vec(u), vec(w)) for u, w in pairs):
        return False
    halfspaces = [dual_objective(p, u, w) for u, w in pairs]
    for (u, w), h in zip(pairs, halfspaces):
        if support_scalarization(upper, w) != ExtendedRational(dot(p.b, vec(u))):
            return False
    return supremum(halfspaces) == upper


def solves_geometric_dual(p: LvoProblem, pairs: Sequence, gd: GeometricDual) -> bool:
    """D*-images are K-maximal points of 𝒟 and conv(images) - K equals 𝒟."""
    if not pairs or not all(_in_T(p, vec(u), vec(w), gd.c) for u, w in pairs):
        return False
    q = p.q
    imgs = [tuple(vec(w)[:q - 1]) + (dot(p.b, vec(u)),) for u, w in pairs]
    for y in imgs:
        # K-maximal: y + t e_q leaves 𝒟 for every t > 0, i.e. y lies on a K-maximal facet
        if not gd.hrep.contains(y):
            return False
        if not any(dot(a, y) == b for a, b in gd.kmax_facets):
            return False
    hull = VRep(q, tuple(imgs), (neg(unit(q, q - 1)),))
    return v_to_h(hull).contains_vrep(gd.vrep) and gd.hrep.contains_vrep(hull)
