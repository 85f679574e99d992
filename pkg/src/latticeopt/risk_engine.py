"""Set-valued risk measures on finite-scenario one-period markets.

The measure implemented is the superhedging-type one

    R(X) = {u in M | exists k0 in K_0 with X(w) + u - k0 in K_T(w) for all w},

reported in coordinates of a basis of the eligible space M. It is a
polyhedral projection, computed by vertex enumeration of the lifted system;
the same set can be computed as the upper image of a vector LP.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_geom import (Cone, DimensionError, HRep, VRep, dot, h_to_v, matvec, rank,
                         transpose, unit, v_to_h, vec, zeros)
from .lattice_sets import OrderCone, UpperSet, minkowski_sum, scale, supremum
from .lp_core import solve_rows
from .lvo_engine import LvoProblem, solve_primal_benson
from .scalar_calculus import PolySetFunction, translative_function

ZERO, ONE = Fraction(0), Fraction(1)


class MarketError(ValueError):
    pass


def _cone_contains_orthant(k: Cone) -> bool:
    return all(k.contains(unit(k.dim, i)) for i in range(k.dim))


@dataclass(frozen=True)
class MarketModel:
    d: int
    probabilities: tuple
    K0: Cone
    KT: tuple  # one Cone per scenario
    M: tuple  # basis vectors of the eligible subspace

    def __post_init__(self):
        probs = vec(self.probabilities)
        basis = tuple(vec(b) for b in self.M)
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "M", basis)
        object.__setattr__(self, "KT", tuple(self.KT))
        if not probs or any(p <= 0 for p in probs) or sum(probs) != 1:
            raise MarketError("scenario probabilities must be positive and sum to 1")
        if len(self.KT) != len(probs):
            raise MarketError("need one terminal solvency cone per scenario")
        for k in (self.K0,) + self.KT:
            if k.dim != self.d:
                raise DimensionError("solvency cone of the wrong dimension")
            if not _cone_contains_orthant(k) or k.is_whole_space:
                raise MarketError("solvency cones must contain the orthant and differ from R^d")
        if not basis or any(len(b) != self.d for b in basis) or rank(basis) != len(basis):
            raise MarketError("M needs linearly independent basis vectors in R^d")
        # M_+ != {0}: some u = Bs >= 0 with sum(u) = 1
        B = self.B
        rows = [tuple(r) for r in B] + [tuple(sum(r[j] for r in B) for j in range(self.k))]
        rows += [tuple(-x for x in rows[-1])]
        out = solve_rows(zeros(self.k), rows, [ZERO] * self.d + [ONE, -ONE])
        if out.status == "infeasible":
            raise MarketError("M contains no nonzero nonnegative portfolio")

    @property
    def k(self) -> int:
        return len(self.M)

    @property
    def n_scenarios(self) -> int:
        return len(self.probabilities)

    @property
    def B(self) -> tuple:
        """d x k embedding matrix, columns are the basis of M."""
        return transpose(self.M)

    def embed(self, s: Sequence) -> tuple:
        return matvec(self.B, vec(s))

    @property
    def eligible_cone(self) -> OrderCone:
        """K_0^M in M-coordinates: {s | Bs in K_0}."""
        normals = [tuple(dot(a, col) for col in self.M) for a in self.K0.hrep.normals()]
        c = Cone.from_normals(self.k, normals)
        if c.is_whole_space:
            raise MarketError("K_0 contains M, so R(0) would be all of M")
        return OrderCone(c)

    def check_payoff(self, X: Sequence) -> tuple:
        X = tuple(vec(x) for x in X)
        if len(X) != self.n_scenarios or any(len(x) != self.d for x in X):
            raise DimensionError("payoff needs one d-vector per scenario")
        return X

    def constant(self, s: Sequence) -> tuple:
        """u*1 for u = Bs."""
        u = self.embed(s)
        return tuple(u for _ in range(self.n_scenarios))


@dataclass(frozen=True)
class PriceSystem:
    """A dual pair (Q, w): Q[i][w] is the weight the i-th component measure puts on scenario w."""

    Q: tuple  # d x N
    w: tuple

    def expectation(self, X: Sequence) -> tuple:
        return tuple(sum((self.Q[i][j] * X[j][i] for j in range(len(X))), ZERO) for i in range(len(self.w)))


@dataclass
class RiskResult:
    risk_set: UpperSet
    certificate: list
    basis: tuple
    method: str = "projection"


def _lifted_rows(m: MarketModel, X):
    """Rows over (s, k0): K_0 rows on k0 and, per scenario, K_T rows on X + Bs - k0."""
    k, d = m.k, m.d
    B = m.B
    rows, rhs, tags = [], [], []
    for a in m.K0.hrep.normals():
        rows.append(zeros(k) + tuple(a))
        rhs.append(ZERO)
        tags.append(None)
    for j, KT in enumerate(m.KT):
        for a in KT.hrep.normals():
            aB = tuple(dot(a, col) for col in transpose(B))
            rows.append(aB + tuple(-x for x in a))
            rhs.append(-dot(a, X[j]))
            tags.append((j, tuple(a)))
    return rows, rhs, tags


def _project(m: MarketModel, X) -> UpperSet:
    rows, rhs, _ = _lifted_rows(m, X)
    v = h_to_v(HRep(m.k + m.d, tuple(zip(rows, rhs))))
    cone = m.eligible_cone
    if not v.points:
        return UpperSet.top(cone)
    k = m.k
    proj = VRep(k, tuple(p[:k] for p in v.points),
                tuple(d[:k] for d in v.directions if any(d[:k])))
    return UpperSet.from_vrep(cone, proj)


def _benson(m: MarketModel, X) -> UpperSet:
    rows, rhs, _ = _lifted_rows(m, X)
    k, d = m.k, m.d
    P = tuple(unit(k, i) + zeros(d) for i in range(k))
    prob = LvoProblem(P, rows, rhs, m.eligible_cone)
    sol, _ = solve_primal_benson(prob, 0)
    return sol.image


def _price_system(m: MarketModel, X, normal) -> PriceSystem:
    """(Q, w) for one facet normal of R(X), read from the duals of min normal.s over the lifted system."""
    rows, rhs, tags = _lifted_rows(m, X)
    out = solve_rows(tuple(normal) + zeros(m.d), rows, rhs, "min")
    if out.status != "optimal":
        raise MarketError("facet LP did not attain its minimum")
    N, d = m.n_scenarios, m.d
    y = [list(zeros(d)) for _ in range(N)]
    for mu, tag in zip(out.duals, tags):
        if tag is None or mu == 0:
            continue
        j, a = tag
        for i in range(d):
            y[j][i] += mu * a[i]
    w = tuple(sum((y[j][i] for j in range(N)), ZERO) for i in range(d))
    Q = tuple(tuple(y[j][i] / w[i] if w[i] else m.probabilities[j] for j in range(N))
              for i in range(d))
    return PriceSystem(Q, w)


def risk_measure(m: MarketModel, X: Sequence, method: str = "projection") -> RiskResult:
    """R(X) in M-coordinates plus one price system per facet."""
    X = m.check_payoff(X)
    if method == "projection":
        rs = _project(m, X)
    elif method == "benson":
        rs = _benson(m, X)
    else:
        raise ValueError("method must be 'projection' or 'benson'")
    cert = []
    if rs.is_proper:
        cert = [_price_system(m, X, a) for a, _ in rs.hrep.ineqs]
    return RiskResult(rs, cert, m.M, method)


def _in_dual(k: Cone, y) -> bool:
    return all(dot(y, g) >= 0 for g in k.generators)


def is_price_system(m: MarketModel, ps: PriceSystem) -> bool:
    """Q is a vector probability measure, w in K_0^+ off M^perp, diag(w) dQ/dP in K_T^+ scenario-wise."""
    N, d = m.n_scenarios, m.d
    if len(ps.Q) != d or any(len(q) != N for q in ps.Q) or len(ps.w) != d:
        return False
    if any(x < 0 for q in ps.Q for x in q) or any(sum(q) != 1 for q in ps.Q):
        return False
    if not _in_dual(m.K0, ps.w) or all(dot(ps.w, b) == 0 for b in m.M):
        return False
    for j in range(N):
        dens = tuple(ps.w[i] * ps.Q[i][j] / m.probabilities[j] for i in range(d))
        if not _in_dual(m.KT[j], dens):
            return False
    return True


def penalty(m: MarketModel, ps: PriceSystem) -> UpperSet:
    """-alpha(Q, w) = cl of the union of (E^Q[X'] + H^+(w)) ∩ M over X' with 0 in R(X').

    The acceptance set is a cone, so the union is H^+(w) ∩ M when w.E^Q[X'] >= 0
    on it and M otherwise; one LP over (X', k0) decides which.
    """
    N, d = m.n_scenarios, m.d
    cone = m.eligible_cone
    wB = tuple(dot(ps.w, b) for b in m.M)
    # variables (X'(1..N), k0); rows K_0 on k0 and K_T(j) on X'(j) - k0
    nv = N * d + d
    rows = []
    for a in m.K0.hrep.normals():
        rows.append(zeros(N * d) + tuple(a))
    for j, KT in enumerate(m.KT):
        for a in KT.hrep.normals():
            r = [ZERO] * nv
            for i in range(d):
                r[j * d + i] = a[i]
                r[N * d + i] = -a[i]
            rows.append(tuple(r))
    obj = [ZERO] * nv
    for j in range(N):
        for i in range(d):
            obj[j * d + i] = ps.w[i] * ps.Q[i][j]
    out = solve_rows(obj, rows, [ZERO] * len(rows), "min")
    if out.status == "unbounded":
        return UpperSet.bottom(cone)
    return UpperSet.halfspace(cone, wB, 0)


def dual_value(m: MarketModel, X: Sequence, ps: PriceSystem) -> UpperSet:
    """-alpha(Q, w) ⊕ (E^Q[-X] + H^+(w)) ∩ M, in M-coordinates."""
    X = m.check_payoff(X)
    cone = m.eligible_cone
    wB = tuple(dot(ps.w, b) for b in m.M)
    eq = ps.expectation(X)
    part = UpperSet.halfspace(cone, wB, -dot(ps.w, eq))
    return minkowski_sum(penalty(m, ps), part)


def dual_representation_check(m: MarketModel, X: Sequence, result: RiskResult) -> bool:
    """Every certificate pair is a price system and the intersection of dual values equals R(X)."""
    X = m.check_payoff(X)
    if result.risk_set.is_top:
        return not result.certificate
    if not all(is_price_system(m, ps) for ps in result.certificate):
        return False
    recon = supremum([dual_value(m, X, ps) for ps in result.certificate])
    return recon == result.risk_set


# -- axiom checks ---------------------------------------------------------

def _shift(m: MarketModel, X, s):
    u = m.embed(s)
    return tuple(tuple(a + b for a, b in zip(x, u)) for x in X)


def translativity_check(m: MarketModel, X: Sequence, s: Sequence) -> bool:
    """R(X + u1) = R(X) - u for u = Bs."""
    X = m.check_payoff(X)
    s = vec(s)
    lhs = risk_measure(m, _shift(m, X, s)).risk_set
    rhs = risk_measure(m, X).risk_set.translate(tuple(-x for x in s))
    return lhs == rhs


def dominates(m: MarketModel, X1: Sequence, X2: Sequence) -> bool:
    """X2 - X1 in K_T scenario-wise."""
    X1, X2 = m.check_payoff(X1), m.check_payoff(X2)
    return all(m.KT[j].contains(tuple(b - a for a, b in zip(X1[j], X2[j]))) for j in range(m.n_scenarios))


def monotonicity_check(m: MarketModel, X1: Sequence, X2: Sequence) -> bool:
    """R(X2) ⊇ R(X1) whenever X2 dominates X1; raises if it does not."""
    if not dominates(m, X1, X2):
        raise ValueError("X2 - X1 is not in K_T in every scenario")
    return risk_measure(m, X2).risk_set.contains_set(risk_measure(m, X1).risk_set)


def _combine(X1, X2, t):
    return tuple(tuple(t * a + (1 - t) * b for a, b in zip(x1, x2)) for x1, x2 in zip(X1, X2))


def convexity_check(m: MarketModel, X1: Sequence, X2: Sequence, t) -> bool:
    """R(tX1 + (1-t)X2) ⊇ tR(X1) + (1-t)R(X2)."""
    t = Fraction(t)
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    X1, X2 = m.check_payoff(X1), m.check_payoff(X2)
    lhs = risk_measure(m, _combine(X1, X2, t)).risk_set
    rhs = minkowski_sum(scale(risk_measure(m, X1).risk_set, t), scale(risk_measure(m, X2).risk_set, 1 - t))
    return lhs.contains_set(rhs)


def positive_homogeneity_check(m: MarketModel, X: Sequence, t) -> bool:
    """R(tX) = tR(X) for t > 0."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    X = m.check_payoff(X)
    tX = tuple(tuple(t * a for a in x) for x in X)
    return risk_measure(m, tX).risk_set == scale(risk_measure(m, X).risk_set, t)


def is_market_compatible_value(m: MarketModel, result: RiskResult) -> bool:
    """riskSet + K_0^M = riskSet."""
    rs = result.risk_set
    return minkowski_sum(rs, UpperSet.cone_set(m.eligible_cone)) == rs


# -- translative-function view -------------------------------------------

def acceptance_set(m: MarketModel) -> HRep:
    """A_R = {X | 0 in R(X)} as a polyhedral cone in R^(N d), scenario blocks concatenated."""
    N, d = m.n_scenarios, m.d
    nv = N * d + d
    ineqs = []
    for a in m.K0.hrep.normals():
        ineqs.append((zeros(N * d) + tuple(a), 0))
    for j, KT in enumerate(m.KT):
        for a in KT.hrep.normals():
            r = [ZERO] * nv
            for i in range(d):
                r[j * d + i] = a[i]
                r[N * d + i] = -a[i]
            ineqs.append((tuple(r), 0))
    v = h_to_v(HRep(nv, tuple(ineqs)))
    proj = VRep(N * d, tuple(p[:N * d] for p in v.points),
                tuple(x[:N * d] for x in v.directions if any(x[:N * d])))
    return v_to_h(proj)


def translation_operator(m: MarketModel) -> tuple:
    """T: s -> -(Bs, ..., Bs), an (N d) x k matrix."""
    B = m.B
    return tuple(tuple(-x for x in B[i]) for _ in range(m.n_scenarios) for i in range(m.d))


def flatten(X: Sequence) -> tuple:
    return tuple(a for x in X for a in vec(x))


def as_translative_function(m: MarketModel) -> PolySetFunction:
    """R as the T-translative function X -> {s | X - Ts in A_R}."""
    return translative_function(acceptance_set(m), translation_operator(m), m.eligible_cone)
