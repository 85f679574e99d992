"""Exact linear programming over the rationals.

Problems are ``min/max c.x  s.t.  a_i.x >= b_i`` with free variables. The
solver is a two-phase tableau simplex using Bland's rule, and every outcome is
checked against its certificate before it is handed back:

* optimal: primal point, dual multipliers ``u >= 0`` with ``A^T u = c`` and
  ``b.u = c.x``;
* unbounded: a feasible point and a ray ``r`` with ``A r >= 0``, ``c.r < 0``;
* infeasible: Farkas multipliers ``u >= 0`` with ``A^T u = 0``, ``b.u > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_geom import HRep, DimensionError, dot, vec, zeros

ZERO = Fraction(0)
ONE = Fraction(1)


class CertificateError(RuntimeError):
    """Raised if a solver certificate fails its own exact check (a bug)."""


@dataclass(frozen=True)
class LpProblem:
    objective: tuple
    constraints: HRep
    sense: str = "min"

    def __post_init__(self):
        object.__setattr__(self, "objective", vec(self.objective))
        if len(self.objective) != self.constraints.dim:
            raise DimensionError("objective and constraint dimensions differ")
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")


@dataclass(frozen=True)
class LpOutcome:
    status: str  # optimal | infeasible | unbounded
    optimum: Fraction | None = None
    point: tuple | None = None
    ray: tuple | None = None
    duals: tuple | None = None  # one multiplier per constraint row
    farkas: tuple | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


def _pivot(T, r, c):
    pr = T[r]
    p = pr[c]
    if p != 1:
        pr = [x / p for x in pr]
        T[r] = pr
    nz = [j for j, y in enumerate(pr) if y]
    for i, row in enumerate(T):
        if i != r:
            f = row[c]
            if f:
                row = list(row)
                for j in nz:
                    row[j] -= f * pr[j]
                T[i] = row


def _run(T, basis, cost, allowed):
    """Minimize with objective row computed from ``cost``. Returns ('optimal'|'unbounded', col)."""
    m = len(T)
    ncol = len(T[0]) - 1
    while True:
        # reduced costs d_j = c_j - c_B B^-1 A_j
        enter = None
        live = [(cost[basis[i]], T[i]) for i in range(m) if cost[basis[i]]]
        for j in range(ncol):
            if not allowed[j] or j in basis:
                continue
            d = cost[j] - sum((cb * row[j] for cb, row in live), ZERO)
            if d < 0:
                enter = j
                break  # Bland: lowest index with negative reduced cost
        if enter is None:
            return "optimal", None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded", enter
        _pivot(T, best[1], enter)
        basis[best[1]] = enter


def _solve_min(c, rows, rhs):
    n = len(c)
    m = len(rows)
    # columns: x+ (n), x- (n), slack (m), artificial (m), rhs
    flip = [b < 0 for b in rhs]
    T = []
    for i in range(m):
        s = -1 if flip[i] else 1
        a = rows[i]
        row = [s * x for x in a] + [-s * x for x in a]
        row += [Fraction(-s) if k == i else ZERO for k in range(m)]
        row += [ONE if k == i else ZERO for k in range(m)]
        row.append(s * rhs[i])
        T.append(row)
    nreal = 2 * n + m
    ncol = nreal + m
    basis = [nreal + i for i in range(m)]

    cost1 = [ZERO] * nreal + [ONE] * m
    allowed = [True] * ncol
    if m:
        status, _ = _run(T, basis, cost1, allowed)
    phase1 = sum((T[i][-1] for i in range(m) if basis[i] >= nreal), ZERO)
    sign = [Fraction(-1) if f else ONE for f in flip]

    def binv_row(costvec):
        # pi = c_B B^-1, read off the artificial columns (they started as I)
        return [sum((costvec[basis[i]] * T[i][nreal + k] for i in range(m)), ZERO) for k in range(m)]

    if phase1 > 0:
        pi = binv_row(cost1)
        # phase 1 dual satisfies pi <= 1, A'^T pi <= 0; map back through row flips
        farkas = tuple(sign[k] * pi[k] for k in range(m))
        return "infeasible", None, None, farkas

    # drive zero-level artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= nreal:
            j = next((j for j in range(nreal) if T[i][j] != 0 and j not in basis), None)
            if j is not None:
                _pivot(T, i, j)
                basis[i] = j

    cost2 = list(c) + [-x for x in c] + [ZERO] * m + [ZERO] * m
    allowed = [True] * nreal + [False] * m
    status, enter = _run(T, basis, cost2, allowed)

    y = [ZERO] * ncol
    for i in range(m):
        y[basis[i]] = T[i][-1]
    x = tuple(y[j] - y[n + j] for j in range(n))
    if status == "unbounded":
        d = [ZERO] * ncol
        d[enter] = ONE
        for i in range(m):
            d[basis[i]] = -T[i][enter]
        ray = tuple(d[j] - d[n + j] for j in range(n))
        return "unbounded", x, ray, None
    pi = binv_row(cost2)
    duals = tuple(sign[k] * pi[k] for k in range(m))
    return "optimal", x, None, duals


def solve_lp(p: LpProblem) -> LpOutcome:
    """Solve exactly; the returned certificate has already been verified.

    Dual multipliers are indexed like ``p.constraints.ineqs``.
    """
    h = p.constraints
    if h.empty:
        return LpOutcome("infeasible", farkas=())
    return solve_rows(p.objective, [a for a, _ in h.ineqs], [b for _, b in h.ineqs], p.sense)


def solve_rows(objective: Sequence, rows: Sequence[Sequence], rhs: Sequence,
               sense: str = "min") -> LpOutcome:
    """Like :func:`solve_lp` but on raw rows, so multipliers line up with the caller's rows.

    For ``max`` the multipliers are nonpositive: ``A^T u = c`` and ``b.u`` is the optimum.
    """
    c = vec(objective)
    n = len(c)
    rows = [vec(r) for r in rows]
    rhs = vec(rhs)
    if any(len(r) != n for r in rows) or len(rows) != len(rhs):
        raise DimensionError("constraint rows do not match the objective")
    if sense == "max":
        c = tuple(-x for x in c)
    elif sense != "min":
        raise ValueError("sense must be 'min' or 'max'")
    m = len(rows)
    if m == 0:
        if any(c):
            return LpOutcome("unbounded", point=zeros(n), ray=tuple(-x for x in c))
        return LpOutcome("optimal", optimum=ZERO, point=zeros(n), duals=())
    status, x, ray, mult = _solve_min(c, rows, rhs)

    if status == "infeasible":
        u = mult
        if any(v < 0 for v in u):
            raise CertificateError("negative Farkas multiplier")
        for j in range(n):
            if sum((u[i] * rows[i][j] for i in range(m)), ZERO) != 0:
                raise CertificateError("Farkas combination is not zero")
        if sum((u[i] * rhs[i] for i in range(m)), ZERO) <= 0:
            raise CertificateError("Farkas right-hand side not positive")
        return LpOutcome("infeasible", farkas=u)

    for a, b in zip(rows, rhs):
        if dot(a, x) < b:
            raise CertificateError("primal point infeasible")
    if status == "unbounded":
        if any(dot(a, ray) < 0 for a in rows) or dot(c, ray) >= 0:
            raise CertificateError("bad unboundedness ray")
        return LpOutcome("unbounded", point=x, ray=ray)

    u = mult
    if any(v < 0 for v in u):
        raise CertificateError("negative dual multiplier")
    for j in range(n):
        if sum((u[i] * rows[i][j] for i in range(m)), ZERO) != c[j]:
            raise CertificateError("dual multipliers do not reproduce the objective")
    val = dot(c, x)
    if sum((u[i] * rhs[i] for i in range(m)), ZERO) != val:
        raise CertificateError("duality gap")
    if sense == "max":
        val = -val
        u = tuple(-v for v in u)
    return LpOutcome("optimal", optimum=val, point=x, duals=u)


def minimize(objective: Sequence, constraints: HRep) -> LpOutcome:
    return solve_lp(LpProblem(vec(objective), constraints, "min"))


def maximize(objective: Sequence, constraints: HRep) -> LpOutcome:
    return solve_lp(LpProblem(vec(objective), constraints, "max"))


def is_feasible(h: HRep) -> bool:
    return solve_lp(LpProblem(zeros(h.dim), h)).status != "infeasible"


def feasible_combination(points, directions, z) -> bool:
    """Is z in conv(points) + cone(directions)? One LP in the weights."""
    k, l = len(points), len(directions)
    q = len(z)
    if k == 0:
        return False
    ineqs = []
    for i in range(k + l):
        e = [ZERO] * (k + l)
        e[i] = ONE
        ineqs.append((tuple(e), ZERO))
    ones = tuple([ONE] * k + [ZERO] * l)
    ineqs.append((ones, ONE))
    ineqs.append((tuple(-x for x in ones), -ONE))
    for j in range(q):
        row = tuple([p[j] for p in points] + [d[j] for d in directions])
        ineqs.append((row, z[j]))
        ineqs.append((tuple(-x for x in row), -z[j]))
    h = HRep(k + l, tuple(ineqs))
    return is_feasible(h)
