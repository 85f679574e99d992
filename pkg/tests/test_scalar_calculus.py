import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from latticeopt.exact_geom import Cone, HRep, dot, matvec, transpose
from latticeopt.lattice_sets import OrderCone, UpperSet, inf_residuation, infimum, minkowski_sum, supremum
from latticeopt.scalar_calculus import (NEG_INF, POS_INF, DualPair, ExtendedRational, PolySetFunction,
                                        as_conlinear, biconjugate_value, conjugate, conlinear_value,
                                        difference_quotient, dini_derivative, directional_derivative,
                                        ext_max, ext_min, negative_conjugate, scalarization_of_function,
                                        subdifferential_membership, support_scalarization,
                                        translative_conjugate, translative_function,
                                        translative_subdiff_membership, translative_sublinear_value)
from instances import random_function, random_halfspaces_set, random_upper

C2 = OrderCone.orthant(2)
E = ExtendedRational


# -- extended rationals -----------------------------------------------------

def test_inf_addition_table():
    assert POS_INF + NEG_INF == POS_INF
    assert NEG_INF + POS_INF == POS_INF
    assert E(2) + NEG_INF == NEG_INF
    assert E(F(1, 2)) + E(F(1, 3)) == E(F(5, 6))
    assert 0 * POS_INF == E(0) and 0 * NEG_INF == E(0)
    assert 3 * NEG_INF == NEG_INF
    with pytest.raises(ValueError):
        -1 * E(1)


def test_residual_table():
    assert E(5).residual(E(2)) == E(3)
    assert POS_INF.residual(E(1)) == POS_INF
    assert E(1).residual(POS_INF) == NEG_INF
    assert E(1).residual(NEG_INF) == POS_INF
    assert NEG_INF.residual(NEG_INF) == NEG_INF


def test_ordering_and_parsing():
    assert NEG_INF < E(-100) < E(100) < POS_INF
    assert E.of("-inf") == NEG_INF and E.of("3/4") == E(F(3, 4))
    assert ext_max([]) == NEG_INF and ext_min([]) == POS_INF
    assert str(E(2)) == "2/1"


# -- support function -------------------------------------------------------

def test_support_examples():
    a = UpperSet.generated(C2, [(1, 0), (0, 1)])
    assert support_scalarization(a, (1, 1)) == E(1)
    assert support_scalarization(UpperSet.top(C2), (1, 1)) == POS_INF
    assert support_scalarization(UpperSet.cone_set(C2), (1, -1)) == NEG_INF
    with pytest.raises(ValueError):
        support_scalarization(a, (0, 0))


def test_supremum_support_can_be_strict():
    # each member has value 1 at (1, 1); their intersection is (1, 1) + R^2_+
    fam = [UpperSet.generated(C2, [(F(k, 4), 1 - F(k, 4))]) for k in range(5)]
    assert all(support_scalarization(a, (1, 1)) == E(1) for a in fam)
    assert support_scalarization(supremum(fam), (1, 1)) == E(2)


def test_residual_support_equality_on_a_halfspace():
    h = UpperSet.halfspace(C2, (1, 2), 3)
    b = UpperSet.generated(C2, [(1, 1), (0, 4)])
    lhs = support_scalarization(inf_residuation(h, b), (1, 2))
    assert lhs == E(3).residual(support_scalarization(b, (1, 2)))


seeds = st.integers(0, 10 ** 6)


def _sets(seed, k=2):
    rng = random.Random(seed)
    cone = OrderCone(Cone(2, ((2, -1), (-1, 2)))) if rng.random() < 0.5 else C2
    return rng, cone, [random_upper(rng, cone) if rng.random() < 0.7 else random_halfspaces_set(rng, cone)
                       for _ in range(k)]


def _dual_vector(rng, cone):
    while True:
        c = [rng.randint(0, 3) for _ in cone.dual_generators]
        w = tuple(sum(ci * g[i] for ci, g in zip(c, cone.dual_generators)) for i in range(cone.dim))
        if any(w):
            return w


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_support_is_additive(seed):
    rng, cone, (a, b) = _sets(seed)
    w = _dual_vector(rng, cone)
    assert support_scalarization(minkowski_sum(a, b), w) == support_scalarization(a, w) + support_scalarization(b, w)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_support_of_inf_and_sup(seed):
    rng, cone, fam = _sets(seed, 3)
    w = _dual_vector(rng, cone)
    vals = [support_scalarization(a, w) for a in fam]
    assert support_scalarization(infimum(fam), w) == ext_min(vals)
    assert support_scalarization(supremum(fam), w) >= ext_max(vals)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_upper_set_is_recovered_from_facet_normals(seed):
    rng, cone, (a,) = _sets(seed, 1)
    if not a.is_proper:
        return
    grid = [n for n, _ in a.hrep.ineqs] + list(cone.dual_generators)
    parts = []
    for w in grid:
        s = support_scalarization(a, w)
        if s.is_finite:
            parts.append(UpperSet.halfspace(cone, w, s.value))
    assert supremum(parts) == a


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_residual_support_inequality(seed):
    rng, cone, (a, b) = _sets(seed)
    w = _dual_vector(rng, cone)
    lhs = support_scalarization(inf_residuation(a, b), w)
    assert lhs >= support_scalarization(a, w).residual(support_scalarization(b, w))


# -- conlinear functions ----------------------------------------------------

def test_conlinear_examples():
    pair = DualPair((1, 0), (1, 1))
    assert conlinear_value(pair, (0, 0), C2) == UpperSet.halfspace(C2, (1, 1))
    assert conlinear_value(pair, (2, 0), C2) == UpperSet.halfspace(C2, (1, 1), 2)
    with pytest.raises(ValueError):
        conlinear_value(DualPair((1, 0), (1, -1)), (0, 0), C2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_conlinear_is_additive(v):
    pair = DualPair(v[0:2], (abs(v[2]) + 1, abs(v[3])))
    x1, x2 = v[4:6], v[6:8]
    s = tuple(a + b for a, b in zip(x1, x2))
    assert conlinear_value(pair, s, C2) == minkowski_sum(conlinear_value(pair, x1, C2),
                                                          conlinear_value(pair, x2, C2))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=2), st.integers(0, 3), st.integers(1, 3))
def test_conlinear_recovered_from_graph(xs, z1, z2):
    pair = DualPair(xs, (z1, z2))
    f = PolySetFunction.conlinear(pair, C2)
    got = as_conlinear(f)
    # the pair is determined up to a positive factor
    k = got.zstar[1] / pair.zstar[1]
    assert got.zstar == tuple(k * z for z in pair.zstar)
    assert got.xstar == tuple(k * x for x in pair.xstar)


# -- scalarization and conjugates -------------------------------------------

def test_scalarization_examples():
    f = PolySetFunction.linear([(1, 0), (0, 1)], C2)
    phi = scalarization_of_function(f, (1, 1))
    assert phi((2, 3)) == E(5) and phi((-1, 0)) == E(-1)
    assert scalarization_of_function(PolySetFunction.empty(2, C2), (1, 1))((0, 0)) == POS_INF
    ind = PolySetFunction.indicator(HRep(2, (((1, 0), 0), ((0, 1), 0))), C2)
    phi = scalarization_of_function(ind, (1, 1))
    assert phi((1, 2)) == E(0) and phi((-1, 0)) == POS_INF


def test_conjugate_examples():
    pair = DualPair((1, -1), (1, 2))
    s = PolySetFunction.conlinear(pair, C2)
    assert conjugate(s, pair) == UpperSet.halfspace(C2, (1, 2))
    assert conjugate(s, DualPair((0, 0), (1, 2))).is_top
    assert conjugate(PolySetFunction.empty(2, C2), pair).is_bottom
    assert negative_conjugate(s, pair) == UpperSet.halfspace(C2, (1, 2))


def test_biconjugate_examples():
    f = PolySetFunction.linear([(1, 2), (0, -1)], C2)
    for x in [(0, 0), (1, -1), (3, 2)]:
        assert biconjugate_value(f, x) == f(x)
    assert biconjugate_value(PolySetFunction.whole(2, C2), (1, 1)).is_bottom


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_biconjugate_recovers_random_functions(seed):
    rng = random.Random(seed)
    f = random_function(rng)
    for _ in range(4):
        x = tuple(rng.randint(-3, 3) for _ in range(f.n))
        assert biconjugate_value(f, x) == f(x)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_conjugate_is_antitone(seed):
    rng = random.Random(seed)
    f = random_function(rng, q=2, cone=C2)
    g_rows = f.graph.ineqs + (((F(1),) + (F(0),) * (f.n + 1), F(rng.randint(-2, 2))),)
    g = PolySetFunction(f.n, 2, HRep(f.n + 2, g_rows), C2)  # one more row: a smaller graph
    pair = DualPair(tuple(rng.randint(-2, 2) for _ in range(f.n)), _dual_vector(rng, C2))
    # graph g ⊆ graph f means f(x) ⊇ g(x), i.e. f is below g; conjugates flip that
    assert conjugate(g, pair).contains_set(conjugate(f, pair))


# -- derivatives and subdifferentials ---------------------------------------

VERT = OrderCone(Cone(2, ((0, 1),)))


def test_linear_derivative_and_subdifferential():
    P = [(1, 2), (0, -1)]
    f = PolySetFunction.linear(P, C2)
    zs = (1, 1)
    x = (2, -1)
    d = directional_derivative(f, zs, (0, 0), x)
    assert d == minkowski_sum(UpperSet.generated(C2, [matvec(P, x)]), UpperSet.halfspace(C2, zs))
    xstar = matvec(transpose(P), zs)
    for xb in [(0, 0), (1, 5), (-3, 2)]:
        assert subdifferential_membership(f, zs, xb, xstar)
    assert not subdifferential_membership(f, zs, (0, 0), (9, 9))


def test_zero_direction_gives_halfspace():
    f = PolySetFunction.linear([(1, 0), (0, 1)], C2)
    assert directional_derivative(f, (1, 2), (3, 1), (0, 0)) == UpperSet.halfspace(C2, (1, 2))


def test_derivative_leaving_the_domain_is_empty():
    # f(x) = [-x, x] x R_+ for x in [0, 1]
    g = HRep(3, (((1, 1, 0), 0), ((1, -1, 0), 0), ((0, 0, 1), 0), ((1, 0, 0), 0), ((-1, 0, 0), -1)))
    f = PolySetFunction(1, 2, g, VERT)
    zs = (0, 1)
    assert directional_derivative(f, zs, (1,), (1,)).is_top
    assert difference_quotient(f, zs, (1,), (1,), F(1, 100)).is_top
    # moving back into the domain is fine
    assert directional_derivative(f, zs, (1,), (-1,)) == UpperSet.halfspace(VERT, zs)


def test_zero_in_subdifferential_at_minimum():
    # two pieces: f(x) = max(x, -2x) + R_+
    r1 = OrderCone.orthant(1)
    f = PolySetFunction(1, 1, HRep(2, (((-1, 1), 0), ((2, 1), 0))), r1)
    assert subdifferential_membership(f, (1,), (0,), (0,))
    assert not subdifferential_membership(f, (1,), (1,), (0,))
    phi = scalarization_of_function(f, (1,))
    assert phi.minimum() == E(0)
    assert dini_derivative(phi, (0,), (1,)) == E(1)
    assert dini_derivative(phi, (0,), (-1,)) == E(2)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_derivative_is_the_limit_of_quotients(seed):
    rng = random.Random(seed)
    f = random_function(rng)
    grid = f.default_grid()
    zs = rng.choice(grid)
    xb = tuple(rng.randint(-2, 2) for _ in range(f.n))
    if not scalarization_of_function(f, zs)(xb).is_finite:
        return
    x = tuple(rng.randint(-2, 2) for _ in range(f.n))
    d = directional_derivative(f, zs, xb, x)
    for t in (1, F(1, 2), F(1, 10)):
        assert d.contains_set(difference_quotient(f, zs, xb, x, t))
    assert d == difference_quotient(f, zs, xb, x, F(1, 2 ** 40))


# -- translative functions --------------------------------------------------

def _translative(rng, n, q):
    """Acceptance set containing its recession directions R^n_+, T = -S with S >= 0 injective."""
    rows = []
    for _ in range(rng.randint(1, 3)):
        a = tuple(F(rng.randint(0, 2)) for _ in range(n))
        if any(a):
            rows.append((a, F(rng.randint(-2, 2))))
    S = [[F(int(i == j)) for j in range(q)] for i in range(q)] + \
        [[F(rng.randint(0, 2)) for _ in range(q)] for _ in range(n - q)]
    T = tuple(tuple(-v for v in r) for r in S)
    return HRep(n, tuple(rows)), T


def test_translative_orthant_example():
    r2 = HRep(2, (((1, 0), 0), ((0, 1), 0)))
    T = ((-1, 0), (0, -1))
    f = translative_function(r2, T, C2)
    assert f((1, 2)) == UpperSet.generated(C2, [(-1, -2)])
    assert translative_conjugate(r2, T, C2, DualPair((-1, -2), (1, 2))) == UpperSet.halfspace(C2, (1, 2))
    assert translative_conjugate(r2, T, C2, DualPair((1, 2), (1, 2))).is_top


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_translative_conjugate_closed_form(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 3)
    q = rng.randint(1, n)
    cone = OrderCone.orthant(q)
    A, T = _translative(rng, n, q)
    f = translative_function(A, T, cone)
    for _ in range(3):
        y = tuple(F(rng.randint(0, 2)) for _ in range(n))
        xs = tuple(-v for v in y)
        zs = tuple(dot(col, xs) for col in transpose(T))
        if rng.random() < 0.3 or not any(zs):
            zs = tuple(F(rng.randint(0, 2)) for _ in range(q))
            if not any(zs):
                continue
        pair = DualPair(xs, zs)
        assert conjugate(f, pair) == translative_conjugate(A, T, cone, pair)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_sublinear_translative_round_trip(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 3)
    q = rng.randint(1, n)
    cone = OrderCone.orthant(q)
    A, T = _translative(rng, n, q)
    acc = Cone.from_normals(n, [a for a, _ in A.ineqs])
    f = translative_function(acc.hrep, T, cone)
    for _ in range(3):
        x = tuple(F(rng.randint(-2, 2)) for _ in range(n))
        assert translative_sublinear_value(acc, T, cone, x) == f(x)
    xb = tuple(F(rng.randint(-2, 2)) for _ in range(n))
    for a in acc.hrep.ineqs:
        xs = tuple(-v for v in a[0])
        zs = tuple(dot(col, xs) for col in transpose(T))
        if cone.in_dual_nonzero(zs):
            assert translative_subdiff_membership(acc, T, cone, xb, xs, zs) == \
                subdifferential_membership(f, zs, xb, xs)
