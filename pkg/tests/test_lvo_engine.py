import random
from fractions import Fraction as F

import pytest

from latticeopt.exact_geom import Cone, HRep
from latticeopt.lattice_sets import OrderCone, UpperSet
from latticeopt.lvo_engine import (InfeasibleProblem, LvoError, LvoProblem, UnboundedProblem,
                                   check_lagrange_sufficiency, check_strong_duality, check_weak_duality,
                                   covers_with_tolerance, default_multiplier, dual_objective,
                                   geometric_dual, interior_direction, is_minimizer, lagrange_conditions,
                                   reconstruct_primal, solve_primal_benson, solves_dual,
                                   solves_geometric_dual, verify_geometric_duality)
from oracles import lvo_oracle
from instances import lvo_instance, lvo_suite

C2 = OrderCone.orthant(2)


@pytest.fixture(scope="module")
def plane():
    p = LvoProblem([(1, 0), (0, 1)], [(1, 1), (1, 0), (0, 1)], (1, 0, 0), C2)
    return p, *solve_primal_benson(p)


def test_plane_instance(plane):
    p, sol, dual = plane
    assert sorted(sol.images) == [(0, 1), (1, 0)]
    assert all(is_minimizer(p, x) for x in sol.points)
    expect = UpperSet.from_hrep(C2, HRep(2, (((1, 1), 1), ((1, 0), 0), ((0, 1), 0))))
    assert sol.image == expect and dual.outer == expect
    assert check_strong_duality(p, sol, dual)
    assert ((F(1, 2), 0, 0), (F(1, 2), F(1, 2))) in dual.pairs


def test_dual_objective_examples():
    p = LvoProblem([(1, 0), (0, 1)], [(1, 1), (1, 0), (0, 1)], (1, 0, 0), C2)
    assert dual_objective(p, (F(1, 2), 0, 0), (F(1, 2), F(1, 2))) == UpperSet.halfspace(C2, (1, 1), 1)
    assert dual_objective(p, (1, 0, 0), (F(1, 2), F(1, 2))).is_bottom
    q = LvoProblem([(1, 0), (0, 1)], [(1, 1), (1, 0), (0, 1)], (0, 0, 0), C2)
    assert dual_objective(q, (1, 0, 0), (1, 1)) == UpperSet.halfspace(C2, (1, 1))


def test_weak_duality_applicability(plane):
    p, sol, dual = plane
    for x in sol.points:
        for u, w in dual.pairs:
            assert check_weak_duality(p, x, u, w) is True
    u, w = dual.pairs[0]
    assert check_weak_duality(p, (-1, -1), u, w) is None
    assert check_weak_duality(p, sol.points[0], tuple(x + 1 for x in u), w) is None


def test_dropping_a_dual_pair_breaks_strong_duality(plane):
    p, sol, dual = plane
    from latticeopt.lvo_engine import DualSolution
    for i in range(len(dual.pairs)):
        short = DualSolution(p, dual.pairs[:i] + dual.pairs[i + 1:], dual.c)
        if short.outer != dual.outer:
            assert not check_strong_duality(p, sol, short)
            break
    else:
        pytest.fail("no essential pair found")


def test_scalar_problem_is_an_lp():
    r1 = OrderCone.orthant(1)
    p = LvoProblem([(1, 2)], [(1, 0), (0, 1), (1, 1)], (0, 0, 1), r1)
    sol, dual = solve_primal_benson(p)
    assert sol.images == [(1,)]
    assert sol.points == [(1, 0)]
    assert dual.pairs == [((0, 1, 1), (1,))]
    assert check_strong_duality(p, sol, dual)
    gd = geometric_dual(p)
    assert verify_geometric_duality(sol.image, gd).ok


def test_single_point_feasible_set():
    A = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    p = LvoProblem([(1, 1), (2, -1)], A, (1, -1, 2, -2), C2)
    sol, dual = solve_primal_benson(p)
    assert sol.points == [(1, 2)]
    assert dual.outer == p.objective_set((1, 2))


def test_errors():
    with pytest.raises(InfeasibleProblem) as e:
        solve_primal_benson(LvoProblem([(1,), (0,)], [(1,), (-1,)], (1, 0), C2))
    assert all(x >= 0 for x in e.value.farkas)
    with pytest.raises(UnboundedProblem):
        solve_primal_benson(LvoProblem([(-1,), (1,)], [(1,)], (0,), C2))
    with pytest.raises(LvoError):
        LvoProblem([(1, 0), (0, 1)], [(1, 0)], (0,), OrderCone(Cone(2, ((1, 0),))))
    with pytest.raises(ValueError):
        solve_primal_benson(LvoProblem([(1,), (0,)], [(1,)], (0,), C2), eps=-1)


def test_interior_direction_is_interior():
    cone = OrderCone(Cone(2, ((2, -1), (-1, 2))))
    c = interior_direction(cone)
    assert all(sum(a * b for a, b in zip(w, c)) > 0 for w in cone.dual_generators)


def test_reconstruction_of_the_objective(plane):
    p, _, _ = plane
    assert reconstruct_primal(p, (1, 0)) == p.objective_set((1, 0))
    assert reconstruct_primal(p, (F(1, 3), 2)) == p.objective_set((F(1, 3), 2))
    assert reconstruct_primal(p, (0, 0)).is_top


def test_lagrange_on_the_plane_instance(plane):
    p, sol, dual = plane
    assert check_lagrange_sufficiency(p, sol.points, upper_image=sol.image)
    assert not check_lagrange_sufficiency(p, sol.points[:1], upper_image=sol.image)
    # applying both conditions to all of M at once is too strong
    assert not check_lagrange_sufficiency(p, sol.points, upper_image=sol.image, active_only=False)


def test_scalar_complementary_slackness():
    r1 = OrderCone.orthant(1)
    p = LvoProblem([(1,)], [(1,)], (2,), r1)
    u = default_multiplier(p, (1,))
    assert u == (1,)
    assert lagrange_conditions(p, [(2,)], (1,), u) == (True, True)
    # x = 3 leaves the constraint slack while u > 0
    assert lagrange_conditions(p, [(3,)], (1,), u)[1] is False


def test_geometric_dual_of_the_plane(plane):
    p, sol, dual = plane
    gd = geometric_dual(p, dual.c)
    fm = verify_geometric_duality(sol.image, gd)
    assert fm.ok, fm.reason
    assert len(gd.kmax_facets) == len(sol.image.vrep.points) == 2
    assert len(fm.dual_vertex_to_facet) == 3
    assert solves_dual(p, dual.pairs, sol.image)
    assert solves_geometric_dual(p, dual.pairs, gd)
    assert not solves_dual(p, dual.pairs[:1], sol.image)


@pytest.mark.parametrize("seed", range(6))
def test_random_instances_against_oracle(seed):
    p, rays = lvo_instance(random.Random(seed))
    sol, dual = solve_primal_benson(p)
    mins, facets = lvo_oracle(p.P, p.A, p.b, rays)
    assert set(sol.images) == mins
    assert sol.image == UpperSet.from_hrep(p.cone, HRep(p.q, tuple(facets)))
    assert check_strong_duality(p, sol, dual)
    assert verify_geometric_duality(sol.image, geometric_dual(p, dual.c)).ok


def test_iterates_sandwich_the_upper_image():
    for p, _ in lvo_suite(5, seed=7):
        trace = []
        sol, dual = solve_primal_benson(p, trace=trace)
        upper = sol.image
        for step in trace:
            assert UpperSet.from_hrep(p.cone, step.outer_before).contains_set(upper)
            u, w = step.pair
            assert all(check_weak_duality(p, x, u, w) for x in sol.points)


def test_refinement_is_monotone():
    for p, _ in lvo_suite(4, seed=11):
        exact = solve_primal_benson(p)[0].image
        prev = None
        for eps in (1, F(1, 10), F(1, 100), 0):
            sol, _ = solve_primal_benson(p, eps)
            assert covers_with_tolerance(p, sol, exact)
            assert exact.contains_set(sol.image)
            if prev is not None:
                assert sol.iterations >= prev.iterations
                assert sol.image.contains_set(prev.image)
            prev = sol
