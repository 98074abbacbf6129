from itertools import product
from math import comb

import numpy as np
import pytest

from riskfront.core import (
    ObjectivePoint,
    Scenario,
    SupplierSpec,
    StructuralProfile,
    fitness,
    is_feasible,
    objective_point,
)
from riskfront.errors import CapacityError, InfeasibleError
from riskfront.oracle import (
    MAX_COMPOSITIONS,
    composition_blocks,
    composition_count,
    compositions,
    count_feasible,
    dominates,
    enumerate_distributions,
    exact_pareto_front,
    objective_minima,
    weighted_sum_optimum,
)


def brute_compositions(d, n):
    """Every n-tuple in [0, d]^n summing to d, via the full cube."""
    return [x for x in product(range(d + 1), repeat=n) if sum(x) == d]


def brute_front(scen, relax):
    points = [(x, objective_point(x, scen)) for x in brute_compositions(scen.demand, scen.n) if is_feasible(x, scen, relax)]
    front = {}
    for x, p in points:
        if any(
            q.total_cost <= p.total_cost and q.risk_index <= p.risk_index
            and (q.total_cost < p.total_cost or q.risk_index < p.risk_index)
            for _, q in points
        ):
            continue
        key = p.as_tuple()
        front[key] = min(front.get(key, x), x)
    return sorted((p, x) for p, x in front.items())


def test_small_enumeration():
    enum = enumerate_distributions(Scenario.fig2(2), relax=True)
    got = list(enum)
    assert sorted(got) == sorted([(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)])
    assert got == sorted(got)
    assert enum.report.relaxed_count == enum.report.feasible_count == 6


def test_relaxed_count_d100():
    enum = enumerate_distributions(Scenario.fig2(100), relax=True)
    assert sum(1 for _ in enum) == comb(102, 2) == 5151
    assert enum.report.relaxed_count == 5151


def test_feasible_count_d100_golden():
    # independent count: x2 + 5 x3 <= 200 after substituting x1 = 100 - x2 - x3
    expected = sum(1 for x2 in range(101) for x3 in range(101 - x2) if 2 * (100 - x2 - x3) + 3 * x2 + 7 * x3 <= 400)
    report = count_feasible(Scenario.fig2(100))
    assert report.feasible_count == expected == 2841
    assert report.relaxed_count == 5151


@pytest.mark.parametrize("d, n", [(0, 3), (5, 2), (6, 3), (4, 4), (3, 5)])
def test_compositions_complete_and_ordered(d, n):
    got = list(compositions(d, n))
    assert got == sorted(brute_compositions(d, n))
    assert len(got) == composition_count(d, n)
    blocks = [tuple(r) for b in composition_blocks(d, n, chunk=3) for r in b.tolist()]
    assert blocks == got


def test_capacity_guard():
    huge = Scenario.fig2(20000)
    assert composition_count(20000, 3) > MAX_COMPOSITIONS
    with pytest.raises(CapacityError, match="genetic"):
        enumerate_distributions(huge)
    with pytest.raises(CapacityError):
        exact_pareto_front(huge)


def test_dominance_examples():
    a, b = ObjectivePoint(350, 0.12), ObjectivePoint(600, 0.7575)
    assert dominates(a, b) and not dominates(b, a)
    assert not dominates(ObjectivePoint(350, 0.5), ObjectivePoint(600, 0.2))
    assert not dominates(ObjectivePoint(600, 0.2), ObjectivePoint(350, 0.5))
    assert not dominates(a, a)
    assert dominates(ObjectivePoint(350, 0.12), ObjectivePoint(350, 0.13))


def test_front_single_point_when_objectives_agree(zero_alpha_scenario):
    front = exact_pareto_front(zero_alpha_scenario)
    assert [fp.distribution for fp in front] == [(20, 0, 0)]


@pytest.mark.parametrize("relax", [True, False])
def test_front_matches_quadratic_scan_d10(relax):
    scen = Scenario.fig2(10)
    front = exact_pareto_front(scen, relax)
    expected = brute_front(scen, relax)
    assert [(fp.point.as_tuple(), fp.distribution) for fp in front] == expected


@pytest.mark.parametrize("d", [10, 20])
def test_front_sound_and_minimal(d):
    scen = Scenario.fig2(d)
    front = exact_pareto_front(scen)
    points = [objective_point(x, scen) for x in compositions(d, 3) if is_feasible(x, scen)]
    for fp in front:
        assert is_feasible(fp.distribution, scen)
        assert not any(dominates(p, fp.point) for p in points)
        assert not any(dominates(other.point, fp.point) for other in front)
    costs = [fp.total_cost for fp in front]
    assert costs == sorted(costs)


def test_weighted_optimum_cost_only():
    for d in (7, 30, 100):
        scen = Scenario.fig2(d, weights=(1.0, 0.0))
        assert weighted_sum_optimum(scen).distribution == (d, 0, 0)


def test_weighted_optimum_is_argmax():
    scen = Scenario.fig2(25)
    best = weighted_sum_optimum(scen)
    feasible = [x for x in compositions(25, 3) if is_feasible(x, scen)]
    top = max(fitness(x, scen) for x in feasible)
    assert fitness(best.distribution, scen) == top
    assert best.distribution == min(x for x in feasible if fitness(x, scen) == top)


@pytest.mark.parametrize("d", [10, 30, 100])
def test_weighted_optimum_lies_on_front(d):
    scen = Scenario.fig2(d)
    best = weighted_sum_optimum(scen)
    front = exact_pareto_front(scen)
    assert best.point.as_tuple() in {fp.point.as_tuple() for fp in front}


def test_weighted_optimum_infeasible():
    scen = Scenario(suppliers=(SupplierSpec(5.0), SupplierSpec(6.0)), demand=10, retailer_coefficient=4.0)
    with pytest.raises(InfeasibleError):
        weighted_sum_optimum(scen)
    assert exact_pareto_front(scen) == []


def test_objective_minima_d30():
    cheapest, safest = objective_minima(Scenario.fig2(30))
    scen = Scenario.fig2(30)
    feasible = [x for x in compositions(30, 3) if is_feasible(x, scen)]
    assert cheapest.distribution == (30, 0, 0)
    assert safest.risk_index == min(objective_point(x, scen).risk_index for x in feasible)


def test_determinism():
    scen = Scenario.fig2(40)
    assert list(enumerate_distributions(scen)) == list(enumerate_distributions(scen))
    assert exact_pareto_front(scen) == exact_pareto_front(scen)
    assert weighted_sum_optimum(scen) == weighted_sum_optimum(scen)


def test_custom_profiles_change_front():
    flat = Scenario(
        suppliers=tuple(SupplierSpec(c, StructuralProfile.constant(0.5, 0.5)) for c in (2, 3, 7)),
        demand=12,
        retailer_coefficient=4,
    )
    # with identical constant profiles every distribution has risk 0.25
    front = exact_pareto_front(flat)
    assert [fp.distribution for fp in front] == [(12, 0, 0)]
    assert np.isclose(front[0].risk_index, 0.25)
