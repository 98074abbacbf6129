from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riskfront.core import ObjectivePoint, Scenario, objective_point, risk_index, total_cost
from riskfront.errors import ConfigurationError, InputError
from riskfront.ga import GaConfig
from riskfront.oracle import FrontPoint, dominates, exact_pareto_front, objective_minima
from riskfront.pareto import (
    directed_distance,
    front_filter,
    normalized,
    pareto_distance,
    pareto_optimize,
    sweep,
    worker_count,
)

QUICK = GaConfig(initial_population=40, max_generations=20)


def fp(cost, risk, dist=(0,)):
    return FrontPoint(dist, ObjectivePoint(cost, risk))


def test_front_filter_examples():
    single = [fp(350, 0.12)]
    assert front_filter(single) == single
    assert front_filter([fp(600, 0.7575, (1,)), fp(350, 0.12, (2,))]) == [fp(350, 0.12, (2,))]
    chain = [fp(1, 3, (1,)), fp(2, 2, (2,)), fp(3, 1, (3,))]
    assert front_filter(chain[::-1]) == chain
    assert front_filter([]) == []


def test_front_filter_collapses_duplicates():
    out = front_filter([fp(5, 1, (3, 2)), fp(5, 1, (1, 4)), fp(5, 1, (2, 3))])
    assert [p.distribution for p in out] == [(1, 4)]


point_lists = st.lists(
    st.tuples(st.integers(0, 20), st.integers(0, 20), st.integers(0, 1000)), min_size=1, max_size=40
)


@given(point_lists)
def test_front_filter_matches_quadratic_scan(raw):
    pts = [fp(c, r / 10, (k,)) for c, r, k in raw]
    out = front_filter(pts)
    expected = {}
    for p in pts:
        if not any(dominates(q.point, p.point) for q in pts):
            key = p.point.as_tuple()
            expected[key] = min(expected.get(key, p.distribution), p.distribution)
    assert [(p.point.as_tuple(), p.distribution) for p in out] == sorted(expected.items())
    for a in out:
        assert not any(dominates(b.point, a.point) for b in out)


def test_distance_examples():
    assert pareto_distance([(0, 0)], [(3, 4)]) == 5.0
    A = [(0.1, 0.5), (0.2, 0.3), (0.4, 0.1)]
    assert pareto_distance(A, A) == 0.0
    B = [(0.15, 0.45), (0.5, 0.05)]
    assert pareto_distance(A, B) == pareto_distance(B, A) > 0
    with pytest.raises(InputError):
        pareto_distance([], A)
    with pytest.raises(InputError):
        pareto_distance(A, [])


@given(
    st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=1, max_size=10),
    st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=1, max_size=10),
)
def test_distance_properties(a, b):
    d = pareto_distance(a, b)
    assert d >= 0 and d == pareto_distance(b, a)
    if set(a) == set(b):
        assert d == 0


def test_normalization_uses_scenario_scales():
    scen = Scenario.fig2(100)
    pts = [FrontPoint((100, 0, 0), objective_point((100, 0, 0), scen))]
    arr = normalized(pts, scen)
    assert arr[0, 0] == pytest.approx(200 / 700)
    assert arr[0, 1] == pytest.approx(risk_index((100, 0, 0), scen) / 3)


def test_triple_collapses_when_objectives_agree(zero_alpha_scenario):
    res = pareto_optimize(zero_alpha_scenario, QUICK)
    assert res.argmin_cost == res.argmin_risk == (20, 0, 0)
    assert res.min_cost == res.max_cost
    assert [p.distribution for p in res.front] == [(20, 0, 0)]


def test_result_invariants():
    scen = Scenario.fig2(60)
    res = pareto_optimize(scen, replace(QUICK, seed=4))
    assert res.min_cost <= res.max_cost
    assert res.min_cost == total_cost(res.argmin_cost, scen)
    assert res.max_cost == total_cost(res.argmin_risk, scen)
    assert res.min_risk == risk_index(res.argmin_risk, scen)
    merged = set(res.cost_run.final_population) | set(res.risk_run.final_population)
    for x in merged:
        assert res.min_cost <= total_cost(x, scen)
        assert res.min_risk <= risk_index(x, scen)
    for a in res.front:
        assert not any(dominates(b.point, a.point) for b in res.front)
    assert set(res.front_sources) <= {"cost_run", "risk_run"}
    assert res.evaluations == res.cost_run.evaluations + res.risk_run.evaluations


def test_minima_match_oracle_d20():
    scen = Scenario.fig2(20)
    cheapest, safest = objective_minima(scen)
    hits = 0
    for seed in range(20):
        res = pareto_optimize(scen, GaConfig(seed=seed))
        hits += abs(res.min_cost - cheapest.total_cost) < 1e-6 and abs(res.min_risk - safest.risk_index) < 1e-6
    assert hits >= 18


@pytest.mark.parametrize("d", [10, 30])
def test_front_close_to_oracle(d):
    scen = Scenario.fig2(d)
    exact = normalized(exact_pareto_front(scen), scen)
    close = 0
    for seed in range(10):
        res = pareto_optimize(scen, GaConfig(seed=seed))
        close += directed_distance(normalized(res.front, scen), exact).max() <= 0.05
    assert close >= 9


def test_single_demand_sweep_is_pareto_optimize():
    scen = Scenario.fig2(80)
    cfg = replace(QUICK, seed=3)
    sw = sweep(scen, [80], cfg)
    direct = pareto_optimize(scen, cfg)
    assert sw.demands == [80]
    got = sw.entries[0][1]
    assert (got.triple, got.argmin_cost, got.argmin_risk, got.front) == (
        direct.triple, direct.argmin_cost, direct.argmin_risk, direct.front
    )


def test_sweep_validation():
    scen = Scenario.fig2(10)
    with pytest.raises(InputError):
        sweep(scen, [], QUICK)
    with pytest.raises(InputError):
        sweep(scen, [20, 10], QUICK)
    with pytest.raises(InputError):
        sweep(scen, [10, 10], QUICK)


def test_sweep_evaluations_grow_with_demand():
    sw = sweep(Scenario.fig2(100), [100, 240, 480], replace(QUICK, seed=1))
    evals = [r.evaluations for _, r in sw.entries]
    assert evals == sorted(evals)
    assert all(lo <= hi for lo, hi in zip(sw.column("min_cost"), sw.column("max_cost")))


def test_indicator_series_settles():
    scen = Scenario.fig2(100)
    firsts, tails = [], []
    for seed in range(20):
        res = pareto_optimize(scen, GaConfig(seed=seed), indicators=True)
        series = res.indicators
        assert len(series) == len(res.generation_fronts) - 1
        assert all(v >= 0 for v in series)
        firsts.append(series[0])
        tails.append(np.mean(series[-10:]))
    assert np.mean(tails) < np.mean(firsts)


def test_worker_count_independence(monkeypatch):
    scen = Scenario.fig2(50)
    cfg = replace(QUICK, seed=8)
    monkeypatch.setenv("RISKFRONT_THREADS", "1")
    assert worker_count() == 1
    one = sweep(scen, [30, 50], cfg, indicators=True)
    monkeypatch.setenv("RISKFRONT_THREADS", "4")
    assert worker_count() == 4
    many = sweep(scen, [30, 50], cfg, indicators=True)
    for (_, a), (_, b) in zip(one.entries, many.entries):
        assert (a.triple, a.front, a.indicators) == (b.triple, b.front, b.indicators)
    assert pareto_optimize(scen, cfg, workers=2).front == pareto_optimize(scen, cfg, workers=1).front


def test_bad_thread_env(monkeypatch):
    monkeypatch.setenv("RISKFRONT_THREADS", "zero")
    with pytest.raises(ConfigurationError):
        worker_count()
