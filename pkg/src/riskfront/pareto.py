"""Two-objective driver: one genetic run per objective, merged into a front.

:func:`pareto_optimize` returns the summary triple
``(min cost, cost at the least-risk solution, min risk)`` together with the
non-dominated subset of both final populations.  :func:`sweep` repeats it over a
demand grid.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .core import Distribution, Scenario, objective_point
from .errors import ConfigurationError, InputError
from .ga import GaConfig, GaResult, run_ga
from .oracle import FrontPoint, nondominated_indices

THREADS_ENV = "RISKFRONT_THREADS"
SOURCES = ("cost_run", "risk_run")


def worker_count(requested: int | None = None) -> int:
    """Worker cap from ``requested`` or the ``RISKFRONT_THREADS`` variable (default 1)."""
    if requested is None:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            requested = int(raw)
        except ValueError:
            raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, requested)


def _map(fn, items, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


@dataclass
class ParetoResult:
    demand: int
    min_cost: float
    max_cost: float
    min_risk: float
    argmin_cost: Distribution
    argmin_risk: Distribution
    front: list[FrontPoint]
    front_sources: list[str]
    cost_run: GaResult = field(repr=False)
    risk_run: GaResult = field(repr=False)
    generation_fronts: list[list[FrontPoint]] = field(default_factory=list, repr=False)
    indicators: list[float] = field(default_factory=list)

    @property
    def triple(self) -> tuple[float, float, float]:
        return (self.min_cost, self.max_cost, self.min_risk)

    @property
    def evaluations(self) -> int:
        return self.cost_run.evaluations + self.risk_run.evaluations


@dataclass
class SweepResult:
    entries: list[tuple[int, ParetoResult]]

    @property
    def demands(self) -> list[int]:
        return [d for d, _ in self.entries]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for _, r in self.entries], dtype=float)


def front_filter(points: Sequence[FrontPoint]) -> list[FrontPoint]:
    """Maximal non-dominated subset sorted by cost; duplicate objective pairs collapse.

    Of several distributions sharing one objective pair, the lexicographically
    smallest is kept.
    """
    points = list(points)
    if not points:
        return []
    costs = np.array([p.total_cost for p in points])
    risks = np.array([p.risk_index for p in points])
    rank = {d: k for k, d in enumerate(sorted({p.distribution for p in points}))}
    keys = np.array([rank[p.distribution] for p in points])
    return [points[i] for i in nondominated_indices(costs, risks, keys)]


def normalized(points: Sequence[FrontPoint] | np.ndarray, scen: Scenario | None = None) -> np.ndarray:
    """Objective coordinates as a ``(k, 2)`` array.

    With a scenario, cost is divided by ``c_max * d`` and risk by the supplier
    count; without one, ``points`` must already be coordinates.
    """
    if len(points) and isinstance(points[0], FrontPoint):
        arr = np.array([[p.total_cost, p.risk_index] for p in points], dtype=float)
        if scen is None:
            return arr
        return arr / np.array([scen.max_unit_cost * scen.demand, scen.n])
    arr = np.asarray(points, dtype=float).reshape(-1, 2)
    if scen is not None:
        arr = arr / np.array([scen.max_unit_cost * scen.demand, scen.n])
    return arr


def directed_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """For each row of ``a``, the Euclidean distance to its nearest row of ``b``."""
    diff = a[:, None, :] - b[None, :, :]
    return np.sqrt((diff**2).sum(axis=2)).min(axis=1)


def pareto_distance(front_a, front_b, scen: Scenario | None = None) -> float:
    """Symmetrized mean nearest-neighbour distance between two fronts.

    Averages, over each front, the distance from every point to the closest
    point of the other front, then averages the two directions.  Pass the
    scenario to measure FrontPoints in normalized objective space.
    """
    a, b = normalized(front_a, scen), normalized(front_b, scen)
    if len(a) == 0 or len(b) == 0:
        raise InputError("pareto_distance needs two non-empty fronts")
    return 0.5 * (float(directed_distance(a, b).mean()) + float(directed_distance(b, a).mean()))


def _front_of(populations: Sequence[Sequence[Distribution]], scen: Scenario) -> list[FrontPoint]:
    seen: dict[Distribution, FrontPoint] = {}
    for pop in populations:
        for dist in pop:
            if dist not in seen:
                seen[dist] = FrontPoint(dist, objective_point(dist, scen))
    return front_filter(list(seen.values()))


def pareto_optimize(
    scen: Scenario,
    cfg: GaConfig = GaConfig(),
    indicators: bool = False,
    workers: int | None = None,
) -> ParetoResult:
    """Run cost-only and risk-only GAs and merge their final populations.

    ``min_cost`` and ``min_risk`` are taken over the union of both final
    populations (each run's own best is in that union), and ``max_cost`` is the
    cost of the least-risk distribution, i.e. what minimizing risk costs.
    Ties on risk go to the cheaper distribution, then lexicographically.
    """
    if indicators and not cfg.record_populations:
        cfg = replace(cfg, record_populations=True)
    cost_run, risk_run = _map(
        lambda obj: run_ga(scen, cfg, obj), ["cost", "risk"], worker_count(workers)
    )

    sources: dict[Distribution, str] = {}
    for run, tag in ((cost_run, "cost_run"), (risk_run, "risk_run")):
        for dist in run.final_population:
            sources.setdefault(dist, tag)
    merged = [FrontPoint(d, objective_point(d, scen)) for d in sources]

    cheapest = min(merged, key=lambda fp: (fp.total_cost, fp.risk_index, fp.distribution))
    safest = min(merged, key=lambda fp: (fp.risk_index, fp.total_cost, fp.distribution))
    front = front_filter(merged)

    result = ParetoResult(
        demand=scen.demand,
        min_cost=cheapest.total_cost,
        max_cost=safest.total_cost,
        min_risk=safest.risk_index,
        argmin_cost=cheapest.distribution,
        argmin_risk=safest.distribution,
        front=front,
        front_sources=[sources[fp.distribution] for fp in front],
        cost_run=cost_run,
        risk_run=risk_run,
    )
    if indicators:
        gens = max(len(cost_run.populations), len(risk_run.populations))
        fronts = []
        for g in range(gens):
            pops = [
                run.populations[min(g, len(run.populations) - 1)] for run in (cost_run, risk_run)
            ]
            fronts.append(_front_of(pops, scen))
        result.generation_fronts = fronts
        result.indicators = [
            pareto_distance(prev, cur, scen) for prev, cur in zip(fronts, fronts[1:])
        ]
    return result


def sweep(
    template: Scenario,
    demands: Sequence[int],
    cfg: GaConfig = GaConfig(),
    indicators: bool = False,
    workers: int | None = None,
) -> SweepResult:
    """:func:`pareto_optimize` at each demand, with the template re-instantiated."""
    demands = [int(d) for d in demands]
    if not demands:
        raise InputError("sweep needs at least one demand")
    if any(b <= a for a, b in zip(demands, demands[1:])):
        raise InputError(f"sweep demands must be strictly increasing, got {demands}")
    # GA runs inside each entry stay sequential when entries themselves are parallel
    results = _map(
        lambda d: pareto_optimize(template.with_demand(d), cfg, indicators, workers=1),
        demands,
        worker_count(workers),
    )
    return SweepResult(list(zip(demands, results)))

