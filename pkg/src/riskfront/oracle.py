"""Exhaustive solver over every integer workload distribution.

Serves as the exact (MILP-style) baseline and as ground truth for the genetic
solvers.  Compositions are produced in lexicographic order on
``(x_1, ..., x_n)`` so streams, fronts and optima are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

import numpy as np

from .core import Distribution, ObjectivePoint, ObjectiveTables, Scenario
from .errors import CapacityError, InfeasibleError

MAX_COMPOSITIONS = 10**8
_CHUNK = 1 << 18


@dataclass(frozen=True)
class FrontPoint:
    distribution: Distribution
    point: ObjectivePoint

    @property
    def total_cost(self) -> float:
        return self.point.total_cost

    @property
    def risk_index(self) -> float:
        return self.point.risk_index


@dataclass(frozen=True)
class EnumerationReport:
    feasible_count: int
    relaxed_count: int
    demand: int


def composition_count(d: int, n: int) -> int:
    """Number of ways to write ``d`` as an ordered sum of ``n`` non-negative integers."""
    return comb(d + n - 1, n - 1)


def _guard(scen: Scenario) -> int:
    total = composition_count(scen.demand, scen.n)
    if total > MAX_COMPOSITIONS:
        raise CapacityError(
            f"{total} compositions of demand {scen.demand} into {scen.n} parts exceeds the "
            f"enumeration limit of {MAX_COMPOSITIONS}; use the genetic solver instead"
        )
    return total


def compositions(d: int, n: int) -> Iterator[Distribution]:
    """Yield all compositions of ``d`` into ``n`` parts, lexicographically."""
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in compositions(d - first, n - 1):
            yield (first,) + rest


def composition_blocks(d: int, n: int, chunk: int = _CHUNK) -> Iterator[np.ndarray]:
    """Lexicographic compositions as integer arrays of at most ``chunk`` rows.

    Rows are grouped by the leading ``n - 2`` parts; within a group the last two
    parts sweep ``(0, r), (1, r - 1), ...`` so the global order matches
    :func:`compositions`.
    """
    if n == 1:
        yield np.array([[d]], dtype=np.int64)
        return
    pending: list[np.ndarray] = []
    size = 0
    for head in compositions(d, n - 1) if n > 2 else [(d,)]:
        # head holds the first n-2 parts plus the remainder r shared by the last two
        prefix, r = head[:-1], head[-1]
        block = np.empty((r + 1, n), dtype=np.int64)
        block[:, : n - 2] = prefix
        block[:, n - 2] = np.arange(r + 1)
        block[:, n - 1] = r - block[:, n - 2]
        pending.append(block)
        size += r + 1
        if size >= chunk:
            yield np.concatenate(pending)
            pending, size = [], 0
    if pending:
        yield np.concatenate(pending)


class Enumeration:
    """Iterable over feasible distributions; ``report`` is set once exhausted."""

    def __init__(self, scen: Scenario, relax: bool = False):
        self.scenario = scen
        self.relax = relax
        self.relaxed_count = _guard(scen)
        self.report: EnumerationReport | None = None

    def blocks(self) -> Iterator[np.ndarray]:
        tables = ObjectiveTables.build(self.scenario)
        feasible = 0
        for X in composition_blocks(self.scenario.demand, self.scenario.n):
            keep = X[tables.feasible(X, self.relax)]
            feasible += len(keep)
            yield keep
        self.report = EnumerationReport(feasible, self.relaxed_count, self.scenario.demand)

    def __iter__(self) -> Iterator[Distribution]:
        for X in self.blocks():
            for row in X.tolist():
                yield tuple(row)


def enumerate_distributions(scen: Scenario, relax: bool = False) -> Enumeration:
    """Stream every composition of the demand that passes ``is_feasible``.

    Raises :class:`CapacityError` immediately when the relaxed composition
    count exceeds :data:`MAX_COMPOSITIONS`.
    """
    return Enumeration(scen, relax)


def feasible_array(scen: Scenario, relax: bool = False) -> np.ndarray:
    blocks = list(Enumeration(scen, relax).blocks())
    return np.concatenate(blocks) if blocks else np.empty((0, scen.n), dtype=np.int64)


def count_feasible(scen: Scenario, relax: bool = False) -> EnumerationReport:
    enum = Enumeration(scen, relax)
    for _ in enum.blocks():
        pass
    assert enum.report is not None
    return enum.report


def dominates(a: ObjectivePoint, b: ObjectivePoint) -> bool:
    """True if ``a`` is no worse than ``b`` in both objectives and better in one."""
    return (
        a.total_cost <= b.total_cost
        and a.risk_index <= b.risk_index
        and (a.total_cost < b.total_cost or a.risk_index < b.risk_index)
    )


def nondominated_indices(costs: np.ndarray, risks: np.ndarray, keys: np.ndarray | None = None) -> np.ndarray:
    """Indices of the non-dominated points, one per distinct objective pair.

    Sorts by (cost, risk, key) and keeps each point whose risk is strictly
    below every risk seen at a strictly lower cost; among identical objective
    pairs the first in sort order (smallest key) is kept.  ``keys`` defaults
    to the input position.
    """
    costs = np.asarray(costs, dtype=float)
    risks = np.asarray(risks, dtype=float)
    if keys is None:
        keys = np.arange(len(costs))
    order = np.lexsort((keys, risks, costs))
    kept: list[int] = []
    best_risk = np.inf
    for idx in order.tolist():
        if risks[idx] < best_risk:
            kept.append(idx)
            best_risk = risks[idx]
    return np.array(kept, dtype=np.intp)


def exact_pareto_front(scen: Scenario, relax: bool = False) -> list[FrontPoint]:
    """All enumerated points not dominated by any other, sorted by cost."""
    X = feasible_array(scen, relax)
    if len(X) == 0:
        return []
    tables = ObjectiveTables.build(scen)
    costs, risks = tables.costs(X), tables.risks(X)
    # enumeration order is lexicographic, so row index is the lexicographic key
    idx = nondominated_indices(costs, risks)
    return [
        FrontPoint(tuple(X[i].tolist()), ObjectivePoint(float(costs[i]), float(risks[i])))
        for i in idx
    ]


def weighted_sum_optimum(scen: Scenario, relax: bool = False) -> FrontPoint:
    """The enumerated distribution of maximum fitness (lexicographic tie-break)."""
    X = feasible_array(scen, relax)
    if len(X) == 0:
        raise InfeasibleError(f"no feasible distribution for demand {scen.demand}")
    tables = ObjectiveTables.build(scen)
    fit = tables.fitness(X)
    # argmax returns the first maximum, i.e. the lexicographically smallest
    i = int(np.argmax(fit))
    return FrontPoint(
        tuple(X[i].tolist()),
        ObjectivePoint(float(tables.costs(X[i : i + 1])[0]), float(tables.risks(X[i : i + 1])[0])),
    )


def objective_minima(scen: Scenario, relax: bool = False) -> tuple[FrontPoint, FrontPoint]:
    """Exact per-objective minimizers ``(cheapest, least risky)``.

    Ties in the minimized objective are broken by the other objective, then
    lexicographically.
    """
    X = feasible_array(scen, relax)
    if len(X) == 0:
        raise InfeasibleError(f"no feasible distribution for demand {scen.demand}")
    tables = ObjectiveTables.build(scen)
    costs, risks = tables.costs(X), tables.risks(X)
    keys = np.arange(len(X))
    i_cost = int(np.lexsort((keys, risks, costs))[0])
    i_risk = int(np.lexsort((keys, costs, risks))[0])
    return tuple(
        FrontPoint(tuple(X[i].tolist()), ObjectivePoint(float(costs[i]), float(risks[i])))
        for i in (i_cost, i_risk)
    )
