"""Supply chain domain model and the two objectives (total cost, risk index).

A distribution is a plain tuple of non-negative integers, one entry per
supplier, giving the units of demand routed to that supplier.  Both objectives
are minimized; :func:`fitness` scalarizes them into a maximized value for the
classical genetic algorithm.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import ConfigurationError, InputError

Distribution = tuple[int, ...]

# (threshold, alpha, beta) step table fitted to the benchmark workload rows
DEFAULT_BREAKPOINTS: tuple[tuple[float, float, float], ...] = (
    (0.00, 0.1, 0.1),
    (0.15, 0.1, 0.2),
    (0.20, 0.2, 0.3),
    (0.30, 0.3, 0.4),
    (0.40, 0.4, 0.4),
    (0.45, 0.5, 0.5),
    (0.50, 0.8, 0.6),
    (0.60, 1.0, 0.8),
    (0.75, 1.0, 1.0),
)


@dataclass(frozen=True)
class StructuralProfile:
    """Step function from workload share to (alpha, beta).

    ``alpha`` is the consequence of the supplier failing and ``beta`` the
    fraction of value it adds to the product.  Each breakpoint
    ``(threshold, alpha, beta)`` applies from its threshold up to the next one.
    """

    breakpoints: tuple[tuple[float, float, float], ...]

    def __post_init__(self) -> None:
        bps = tuple(tuple(float(v) for v in bp) for bp in self.breakpoints)
        if not bps:
            raise ConfigurationError("structural profile needs at least one breakpoint")
        for bp in bps:
            if len(bp) != 3:
                raise ConfigurationError(f"breakpoint {bp!r} is not (threshold, alpha, beta)")
            if not all(0.0 <= v <= 1.0 for v in bp):
                raise ConfigurationError(f"breakpoint {bp!r} has values outside [0, 1]")
        if bps[0][0] != 0.0:
            raise ConfigurationError("first breakpoint threshold must be 0")
        for prev, cur in zip(bps, bps[1:]):
            if cur[0] <= prev[0]:
                raise ConfigurationError("breakpoint thresholds must be strictly increasing")
            if cur[1] < prev[1] or cur[2] < prev[2]:
                raise ConfigurationError("alpha and beta must be non-decreasing across breakpoints")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "_thresholds", [bp[0] for bp in bps])

    @classmethod
    def default(cls) -> StructuralProfile:
        return cls(DEFAULT_BREAKPOINTS)

    @classmethod
    def constant(cls, alpha: float, beta: float) -> StructuralProfile:
        return cls(((0.0, alpha, beta),))

    def lookup(self, share: float) -> tuple[float, float]:
        if not 0.0 <= share <= 1.0:
            raise InputError(f"share {share} outside [0, 1]")
        idx = bisect.bisect_right(self._thresholds, share) - 1
        _, alpha, beta = self.breakpoints[idx]
        return alpha, beta

    def to_list(self) -> list[list[float]]:
        return [list(bp) for bp in self.breakpoints]


DEFAULT_PROFILE = StructuralProfile.default()


@dataclass(frozen=True)
class SupplierSpec:
    unit_cost: float
    profile: StructuralProfile = DEFAULT_PROFILE

    def __post_init__(self) -> None:
        if not self.unit_cost > 0:
            raise ConfigurationError(f"unit cost must be positive, got {self.unit_cost}")
        object.__setattr__(self, "unit_cost", float(self.unit_cost))


_SCENARIO_KEYS = {
    "suppliers",
    "demand",
    "retailer_coefficient",
    "weights",
    "period_of_interest",
    "mean_demand_rate",
}
_SUPPLIER_KEYS = {"unit_cost", "profile"}


@dataclass(frozen=True)
class Scenario:
    """A single-manufacturer, single-retailer supply chain instance.

    ``mean_demand_rate`` may be given as a scalar (shared by every supplier) or
    as one rate per supplier; it is stored as a tuple.
    """

    suppliers: tuple[SupplierSpec, ...]
    demand: int
    retailer_coefficient: float
    period_of_interest: float = 1.0
    mean_demand_rate: tuple[float, ...] | float = 1.0
    weights: tuple[float, float] = (0.5, 0.5)

    def __post_init__(self) -> None:
        suppliers = tuple(self.suppliers)
        if len(suppliers) < 2:
            raise ConfigurationError("a scenario needs at least two suppliers")
        if isinstance(self.demand, bool) or int(self.demand) != self.demand or self.demand < 1:
            raise ConfigurationError(f"demand must be a positive integer, got {self.demand!r}")
        if not self.retailer_coefficient > 0:
            raise ConfigurationError("retailer coefficient must be positive")
        if not self.period_of_interest > 0:
            raise ConfigurationError("period of interest must be positive")
        rate = self.mean_demand_rate
        if np.ndim(rate) == 0:
            rates = (float(rate),) * len(suppliers)
        else:
            rates = tuple(float(r) for r in rate)
        if len(rates) != len(suppliers):
            raise ConfigurationError("mean_demand_rate needs one entry per supplier")
        if not all(r > 0 for r in rates):
            raise ConfigurationError("mean demand rates must be positive")
        weights = tuple(float(w) for w in self.weights)
        if len(weights) != 2 or min(weights) < 0:
            raise ConfigurationError("weights must be two non-negative numbers")
        if sum(weights) <= 0:
            raise ConfigurationError("weights must not both be zero")
        object.__setattr__(self, "suppliers", suppliers)
        object.__setattr__(self, "demand", int(self.demand))
        object.__setattr__(self, "retailer_coefficient", float(self.retailer_coefficient))
        object.__setattr__(self, "period_of_interest", float(self.period_of_interest))
        object.__setattr__(self, "mean_demand_rate", rates)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.suppliers)

    @property
    def unit_costs(self) -> tuple[float, ...]:
        return tuple(s.unit_cost for s in self.suppliers)

    @property
    def max_unit_cost(self) -> float:
        return max(self.unit_costs)

    def with_demand(self, demand: int) -> Scenario:
        return replace(self, demand=demand)

    def with_weights(self, w1: float, w2: float) -> Scenario:
        return replace(self, weights=(w1, w2))

    @classmethod
    def fig2(cls, demand: int = 100, weights: tuple[float, float] = (0.5, 0.5)) -> Scenario:
        """Three suppliers at unit costs 2, 3, 7 and retailer coefficient 4."""
        return cls(
            suppliers=tuple(SupplierSpec(c) for c in (2.0, 3.0, 7.0)),
            demand=demand,
            retailer_coefficient=4.0,
            weights=weights,
        )

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Scenario:
        if not isinstance(data, dict):
            raise ConfigurationError("scenario document must be a JSON object")
        unknown = set(data) - _SCENARIO_KEYS
        if unknown:
            raise ConfigurationError(f"unknown scenario keys: {sorted(unknown)}")
        for key in ("suppliers", "demand", "retailer_coefficient"):
            if key not in data:
                raise ConfigurationError(f"scenario is missing required key {key!r}")
        suppliers = []
        for i, entry in enumerate(data["suppliers"]):
            if not isinstance(entry, dict):
                raise ConfigurationError(f"supplier {i} must be an object")
            extra = set(entry) - _SUPPLIER_KEYS
            if extra:
                raise ConfigurationError(f"unknown keys in supplier {i}: {sorted(extra)}")
            if "unit_cost" not in entry:
                raise ConfigurationError(f"supplier {i} is missing unit_cost")
            profile = entry.get("profile")
            suppliers.append(
                SupplierSpec(
                    unit_cost=entry["unit_cost"],
                    profile=DEFAULT_PROFILE if profile is None else StructuralProfile(tuple(map(tuple, profile))),
                )
            )
        kwargs: dict[str, Any] = {}
        if "weights" in data:
            kwargs["weights"] = tuple(data["weights"])
        if "period_of_interest" in data:
            kwargs["period_of_interest"] = data["period_of_interest"]
        if "mean_demand_rate" in data:
            kwargs["mean_demand_rate"] = data["mean_demand_rate"]
        return cls(
            suppliers=tuple(suppliers),
            demand=data["demand"],
            retailer_coefficient=data["retailer_coefficient"],
            **kwargs,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "suppliers": [
                {"unit_cost": s.unit_cost, "profile": s.profile.to_list()} for s in self.suppliers
            ],
            "demand": self.demand,
            "retailer_coefficient": self.retailer_coefficient,
            "weights": list(self.weights),
            "period_of_interest": self.period_of_interest,
            "mean_demand_rate": list(self.mean_demand_rate),
        }

    @classmethod
    def load(cls, path: str | Path) -> Scenario:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_dict(data)


@dataclass(frozen=True)
class ObjectivePoint:
    total_cost: float
    risk_index: float

    def as_tuple(self) -> tuple[float, float]:
        return (self.total_cost, self.risk_index)


def _check_dims(dist: Sequence[int], scen: Scenario) -> None:
    if len(dist) != scen.n:
        raise InputError(f"distribution has {len(dist)} entries, scenario has {scen.n} suppliers")


def validate_distribution(dist: Iterable[int], scen: Scenario) -> Distribution:
    """Return ``dist`` as a tuple after checking it against the scenario."""
    dist = tuple(int(x) for x in dist)
    _check_dims(dist, scen)
    if any(x < 0 or x > scen.demand for x in dist):
        raise InputError(f"distribution {dist} has entries outside [0, {scen.demand}]")
    if sum(dist) != scen.demand:
        raise InputError(f"distribution {dist} sums to {sum(dist)}, demand is {scen.demand}")
    return dist


def total_cost(dist: Sequence[int], scen: Scenario) -> float:
    """Period-scaled linear supply cost ``xi * sum(mu_i * c_i * x_i)``."""
    _check_dims(dist, scen)
    return scen.period_of_interest * sum(
        mu * s.unit_cost * x for mu, s, x in zip(scen.mean_demand_rate, scen.suppliers, dist)
    )


def is_feasible(dist: Sequence[int], scen: Scenario, relax: bool = False) -> bool:
    """Demand is met exactly and, unless ``relax``, the cost ceiling holds.

    The ceiling is ``sum(c_i * x_i) <= retailer_coefficient * demand``.
    """
    _check_dims(dist, scen)
    d = scen.demand
    if sum(dist) != d or any(x < 0 or x > d for x in dist):
        return False
    if relax:
        return True
    raw = sum(s.unit_cost * x for s, x in zip(scen.suppliers, dist))
    return raw <= scen.retailer_coefficient * d + 1e-9


def has_feasible(scen: Scenario, relax: bool = False) -> bool:
    """Whether any distribution passes :func:`is_feasible`.

    The cost ceiling is linear, so placing all demand on the cheapest supplier
    attains the smallest possible raw cost.
    """
    corner = [0] * scen.n
    corner[min(range(scen.n), key=lambda i: scen.suppliers[i].unit_cost)] = scen.demand
    return is_feasible(corner, scen, relax)


def marginal_failure_probabilities(dist: Sequence[int], scen: Scenario) -> tuple[float, ...]:
    _check_dims(dist, scen)
    return tuple(x / scen.demand for x in dist)


def structural_values(profile: StructuralProfile, share: float) -> tuple[float, float]:
    return profile.lookup(share)


def risk_index(dist: Sequence[int], scen: Scenario) -> float:
    """Sum over suppliers of alpha * beta * P, with P the workload share.

    Accumulated as ``sum(alpha * beta * x) / d`` so a single rounding step
    separates equal-risk distributions.
    """
    _check_dims(dist, scen)
    total = 0.0
    for s, x in zip(scen.suppliers, dist):
        alpha, beta = s.profile.lookup(x / scen.demand)
        total += alpha * beta * x
    return total / scen.demand


def fitness(dist: Sequence[int], scen: Scenario) -> float:
    """Weighted-sum fitness, larger is better.

    Cost is normalized by ``c_max * d`` and risk by the supplier count before
    weighting, so both terms are commensurate.
    """
    w1, w2 = scen.weights
    if w1 + w2 <= 0:
        raise ConfigurationError("weights must not both be zero")
    cost = total_cost(dist, scen) / (scen.max_unit_cost * scen.demand)
    risk = risk_index(dist, scen) / scen.n
    return 1.0 - (w1 * cost + w2 * risk)


def objective_point(dist: Sequence[int], scen: Scenario) -> ObjectivePoint:
    return ObjectivePoint(total_cost(dist, scen), risk_index(dist, scen))


@dataclass(frozen=True)
class ObjectiveTables:
    """Per-supplier lookup tables indexed by units assigned (0..d).

    Summing one entry per supplier reproduces :func:`total_cost`,
    :func:`risk_index` and the raw constraint cost bit-for-bit, which lets the
    solvers score whole populations with array indexing.  The risk table holds
    ``alpha * beta * x``; division by demand happens after the sum.
    """

    scenario: Scenario
    cost: np.ndarray = field(repr=False)
    risk: np.ndarray = field(repr=False)
    raw_cost: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, scen: Scenario) -> ObjectiveTables:
        d = scen.demand
        units = np.arange(d + 1)
        cost = np.empty((scen.n, d + 1))
        risk = np.empty((scen.n, d + 1))
        raw = np.empty((scen.n, d + 1))
        for i, (s, mu) in enumerate(zip(scen.suppliers, scen.mean_demand_rate)):
            cost[i] = (mu * s.unit_cost) * units
            raw[i] = s.unit_cost * units
            for x in range(d + 1):
                alpha, beta = s.profile.lookup(x / d)
                risk[i, x] = alpha * beta * x
        for arr in (cost, risk, raw):
            arr.setflags(write=False)
        return cls(scen, cost, risk, raw)

    def _gather(self, table: np.ndarray, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.intp)
        out = table[0, X[:, 0]].copy()
        for i in range(1, X.shape[1]):
            out += table[i, X[:, i]]
        return out

    def costs(self, X: np.ndarray) -> np.ndarray:
        return self.scenario.period_of_interest * self._gather(self.cost, X)

    def risks(self, X: np.ndarray) -> np.ndarray:
        return self._gather(self.risk, X) / self.scenario.demand

    def feasible(self, X: np.ndarray, relax: bool = False) -> np.ndarray:
        X = np.asarray(X)
        ok = (X.sum(axis=1) == self.scenario.demand) & (X >= 0).all(axis=1)
        if not relax:
            limit = self.scenario.retailer_coefficient * self.scenario.demand + 1e-9
            ok &= self._gather(self.raw_cost, X) <= limit
        return ok

    def fitness(self, X: np.ndarray) -> np.ndarray:
        scen = self.scenario
        w1, w2 = scen.weights
        cost = self.costs(X) / (scen.max_unit_cost * scen.demand)
        risk = self.risks(X) / scen.n
        return 1.0 - (w1 * cost + w2 * risk)
