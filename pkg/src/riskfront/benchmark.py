"""Reference workload rows for the three-supplier instance at demand 100.

Each row carries the published structural variables, share probabilities,
total cost and risk index.  Four rows print a risk index that does not follow
from their own alpha, beta and P columns; ``consistent`` marks the seven rows
whose printed risk index does.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Scenario, StructuralProfile, SupplierSpec


@dataclass(frozen=True)
class BenchmarkRow:
    distribution: tuple[int, int, int]
    alpha: tuple[float, float, float]
    beta: tuple[float, float, float]
    probabilities: tuple[float, float, float]
    total_cost: float
    risk_index: float
    consistent: bool

    def scenario(self, base: Scenario | None = None) -> Scenario:
        """Scenario whose supplier profiles are pinned to this row's alpha, beta."""
        base = base or Scenario.fig2()
        suppliers = tuple(
            SupplierSpec(s.unit_cost, StructuralProfile.constant(a, b))
            for s, a, b in zip(base.suppliers, self.alpha, self.beta)
        )
        return Scenario(
            suppliers=suppliers,
            demand=base.demand,
            retailer_coefficient=base.retailer_coefficient,
            period_of_interest=base.period_of_interest,
            mean_demand_rate=base.mean_demand_rate,
            weights=base.weights,
        )


def _row(dist, alpha, beta, probs, cost, risk, consistent=True):
    return BenchmarkRow(tuple(dist), tuple(alpha), tuple(beta), tuple(probs), cost, risk, consistent)


BENCHMARK_DEMAND = 100

BENCHMARK_ROWS: tuple[BenchmarkRow, ...] = (
    _row((0, 25, 75), (0.1, 0.1, 1.0), (0.1, 0.3, 1.0), (0, 0.25, 0.75), 600, 0.7575),
    _row((4, 26, 70), (0.1, 0.1, 1.0), (0.1, 0.3, 0.8), (0.04, 0.26, 0.70), 576, 0.5682),
    _row((8, 27, 65), (0.1, 0.1, 1.0), (0.1, 0.3, 0.8), (0.08, 0.27, 0.65), 552, 0.5361, False),
    _row((12, 28, 60), (0.1, 0.1, 1.0), (0.1, 0.3, 0.8), (0.12, 0.28, 0.60), 528, 0.4896),
    _row((16, 29, 55), (0.1, 0.1, 0.8), (0.2, 0.3, 0.6), (0.16, 0.29, 0.55), 504, 0.2759),
    _row((20, 30, 50), (0.2, 0.2, 0.8), (0.2, 0.3, 0.6), (0.2, 0.3, 0.5), 480, 0.266),
    _row((24, 31, 45), (0.2, 0.2, 0.5), (0.3, 0.3, 0.5), (0.24, 0.31, 0.45), 456, 0.1455),
    _row((28, 32, 40), (0.2, 0.2, 0.5), (0.3, 0.4, 0.5), (0.28, 0.32, 0.4), 432, 0.1526, False),
    _row((32, 33, 35), (0.3, 0.3, 0.4), (0.4, 0.4, 0.4), (0.32, 0.33, 0.35), 408, 0.134),
    _row((50, 25, 25), (0.3, 0.2, 0.2), (0.6, 0.3, 0.3), (0.5, 0.25, 0.25), 350, 0.1560, False),
    _row((70, 20, 10), (0.6, 0.2, 0.1), (0.8, 0.3, 0.1), (0.7, 0.2, 0.1), 270, 0.3341, False),
)

# the row singled out as the weighted-sum optimum in the published table
MARKED_OPTIMUM = (50, 25, 25)
