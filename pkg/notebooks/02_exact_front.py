"""
Exhaustive enumeration and the exact front
==========================================

For three suppliers the number of integer splits of d is C(d + 2, 2), small
enough to score every one of them.  This gives ground truth for the genetic
solvers.
"""

from riskfront import Scenario
from riskfront.oracle import count_feasible, exact_pareto_front, objective_minima, weighted_sum_optimum

###############################################################################
# How the feasible set grows with demand.

for d in (100, 240, 480, 1500):
    report = count_feasible(Scenario.fig2(d))
    print(f"d={d:5d}: {report.feasible_count:7d} feasible of {report.relaxed_count:7d}")

###############################################################################
# The exact front at d=100, plus the two single-objective optima and the
# weighted-sum optimum that sits somewhere on it.

scen = Scenario.fig2(100)
front = exact_pareto_front(scen)
print(f"\n{len(front)} non-dominated splits at d=100")
for fp in front[:: max(1, len(front) // 8)]:
    print(f"  {fp.distribution}  cost={fp.total_cost:g}  risk={fp.risk_index:.4f}")

cheapest, safest = objective_minima(scen)
print("cheapest:", cheapest.distribution, cheapest.point)
print("safest:  ", safest.distribution, safest.point)
best = weighted_sum_optimum(scen)
print("weighted optimum (0.5, 0.5):", best.distribution, best.point)
