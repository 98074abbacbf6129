"""
Two objectives, several demands
===============================

One GA minimizes cost, another minimizes risk.  Their merged final populations
give the triple (min cost, cost at min risk, min risk) and a non-dominated
front.  Repeating this over a grid of demands gives the knots for an envelope.
"""

import numpy as np

from riskfront import GaConfig, Scenario, exact_pareto_front, pareto_distance, pareto_optimize, sweep

cfg = GaConfig(seed=1)

###############################################################################
# At d=30 the exact front is cheap to compute, so we can measure how far the
# GA front is from the truth in normalized objective space.

scen = Scenario.fig2(30)
res = pareto_optimize(scen, cfg)
print("triple at d=30:", res.triple)
print("GA front size", len(res.front), "exact front size", len(exact_pareto_front(scen)))
print("pareto distance to exact:", round(pareto_distance(res.front, exact_pareto_front(scen), scen), 4))

###############################################################################
# The front settles: the distance between successive generations' fronts
# drops to zero once both populations stop changing.

res = pareto_optimize(Scenario.fig2(100), cfg, indicators=True)
series = np.array(res.indicators)
print("indicator first/last10 mean:", series[0], series[-10:].mean())

###############################################################################
# The sweep.

sw = sweep(Scenario.fig2(100), [100, 240, 480], cfg)
for d, r in sw.entries:
    print(f"d={d}: min_fc={r.min_cost:g} max_fc={r.max_cost:g} min_ri={r.min_risk:.4f} evaluations={r.evaluations}")
