"""
A cost envelope over a demand trace
===================================

Interpolating the sweep's (min cost, max cost) knots along a demand time
series gives a band over time.  A revenue trace is then scored by how many of
its points fall inside that band.
"""

from riskfront import GaConfig, Scenario, sweep
from riskfront.envelope import build_envelope, containment_report, load_series
from riskfront.envelope import sample_trace_path

trace = sample_trace_path()
demand = load_series(trace, ("t", "demand"))
revenue = load_series(trace, ("t", "revenue"))
print(f"{len(demand)} points, demand range {demand.values.min():g}..{demand.values.max():g}")

###############################################################################
# The sweep grid must cover the trace; anything outside raises rather than
# extrapolating.

sw = sweep(Scenario.fig2(100), [100, 240, 480], GaConfig(seed=0))
env = build_envelope(demand, sw)
for t in env.t[::10]:
    lo, hi = env.bounds_at(t)
    print(f"t={t:5g}  [{float(lo):8.1f}, {float(hi):8.1f}]")

###############################################################################
# Containment of the revenue trace, and how it grows as the band widens.

print(containment_report(revenue, env))
for margin in (25, 50, 100):
    print(f"widened by {margin}:", containment_report(revenue, env.widened(margin))["ratio"])
