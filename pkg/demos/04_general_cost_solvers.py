"""
General costs: BCGC, TEGC and the CELF baseline
===============================================

BCGC draws its full RR-set budget up front.  TEGC grows the pool in rounds
and stops as soon as a fresh-sample test confirms the current cover.  Both
promise spread at least ``(1 - alpha) eta``.
"""

from seedselect.graph import assign_costs, heavy_tailed_digraph
from seedselect.mcss import RunConfig, bcgc, celf, tegc
from seedselect.propagation import TriggeringModel, simulate_spread

g = heavy_tailed_digraph(1000, 8000, seed=4)
model = TriggeringModel(g)
costs = assign_costs(g, "random", seed=1)
cfg = RunConfig(eta=40, seed=0)

for solver in (bcgc, tegc):
    sol = solver(model, costs, cfg)
    mean, se = simulate_spread(model, sol.seeds, 10_000)
    print(f"{sol.algorithm}: {len(sol.seeds)} seeds, cost {sol.cost:.3f}, "
          f"{sol.rr_sets_generated} of {sol.budget} RR-sets, spread {mean:.1f} +/- {se:.1f}")

# the trace shows TEGC's rounds: pool size, theta, and the test outcome
for step in tegc(model, costs, cfg).trace:
    print("  ", step)

sol = celf(model, costs, (1 - cfg.alpha) * cfg.eta, sims=1000)
print(f"celf: {len(sol.seeds)} seeds, cost {sol.cost:.3f}, {sol.iterations} spread evaluations")
