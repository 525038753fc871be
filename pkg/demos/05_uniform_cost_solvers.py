"""
Uniform costs: AAUC and ATEUC
=============================

With every node costing one, the goal is the fewest seeds with spread at
least ``eta``.  ATEUC starts with a loose slack ``alpha`` and shrinks it
until the two covers it compares agree.
"""

from seedselect.graph import assign_costs, heavy_tailed_digraph
from seedselect.mcss import RunConfig, aauc, ateuc
from seedselect.propagation import TriggeringModel, simulate_spread

g = heavy_tailed_digraph(1000, 8000, seed=4)
model = TriggeringModel(g)
costs = assign_costs(g, "uniform")
cfg = RunConfig(eta=40, tau=0.05, seed=0)

for solver in (aauc, ateuc):
    sol = solver(model, costs, cfg)
    mean, se = simulate_spread(model, sol.seeds, 10_000)
    print(f"{sol.algorithm}: {len(sol.seeds)} seeds, {sol.rr_sets_generated} RR-sets, spread {mean:.1f} +/- {se:.1f}")

for step in ateuc(model, costs, cfg).trace:
    print(f"  alpha={step['alpha']:.4f} pool={step['rr_sets']} |S1|={step['s1']} |S2|={step['s2']}")

# both solvers need uniform costs
try:
    aauc(model, assign_costs(g, "random", 1), cfg)
except ValueError as e:
    print("rejected:", e)
