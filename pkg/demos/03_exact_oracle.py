"""
Exact answers on tiny graphs
============================

Enumerating every live-edge world gives exact spreads, and searching every
subset gives the exact min-cost seed set.  The test suite uses both as
ground truth.
"""

from seedselect.graph import assign_costs, from_edges
from seedselect.oracle import exact_optimum, exact_spread
from seedselect.propagation import TriggeringModel

# a -> b -> c with p = 0.5
path = TriggeringModel(from_edges(3, [(0, 1, 0.5), (1, 2, 0.5)]))
print("f({a}) =", exact_spread(path, [0]))  # 1 + 0.5 + 0.25

nodes, cost = exact_optimum(path, assign_costs(path.graph), eta=2)
print("cheapest set reaching 2:", sorted(nodes), "cost", cost)

star = from_edges(4, [(0, 1), (0, 2), (0, 3)])
costs = assign_costs(star, "random", seed=1)
nodes, cost = exact_optimum(TriggeringModel(star), costs, eta=3)
print("star, random costs:", sorted(nodes), f"cost {cost:.3f}")
