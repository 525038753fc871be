"""
Loading a graph and assigning costs
===================================

Edge lists are plain text, one ``u v`` pair per line.  Under weighted
cascade every edge into ``v`` gets probability ``1 / d_in(v)``.
"""

import numpy as np

from seedselect.graph import assign_costs, load_edge_list

text = b"""# tiny voting network
10 20
30 20
20 40
10 40
"""
g = load_edge_list(text, weighting="wc")
print(g)

# labels were remapped to dense ids in order of first appearance
print("labels:", g.labels.tolist())
for u, v, p in zip(g.src, g.dst, g.p):
    print(f"  {g.labels[u]} -> {g.labels[v]}  p={p:.2f}")

# incoming weights sum to one, so the graph also supports LT
print("LT compatible:", g.lt_compatible)

# costs: all ones, or Uniform(0, 1] drawn from a seed
uniform = assign_costs(g, "uniform")
random = assign_costs(g, "random", seed=7)
print("uniform:", uniform.costs)
print("random: ", np.round(random.costs, 3), "C({0, 1}) =", round(random([0, 1]), 3))
