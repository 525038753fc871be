"""
Estimating spread with RR-sets
==============================

An RR-set holds the nodes that would activate a random root, so the share
of RR-sets a seed set touches, times ``n``, estimates its spread.  We check
that against forward Monte-Carlo simulation.
"""

import numpy as np

from seedselect.graph import heavy_tailed_digraph
from seedselect.propagation import RrCollection, TriggeringModel, coverage_estimate, simulate_spread

g = heavy_tailed_digraph(2000, 20_000, seed=3)
model = TriggeringModel(g, "ic")
seeds = np.argsort(-g.out_degree)[:5].tolist()  # five biggest broadcasters

coll = RrCollection(model, seed=1)
for size in (1_000, 10_000, 100_000, 1_000_000):
    coll.extend(size)
    p = coll.coverage_count(seeds) / size
    se = g.n * np.sqrt(p * (1 - p) / size)
    print(f"{size:>9} RR-sets: estimate {coverage_estimate(coll, seeds):7.2f} +/- {se:.2f}")

mean, stderr = simulate_spread(model, seeds, 20_000, seed=1)
print(f"forward simulation: {mean:.2f} +/- {stderr:.2f}")

# growing a collection in steps gives the same sets as growing it at once
a = RrCollection(model, seed=1).extend(500)
b = RrCollection(model, seed=1).extend(200).extend(500)
print("incremental == one-shot:", a.dump() == b.dump())
