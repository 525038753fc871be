"""
A small benchmark sweep
=======================

``seedselect bench`` streams one CSV row per run plus an aggregate row per
(algorithm, eta) cell.  Here we drive it in-process and summarise the
aggregates.
"""

import csv
import io
import tempfile

from seedselect.cli import main
from seedselect.graph import heavy_tailed_digraph

g = heavy_tailed_digraph(800, 6000, seed=2)
with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as fh:
    fh.write(g.to_edge_list())

out = io.StringIO()
main(["bench", "--graph", fh.name, "--weighting", "explicit", "--costs", "random:1",
      "--algo", "bcgc,tegc", "--eta-list", "20,60", "--repeats", "3", "--eval-sims", "2000"], out=out)

for row in csv.DictReader(io.StringIO(out.getvalue())):
    if row["row"] == "aggregate":
        print(f"{row['algorithm']:>5} eta={row['eta']:>3}: cost {row['cost']} (sd {row['cost_std']}), "
              f"normalised spread {row['normalized_is']}, RR-sets {row['rr_sets']}")
