"""Brute-force reference implementations used as test oracles."""

import itertools
from fractions import Fraction

import numpy as np


def hit_count(sets, nodes):
    nodes = set(nodes)
    return sum(1 for s in sets if nodes.intersection(s))


def mca_reference(sets, n, target, costs):
    """Greedy cover recomputing every truncated gain at every step.

    ``sets`` is a list of member lists.  Same selection rule and tie-break
    as the library MCA, written without any incremental state.
    """
    if n < target:
        return []
    size = len(sets)
    need = Fraction(target) * size / n
    need = max(0, -(-need.numerator // need.denominator))
    chosen = []
    while hit_count(sets, chosen) < need:
        count = hit_count(sets, chosen)
        best, best_key = None, None
        for u in range(n):
            if u in chosen:
                continue
            g = hit_count(sets, chosen + [u]) - count
            key = min(g, need - count) / costs[u]
            if best_key is None or key > best_key:
                best, best_key = u, key
        chosen.append(best)
    return chosen


def live_edge_spread(n, edges, nodes):
    """Exact IC spread by listing all 2^m live-edge worlds (independent of the library oracle)."""
    total = 0.0
    for live in itertools.product([False, True], repeat=len(edges)):
        prob = 1.0
        adj = {u: [] for u in range(n)}
        for on, (u, v, p) in zip(live, edges):
            prob *= p if on else 1.0 - p
            if on:
                adj[u].append(v)
        seen = set(nodes)
        stack = list(nodes)
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        total += prob * len(seen)
    return total


def binomial_floor(p, trials, k=3.0):
    """``p - k * sqrt(p (1 - p) / trials)``."""
    return p - k * np.sqrt(p * (1 - p) / trials)


def collection_from_sets(n, sets, seed=0):
    """RrCollection holding the given member lists (roots are each set's first member)."""
    from seedselect.graph import from_edges
    from seedselect.propagation import RrBatch, RrCollection, TriggeringModel

    coll = RrCollection(TriggeringModel(from_edges(n, []), "ic"), seed=seed, threads=1)
    members = [np.unique(np.asarray(s, dtype=np.int32)) for s in sets]
    ptr = np.zeros(len(sets) + 1, dtype=np.int64)
    np.cumsum([m.size for m in members], out=ptr[1:])
    roots = np.array([m[0] for m in members], dtype=np.int64)
    flat = np.concatenate(members) if members else np.zeros(0, np.int32)
    return coll.append(RrBatch(0, roots, ptr, flat.astype(np.int32)))
