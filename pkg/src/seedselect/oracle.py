"""Exact influence spread and exact MCSS optima on tiny instances.

Spread is a probability-weighted sum over every live-edge world: all live
subsets of the random edges under IC, every choice of at most one in-neighbour
per node under LT.  Worlds are visited in ascending index order so the
floating sums are reproducible bit for bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from seedselect.propagation import TriggeringModel


class LimitExceeded(ValueError):
    """Instance too large for exhaustive enumeration."""


@dataclass(frozen=True)
class ExactLimits:
    max_edges: int = 20
    max_nodes: int = 14
    max_lt_configs: int = 1 << 20


DEFAULT_LIMITS = ExactLimits()

_POPCOUNT16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int64)


def _popcount(x):
    x = np.asarray(x, dtype=np.int64)
    return _POPCOUNT16[x & 0xFFFF] + _POPCOUNT16[(x >> 16) & 0xFFFF]


def _check(model, limits, need_subsets=False):
    g = model.graph
    if g.n > limits.max_nodes:
        raise LimitExceeded(f"max_nodes: graph has {g.n} nodes, limit is {limits.max_nodes}")
    if model.kind == "ic":
        random_edges = int(np.count_nonzero((g.p > 0.0) & (g.p < 1.0)))
        if random_edges > limits.max_edges:
            raise LimitExceeded(f"max_edges: {random_edges} random edges, limit is {limits.max_edges}")
    else:
        configs = 1
        for v in range(g.n):
            configs *= g.in_degree[v] + 1
            if configs > limits.max_lt_configs:
                raise LimitExceeded(f"max_lt_configs: more than {limits.max_lt_configs} LT configurations")


def _worlds(model):
    """Yield ``(probability, out_masks)`` per live-edge world of nonzero weight.

    ``out_masks[u]`` is the bitmask of live out-neighbours of ``u``.
    """
    g = model.graph
    n = g.n
    if model.kind == "ic":
        fixed = np.zeros(n, dtype=np.int64)
        rand = []
        for u, v, p in zip(g.src.tolist(), g.dst.tolist(), g.p.tolist()):
            if p >= 1.0:
                fixed[u] |= 1 << v
            elif p > 0.0:
                rand.append((u, v, p))
        for world in range(1 << len(rand)):
            prob = 1.0
            masks = fixed.copy()
            for bit, (u, v, p) in enumerate(rand):
                if world >> bit & 1:
                    prob *= p
                    masks[u] |= 1 << v
                else:
                    prob *= 1.0 - p
            yield prob, masks
    else:
        options = []
        for v in range(n):
            nb, w = g.in_neighbors(v)
            opts = [(p, int(u)) for u, p in zip(nb.tolist(), w.tolist()) if p > 0.0]
            rest = 1.0 - float(np.sum(w))
            if rest > 0.0 or not opts:
                opts.append((max(rest, 0.0), -1))
            options.append(opts)
        for combo in itertools.product(*options):
            prob = 1.0
            masks = np.zeros(n, dtype=np.int64)
            for v, (p, u) in enumerate(combo):
                prob *= p
                if u >= 0:
                    masks[u] |= 1 << v
            if prob > 0.0:
                yield prob, masks


def _reach_masks(masks):
    """Closure: bitmask of nodes reachable from each node (itself included)."""
    n = masks.size
    reach = [1 << u for u in range(n)]
    out = masks.tolist()
    for u in range(n):
        seen = reach[u]
        frontier = seen
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= out[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= nxt
        reach[u] = seen
    return reach


def _to_mask(nodes, n):
    m = 0
    for v in nodes:
        v = int(v)
        if not 0 <= v < n:
            raise ValueError(f"node {v} outside 0..{n - 1}")
        m |= 1 << v
    return m


def exact_spread(model: TriggeringModel, nodes, limits=DEFAULT_LIMITS):
    """Expected number of activated nodes when seeding ``nodes``."""
    _check(model, limits)
    a = _to_mask(nodes, model.n)
    if a == 0:
        return 0.0
    total = 0.0
    for prob, masks in _worlds(model):
        reach = _reach_masks(masks)
        hit = 0
        f = a
        while f:
            low = f & -f
            hit |= reach[low.bit_length() - 1]
            f ^= low
        total += prob * bin(hit).count("1")
    return total


def all_spreads(model: TriggeringModel, limits=DEFAULT_LIMITS):
    """Exact spread of every subset, indexed by the subset's bitmask."""
    _check(model, limits)
    n = model.n
    total = np.zeros(1 << n, dtype=np.float64)
    for prob, masks in _worlds(model):
        reach = _reach_masks(masks)
        sub = np.zeros(1 << n, dtype=np.int64)
        for k in range(n):
            sub[1 << k:1 << (k + 1)] = sub[: 1 << k] | reach[k]
        total += prob * _popcount(sub)
    return total


def is_feasible(model: TriggeringModel, nodes, target, limits=DEFAULT_LIMITS):
    """``exact_spread(nodes) >= target`` (equality counts as feasible)."""
    return exact_spread(model, nodes, limits) >= target


def exact_optimum(model: TriggeringModel, costs, eta, limits=DEFAULT_LIMITS):
    """Minimum-cost node set with exact spread at least ``eta``.

    Ties go to the smaller set, then the lexicographically smaller sorted
    node tuple.  Returns ``(nodes, cost)``.
    """
    n = model.n
    if not 0.0 < eta < n:
        raise ValueError(f"eta must lie in (0, {n}), got {eta}")
    spreads = all_spreads(model, limits)
    c = np.asarray(costs.costs if hasattr(costs, "costs") else costs, dtype=np.float64)
    best = None
    for mask in np.flatnonzero(spreads >= eta).tolist():
        nodes = tuple(v for v in range(n) if mask >> v & 1)
        cost = float(c[list(nodes)].sum())
        key = (cost, len(nodes), nodes)
        if best is None or key < best:
            best = key
    if best is None:
        raise ValueError(f"no set reaches eta={eta}")
    return set(best[2]), best[0]
