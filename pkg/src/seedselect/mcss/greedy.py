"""Greedy min-cost cover of an RR-set collection (MCA)."""

from __future__ import annotations

import heapq

import numpy as np

from seedselect.propagation import RrCollection, required_count


def mca(coll: RrCollection, target, costs):
    """Greedy cheapest node set whose coverage estimate reaches ``target``.

    Each step adds the node maximising
    ``(min(f(A + u), target) - f(A)) / C(u)`` with ties to the smaller id.
    Gains are kept in a lazy max-heap: the truncated coverage gain only
    shrinks as ``A`` grows, so a popped node whose fresh gain still beats
    every stale key in the heap is the exact argmax.

    Returns the chosen nodes in selection order; ``[]`` when ``target`` is
    not positive or exceeds ``n`` (no set can reach it).
    """
    n = coll.n
    size = len(coll)
    if size == 0:
        raise ValueError("MCA needs a non-empty RR-set collection")
    if n < target:
        return []
    need = required_count(target, size, n)
    if need == 0:
        return []
    c = np.asarray(costs.costs if hasattr(costs, "costs") else costs, dtype=np.float64)
    node_ptr, ids = coll.index()
    deg = np.diff(node_ptr)
    heap = [(-(min(int(deg[u]), need) / c[u]), u) for u in range(n)]
    heapq.heapify(heap)
    covered = np.zeros(size, dtype=bool)
    count = 0
    chosen = []
    while count < need:
        _, u = heapq.heappop(heap)
        sets = ids[node_ptr[u]:node_ptr[u + 1]]
        fresh = sets[~covered[sets]]
        key = min(fresh.size, need - count) / c[u]
        if heap and (-key, u) > heap[0]:
            heapq.heappush(heap, (-key, u))
            continue
        if fresh.size == 0:
            raise RuntimeError("no node adds coverage; target unreachable")
        covered[fresh] = True
        count += fresh.size
        chosen.append(u)
    return chosen
