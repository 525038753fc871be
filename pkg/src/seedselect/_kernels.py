"""Compiled sampling kernels: reverse (RR-set) and forward cascades.

All kernels release the GIL so callers can fan chunks out over threads.
Model codes: 0 = independent cascade, 1 = linear threshold.
"""

import numba as nb
import numpy as np

from seedselect._rng import DOMAIN_RR, DOMAIN_SIM, keyed_uniform, stream_key

IC = 0
LT = 1


@nb.njit(nogil=True, cache=True)
def rr_range(in_ptr, in_idx, in_p, n, seed, start, stop, model):
    """RR-sets for ordinals ``start..stop-1`` as (roots, ptr, sorted members).

    Set ``i`` draws from the stream ``(seed, RR, i)`` only: draw 0 picks the
    root, later draws sample triggering sets lazily as nodes are reached.
    """
    count = stop - start
    roots = np.empty(count, dtype=np.int64)
    ptr = np.zeros(count + 1, dtype=np.int64)
    cap = max(64, 4 * count)
    members = np.empty(cap, dtype=np.int32)
    mark = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int32)
    pos = 0
    useed = np.uint64(seed)
    for k in range(count):
        key = stream_key(useed, np.uint64(DOMAIN_RR), np.uint64(start + k))
        root = min(np.int64(keyed_uniform(key, np.uint64(0)) * n), n - 1)
        draw = np.uint64(1)
        stamp = k + 1
        mark[root] = stamp
        queue[0] = root
        head = 0
        tail = 1
        while head < tail:
            w = queue[head]
            head += 1
            s = in_ptr[w]
            e = in_ptr[w + 1]
            if s == e:
                continue
            if model == LT:
                r = keyed_uniform(key, draw)
                draw += np.uint64(1)
                acc = 0.0
                for j in range(s, e):
                    acc += in_p[j]
                    if r < acc:
                        u = in_idx[j]
                        if mark[u] != stamp:
                            mark[u] = stamp
                            queue[tail] = u
                            tail += 1
                        break
            else:
                for j in range(s, e):
                    r = keyed_uniform(key, draw)
                    draw += np.uint64(1)
                    if r < in_p[j]:
                        u = in_idx[j]
                        if mark[u] != stamp:
                            mark[u] = stamp
                            queue[tail] = u
                            tail += 1
        if pos + tail > cap:
            while pos + tail > cap:
                cap *= 2
            grown = np.empty(cap, dtype=np.int32)
            grown[:pos] = members[:pos]
            members = grown
        members[pos:pos + tail] = np.sort(queue[:tail])
        pos += tail
        ptr[k + 1] = pos
        roots[k] = root
    return roots, ptr, members[:pos].copy()


@nb.njit(nogil=True, cache=True)
def forward_range(out_ptr, out_idx, out_eid, p, in_ptr, in_idx, in_p, n, seed, seeds, start, stop, model):
    """Activated-node counts of forward cascades ``start..stop-1`` from ``seeds``.

    Randomness is keyed by edge id (IC) or node id (LT) inside each
    simulation, so a simulation's live-edge world does not depend on the
    order in which nodes are reached.
    """
    count = stop - start
    out = np.empty(count, dtype=np.int64)
    active = np.zeros(n, dtype=np.int64)
    sampled = np.zeros(n, dtype=np.int64)
    choice = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    useed = np.uint64(seed)
    for k in range(count):
        key = stream_key(useed, np.uint64(DOMAIN_SIM), np.uint64(start + k))
        stamp = k + 1
        tail = 0
        for s in seeds:
            if active[s] != stamp:
                active[s] = stamp
                queue[tail] = s
                tail += 1
        head = 0
        while head < tail:
            u = queue[head]
            head += 1
            for slot in range(out_ptr[u], out_ptr[u + 1]):
                v = out_idx[slot]
                if active[v] == stamp:
                    continue
                if model == LT:
                    if sampled[v] != stamp:
                        sampled[v] = stamp
                        choice[v] = -1
                        r = keyed_uniform(key, np.uint64(v))
                        acc = 0.0
                        for j in range(in_ptr[v], in_ptr[v + 1]):
                            acc += in_p[j]
                            if r < acc:
                                choice[v] = in_idx[j]
                                break
                    hit = choice[v] == u
                else:
                    eid = out_eid[slot]
                    hit = keyed_uniform(key, np.uint64(eid)) < p[eid]
                if hit:
                    active[v] = stamp
                    queue[tail] = v
                    tail += 1
        out[k] = tail
    return out
