"""Triggering-model sampling: RR-sets, the coverage estimator, forward simulation.

An RR-set rooted at a uniformly random node ``v`` holds every node that would
activate ``v`` in one sampled live-edge world, so for any seed set ``A``::

    f(A) = n * P{R intersects A}

and ``coverage_estimate`` is the plug-in mean over a collection.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from seedselect import _kernels
from seedselect.graph import Graph

MODEL_KINDS = ("ic", "lt")
_CODES = {"ic": _kernels.IC, "lt": _kernels.LT}

# ordinals per worker chunk when generating in parallel
CHUNK = 1 << 14


def default_threads():
    return max(1, int(os.environ.get("SEEDSELECT_THREADS", "1")))


class TriggeringModel:
    """Contagion model (IC or LT) bound to a graph's edge weights."""

    def __init__(self, graph: Graph, kind="ic"):
        kind = str(kind).lower()
        if kind not in MODEL_KINDS:
            raise ValueError(f"model kind must be one of {MODEL_KINDS}, got {kind!r}")
        if kind == "lt" and not graph.lt_compatible:
            raise ValueError("LT model needs incoming weights summing to at most 1 at every node")
        self.graph = graph
        self.kind = kind
        self.code = _CODES[kind]

    @property
    def n(self):
        return self.graph.n

    def __repr__(self):
        return f"TriggeringModel({self.graph!r}, {self.kind!r})"


@dataclass(frozen=True)
class RrBatch:
    """Consecutive RR-sets with ordinals ``start .. start + len - 1`` (CSR layout)."""

    start: int
    roots: np.ndarray
    ptr: np.ndarray
    members: np.ndarray

    def __len__(self):
        return self.roots.size

    def hits(self, nodes, n):
        """Boolean per set: does the set intersect ``nodes``?"""
        if len(self) == 0:
            return np.zeros(0, dtype=bool)
        mask = np.zeros(n, dtype=bool)
        mask[np.asarray(list(nodes), dtype=np.int64)] = True
        return np.logical_or.reduceat(mask[self.members], self.ptr[:-1])

    def prefix(self, k):
        return RrBatch(self.start, self.roots[:k], self.ptr[:k + 1], self.members[: self.ptr[k]])

    @staticmethod
    def concat(batches):
        """Join consecutive batches into one."""
        batches = list(batches)
        for a, b in zip(batches, batches[1:]):
            if a.start + len(a) != b.start:
                raise ValueError("batches are not consecutive")
        return _concat(batches[0].start, [(b.roots, b.ptr, b.members) for b in batches])


def _concat(start, parts):
    roots = np.concatenate([r for r, _, _ in parts])
    members = np.concatenate([m for _, _, m in parts])
    ptr = [np.zeros(1, dtype=np.int64)]
    base = 0
    for _, p, _ in parts:
        ptr.append(p[1:] + base)
        base += p[-1]
    return RrBatch(start, roots, np.concatenate(ptr), members)


def generate_rr_sets(model: TriggeringModel, seed, start, count, threads=1):
    """RR-sets with ordinals ``start .. start + count - 1``.

    Output is identical for any ``threads``: each set depends only on
    ``(seed, ordinal)``.
    """
    g = model.graph
    args = (g.in_ptr, g.in_idx, g.in_p, g.n, np.uint64(seed))

    def run(lo, hi):
        return _kernels.rr_range(*args, lo, hi, model.code)

    if count <= 0:
        return RrBatch(start, np.zeros(0, np.int64), np.zeros(1, np.int64), np.zeros(0, np.int32))
    if threads <= 1 or count <= CHUNK:
        return _concat(start, [run(start, start + count)])
    bounds = [(lo, min(lo + CHUNK, start + count)) for lo in range(start, start + count, CHUNK)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda b: run(*b), bounds))
    return _concat(start, parts)


def sample_rr_set(model: TriggeringModel, seed, ordinal=0):
    """One RR-set as ``(root, sorted member array)``."""
    b = generate_rr_sets(model, seed, ordinal, 1)
    return int(b.roots[0]), b.members.astype(np.int64)


class RrCollection:
    """Append-only pool of RR-sets with a node -> set-ordinal inverted index."""

    def __init__(self, model: TriggeringModel, seed=0, threads=None):
        self.model = model
        self.n = model.n
        self.seed = int(seed)
        self.threads = default_threads() if threads is None else int(threads)
        self._roots = np.zeros(0, dtype=np.int64)
        self._ptr = np.zeros(1, dtype=np.int64)
        self._members = np.zeros(0, dtype=np.int32)
        self._size = 0
        self._nnz = 0
        self._index = None

    def __len__(self):
        return self._size

    def __repr__(self):
        return f"RrCollection(size={self._size}, n={self.n}, seed={self.seed})"

    @property
    def roots(self):
        return self._roots[: self._size]

    @property
    def ptr(self):
        return self._ptr[: self._size + 1]

    @property
    def members_flat(self):
        return self._members[: self._nnz]

    def members(self, i):
        if not 0 <= i < self._size:
            raise IndexError(i)
        return self._members[self._ptr[i]:self._ptr[i + 1]]

    def sizes(self):
        return np.diff(self.ptr)

    def __iter__(self):
        for i in range(self._size):
            yield int(self._roots[i]), self.members(i)

    def _reserve(self, sets, nnz):
        if sets > self._roots.size:
            cap = max(sets, 2 * self._roots.size)
            self._roots = np.resize(self._roots, cap)
            self._ptr = np.resize(self._ptr, cap + 1)
        if nnz > self._members.size:
            self._members = np.resize(self._members, max(nnz, 2 * self._members.size))

    def append(self, batch: RrBatch):
        """Append a batch whose first ordinal is ``len(self)``."""
        if batch.start != self._size:
            raise ValueError(f"batch starts at ordinal {batch.start}, collection has {self._size}")
        k, nnz = len(batch), int(batch.ptr[-1])
        if k == 0:
            return self
        self._reserve(self._size + k, self._nnz + nnz)
        self._roots[self._size:self._size + k] = batch.roots
        self._ptr[self._size + 1:self._size + k + 1] = batch.ptr[1:] + self._nnz
        self._members[self._nnz:self._nnz + nnz] = batch.members
        self._size += k
        self._nnz += nnz
        self._index = None
        return self

    def generate(self, count, offset=0):
        """RR-sets that would follow this collection, without appending them."""
        return generate_rr_sets(self.model, self.seed, self._size + offset, count, self.threads)

    def extend(self, target_size):
        """Grow to exactly ``target_size`` sets; existing sets are untouched."""
        target_size = int(target_size)
        if target_size < self._size:
            raise ValueError(f"target_size {target_size} below current size {self._size}")
        return self.append(self.generate(target_size - self._size))

    def index(self):
        """Inverted index as CSR ``(node_ptr, set_ids)``; set ids ascend per node."""
        if self._index is None:
            flat = self.members_flat
            owner = np.repeat(np.arange(self._size, dtype=np.int64), self.sizes())
            order = np.argsort(flat, kind="stable")
            node_ptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(np.bincount(flat, minlength=self.n), out=node_ptr[1:])
            self._index = (node_ptr, owner[order])
        return self._index

    def sets_containing(self, v):
        node_ptr, ids = self.index()
        return ids[node_ptr[v]:node_ptr[v + 1]]

    def hits(self, nodes):
        nodes = list(nodes)
        hit = np.zeros(self._size, dtype=bool)
        if nodes:
            node_ptr, ids = self.index()
            for v in nodes:
                hit[ids[node_ptr[v]:node_ptr[v + 1]]] = True
        return hit

    def coverage_count(self, nodes):
        """Number of sets intersecting ``nodes``."""
        return int(np.count_nonzero(self.hits(nodes)))

    def reaches(self, nodes, target):
        """Exact test of ``coverage_estimate(nodes) >= target``."""
        return covers(self.coverage_count(nodes), self._size, self.n, target)

    def dump(self):
        """Debug text: one ``root: m1 m2 ...`` line per set."""
        return "".join(f"{r}: {' '.join(map(str, m.tolist()))}\n" for r, m in self)


def required_count(target, size, n):
    """Smallest hit count ``c`` with ``n * c / size >= target``, in exact arithmetic."""
    need = Fraction(target) * size / n
    return max(0, -(-need.numerator // need.denominator))


def covers(count, size, n, target):
    return count >= required_count(target, size, n)


def coverage_estimate(coll: RrCollection, nodes):
    """``n * (#sets hit by nodes) / |coll|``."""
    if len(coll) == 0:
        raise ValueError("coverage estimate needs a non-empty collection")
    return coll.n * coll.coverage_count(nodes) / len(coll)


def simulate_spread(model: TriggeringModel, nodes, num_sims, seed=0, threads=None):
    """Monte-Carlo influence spread of ``nodes``: ``(mean, standard error)``.

    Simulation ``j`` uses the stream ``(seed, SIM, j)``, so the estimate for
    a fixed seed is a deterministic function of the node set.
    """
    num_sims = int(num_sims)
    if num_sims < 1:
        raise ValueError("num_sims must be >= 1")
    seeds = np.unique(np.asarray(list(nodes), dtype=np.int64))
    if seeds.size == 0:
        return 0.0, 0.0
    counts = simulation_counts(model, seeds, num_sims, seed, threads)
    mean = float(counts.mean())
    stderr = float(counts.std(ddof=1) / np.sqrt(num_sims)) if num_sims > 1 else 0.0
    return mean, stderr


def simulation_counts(model, seeds, num_sims, seed=0, threads=None):
    g = model.graph
    threads = default_threads() if threads is None else int(threads)
    args = (g.out_ptr, g.out_idx, g.out_eid, g.p, g.in_ptr, g.in_idx, g.in_p, g.n, np.uint64(seed),
            np.asarray(seeds, dtype=np.int64))

    def run(lo, hi):
        return _kernels.forward_range(*args, lo, hi, model.code)

    step = max(1, num_sims // max(1, threads))
    if threads <= 1 or num_sims < 2 * threads:
        return run(0, num_sims)
    bounds = [(lo, min(lo + step, num_sims)) for lo in range(0, num_sims, step)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return np.concatenate(list(pool.map(lambda b: run(*b), bounds)))
