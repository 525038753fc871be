"""Directed social graphs with activation weights, plus node cost models.

Edge-list text is the interchange format: one ``u v`` (weighted cascade) or
``u v p`` (explicit weights) pair per line, ``#`` comment lines skipped.
Node labels are remapped to dense ids ``0..n-1`` in first-appearance order;
the original labels are kept in ``Graph.labels``.
"""

from __future__ import annotations

import gzip
import io
import os
from dataclasses import dataclass

import numpy as np

from seedselect._rng import uniform_open_closed

LT_TOLERANCE = 1e-9

WEIGHTINGS = ("wc", "explicit")
ORIENTATIONS = ("directed", "undirected")


class GraphFormatError(ValueError):
    """Raised when an edge list cannot be parsed into a valid graph."""


def _csr(keys, n, *cols):
    # stable sort keeps load order inside each adjacency list
    order = np.argsort(keys, kind="stable")
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(keys, minlength=n), out=ptr[1:])
    return (ptr,) + tuple(c[order] for c in cols)


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class Graph:
    """Immutable directed graph with per-edge activation probabilities.

    Edges are stored in load order (``src``, ``dst``, ``p``) together with
    forward and reverse CSR indexes.  ``out_eid`` / ``in_eid`` map adjacency
    slots back to edge ids.
    """

    def __init__(self, n, src, dst, p, labels=None):
        n = int(n)
        if n <= 0:
            raise GraphFormatError("graph must have at least one node")
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        p = np.asarray(p, dtype=np.float64)
        if not (src.shape == dst.shape == p.shape) or src.ndim != 1:
            raise ValueError("src, dst and p must be 1-d arrays of equal length")
        if src.size and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
            raise ValueError("edge endpoint outside 0..n-1")
        if p.size and (np.any(~np.isfinite(p)) or p.min() < 0.0 or p.max() > 1.0):
            raise GraphFormatError("activation weight outside [0, 1]")
        pairs = src * n + dst
        if np.unique(pairs).size != pairs.size:
            raise GraphFormatError("duplicate directed edge")

        self.n = n
        self.m = int(src.size)
        eid = np.arange(self.m, dtype=np.int64)
        self.src, self.dst, self.p = _frozen(src), _frozen(dst), _frozen(p)
        ptr, idx, w, e = _csr(src, n, dst, p, eid)
        self.out_ptr, self.out_idx, self.out_p, self.out_eid = map(_frozen, (ptr, idx, w, e))
        ptr, idx, w, e = _csr(dst, n, src, p, eid)
        self.in_ptr, self.in_idx, self.in_p, self.in_eid = map(_frozen, (ptr, idx, w, e))
        self.in_degree = _frozen(np.diff(self.in_ptr))
        self.out_degree = _frozen(np.diff(self.out_ptr))
        if labels is None:
            labels = np.arange(n, dtype=np.int64)
        self.labels = _frozen(np.asarray(labels, dtype=np.int64))
        if self.labels.shape != (n,):
            raise ValueError("labels must have one entry per node")

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.p, other.p)
            and np.array_equal(self.labels, other.labels)
        )

    __hash__ = None

    @property
    def in_weight_sums(self):
        return np.bincount(self.dst, weights=self.p, minlength=self.n)

    @property
    def lt_compatible(self):
        """True when every node's incoming weights sum to at most one."""
        return bool(np.all(self.in_weight_sums <= 1.0 + LT_TOLERANCE))

    def in_neighbors(self, v):
        s, e = self.in_ptr[v], self.in_ptr[v + 1]
        return self.in_idx[s:e], self.in_p[s:e]

    def out_neighbors(self, u):
        s, e = self.out_ptr[u], self.out_ptr[u + 1]
        return self.out_idx[s:e], self.out_p[s:e]

    def node_id(self, label):
        """Dense id of an original node label."""
        hits = np.flatnonzero(self.labels == label)
        if hits.size == 0:
            raise KeyError(label)
        return int(hits[0])

    def to_edge_list(self):
        """Explicit-weight edge-list text that reloads to an equal graph.

        Nodes without edges cannot be expressed in this format, so the
        round trip only holds for graphs where every node touches an edge.
        """
        lab = self.labels
        lines = [f"{lab[u]} {lab[v]} {p!r}" for u, v, p in zip(self.src.tolist(), self.dst.tolist(), self.p.tolist())]
        return "\n".join(lines) + "\n"

    def save(self, path):
        """Binary cache of the parsed graph (``.npz``)."""
        np.savez(path, n=np.int64(self.n), src=self.src, dst=self.dst, p=self.p, labels=self.labels)

    @classmethod
    def load(cls, path):
        with np.load(path) as z:
            return cls(int(z["n"]), z["src"], z["dst"], z["p"], labels=z["labels"])


def _read_text(source):
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    elif isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, io.TextIOBase):
        return source.read()
    else:
        data = source.read()
    if data[:2] == b"\x1f\x8b":
        data = gzip.decompress(data)
    return data.decode("utf-8")


def load_edge_list(source, weighting="wc", orientation="directed"):
    """Parse an edge list into a :class:`Graph`.

    ``source`` may be a path, raw bytes or a file object (gzip is detected).
    Under ``weighting="wc"`` every edge into ``v`` gets ``1 / d_in(v)``,
    computed after all edges (and, for ``orientation="undirected"``, both
    directions of every edge) are in place.
    """
    if weighting not in WEIGHTINGS:
        raise ValueError(f"weighting must be one of {WEIGHTINGS}, got {weighting!r}")
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    want = 2 if weighting == "wc" else 3

    ids = {}
    src, dst, prob = [], [], []
    seen = set()

    def dense(label):
        i = ids.get(label)
        if i is None:
            i = ids[label] = len(ids)
        return i

    def add(u, v, p, lineno):
        if (u, v) in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge")
        seen.add((u, v))
        src.append(u)
        dst.append(v)
        prob.append(p)

    for lineno, raw in enumerate(_read_text(source).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != want:
            raise GraphFormatError(f"line {lineno}: expected {want} fields, got {len(parts)}")
        try:
            a, b = int(parts[0]), int(parts[1])
            p = float(parts[2]) if want == 3 else 1.0
        except ValueError:
            raise GraphFormatError(f"line {lineno}: malformed line {raw!r}") from None
        if a < 0 or b < 0:
            raise GraphFormatError(f"line {lineno}: negative node id")
        if not 0.0 <= p <= 1.0:
            raise GraphFormatError(f"line {lineno}: weight {p} outside [0, 1]")
        u, v = dense(a), dense(b)
        add(u, v, p, lineno)
        if orientation == "undirected" and u != v:
            add(v, u, p, lineno)

    if not src:
        raise GraphFormatError("empty graph")
    n = len(ids)
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    if weighting == "wc":
        d_in = np.bincount(dst, minlength=n)
        p = 1.0 / d_in[dst]
    else:
        p = np.asarray(prob, dtype=np.float64)
    labels = np.fromiter(ids.keys(), dtype=np.int64, count=n)
    return Graph(n, src, dst, p, labels=labels)


def from_edges(n, edges, p=None):
    """Build a graph from ``(u, v)`` or ``(u, v, p)`` tuples on dense ids."""
    edges = list(edges)
    if p is not None:
        edges = [(u, v, p) for u, v, *_ in edges]
    src = [e[0] for e in edges]
    dst = [e[1] for e in edges]
    w = [e[2] if len(e) > 2 else 1.0 for e in edges]
    return Graph(n, src, dst, w)


def heavy_tailed_digraph(n, m, seed=0, exponent=1.0, receivers=None):
    """Random simple digraph with Zipf-like out- and in-degree profiles.

    Edge endpoints are drawn with probability proportional to ``rank**-exponent``;
    only the first ``receivers`` nodes (default ``n // 3``) receive edges, the
    rest act as pure sources, as in voting or follower networks.  Weights are
    weighted-cascade.
    """
    rng = np.random.default_rng(seed)
    receivers = max(1, n // 3 if receivers is None else receivers)
    if m > n * receivers - receivers:
        raise ValueError("too many edges for a simple digraph")
    w_out = 1.0 / np.arange(1, n + 1) ** exponent
    w_in = 1.0 / np.arange(1, receivers + 1) ** exponent
    out_perm = rng.permutation(n)
    pairs = np.zeros(0, dtype=np.int64)
    while pairs.size < m:
        k = 2 * (m - pairs.size) + 16
        u = out_perm[rng.choice(n, size=k, p=w_out / w_out.sum())]
        v = rng.choice(receivers, size=k, p=w_in / w_in.sum())
        keep = u != v
        pairs = np.concatenate([pairs, u[keep] * n + v[keep]])
        _, first = np.unique(pairs, return_index=True)
        pairs = pairs[np.sort(first)]
    pairs = pairs[:m]
    src, dst = pairs // n, pairs % n
    d_in = np.bincount(dst, minlength=n)
    return Graph(n, src, dst, 1.0 / d_in[dst])


def weighted_cascade(g):
    """Copy of ``g`` with ``p(u, v) = 1 / d_in(v)``."""
    p = 1.0 / g.in_degree[g.dst] if g.m else np.zeros(0)
    return Graph(g.n, g.src, g.dst, p, labels=g.labels)


@dataclass(frozen=True, eq=False)
class CostModel:
    """Per-node seeding costs; ``C(A)`` is the sum over ``A``."""

    costs: np.ndarray
    mode: str
    seed: int | None = None

    def __post_init__(self):
        c = _frozen(np.asarray(self.costs, dtype=np.float64))
        if c.ndim != 1 or c.size == 0 or np.any(~(c > 0.0)):
            raise ValueError("costs must be a non-empty vector of positive reals")
        object.__setattr__(self, "costs", c)

    @property
    def n(self):
        return self.costs.size

    @property
    def is_uniform(self):
        return bool(np.all(self.costs == 1.0))

    def __call__(self, nodes):
        nodes = np.fromiter(nodes, dtype=np.int64)
        return float(self.costs[nodes].sum()) if nodes.size else 0.0

    def describe(self):
        return "uniform" if self.mode == "uniform" else f"random:{self.seed}"


def assign_costs(g, mode="uniform", seed=0):
    """Cost model for ``g``: all ones, or i.i.d. Uniform(0, 1] keyed by ``(seed, node)``."""
    if mode == "uniform":
        return CostModel(np.ones(g.n), "uniform")
    if mode in ("random", "random-uniform"):
        costs = uniform_open_closed(int(seed), g.n)
        assert np.all((costs > 0.0) & (costs <= 1.0))
        return CostModel(costs, "random", int(seed))
    raise ValueError(f"unknown cost mode {mode!r}")
