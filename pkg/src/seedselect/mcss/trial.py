"""Sequential feasibility test on fresh RR-sets (the TEST routine).

Fresh sets are drawn one by one and the number hitting ``A`` is counted;
reaching ``ell`` hits within ``M`` draws means ``f(A)`` is large.  If the
caller's remaining budget ``L`` does not exceed ``M`` the test is skipped
and ``L`` sets are simply handed back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from seedselect.propagation import RrBatch, RrCollection


@dataclass(frozen=True)
class TestVerdict:
    passed: bool
    rr_sets: RrBatch
    ell: int
    M: int
    steps: int

    __test__ = False  # not a pytest class

    @property
    def generated(self):
        return len(self.rr_sets)


def test_thresholds(kappa, gamma, beta, n):
    """``(ell, M)``: hit target and draw cap."""
    ell = math.ceil(2.0 * (1.0 + kappa) * gamma / ((2.0 + kappa) * n)
                    + 8.0 * (3.0 + 2.0 * kappa) * (1.0 + kappa) / (3.0 * kappa * kappa) * math.log(2.0 / beta))
    M = math.floor((2.0 + kappa) * n * ell / (2.0 * (1.0 + kappa) * gamma))
    return ell, M


test_thresholds.__test__ = False


def feasibility_test(coll: RrCollection, nodes, kappa, gamma, beta, L, deadline=None):
    """Run TEST for ``nodes`` on RR-sets that would extend ``coll``.

    The generated sets carry the ordinals ``len(coll), len(coll)+1, ...`` so
    a failing caller can append them directly.  Sets are produced in chunks
    and truncated at the stopping index, which gives exactly the output of
    one-at-a-time generation because every set depends only on its ordinal.
    """
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    if not 0.0 < gamma <= coll.n:
        raise ValueError(f"Gamma must lie in (0, n], got {gamma}")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    L = int(L)
    if L < 0:
        raise ValueError(f"L must be >= 0, got {L}")
    ell, M = test_thresholds(kappa, gamma, beta, coll.n)
    if L <= M:
        return TestVerdict(False, coll.generate(L), ell, M, 0)

    nodes = list(nodes)
    batches = []
    drawn = 0
    hits = 0
    chunk = max(1024, 2 * ell)
    while drawn < M:
        if deadline is not None:
            deadline.check()
        size = min(chunk, M - drawn)
        batch = coll.generate(size, offset=drawn)
        h = batch.hits(nodes, coll.n) if nodes else np.zeros(size, dtype=bool)
        cum = hits + np.cumsum(h)
        j = int(np.searchsorted(cum, ell))
        if j < size:
            batches.append(batch.prefix(j + 1))
            return TestVerdict(True, RrBatch.concat(batches), ell, M, drawn + j + 1)
        batches.append(batch)
        hits = int(cum[-1])
        drawn += size
        chunk *= 2
    return TestVerdict(False, RrBatch.concat(batches), ell, M, drawn)

