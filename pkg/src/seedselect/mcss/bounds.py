"""Sample-size calculus for RR-set collections.

A threshold spec ``<Gamma, beta, theta>`` asks for enough RR-sets that the
coverage estimate of a set is off by more than a ``beta`` fraction of
``Gamma`` with probability at most ``theta``.  ``theta`` is carried as
``ln(1/theta)`` throughout: with ``mu = n**8`` or ``mu = D(Gamma)`` the
value ``1/theta`` overflows a double long before the sample sizes do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ThresholdSpec:
    gamma: float
    beta: float
    log_inv_theta: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"Gamma must be positive, got {self.gamma}")
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        if not (math.isfinite(self.log_inv_theta) and self.log_inv_theta >= 0.0):
            raise ValueError(f"ln(1/theta) must be finite and >= 0, got {self.log_inv_theta}")

    @classmethod
    def from_theta(cls, gamma, beta, theta):
        return cls(gamma, beta, -math.log(theta))

    @property
    def theta(self):
        return math.exp(-self.log_inv_theta)


def ut(w: ThresholdSpec, n):
    """Sets needed so a set with spread below Gamma rarely looks >= (1+beta)Gamma."""
    g, b, L = w.gamma, w.beta, w.log_inv_theta
    return min(n * n / (2.0 * b * b * g * g) * L, 2.0 * n * (b + 3.0) / (3.0 * b * b * g) * L)


def lt(w: ThresholdSpec, n):
    """Sets needed so a set with spread >= Gamma rarely looks below (1-beta)Gamma."""
    return 2.0 * n / (w.beta * w.beta * w.gamma) * w.log_inv_theta


def log_D(gamma, n):
    """``ln((e n / k)^k)`` with ``k = floor(gamma)``: a log-count of sets of spread < gamma."""
    if gamma < 1:
        raise ValueError(f"log_D needs Gamma >= 1, got {gamma}")
    if gamma > n:
        raise ValueError(f"log_D needs Gamma <= n={n}, got {gamma}")
    k = math.floor(gamma)
    return k * (1.0 + math.log(n) - math.log(k))


def set_T(w1: ThresholdSpec, w2: ThresholdSpec, n):
    return math.ceil(max(ut(w1, n), lt(w2, n)))
