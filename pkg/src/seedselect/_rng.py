"""Counter-based random streams (SplitMix64).

Every random draw in the package is a pure function of a 64-bit key, so a
sample depends only on ``(base seed, domain, ordinal)`` and never on which
thread produced it or in what order.
"""

import numba as nb
import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 1.0 / 9007199254740992.0

# stream domains, mixed into the key so different uses never share draws
DOMAIN_RR = 1
DOMAIN_SIM = 2
DOMAIN_COST = 3


@nb.njit(nb.uint64(nb.uint64), cache=True, nogil=True)
def mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@nb.njit(nb.uint64(nb.uint64, nb.uint64, nb.uint64), cache=True, nogil=True)
def stream_key(seed, domain, ordinal):
    """Key of substream ``ordinal`` within ``domain`` under ``seed``."""
    k = mix64(seed + GOLDEN * (domain + np.uint64(1)))
    return mix64(k ^ mix64(ordinal + GOLDEN))


@nb.njit(nb.float64(nb.uint64), cache=True, nogil=True)
def to_unit(z):
    # top 53 bits -> [0, 1)
    return np.float64(z >> _S11) * _INV53


@nb.njit(nb.float64(nb.uint64, nb.uint64), cache=True, nogil=True)
def keyed_uniform(key, index):
    """Uniform [0, 1) draw number ``index`` of the stream ``key``."""
    return to_unit(mix64(key + GOLDEN * (index + np.uint64(1))))


@nb.njit(cache=True)
def _costs_kernel(seed, n):
    out = np.empty(n, dtype=np.float64)
    key = stream_key(np.uint64(seed), np.uint64(DOMAIN_COST), np.uint64(0))
    for v in range(n):
        out[v] = 1.0 - keyed_uniform(key, np.uint64(v))
    return out


def uniform_open_closed(seed, n):
    """``n`` draws from Uniform(0, 1], draw ``v`` keyed by ``(seed, v)``."""
    return _costs_kernel(np.uint64(seed & 0xFFFFFFFFFFFFFFFF), n)
