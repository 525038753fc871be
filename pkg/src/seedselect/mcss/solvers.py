"""Min-cost seed selection solvers built on RR-set sampling.

General costs (bi-criteria, ``f(S) >= (1 - alpha) eta`` w.h.p.):
    ``bcgc``  one-shot sample of T RR-sets, then greedy cover;
    ``tegc``  trial-and-error growth with a sequential feasibility test.
Uniform costs (``f(S) >= eta`` w.h.p.):
    ``aauc``  one-shot sample, cover to ``(1 + tau) eta``;
    ``ateuc`` adaptive shrinking of the slack ``alpha``.
``celf`` is the Monte-Carlo lazy greedy baseline.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import asdict, dataclass, field

from seedselect.graph import CostModel
from seedselect.mcss.bounds import ThresholdSpec, log_D, lt, set_T
from seedselect.mcss.greedy import mca
from seedselect.mcss.trial import feasibility_test
from seedselect.propagation import RrCollection, TriggeringModel, coverage_estimate, simulate_spread

ALGORITHMS = ("bcgc", "tegc", "aauc", "ateuc", "celf")

# RR-sets generated between cooperative time-limit checks
GROW_STEP = 1 << 17


class ConfigError(ValueError):
    """Invalid run parameter; ``param`` names the offending field."""

    def __init__(self, param, message):
        super().__init__(f"{param}: {message}")
        self.param = param


class TimeLimitExceeded(RuntimeError):
    pass


class Deadline:
    """Wall-clock cap checked between sampling batches, never inside one."""

    def __init__(self, seconds=None):
        self.end = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.end is not None and time.monotonic() > self.end:
            raise TimeLimitExceeded("time limit reached")


def parse_mu_mode(mode):
    """``"theory"`` or ``"exp:K"`` (``mu = n**K``) -> ``None`` or ``K``."""
    if mode == "theory":
        return None
    if isinstance(mode, str) and mode.startswith("exp:"):
        try:
            k = float(mode[4:])
        except ValueError:
            raise ConfigError("mu_mode", f"bad exponent in {mode!r}") from None
        if not k > 0:
            raise ConfigError("mu_mode", "exponent must be positive")
        return k
    raise ConfigError("mu_mode", f"expected 'theory' or 'exp:K', got {mode!r}")


@dataclass(frozen=True)
class RunConfig:
    """Solver parameters.  ``sigma`` and ``gamma`` default to ``alpha / 3``."""

    eta: float
    delta: float = 0.01
    alpha: float = 0.2
    sigma: float | None = None
    gamma: float | None = None
    tau: float = 0.02
    mu_mode: str = "exp:8"
    model: str = "ic"
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.sigma is None:
            object.__setattr__(self, "sigma", self.alpha / 3.0)
        if self.gamma is None:
            object.__setattr__(self, "gamma", self.alpha / 3.0)
        if not self.eta > 0:
            raise ConfigError("eta", f"must be positive, got {self.eta}")
        for name in ("delta", "alpha", "tau"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ConfigError(name, f"must lie in (0, 1), got {v}")
        for name in ("sigma", "gamma"):
            if not getattr(self, name) > 0:
                raise ConfigError(name, f"must be positive, got {getattr(self, name)}")
        if not self.sigma + self.gamma < self.alpha:
            raise ConfigError("sigma", f"sigma + gamma must be below alpha ({self.sigma} + {self.gamma} >= {self.alpha})")
        parse_mu_mode(self.mu_mode)
        if self.model not in ("ic", "lt"):
            raise ConfigError("model", f"must be 'ic' or 'lt', got {self.model!r}")
        if int(self.threads) < 1:
            raise ConfigError("threads", "must be >= 1")

    def check_eta(self, n):
        if not self.eta < n:
            raise ConfigError("eta", f"must lie in (0, n={n}), got {self.eta}")

    def log_mu(self, n, theory_gamma):
        k = parse_mu_mode(self.mu_mode)
        return log_D(theory_gamma, n) if k is None else k * math.log(n)


@dataclass
class SeedSolution:
    algorithm: str
    seeds: list
    cost: float
    coverage: float
    target: float
    rr_sets_generated: int
    budget: int
    iterations: int
    trace: list = field(default_factory=list)
    wall_time: float = 0.0
    infeasible: bool = False

    def to_dict(self):
        return asdict(self)


def _grow(coll, target, deadline):
    while len(coll) < target:
        if deadline is not None:
            deadline.check()
        coll.extend(min(target, len(coll) + GROW_STEP))


def _finish(name, coll, seeds, costs, target, generated, budget, iterations, trace, t0, infeasible=False):
    cov = coverage_estimate(coll, seeds) if len(coll) else 0.0
    return SeedSolution(
        algorithm=name,
        seeds=[int(u) for u in seeds],
        cost=costs(seeds),
        coverage=cov,
        target=float(target),
        rr_sets_generated=int(generated),
        budget=int(budget),
        iterations=iterations,
        trace=trace,
        wall_time=time.perf_counter() - t0,
        infeasible=infeasible or (not seeds and target > 0),
    )


def _collection(model, cfg):
    return RrCollection(model, seed=cfg.seed, threads=cfg.threads)


def _require_uniform(costs, name):
    if not costs.is_uniform:
        raise ConfigError("costs", f"{name} is defined for uniform costs only")


def bcgc_plan(n, cfg: RunConfig):
    """``(W1, W2, Lambda)`` for BCGC."""
    eta, a, g, d = cfg.eta, cfg.alpha, cfg.gamma, cfg.delta
    w1 = ThresholdSpec((1 - a) * eta, g / (1 - a), math.log(2 / d) + cfg.log_mu(n, (1 - a) * eta))
    w2 = ThresholdSpec(eta, cfg.sigma, math.log(2 / d))
    return w1, w2, (1 - a + g) * eta


def bcgc(model: TriggeringModel, costs: CostModel, cfg: RunConfig, deadline=None):
    """Sample T RR-sets once, then cover them to ``(1 - alpha + gamma) eta``."""
    t0 = time.perf_counter()
    n = model.n
    cfg.check_eta(n)
    w1, w2, lam = bcgc_plan(n, cfg)
    T = set_T(w1, w2, n)
    coll = _collection(model, cfg)
    _grow(coll, T, deadline)
    seeds = mca(coll, lam, costs)
    trace = [{"iteration": 1, "rr_sets": len(coll), "seeds": len(seeds)}]
    return _finish("bcgc", coll, seeds, costs, lam, len(coll), T, 1, trace, t0)


def tegc_plan(n, cfg: RunConfig):
    eta, a, d = cfg.eta, cfg.alpha, cfg.delta
    w1 = ThresholdSpec((1 - a) * eta, cfg.gamma / (1 - a), math.log(6 / d) + log_D((1 - a) * eta, n))
    w2 = ThresholdSpec(eta, cfg.sigma, math.log(6 / d))
    return w1, w2, (1 - a + cfg.gamma) * eta


def tegc(model: TriggeringModel, costs: CostModel, cfg: RunConfig, deadline=None):
    """Trial-and-error: grow, cover, test; halve theta after each failed test.

    Every RR-set a failed test drew joins the pool, and tests are capped at
    the remaining budget, so at most T sets are ever generated.
    """
    t0 = time.perf_counter()
    n = model.n
    cfg.check_eta(n)
    eta, a = cfg.eta, cfg.alpha
    w1, w2, lam = tegc_plan(n, cfg)
    T = set_T(w1, w2, n)
    kappa = cfg.gamma / (2 * (1 - a))
    theta = cfg.delta / 3
    coll = _collection(model, cfg)
    trace = []
    it = 0
    while len(coll) <= T:
        it += 1
        grow_to = min(T, math.ceil(lt(ThresholdSpec.from_theta(eta, cfg.sigma, theta / 3), n)))
        _grow(coll, max(len(coll), grow_to), deadline)
        seeds = mca(coll, lam, costs)
        entry = {"iteration": it, "rr_sets": len(coll), "theta": theta, "seeds": len(seeds), "test": None}
        trace.append(entry)
        if len(coll) == T:
            return _finish("tegc", coll, seeds, costs, lam, len(coll), T, it, trace, t0)
        v = feasibility_test(coll, seeds, kappa, (1 - a) * eta, 2 * theta / 3, T - len(coll), deadline)
        entry["test"] = {"passed": v.passed, "ell": v.ell, "M": v.M, "generated": v.generated}
        if v.passed:
            return _finish("tegc", coll, seeds, costs, lam, len(coll) + v.generated, T, it, trace, t0)
        coll.append(v.rr_sets)
        theta /= 2
    raise AssertionError("RR-set pool exceeded its budget")


def aauc_plan(n, cfg: RunConfig):
    eta, tau, d = cfg.eta, cfg.tau, cfg.delta
    if parse_mu_mode(cfg.mu_mode) is None:
        rho = (n - eta) / (2 * n * eta + eta)
        if tau > rho:
            raise ConfigError("tau", f"theory mode needs tau <= (n - eta)/(2 n eta + eta) = {rho:.6g}")
    w1 = ThresholdSpec(eta, tau, math.log(2 / d) + cfg.log_mu(n, eta))
    w2 = ThresholdSpec(eta, tau, math.log(2 / d))
    return w1, w2, (1 + tau) * eta


def aauc(model: TriggeringModel, costs: CostModel, cfg: RunConfig, deadline=None):
    """Uniform costs: sample T RR-sets once, cover to ``(1 + tau) eta``."""
    t0 = time.perf_counter()
    _require_uniform(costs, "AAUC")
    n = model.n
    cfg.check_eta(n)
    w1, w2, lam = aauc_plan(n, cfg)
    T = set_T(w1, w2, n)
    coll = _collection(model, cfg)
    _grow(coll, T, deadline)
    seeds = mca(coll, lam, costs)
    trace = [{"iteration": 1, "rr_sets": len(coll), "seeds": len(seeds)}]
    return _finish("aauc", coll, seeds, costs, lam, len(coll), T, 1, trace, t0, infeasible=n < lam)


def ateuc_plan(n, cfg: RunConfig):
    eta, d = cfg.eta, cfg.delta
    rho = (n - eta) / (2 * n * eta + eta)
    w1 = ThresholdSpec(eta, rho, math.log(6 / d) + log_D(eta, n))
    w2 = ThresholdSpec(eta, rho, math.log(6 / d))
    return w1, w2, rho


def ateuc(model: TriggeringModel, costs: CostModel, cfg: RunConfig, deadline=None):
    """Uniform costs, adaptive: shrink the slack ``alpha`` until the covers agree.

    Covers ``S1`` (to ``(1 - alpha) eta``) and ``S2`` (to ``(1 + alpha) eta``)
    are computed on the current pool; when ``|S2| <= 2 |S1|`` the set ``S2``
    is tested and returned on a pass.  At the full budget ``alpha`` drops to
    ``rho = (n - eta) / (2 n eta + eta)``.
    """
    t0 = time.perf_counter()
    _require_uniform(costs, "ATEUC")
    n = model.n
    cfg.check_eta(n)
    eta = cfg.eta
    w1, w2, rho = ateuc_plan(n, cfg)
    T = set_T(w1, w2, n)
    alpha = cfg.alpha
    theta = cfg.delta / 3
    coll = _collection(model, cfg)
    trace = []
    it = 0
    s2 = []
    while len(coll) <= T:
        it += 1
        grow_to = min(T, math.ceil(lt(ThresholdSpec.from_theta(eta, alpha, theta / 3), n)))
        _grow(coll, max(len(coll), grow_to), deadline)
        if len(coll) == T:
            alpha = rho
        s1 = mca(coll, (1 - alpha) * eta, costs)
        s2 = mca(coll, (1 + alpha) * eta, costs)
        entry = {"iteration": it, "rr_sets": len(coll), "theta": theta, "alpha": alpha,
                 "s1": len(s1), "s2": len(s2), "test": None}
        trace.append(entry)
        if s2 and len(s2) <= 2 * len(s1):
            if len(coll) == T:
                return _finish("ateuc", coll, s2, costs, (1 + alpha) * eta, len(coll), T, it, trace, t0)
            v = feasibility_test(coll, s2, alpha / 2, eta, 2 * theta / 3, T - len(coll), deadline)
            entry["test"] = {"passed": v.passed, "ell": v.ell, "M": v.M, "generated": v.generated}
            if v.passed:
                return _finish("ateuc", coll, s2, costs, (1 + alpha) * eta, len(coll) + v.generated, T, it, trace,
                               t0)
            coll.append(v.rr_sets)
            theta /= 2
            continue
        if len(coll) == T:
            # alpha is pinned to rho from here on, so another pass would repeat this one
            break
        alpha /= math.sqrt(2)
        theta /= 2
    return _finish("ateuc", coll, [], costs, (1 + alpha) * eta, len(coll), T, it, trace, t0, infeasible=True)


def celf(model: TriggeringModel, costs: CostModel, target, sims=10_000, seed=0, threads=1, deadline=None):
    """Cost-normalised lazy greedy on Monte-Carlo spread estimates.

    All estimates share the same ``sims`` simulation streams, which makes
    the estimated spread a fixed coverage function of the seed set, so the
    lazy bound is exact.
    """
    t0 = time.perf_counter()
    n = model.n
    c = costs.costs

    def est(nodes):
        return simulate_spread(model, nodes, sims, seed=seed, threads=threads)[0]

    chosen = []
    current = 0.0
    evaluations = 0
    trace = []
    if target > 0 and target <= n:
        heap = []
        for u in range(n):
            if deadline is not None:
                deadline.check()
            gain = min(est([u]), target) / c[u]
            evaluations += 1
            heap.append((-gain, u, 0))
        heapq.heapify(heap)
        while current < target and heap:
            neg, u, stamp = heapq.heappop(heap)
            if stamp == len(chosen):
                if -neg <= 0:
                    break
                chosen.append(u)
                current = est(chosen)
                evaluations += 1
                trace.append({"iteration": len(chosen), "node": u, "estimate": current})
                continue
            if deadline is not None:
                deadline.check()
            value = est(chosen + [u])
            evaluations += 1
            heapq.heappush(heap, (-((min(value, target) - current) / c[u]), u, len(chosen)))
    return SeedSolution(
        algorithm="celf",
        seeds=chosen,
        cost=costs(chosen),
        coverage=current,
        target=float(target),
        rr_sets_generated=0,
        budget=0,
        iterations=evaluations,
        trace=trace,
        wall_time=time.perf_counter() - t0,
        infeasible=target > 0 and current < target,
    )


def solve(algorithm, model, costs, cfg, deadline=None, celf_sims=10_000):
    """Dispatch by name; ``celf`` covers to ``(1 - alpha) eta``."""
    if algorithm == "bcgc":
        return bcgc(model, costs, cfg, deadline)
    if algorithm == "tegc":
        return tegc(model, costs, cfg, deadline)
    if algorithm == "aauc":
        return aauc(model, costs, cfg, deadline)
    if algorithm == "ateuc":
        return ateuc(model, costs, cfg, deadline)
    if algorithm == "celf":
        cfg.check_eta(model.n)
        return celf(model, costs, (1 - cfg.alpha) * cfg.eta, celf_sims, cfg.seed, cfg.threads, deadline)
    raise ConfigError("algo", f"unknown algorithm {algorithm!r}")


def plan(algorithm, n, cfg):
    """``(W1, W2)`` the algorithm sizes its budget with; ``T = set_T(W1, W2)``."""
    if algorithm == "bcgc":
        return bcgc_plan(n, cfg)[:2]
    if algorithm == "tegc":
        return tegc_plan(n, cfg)[:2]
    if algorithm == "aauc":
        return aauc_plan(n, cfg)[:2]
    if algorithm == "ateuc":
        return ateuc_plan(n, cfg)[:2]
    raise ConfigError("algo", f"no RR-set budget for {algorithm!r}")
