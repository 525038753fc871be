"""Min-cost seed selection algorithms."""

from seedselect.mcss.bounds import ThresholdSpec, log_D, lt, set_T, ut
from seedselect.mcss.greedy import mca
from seedselect.mcss.solvers import (
    ALGORITHMS,
    ConfigError,
    Deadline,
    RunConfig,
    SeedSolution,
    TimeLimitExceeded,
    aauc,
    ateuc,
    bcgc,
    celf,
    plan,
    solve,
    tegc,
)
from seedselect.mcss.trial import TestVerdict, feasibility_test, test_thresholds

__all__ = [
    "ALGORITHMS", "ConfigError", "Deadline", "RunConfig", "SeedSolution", "TestVerdict", "ThresholdSpec",
    "TimeLimitExceeded", "aauc", "ateuc", "bcgc", "celf", "feasibility_test", "log_D", "lt", "mca", "plan",
    "set_T", "solve", "tegc", "test_thresholds", "ut",
]
