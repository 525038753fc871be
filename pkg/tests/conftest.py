import numpy as np
import pytest

from seedselect.graph import from_edges
from seedselect.propagation import TriggeringModel

ACCEPTANCE_LINES = []


def report(criterion, ok, detail=""):
    """Record one acceptance verdict line (printed in the terminal summary)."""
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    print(ACCEPTANCE_LINES[-1])
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def path_certain():
    """a -> b with p = 1."""
    return from_edges(2, [(0, 1, 1.0)])


@pytest.fixture
def path_half():
    """a -> b -> c with p = 0.5 on both edges."""
    return from_edges(3, [(0, 1, 0.5), (1, 2, 0.5)])


@pytest.fixture
def star():
    """Centre 0 -> leaves 1, 2, 3 with p = 1."""
    return from_edges(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def ic():
    return lambda g: TriggeringModel(g, "ic")


def random_graph(rng, n, m, wc=False):
    pairs = set()
    while len(pairs) < m:
        u, v = rng.integers(0, n, size=2)
        if u != v:
            pairs.add((int(u), int(v)))
    edges = sorted(pairs)
    if wc:
        d_in = np.bincount([v for _, v in edges], minlength=n)
        return from_edges(n, [(u, v, 1.0 / d_in[v]) for u, v in edges])
    return from_edges(n, [(u, v, float(rng.uniform(0.05, 0.95))) for u, v in edges])
