import numpy as np
import pytest

from seedselect.graph import heavy_tailed_digraph
from seedselect.mcss.trial import feasibility_test, test_thresholds as thresholds
from seedselect.propagation import RrCollection, TriggeringModel, generate_rr_sets


@pytest.fixture
def coll(path_half):
    return RrCollection(TriggeringModel(path_half), seed=3)


def test_zero_budget_returns_nothing(coll):
    v = feasibility_test(coll, [0], 0.5, 1.0, 0.1, 0)
    assert not v.passed and v.generated == 0


def test_budget_below_cap_hands_back_L_sets(coll):
    ell, M = thresholds(0.5, 1.0, 0.1, 3)
    v = feasibility_test(coll, [0, 1, 2], 0.5, 1.0, 0.1, M)
    assert not v.passed and v.generated == M and v.steps == 0


def test_full_set_passes_after_exactly_ell(coll):
    ell, M = thresholds(0.5, 1.0, 0.1, 3)
    v = feasibility_test(coll, [0, 1, 2], 0.5, 1.0, 0.1, M + 1)
    assert v.passed and v.generated == ell == v.steps


def test_empty_set_fails_after_M(coll):
    ell, M = thresholds(0.5, 1.0, 0.1, 3)
    v = feasibility_test(coll, [], 0.5, 1.0, 0.1, M + 10)
    assert not v.passed and v.generated == M


def test_sets_continue_caller_ordinals(coll):
    coll.extend(37)
    v = feasibility_test(coll, [0], 0.5, 1.0, 0.1, 10 ** 6)
    assert v.rr_sets.start == 37
    ref = generate_rr_sets(coll.model, coll.seed, 37, v.generated)
    assert np.array_equal(v.rr_sets.members, ref.members)
    coll.append(v.rr_sets)
    assert len(coll) == 37 + v.generated


def test_stops_at_the_ell_th_hit():
    m = TriggeringModel(heavy_tailed_digraph(300, 2000, seed=4))
    coll = RrCollection(m, seed=9)
    nodes = [0, 1, 2]
    v = feasibility_test(coll, nodes, 0.3, 20.0, 0.05, 10 ** 8)
    hits = v.rr_sets.hits(nodes, 300)
    if v.passed:
        assert hits.sum() == v.ell and hits[-1]
    else:
        assert v.generated == v.M and hits.sum() < v.ell


def test_domain_errors(coll):
    for args in [(0, 1.0, 0.1, 5), (0.5, 0.0, 0.1, 5), (0.5, 4.0, 0.1, 5), (0.5, 1.0, 1.0, 5), (0.5, 1.0, 0.1, -1)]:
        with pytest.raises(ValueError):
            feasibility_test(coll, [0], *args)
