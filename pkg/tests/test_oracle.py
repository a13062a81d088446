import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mapel.network import InvalidInputError, Network, weighted_throughput
from mapel.oracle import (EmptyGridError, any_point_meets, brute_maxmin_sinr,
                          grid_search)
from mapel.topology import TopologySpec, random_network

# 0.5 * log2(101): one link at full power, the other silent
DOMINANCE_OPT = 3.3291057413758973


def test_single_link(single_link):
    res = grid_search(single_link, 11)
    assert res.p_best == pytest.approx([1.0])
    assert res.objective_bps_hz == pytest.approx(1.0)
    assert res.points_evaluated == 11


def test_isolated_links_run_at_cap():
    net = Network(np.diag([1.0, 2.0]), [0.1, 0.1], [0.5, 2.0], [1, 3])
    res = grid_search(net, 21)
    assert res.p_best == pytest.approx(net.p_max)


def test_dominance_pair(dominance2):
    res = grid_search(dominance2, 501)
    # (0, 1) precedes (1, 0) lexicographically
    assert res.p_best == pytest.approx([0.0, 1.0])
    assert res.objective_bps_hz == pytest.approx(DOMINANCE_OPT, abs=1e-12)
    assert res.points_evaluated == 501 ** 2


def test_refuses_large_or_coarse(dominance2):
    big = random_network(TopologySpec(num_links=5, seed=0))
    with pytest.raises(InvalidInputError):
        grid_search(big, 3)
    with pytest.raises(InvalidInputError):
        grid_search(dominance2, 1)


def test_empty_grid():
    net = Network([[1.0, 0.5], [0.5, 1.0]], [0.1, 0.1], [1, 1], [1, 1], r_min=[2.0, 2.0])
    with pytest.raises(EmptyGridError):
        grid_search(net, 11)


def test_rate_floors_filter_points():
    net = Network([[1.0, 0.5], [0.5, 1.0]], [0.1, 0.1], [1, 1], [1, 1], r_min=[1.0, 1.0])
    res = grid_search(net, 101)
    sinr_min = 1.0
    g = net.direct_gains * res.p_best / (net.cross_gains @ res.p_best + net.noise)
    assert np.all(g >= sinr_min - 1e-12)
    assert any_point_meets(net, [2.0, 2.0], 101)
    assert not any_point_meets(net, [3.0, 3.0], 101)


def test_brute_maxmin_symmetric(sym2):
    val, p = brute_maxmin_sinr(sym2, 400)
    assert val == pytest.approx(1 / 0.11)
    assert p == pytest.approx([1.0, 1.0])


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.integers(5, 20))
def test_refinement_never_worse(seed, r):
    net = random_network(TopologySpec(num_links=2, seed=seed))
    coarse = grid_search(net, r)
    fine = grid_search(net, 2 * r - 1)
    assert fine.objective_bps_hz >= coarse.objective_bps_hz
    assert coarse.objective_bps_hz == weighted_throughput(net, coarse.p_best)
