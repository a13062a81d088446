import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from mapel.network import (FeasibilityReason, InvalidInputError, Network, check_feasibility,
                           fraction_fg, phi, rate_matrices, sinr, weighted_throughput)

# Eq. (1) evaluated link by link with plain loops at p = p_max on G1
G1_SINR_AT_PMAX = [23.261372397841175, 63.70448548812666, 1.9894295041193844, 0.6483943546737575]


def test_sinr_single_link(single_link):
    assert sinr(single_link, [1.0]) == pytest.approx([1.0])


def test_sinr_zero_power(g1):
    assert np.all(sinr(g1, np.zeros(4)) == 0.0)


def test_sinr_g1_at_cap(g1):
    assert sinr(g1, g1.p_max) == pytest.approx(G1_SINR_AT_PMAX, rel=1e-12)


def test_sinr_dimension_mismatch(g1):
    with pytest.raises(InvalidInputError):
        sinr(g1, [1.0, 2.0])


def test_weighted_throughput_trivial(single_link, g1):
    assert weighted_throughput(single_link, [1.0]) == pytest.approx(1.0)
    assert weighted_throughput(g1, np.zeros(4)) == 0.0


def test_fraction_fg(single_link, g1):
    assert np.all(fraction_fg(g1, np.zeros(4)) == 1.0)
    assert fraction_fg(single_link, [1.0]) == pytest.approx([2.0])
    assert fraction_fg(g1, g1.p_max) == pytest.approx(1 + np.array(G1_SINR_AT_PMAX), rel=1e-12)


def test_phi_examples():
    net2 = Network(np.eye(2), [1, 1], [1, 1], [0.5, 0.5])
    assert phi(net2, [1, 1]) == 1.0
    assert phi(net2, [4, 9]) == pytest.approx(6.0)
    assert phi(Network([[1]], [1], [1], [1]), [2]) == pytest.approx(2.0)
    with pytest.raises(InvalidInputError):
        phi(net2, [0.0, 1.0])


def test_weights_normalized():
    net = Network(np.eye(3), [1] * 3, [1] * 3, [1, 2, 5])
    assert net.weights.sum() == pytest.approx(1.0)
    assert net.weights == pytest.approx([0.125, 0.25, 0.625])


@pytest.mark.parametrize("kw", [
    dict(gains=[[0.0, 1], [1, 1]]),
    dict(gains=[[1, -1], [1, 1]]),
    dict(noise=[0, 1]),
    dict(p_max=[1, -1]),
    dict(weights=[0, 1]),
    dict(r_min=[-0.1, 0]),
    dict(noise=[1, 1, 1]),
])
def test_network_validation(kw):
    base = dict(gains=np.eye(2), noise=[1, 1], p_max=[1, 1], weights=[1, 1], r_min=[0, 0])
    base.update(kw)
    with pytest.raises(InvalidInputError):
        Network(**base)


def test_network_is_immutable(g1):
    with pytest.raises(ValueError):
        g1.gains[0, 0] = 1.0


def test_feasibility_zero_rates(g1):
    rep = check_feasibility(g1)
    assert rep.feasible and rep.reason is FeasibilityReason.FEASIBLE
    assert rep.spectral_radius_b == 0.0
    assert np.all(rep.p_hat == 0.0)
    b, _ = rate_matrices(g1)
    assert not np.any(b)


def test_feasibility_spectral_radius_two():
    net = Network(np.ones((2, 2)), [1, 1], [1, 1], [1, 1], r_min=[math.log2(3)] * 2)
    b, _ = rate_matrices(net)
    assert b == pytest.approx(np.array([[0, 2], [2, 0]]))
    rep = check_feasibility(net)
    assert not rep.feasible
    assert rep.reason is FeasibilityReason.SPECTRAL_RADIUS_EXCEEDS_ONE
    assert rep.spectral_radius_b == pytest.approx(2.0)


def test_feasibility_single_link():
    rep = check_feasibility(Network([[1]], [0.1], [1], [1], r_min=[1]))
    assert rep.feasible
    assert rep.p_hat == pytest.approx([0.1])


def test_feasibility_power_cap():
    rep = check_feasibility(Network([[1]], [0.1], [0.05], [1], r_min=[1]))
    assert not rep.feasible and rep.reason is FeasibilityReason.POWER_CAP_VIOLATED
    assert rep.p_hat == pytest.approx([0.1])


def test_feasibility_boundary_is_infeasible():
    # rho(B) exactly 1: (I - B) singular
    net = Network(np.ones((2, 2)), [1, 1], [10, 10], [1, 1], r_min=[1, 1])
    rep = check_feasibility(net)
    assert rep.spectral_radius_b == pytest.approx(1.0)
    assert not rep.feasible


# --- properties -------------------------------------------------------------

@st.composite
def networks(draw, max_m=4, rates=False):
    m = draw(st.integers(1, max_m))
    pos = st.floats(1e-3, 10.0)
    gains = draw(arrays(float, (m, m), elements=st.floats(0.0, 2.0)))
    gains[np.diag_indices(m)] = draw(arrays(float, m, elements=pos))
    noise = draw(arrays(float, m, elements=st.floats(1e-3, 1.0)))
    p_max = draw(arrays(float, m, elements=pos))
    w = draw(arrays(float, m, elements=st.floats(0.1, 1.0)))
    r = draw(arrays(float, m, elements=st.floats(0.0, 2.0))) if rates else np.zeros(m)
    return Network(gains, noise, p_max, w, r)


@st.composite
def net_and_power(draw, rates=False):
    net = draw(networks(rates=rates))
    frac = draw(arrays(float, net.size, elements=st.floats(0.0, 1.0)))
    return net, frac * net.p_max


@given(net_and_power())
def test_throughput_equals_log_phi(case):
    net, p = case
    lhs = weighted_throughput(net, p)
    rhs = math.log2(phi(net, fraction_fg(net, p)))
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


@given(net_and_power(), st.data())
def test_sinr_monotone_in_own_power(case, data):
    net, p = case
    i = data.draw(st.integers(0, net.size - 1))
    q = p.copy()
    q[i] = p[i] + data.draw(st.floats(0.01, 1.0)) * net.p_max[i]
    before, after = sinr(net, p), sinr(net, q)
    assert after[i] > before[i]
    others = np.arange(net.size) != i
    assert np.all(after[others] <= before[others] * (1 + 1e-12))


@given(networks())
def test_zero_rate_floors_always_feasible(net):
    rep = check_feasibility(net)
    assert rep.feasible and np.all(rep.p_hat == 0)


@settings(max_examples=200)
@given(networks(rates=True))
def test_p_hat_meets_targets(net):
    rep = check_feasibility(net)
    if rep.feasible:
        assert np.all(fraction_fg(net, rep.p_hat) >= np.exp2(net.r_min) - 1e-9)
        assert np.all(rep.p_hat >= 0) and np.all(rep.p_hat <= net.p_max)
    else:
        assert rep.p_hat is None or np.any(rep.p_hat > net.p_max) or np.any(rep.p_hat < 0)
