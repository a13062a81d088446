"""Fixed benchmark networks and seeded random placements with path-loss gains.

Random draws use ``numpy.random.Generator(PCG64(seed))`` in this order:
transmitter coordinates (``num_links x 2`` uniforms on the square), receiver
angles (``num_links`` uniforms on ``[0, 2 pi)``), link lengths
(``num_links`` uniforms on the length range). Changing that order changes
every generated instance.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mapel.network import InvalidInputError, Network

MIN_DISTANCE_M = 1e-6

G1 = np.array([
    [0.4310, 0.0002, 0.2605, 0.0039],
    [0.0002, 0.3018, 0.0008, 0.0054],
    [0.0129, 0.0005, 0.4266, 0.1007],
    [0.0011, 0.0031, 0.0099, 0.0634],
])

G2 = np.array([
    [0.1476, 0.0105, 0.0018, 0.0402],
    [0.0034, 0.1784, 0.0013, 0.2472],
    [0.0014, 0.0017, 0.3164, 0.0046],
    [0.0048, 0.4526, 0.0012, 0.6290],
])

FIXTURE_P_MAX_W = np.array([7e-4, 8e-4, 9e-4, 1e-3])
FIXTURE_NOISE_W = 1e-7
FIXTURE_WEIGHTS = np.array([1 / 6, 1 / 6, 1 / 3, 1 / 3])


def paper_fixture(name: str) -> Network:
    """The two 4-link benchmark networks, ``"g1"`` and ``"g2"``.

    Both use caps of 0.7/0.8/0.9/1.0 mW, 0.1 uW noise, weights
    (1/6, 1/6, 1/3, 1/3) and no rate floors.
    """
    gains = {"g1": G1, "g2": G2}.get(name.lower())
    if gains is None:
        raise InvalidInputError(f"unknown fixture {name!r}; expected 'g1' or 'g2'")
    return Network(gains, np.full(4, FIXTURE_NOISE_W), FIXTURE_P_MAX_W, FIXTURE_WEIGHTS)


@dataclass(frozen=True)
class TopologySpec:
    num_links: int
    seed: int = 0
    area_side_m: float = 10.0
    link_length_range_m: tuple = (1.0, 2.0)
    path_loss_exponent: float = 4.0
    p_max_w: float | tuple = 1e-3
    noise_w: float = 1e-7
    equal_weights: bool = True
    r_min_bps_hz: float = 0.0
    diagonal_override: tuple | None = None

    def __post_init__(self):
        lo, hi = self.link_length_range_m
        if self.num_links < 1:
            raise InvalidInputError("num_links must be at least 1")
        if lo > hi or lo <= 0:
            raise InvalidInputError("link length range must satisfy 0 < min <= max")
        if self.path_loss_exponent <= 0:
            raise InvalidInputError("path loss exponent must be positive")
        if self.diagonal_override is not None and len(self.diagonal_override) != self.num_links:
            raise InvalidInputError("diagonal_override needs one entry per link")


def placement(spec: TopologySpec) -> tuple[np.ndarray, np.ndarray]:
    """Transmitter and receiver coordinates, each ``num_links x 2`` (meters)."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    m = spec.num_links
    tx = rng.uniform(0.0, spec.area_side_m, size=(m, 2))
    angle = rng.uniform(0.0, 2 * np.pi, size=m)
    length = rng.uniform(*spec.link_length_range_m, size=m)
    rx = tx + length[:, None] * np.column_stack([np.cos(angle), np.sin(angle)])
    return tx, rx


def random_network(spec: TopologySpec) -> Network:
    """Network with ``G_ij = d(T_i, R_j) ** -exponent``; receivers may leave the square."""
    tx, rx = placement(spec)
    dist = np.linalg.norm(tx[:, None, :] - rx[None, :, :], axis=2)
    gains = np.maximum(dist, MIN_DISTANCE_M) ** -spec.path_loss_exponent
    if spec.diagonal_override is not None:
        np.fill_diagonal(gains, spec.diagonal_override)
    m = spec.num_links
    p_max = np.broadcast_to(np.asarray(spec.p_max_w, dtype=float), (m,))
    if spec.equal_weights:
        weights = np.ones(m)
    else:
        weights = np.random.Generator(np.random.PCG64([spec.seed, 1])).uniform(0.1, 1.0, m)
    return Network(gains, np.full(m, spec.noise_w), p_max, weights, np.full(m, spec.r_min_bps_hz))
