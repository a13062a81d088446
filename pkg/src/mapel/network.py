"""Problem instances, SINR evaluation and the minimum-rate feasibility check.

Conventions: ``gains[i, j]`` is the channel gain from transmitter ``i`` to
receiver ``j``, so the interference seen at receiver ``i`` is
``sum_{j != i} gains[j, i] * p[j]``. Powers and noise are in watts.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from mapel.numerics import SingularMatrixError, solve_linear, spectral_radius

# rho(B) at or above this counts as infeasible; (I - B) is singular at 1.
RHO_FEASIBLE_LIMIT = 1.0 - 1e-10


class InvalidInputError(ValueError):
    """Raised for malformed instances or arguments."""


class InfeasibleRatesError(RuntimeError):
    """Raised when an operation requires rate targets that cannot be met."""


def _readonly(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Network:
    """An interference network: gains, noise, power caps, weights and rate floors.

    Weights are normalized to sum to one on construction.
    """

    gains: np.ndarray
    noise: np.ndarray
    p_max: np.ndarray
    weights: np.ndarray
    r_min: np.ndarray = field(default=None)

    def __post_init__(self):
        gains = np.array(self.gains, dtype=float)
        if gains.ndim != 2 or gains.shape[0] != gains.shape[1] or gains.shape[0] == 0:
            raise InvalidInputError(f"gains must be a non-empty square matrix, got shape {gains.shape}")
        m = gains.shape[0]
        r_min = np.zeros(m) if self.r_min is None else self.r_min
        vecs = {}
        for name, val in (("noise", self.noise), ("p_max", self.p_max),
                          ("weights", self.weights), ("r_min", r_min)):
            v = np.array(val, dtype=float).reshape(-1)
            if v.shape != (m,):
                raise InvalidInputError(f"{name} must have length {m}, got {v.shape[0]}")
            if not np.all(np.isfinite(v)):
                raise InvalidInputError(f"{name} contains non-finite values")
            vecs[name] = v
        if not np.all(np.isfinite(gains)) or np.any(gains < 0):
            raise InvalidInputError("gains must be finite and nonnegative")
        if np.any(np.diag(gains) <= 0):
            raise InvalidInputError("diagonal gains must be strictly positive")
        for name in ("noise", "p_max", "weights"):
            if np.any(vecs[name] <= 0):
                raise InvalidInputError(f"{name} must be strictly positive")
        if np.any(vecs["r_min"] < 0):
            raise InvalidInputError("r_min must be nonnegative")
        total = vecs["weights"].sum()
        if abs(total - 1.0) > 4 * np.finfo(float).eps:  # keeps normalization idempotent
            vecs["weights"] = vecs["weights"] / total

        object.__setattr__(self, "gains", _readonly(gains))
        for name, v in vecs.items():
            object.__setattr__(self, name, _readonly(v))

    @property
    def size(self) -> int:
        return self.gains.shape[0]

    @property
    def direct_gains(self) -> np.ndarray:
        return np.diag(self.gains)

    @property
    def cross_gains(self) -> np.ndarray:
        """Matrix ``C`` with ``C[i, j] = gains[j, i]`` for ``j != i`` and zero diagonal.

        ``C @ p + noise`` is the interference-plus-noise vector.
        """
        c = self.gains.T.copy()
        np.fill_diagonal(c, 0.0)
        return c

    def sinr_targets(self) -> np.ndarray:
        """Minimum SINR per link, ``2**r_min - 1``."""
        return np.exp2(self.r_min) - 1.0

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return all(np.array_equal(getattr(self, k), getattr(other, k))
                   for k in ("gains", "noise", "p_max", "weights", "r_min"))

    __hash__ = None


def _check_power(net: Network, p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (net.size,):
        raise InvalidInputError(f"power vector must have shape ({net.size},), got {p.shape}")
    return p


def interference_plus_noise(net: Network, p) -> np.ndarray:
    """``g_i(p) = sum_{j != i} G_ji p_j + n_i``."""
    p = _check_power(net, p)
    return net.cross_gains @ p + net.noise


def sinr(net: Network, p) -> np.ndarray:
    """Per-link SINR ``G_ii p_i / (sum_{j != i} G_ji p_j + n_i)``."""
    p = _check_power(net, p)
    return net.direct_gains * p / interference_plus_noise(net, p)


def fraction_fg(net: Network, p) -> np.ndarray:
    """``f_i(p) / g_i(p)``, i.e. ``1 + sinr``."""
    p = _check_power(net, p)
    g = interference_plus_noise(net, p)
    return (net.direct_gains * p + g) / g


def weighted_throughput(net: Network, p) -> float:
    """Weighted sum rate in bps/Hz."""
    return float(np.dot(net.weights, np.log2(fraction_fg(net, p))))


def log_phi(net: Network, z) -> float:
    """Natural log of ``phi``; the form used for comparisons to avoid overflow."""
    z = np.asarray(z, dtype=float)
    if z.shape != (net.size,):
        raise InvalidInputError(f"z must have shape ({net.size},), got {z.shape}")
    if np.any(z <= 0):
        raise InvalidInputError("phi is defined for strictly positive z only")
    return float(np.dot(net.weights, np.log(z)))


def phi(net: Network, z) -> float:
    """Weighted geometric product ``prod_i z_i ** w_i``."""
    return float(np.exp(log_phi(net, z)))


class FeasibilityReason(enum.Enum):
    FEASIBLE = "Feasible"
    SPECTRAL_RADIUS_EXCEEDS_ONE = "SpectralRadiusExceedsOne"
    POWER_CAP_VIOLATED = "PowerCapViolated"


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    spectral_radius_b: float
    reason: FeasibilityReason
    p_hat: np.ndarray | None = None


def rate_matrices(net: Network) -> tuple[np.ndarray, np.ndarray]:
    """The pair ``(B, u)`` such that the rate floors read ``p >= B p + u``."""
    gmin = net.sinr_targets()
    d = net.direct_gains
    b = (gmin / d)[:, None] * net.cross_gains
    u = gmin * net.noise / d
    return b, u


def check_feasibility(net: Network) -> FeasibilityReport:
    """Decide whether the rate floors ``r_min`` can be met within the power caps.

    Infeasible when the Perron root of ``B`` reaches one; otherwise the
    minimal power vector ``p_hat = (I - B)^-1 u`` must fit under ``p_max``.
    """
    b, u = rate_matrices(net)
    rho = spectral_radius(b)
    if rho >= RHO_FEASIBLE_LIMIT:
        return FeasibilityReport(False, rho, FeasibilityReason.SPECTRAL_RADIUS_EXCEEDS_ONE)
    try:
        p_hat = solve_linear(np.eye(net.size) - b, u)
    except SingularMatrixError as exc:
        raise ArithmeticError(f"(I - B) singular although rho(B) = {rho:.3g} < 1") from exc
    # p_hat >= 0 holds analytically when rho < 1; only round-off goes below.
    ok = bool(np.all(p_hat >= -1e-12 * net.p_max) and np.all(p_hat <= net.p_max))
    if ok:
        p_hat = np.maximum(p_hat, 0.0)
    p_hat.setflags(write=False)
    reason = FeasibilityReason.FEASIBLE if ok else FeasibilityReason.POWER_CAP_VIOLATED
    return FeasibilityReport(ok, rho, reason, p_hat)
