"""Exhaustive grid search over the power box, used as an independent check."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mapel.network import InvalidInputError, Network, weighted_throughput

MAX_LINKS = 4
_CHUNK = 1 << 18


@dataclass(frozen=True)
class GridResult:
    p_best: np.ndarray
    objective_bps_hz: float
    points_evaluated: int


class EmptyGridError(RuntimeError):
    """No grid point satisfies the rate floors."""


def _axes(net: Network, resolution: int):
    return [np.linspace(0.0, pm, resolution) for pm in net.p_max]


def _grid_chunks(axes):
    """Yield ``(k, M)`` blocks of grid points in lexicographic order."""
    m = len(axes)
    r = len(axes[0])
    total = r ** m
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total))
        digits = np.empty((idx.size, m), dtype=np.int64)
        rem = idx
        for j in range(m - 1, -1, -1):
            digits[:, j] = rem % r
            rem = rem // r
        yield np.column_stack([axes[j][digits[:, j]] for j in range(m)])


def _fractions(net: Network, p: np.ndarray) -> np.ndarray:
    g = p @ net.cross_gains.T + net.noise
    return (p * net.direct_gains + g) / g


def grid_search(net: Network, resolution: int) -> GridResult:
    """Best weighted throughput over ``{0, p_max/(R-1), ..., p_max}^M``.

    Grid points violating a rate floor are skipped. Ties go to the
    lexicographically smallest power vector.
    """
    if net.size > MAX_LINKS:
        raise InvalidInputError(f"grid search is limited to {MAX_LINKS} links, got {net.size}")
    if resolution < 2:
        raise InvalidInputError("resolution must be at least 2")
    floor = np.exp2(net.r_min)
    best_val, best_p = -np.inf, None
    count = 0
    for pts in _grid_chunks(_axes(net, resolution)):
        count += len(pts)
        frac = _fractions(net, pts)
        vals = np.log2(frac) @ net.weights
        vals[~np.all(frac >= floor, axis=1)] = -np.inf
        k = int(np.argmax(vals))
        # strict comparison keeps the earlier (lexicographically smaller) point
        if vals[k] > best_val:
            best_val, best_p = float(vals[k]), pts[k].copy()
    if best_p is None:
        raise EmptyGridError("no grid point meets the rate floors")
    return GridResult(best_p, weighted_throughput(net, best_p), count)


def any_point_meets(net: Network, targets, resolution: int) -> bool:
    """True when some grid point has ``1 + sinr >= targets`` in every link."""
    targets = np.asarray(targets, dtype=float)
    for pts in _grid_chunks(_axes(net, resolution)):
        if np.any(np.all(_fractions(net, pts) >= targets, axis=1)):
            return True
    return False


def brute_maxmin_ratio(net: Network, z, resolution: int) -> tuple[float, np.ndarray]:
    """Grid maximum of ``min_i (1 + sinr_i) / z_i`` over the box."""
    z = np.asarray(z, dtype=float)
    best, arg = -np.inf, None
    for pts in _grid_chunks(_axes(net, resolution)):
        vals = np.min(_fractions(net, pts) / z, axis=1)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best, arg = float(vals[k]), pts[k].copy()
    return best, arg


def brute_maxmin_sinr(net: Network, resolution: int) -> tuple[float, np.ndarray]:
    best, arg = -np.inf, None
    for pts in _grid_chunks(_axes(net, resolution)):
        vals = np.min(_fractions(net, pts) - 1.0, axis=1)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best, arg = float(vals[k]), pts[k].copy()
    return best, arg


__all__ = ["GridResult", "EmptyGridError", "grid_search", "any_point_meets",
           "brute_maxmin_ratio", "brute_maxmin_sinr"]
