"""Ray projections onto the achievable SINR region and the max-min SINR solver.

Both are generalized fractional programs ``max_p min_i N_i(p) / D_i(p)`` with
affine numerators and denominators, solved by a Dinkelbach iteration whose
inner step is a max-min linear program over the power polytope.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from mapel.config import SolverConfig
from mapel.network import (InfeasibleRatesError, InvalidInputError, Network,
                           check_feasibility)
from mapel.numerics import LpStatus, MaxMinLpProblem, solve_maxmin_lp

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjectionResult:
    lam: float
    p_star: np.ndarray
    iterations: int
    converged: bool
    lambda_history: tuple = ()


def _affine_parts(net: Network):
    """Return ``(F, G)`` as ``M x (M+1)`` row blocks with ``f(p) = F[:, :M] p + F[:, M]``."""
    m = net.size
    cross = net.cross_gains
    g_rows = np.hstack([cross, net.noise[:, None]])
    f_rows = g_rows.copy()
    f_rows[np.arange(m), np.arange(m)] += net.direct_gains
    return f_rows, g_rows


def rate_rows(net: Network) -> np.ndarray:
    """Rows ``f_i(p) - 2**r_i g_i(p) >= 0``; empty when no floor is active."""
    f_rows, g_rows = _affine_parts(net)
    targets = np.exp2(net.r_min)
    active = net.r_min > 0
    return (f_rows - targets[:, None] * g_rows)[active]


def _evaluate(rows, p):
    return rows[:, :-1] @ p + rows[:, -1]


def dinkelbach(num_rows, den_rows, lower, upper, extra_rows, p0, tol, max_iter, lp_tol=1e-9):
    """Maximize ``min_i num_i(p) / den_i(p)`` over the box and extra rows.

    The inner LP maximizes ``min_i (num_i(p) - lam den_i(p)) / den_i(p_j)``
    with ``p_j`` the current iterate. That value bounds the possible gain in
    ``lam``, so the loop stops once it is at most ``tol * lam``; the test is
    then invariant to rescaling ``den``.

    Returns ``(lam, p, iterations, converged, history)`` where ``lam`` is the
    ratio attained at ``p`` (so it is always achievable) and ``history`` the
    sequence of lower bounds, which must be nondecreasing.
    """
    p = np.asarray(p0, dtype=float)
    den = _evaluate(den_rows, p)
    lam = float(np.min(_evaluate(num_rows, p) / den))
    history = [lam]
    for it in range(1, max_iter + 1):
        # rows divided by the current denominators: same root, superlinear rate
        rows = (num_rows - lam * den_rows) / den[:, None]
        prob = MaxMinLpProblem(rows, lower, upper, extra_rows)
        sol = solve_maxmin_lp(prob, tol=lp_tol)
        if sol.status is not LpStatus.OPTIMAL:
            raise InfeasibleRatesError("power polytope is empty")
        if sol.value <= tol * lam:
            return lam, p, it, True, tuple(history)
        new_lam = float(np.min(_evaluate(num_rows, sol.p_opt) / _evaluate(den_rows, sol.p_opt)))
        if new_lam <= lam:
            # LP round-off: positive value reported but no ratio progress
            return lam, p, it, True, tuple(history)
        lam, p = new_lam, sol.p_opt
        den = _evaluate(den_rows, p)
        history.append(lam)
    return lam, p, max_iter, False, tuple(history)


def _initial_power(net: Network) -> np.ndarray:
    if np.any(net.r_min > 0):
        rep = check_feasibility(net)
        if not rep.feasible:
            raise InfeasibleRatesError(f"rate floors infeasible: {rep.reason.value}")
        return np.clip(rep.p_hat, 0.0, net.p_max)
    return net.p_max.copy()


def project(net: Network, z, cfg: SolverConfig | None = None, p0=None) -> ProjectionResult:
    """Largest ``lam`` with ``lam * z`` achievable, plus a witnessing power vector.

    ``p0`` overrides the starting point; it must satisfy the rate floors.
    """
    cfg = cfg or SolverConfig()
    z = np.asarray(z, dtype=float)
    if z.shape != (net.size,) or np.any(z <= 0):
        raise InvalidInputError("z must be a strictly positive vector of network size")
    f_rows, g_rows = _affine_parts(net)
    p_init = _initial_power(net) if p0 is None else np.asarray(p0, dtype=float)
    lam, p, it, ok, hist = dinkelbach(
        f_rows, z[:, None] * g_rows, np.zeros(net.size), net.p_max, rate_rows(net),
        p_init, cfg.proj_tol, cfg.proj_max_iter, cfg.lp_tol)
    if not ok:
        log.warning("projection hit the iteration cap (%d) with lambda=%.6g", it, lam)
    return ProjectionResult(lam, p, it, ok, hist)


def maxmin_sinr(net: Network, cfg: SolverConfig | None = None):
    """Power vector maximizing the smallest link SINR over the box; rate floors ignored."""
    cfg = cfg or SolverConfig()
    f_rows, g_rows = _affine_parts(net)
    num = f_rows - g_rows  # G_ii p_i
    lam, p, it, ok, _ = dinkelbach(
        num, g_rows, np.zeros(net.size), net.p_max, None,
        net.p_max.copy(), cfg.proj_tol, cfg.proj_max_iter, cfg.lp_tol)
    if not ok:
        log.warning("max-min SINR hit the iteration cap (%d)", it)
    return p, lam
