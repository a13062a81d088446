"""Small dense kernels: Perron root, pivoted linear solve, max-min linear program.

Everything here works on tiny dense problems (a handful of links), so the
code favours plain numpy over anything clever.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class ConvergenceError(RuntimeError):
    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class SingularMatrixError(ArithmeticError):
    pass


def spectral_radius(m, tol: float = 1e-10, max_iter: int = 64) -> float:
    """Perron root of a nonnegative square matrix by power iteration.

    The iterate ``m^k 1`` (all-ones start) is advanced by repeated squaring,
    ``k = 2, 4, 8, ...``, and the root read off as ``|m^k 1|^(1/k)``. The
    error behaves like ``log(const) / k`` whatever the structure (periodic,
    reducible, defective), so 64 squarings reach double precision. The loop
    stops earlier once the Collatz-Wielandt bracket
    ``min (m x)_i / x_i <= rho <= max (m x)_i / x_i`` at ``x = m^k 1 > 0``
    is narrower than ``tol``.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.any(m < 0):
        raise ValueError("spectral_radius expects a nonnegative matrix")
    if m.shape[0] == 0 or not np.any(m):
        return 0.0
    ones = np.ones(m.shape[0])
    top = m.max()
    s = m / top
    log_scale = math.log(top)  # log of the factor divided out of m^k
    k = 1
    est = math.nan
    for _ in range(max_iter):
        s = s @ s
        log_scale *= 2.0
        k *= 2
        peak = s.max()
        if peak == 0.0:
            return 0.0  # nilpotent
        s /= peak
        log_scale += math.log(peak)
        x = s @ ones
        est = math.exp((log_scale + math.log(np.max(x))) / k)
        if np.all(x > 0):
            ratio = (m @ x) / x
            lo, hi = ratio.min(), ratio.max()
            if hi - lo < tol * max(1.0, hi):
                return float(0.5 * (lo + hi))
    if not math.isfinite(est):
        raise ConvergenceError("power iteration produced a non-finite estimate", last_iterate=est)
    return est


def solve_linear(a, rhs) -> np.ndarray:
    """Gaussian elimination with partial pivoting; raises on pivots below 1e-12."""
    a = np.array(a, dtype=float)
    x = np.array(rhs, dtype=float).reshape(-1)
    n = a.shape[0]
    if a.shape != (n, n) or x.shape != (n,):
        raise ValueError(f"incompatible shapes {a.shape} and {x.shape}")
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[piv, k]) < 1e-12:
            raise SingularMatrixError(f"pivot {a[piv, k]:.3e} in column {k}")
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            x[[k, piv]] = x[[piv, k]]
        f = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(f, a[k, k:])
        x[k + 1:] -= f * x[k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


# --- linear programming -----------------------------------------------------

class LpStatus(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "InfeasiblePolytope"


class _Unbounded(ArithmeticError):
    pass


def _pivot(t: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    t[row] /= t[row, col]
    colv = t[:, col].copy()
    colv[row] = 0.0
    t -= np.outer(colv, t[row])
    basis[row] = col


def _run_simplex(t: np.ndarray, basis: np.ndarray, ncols: int, tol: float) -> None:
    """Maximize over the tableau in place. Bland's rule, so no cycling.

    Last row holds reduced costs (positive = improving), last column the RHS.
    Only the first ``ncols`` columns may enter.
    """
    for _ in range(50_000):
        cost = t[-1, :ncols]
        cand = np.flatnonzero(cost > tol)
        if cand.size == 0:
            return
        col = int(cand[0])
        colv = t[:-1, col]
        rows = np.flatnonzero(colv > tol)
        if rows.size == 0:
            raise _Unbounded
        ratios = t[rows, -1] / colv[rows]
        best = ratios.min()
        ties = rows[ratios <= best + tol * max(1.0, abs(best))]
        row = int(ties[np.argmin(basis[ties])])
        _pivot(t, basis, row, col)
    raise ConvergenceError("simplex pivot limit reached")


def simplex_max(c, a_ub, b_ub, tol: float = 1e-9):
    """Maximize ``c @ y`` subject to ``a_ub @ y <= b_ub`` and ``y >= 0``.

    Two-phase dense tableau. Returns ``(y, status)``; ``y`` is None when
    infeasible. Raises ``ArithmeticError`` on an unbounded objective.
    """
    c = np.asarray(c, dtype=float)
    a = np.asarray(a_ub, dtype=float)
    b = np.asarray(b_ub, dtype=float)
    m, n = a.shape
    neg = b < 0
    n_art = int(neg.sum())
    width = n + m + n_art
    t = np.zeros((m + 1, width + 1))
    t[:m, :n] = a
    t[:m, n:n + m] = np.eye(m)
    t[:m, -1] = b
    t[:m][neg] *= -1.0
    basis = np.arange(n, n + m)
    art_rows = np.flatnonzero(neg)
    for k, r in enumerate(art_rows):
        t[r, n + m + k] = 1.0
        basis[r] = n + m + k

    if n_art:
        # phase 1: maximize -sum(artificials); reduced costs = sum of their rows
        t[-1, :] = t[art_rows].sum(axis=0)
        t[-1, n + m:width] = 0.0
        _run_simplex(t, basis, n + m, tol)
        if t[-1, -1] > tol * max(1.0, np.abs(b).max()):
            return None, LpStatus.INFEASIBLE
        keep = np.ones(m + 1, dtype=bool)
        for r in np.flatnonzero(basis >= n + m):
            cols = np.flatnonzero(np.abs(t[r, :n + m]) > tol)
            if cols.size:
                _pivot(t, basis, r, int(cols[0]))
            else:
                keep[r] = False  # redundant row
        t = np.delete(t, np.s_[n + m:width], axis=1)[keep]
        basis = basis[keep[:-1]]

    t[-1, :] = 0.0
    t[-1, :n] = c
    for r, bcol in enumerate(basis):
        if t[-1, bcol] != 0.0:
            t[-1] -= t[-1, bcol] * t[r]
    try:
        _run_simplex(t, basis, n + m, tol)
    except _Unbounded:
        raise ArithmeticError("linear program is unbounded") from None
    y = np.zeros(n + m)
    y[basis] = t[:-1, -1]
    return np.maximum(y[:n], 0.0), LpStatus.OPTIMAL


@dataclass(frozen=True)
class MaxMinLpProblem:
    """``max_p min_i (A_i . p + c_i)`` over a box and extra affine rows ``>= 0``.

    Rows are stored as ``[a_1 .. a_M, c]``.
    """

    objective_rows: np.ndarray
    box_lower: np.ndarray
    box_upper: np.ndarray
    extra_rows: np.ndarray | None = None

    def __post_init__(self):
        rows = np.atleast_2d(np.asarray(self.objective_rows, dtype=float))
        lo = np.asarray(self.box_lower, dtype=float).reshape(-1)
        hi = np.asarray(self.box_upper, dtype=float).reshape(-1)
        m = lo.size
        extra = (np.zeros((0, m + 1)) if self.extra_rows is None
                 else np.atleast_2d(np.asarray(self.extra_rows, dtype=float)))
        if rows.shape[1] != m + 1 or hi.size != m or extra.shape[1] != m + 1:
            raise ValueError("row widths must equal the number of variables plus one")
        if np.any(lo > hi):
            raise ValueError("box_lower must not exceed box_upper")
        object.__setattr__(self, "objective_rows", rows)
        object.__setattr__(self, "box_lower", lo)
        object.__setattr__(self, "box_upper", hi)
        object.__setattr__(self, "extra_rows", extra)


@dataclass(frozen=True)
class MaxMinLpSolution:
    p_opt: np.ndarray | None
    value: float
    status: LpStatus


def solve_maxmin_lp(prob: MaxMinLpProblem, tol: float = 1e-9) -> MaxMinLpSolution:
    """Epigraph LP: maximize ``t`` with ``h_i(p) >= t`` for every objective row.

    Variables are rescaled to ``x in [0, 1]``. The free variable ``t`` is
    shifted by the smallest value any row can take on the box, so
    ``t = s + shift`` with ``s >= 0`` (the optimum never lies below it).
    """
    lo, hi = prob.box_lower, prob.box_upper
    m = lo.size
    width = hi - lo
    a = prob.objective_rows[:, :m] * width
    c = prob.objective_rows[:, m] + prob.objective_rows[:, :m] @ lo
    scale = max(np.abs(a).max(), np.abs(c).max(), 1e-300)
    a, c = a / scale, c / scale

    e = prob.extra_rows[:, :m] * width
    d = prob.extra_rows[:, m] + prob.extra_rows[:, :m] @ lo
    escale = np.maximum(np.maximum(np.abs(e).max(axis=1, initial=0.0), np.abs(d)), 1e-300)
    e, d = e / escale[:, None], d / escale

    shift = float(np.min(c + np.minimum(a, 0.0).sum(axis=1)))
    k = a.shape[0]
    a_ub = np.zeros((k + m + e.shape[0], m + 1))
    a_ub[:k, :m] = -a
    a_ub[:k, m] = 1.0
    a_ub[k:k + m, :m] = np.eye(m)
    a_ub[k + m:, :m] = -e
    b_ub = np.concatenate([c - shift, np.ones(m), d])
    # rows at the box origin that are violated only by round-off
    b_ub[:k] = np.maximum(b_ub[:k], 0.0)
    obj = np.zeros(m + 1)
    obj[m] = 1.0

    y, status = simplex_max(obj, a_ub, b_ub, tol=tol)
    if status is not LpStatus.OPTIMAL:
        return MaxMinLpSolution(None, -np.inf, status)
    p = np.clip(lo + width * np.minimum(y[:m], 1.0), lo, hi)
    value = float(np.min(prob.objective_rows[:, :m] @ p + prob.objective_rows[:, m]))
    return MaxMinLpSolution(p, value, LpStatus.OPTIMAL)
