"""Global weighted-throughput maximization by polyblock outer approximation.

The achievable set of ``1 + sinr`` vectors is normal (closed under moving
down), so it is sandwiched from outside by a shrinking sequence of
polyblocks. Each step picks the vertex with the largest weighted product,
projects it onto the achievable set along its ray, and cuts the vertex away.
"""
from __future__ import annotations

import enum
import heapq
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from mapel.config import SolverConfig
from mapel.network import (InvalidInputError, Network, check_feasibility,
                           fraction_fg)
from mapel.numerics import SingularMatrixError, solve_linear
from mapel.polyblock import (VertexSet, best_index, initial_vertex, log_phi_rows,
                             replace_vertex, restrict_to_floor)
from mapel.projection import project

log = logging.getLogger(__name__)

LN2 = math.log(2.0)


class Status(enum.Enum):
    CONVERGED = "Converged"
    VERTEX_CAP_REACHED = "VertexCapReached"
    ITER_CAP_REACHED = "IterCapReached"
    INFEASIBLE_RATES = "InfeasibleRates"


@dataclass(frozen=True)
class TraceRow:
    iteration: int
    num_vertices: int
    upper_bound_bps_hz: float
    best_feasible_bps_hz: float
    gap_ratio: float


@dataclass
class MapelResult:
    p_star: np.ndarray | None
    z_star: np.ndarray | None
    objective_bps_hz: float
    upper_bound_bps_hz: float
    epsilon_bound: float
    outer_iterations: int
    status: Status
    trace: list = field(default_factory=list)
    vertex_peak: int = 0


def epsilon_bound(delta: float) -> float:
    """Relative optimality guarantee ``delta / (1 - delta)`` for a converged run."""
    if not 0.0 < delta < 1.0:
        raise InvalidInputError(f"delta must lie in (0, 1), got {delta}")
    return delta / (1.0 - delta)


def _bps(net: Network, z) -> float:
    return float(log_phi_rows(np.asarray(z, dtype=float)[None, :], net.weights)[0]) / LN2


def recover_power(net: Network, z, fallback_p) -> np.ndarray:
    """Power vector whose ``1 + sinr`` equals ``z``, or ``fallback_p`` if that fails.

    Solves ``G_ii p_i = (z_i - 1) (sum_{j != i} G_ji p_j + n_i)``.
    """
    z = np.asarray(z, dtype=float)
    fallback_p = None if fallback_p is None else np.asarray(fallback_p, dtype=float)
    a = np.diag(net.direct_gains) - (z - 1.0)[:, None] * net.cross_gains
    rhs = (z - 1.0) * net.noise
    scale = np.abs(a).max(axis=1)
    try:
        p = solve_linear(a / scale[:, None], rhs / scale)
    except SingularMatrixError:
        p = None
    if p is not None and np.all(np.isfinite(p)):
        in_box = np.all(p >= -1e-6 * net.p_max) and np.all(p <= net.p_max * (1 + 1e-6))
        if in_box:
            p = np.clip(p, 0.0, net.p_max)
            if np.all(fraction_fg(net, p) >= np.exp2(net.r_min) * (1 - 1e-6)):
                return p
    if fallback_p is None:
        raise RuntimeError("power recovery failed and no fallback was given")
    return fallback_p


def solve(net: Network, cfg: SolverConfig | None = None, on_iteration=None) -> MapelResult:
    """Run MAPEL on ``net``.

    ``on_iteration(k, z, vertex_set)``, if given, is called after every
    refinement with the selected vertex and the refined vertex set.

    The returned solution is the best point seen over the whole run, scored
    at the ``1 + sinr`` vector of each projection's witness power (which
    dominates the projection itself); the upper bound comes from the last
    selected vertex.
    """
    cfg = cfg or SolverConfig()
    eps = epsilon_bound(cfg.delta)
    report = check_feasibility(net)
    if not report.feasible:
        return MapelResult(None, None, math.nan, math.nan, eps, 0, Status.INFEASIBLE_RATES)

    floor = np.exp2(net.r_min)
    vs = restrict_to_floor(VertexSet.from_vertices(initial_vertex(net)[None, :]), floor)
    # max-heap of (-log phi, id) over live vertices; ties pop the lowest id, as
    # in best_index. live maps id -> warm-start power for its projection.
    heap, live = [], {}

    def push_new(first_new, p_start):
        rows = np.flatnonzero(vs.ids >= first_new)
        for vid, score in zip(vs.ids[rows], log_phi_rows(vs.vertices[rows], net.weights)):
            heapq.heappush(heap, (-float(score), int(vid)))
            live[int(vid)] = p_start

    push_new(0, None)
    best_z, best_p, best_val = None, None, -math.inf
    trace = []
    peak = len(vs)
    status = Status.ITER_CAP_REACHED
    upper = math.inf
    k = 0
    while k < cfg.max_outer_iter:
        k += 1
        while heap and heap[0][1] not in live:
            heapq.heappop(heap)
        if not heap:
            if check_feasibility(net).feasible:
                raise RuntimeError("no vertex left above the rate floors on a feasible instance")
            status = Status.INFEASIBLE_RATES
            break
        neg_score, vid = heapq.heappop(heap)
        z = vs.vertices[np.flatnonzero(vs.ids == vid)[0]].copy()
        upper = -neg_score / LN2
        # warm start from the witness of the projection that created this vertex
        pr = project(net, z, cfg, p0=live.pop(vid))
        lam = min(pr.lam, 1.0)
        proj = lam * z
        # the witness power reaches proj in every coordinate and often beyond
        reached = np.maximum(fraction_fg(net, pr.p_star), proj)
        val = _bps(net, reached)
        if val > best_val:
            best_z, best_p, best_val = reached, pr.p_star, val
        gap = 1.0 - lam
        trace.append(TraceRow(k, len(vs), upper, best_val, gap))
        if gap <= cfg.delta:
            status = Status.CONVERGED
            break
        first_new, old_len = vs.next_id, len(vs)
        vs = replace_vertex(vs, z, proj, floor)
        if len(vs) != old_len - 1 + (vs.next_id - first_new):
            # older rows were dropped (only possible for an improper set)
            live = {int(i): live.get(int(i)) for i in vs.ids if i < first_new}
        push_new(first_new, pr.p_star)
        peak = max(peak, len(vs))
        if on_iteration is not None:
            on_iteration(k, z, vs)
        if len(vs) > cfg.max_vertices:
            status = Status.VERTEX_CAP_REACHED
            break

    if status is Status.INFEASIBLE_RATES:
        return MapelResult(None, None, math.nan, math.nan, eps, k, status, trace, peak)
    if status is not Status.CONVERGED:
        log.warning("MAPEL stopped early (%s) after %d iterations", status.value, k)
        # the best remaining vertex still bounds the optimum
        idx = best_index(vs, net)
        if idx is not None:
            upper = min(upper, _bps(net, vs.vertices[idx]))
    p_star = recover_power(net, best_z, best_p)
    return MapelResult(p_star, best_z, best_val, upper, eps, k, status, trace, peak)
