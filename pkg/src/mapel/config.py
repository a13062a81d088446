from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SolverConfig:
    """Approximation factor and numerical limits for a MAPEL run.

    ``proj_tol`` is absolute and applies to values of the form
    ``f_i(p) - lam * z_i * g_i(p)``, whose scale is set by the noise power in
    watts. With very small noise, scale the instance or loosen it.
    """

    delta: float = 0.05
    proj_tol: float = 1e-9
    proj_max_iter: int = 200
    lp_tol: float = 1e-9
    max_outer_iter: int = 500_000
    max_vertices: int = 2_000_000

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.proj_tol <= 0 or self.lp_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.proj_max_iter < 1 or self.max_outer_iter < 1 or self.max_vertices < 1:
            raise ValueError("iteration and vertex caps must be positive")
