"""Global optimal power control for weighted sum-rate maximization (MAPEL)."""
from mapel.config import SolverConfig
from mapel.network import (FeasibilityReport, Network, check_feasibility,
                           fraction_fg, phi, sinr, weighted_throughput)
from mapel.oracle import grid_search
from mapel.projection import maxmin_sinr, project
from mapel.solver import MapelResult, Status, epsilon_bound, recover_power, solve
from mapel.topology import TopologySpec, paper_fixture, random_network

__all__ = [
    "SolverConfig", "Network", "FeasibilityReport", "check_feasibility", "fraction_fg",
    "phi", "sinr", "weighted_throughput", "grid_search", "maxmin_sinr", "project",
    "MapelResult", "Status", "epsilon_bound", "recover_power", "solve",
    "TopologySpec", "paper_fixture", "random_network",
]
