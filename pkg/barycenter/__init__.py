"""Hyperbolic barycenter: objective, convergence constants, bias probe and the two-anchor experiment."""

from barycenter.bias import bias_probe, natural_closed_forms, one_dim_optimum
from barycenter.experiment import run_two_anchor_experiment, summarise_cell, two_anchor_problem
from barycenter.models import BarycenterAnalysis, BarycenterProblem, BiasProbe, CellResult
from barycenter.objective import BarycenterObjective, objective, squared_distance_objective
from barycenter.solver import analysis, brute_force_minimum, gap_bound, solve_deterministic

__all__ = [
    "BarycenterAnalysis",
    "BarycenterObjective",
    "BarycenterProblem",
    "BiasProbe",
    "CellResult",
    "analysis",
    "bias_probe",
    "brute_force_minimum",
    "gap_bound",
    "natural_closed_forms",
    "objective",
    "one_dim_optimum",
    "run_two_anchor_experiment",
    "solve_deterministic",
    "squared_distance_objective",
    "summarise_cell",
    "two_anchor_problem",
]
