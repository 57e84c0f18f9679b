"""Riesz p-capacity of compact sets in R^n, for every real p.

Closed forms for balls and intervals, discrete equilibrium problems on node
clouds, and numerical checks of how capacity depends on p.
"""

from .analysis import CapacityResult, CurveTable, capacity_curve, estimate_capacity
from .closedform import ball_capacity, gotz_constant, interval_capacity
from .energy import DiagonalMode, discrete_energy, potential
from .errors import DomainError, InvalidInputError, NonUniqueEquilibriumError, UnsupportedError
from .geometry import Ball, Box, Interval, NodeCloud, Points, Sphere, Union, discretize
from .kernel import EnergyValue, RieszExponent, capacity_from_energy, kernel_value
from .solver import EquilibriumResult, SolverConfig, solve_equilibrium

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "Box",
    "CapacityResult",
    "CurveTable",
    "DiagonalMode",
    "DomainError",
    "EnergyValue",
    "EquilibriumResult",
    "Interval",
    "InvalidInputError",
    "NodeCloud",
    "NonUniqueEquilibriumError",
    "Points",
    "RieszExponent",
    "SolverConfig",
    "Sphere",
    "Union",
    "UnsupportedError",
    "ball_capacity",
    "capacity_curve",
    "capacity_from_energy",
    "discrete_energy",
    "discretize",
    "estimate_capacity",
    "gotz_constant",
    "interval_capacity",
    "kernel_value",
    "potential",
    "solve_equilibrium",
]
