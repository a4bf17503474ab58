"""Quantum Zeno dynamics of a single photon in imperfect beam splitter arrays."""

from .arrays import (
    DispersionSpec,
    dispersion_ensemble,
    dispersion_expectation,
    dispersion_p1,
    ideal_p1,
    sample_thetas,
    zeno_angle,
)
from .fock import FockCutoff, PortMixture, TwoModeState
from .mcwf import (
    McwfSpec,
    TrajectoryRecord,
    analytic_p1_absorption,
    bernoulli_p1,
    jump_probability,
    run_ensemble,
    run_trajectory,
)
from .optimizer import CriticalResult, critical_gamma, solve_critical_n
from .stats import EnsembleStats
from .thermal import ThermalArraySpec, propagate_thermal_array, step_coefficients, thermal_p1_approx

__version__ = "0.1.0"
