"""hbar-expansion of bound-state energies for radial problems with a position-dependent mass."""

from .classical import ClassicalPoint, classical_point, find_orbit_radius, zeroth_energy
from .coulomb_pdm import CoulombPDM, spacing_ratio
from .errors import (
    DegenerateDenominatorError,
    NoStableOrbitError,
    OracleConvergenceError,
    SingularRecursionError,
    StateNotFoundError,
    UnstableOrbitError,
)
from .models import AmbiguitySet, Coulomb, CustomMass, CustomPotential, PowerLawMass
from .oracle.numerov import numerov_eigenvalue, solve_state
from .recursion import QuantumNumbers, SpectrumResult, expand_energy
from .series import TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "AmbiguitySet",
    "ClassicalPoint",
    "Coulomb",
    "CoulombPDM",
    "CustomMass",
    "CustomPotential",
    "DegenerateDenominatorError",
    "NoStableOrbitError",
    "OracleConvergenceError",
    "PowerLawMass",
    "QuantumNumbers",
    "SingularRecursionError",
    "SpectrumResult",
    "StateNotFoundError",
    "TruncatedSeries",
    "UnstableOrbitError",
    "classical_point",
    "expand_energy",
    "find_orbit_radius",
    "numerov_eigenvalue",
    "solve_state",
    "spacing_ratio",
    "zeroth_energy",
]
