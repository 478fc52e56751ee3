"""Exact lattice computations for real Enriques surfaces."""

from .catalog import k3_lattice, sigma_reference, sigma_single_component, tau_reference
from .enriques import AnalysisReport, analyze, validate_triple
from .enumeration import EnumerationConfig, bound_report, enumerate_profiles
from .errors import InconsistencyError, InputError, RealEnriquesError
from .involutions import IsometryInvolution, involution_invariants
from .lattice import Lattice, Sublattice

__all__ = [
    "AnalysisReport",
    "EnumerationConfig",
    "InconsistencyError",
    "InputError",
    "IsometryInvolution",
    "Lattice",
    "RealEnriquesError",
    "Sublattice",
    "analyze",
    "bound_report",
    "enumerate_profiles",
    "involution_invariants",
    "k3_lattice",
    "sigma_reference",
    "sigma_single_component",
    "tau_reference",
    "validate_triple",
]
