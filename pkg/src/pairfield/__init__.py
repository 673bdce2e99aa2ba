"""Ground-state entanglement of two localized two-level detectors coupled
to a scalar quantum field.

The package computes the detectors' reduced density matrix to second order
in the coupling and the negativity extracted from it, for a free field, a
field confined between two conducting planes, a field scattered by a weak
Gaussian potential, and a field at finite temperature.  An independent
truncated-mode verifier cross-checks the perturbative results against exact
diagonalization of small field models.
"""

__version__ = "0.1.0"

from .core import (
    DetectorPair,
    ModeModel,
    ReducedElements,
    adiabatic_rate_bound,
    assemble_rho_a,
    matrix_elements_discrete,
    negativity,
    negativity_exact,
    normalized_k,
    partial_transpose_first,
)
from .dirichlet import (
    DirichletParams,
    dirichlet_elements,
    dirichlet_negativity,
    dirichlet_normalized_k,
)
from .freefield import (
    FreeFieldParams,
    critical_separation,
    free_matrix_elements,
    free_negativity,
    free_negativity_asymptotic,
    free_p_massless_analytic,
)
from .numerics import QuadratureSpec, SeriesSpec
from .potential import (
    PotentialParams,
    corrected_elements,
    effective_mass,
    potential_corrections,
    potential_negativity,
    potential_normalized_k,
)
from .thermal import (
    CriticalTemperature,
    ThermalParams,
    critical_temperature,
    low_temperature_p1,
    thermal_elements,
    thermal_negativity,
    thermal_normalized_k,
)
from .verifier import (
    RampResult,
    RampSchedule,
    TruncatedHamiltonian,
    build_truncated,
    elements_from_rho,
    evolve_ramp,
    exact_ground_reduced,
    field_mode_model,
)

__all__ = [
    "__version__",
    "DetectorPair",
    "ModeModel",
    "ReducedElements",
    "adiabatic_rate_bound",
    "assemble_rho_a",
    "matrix_elements_discrete",
    "negativity",
    "negativity_exact",
    "normalized_k",
    "partial_transpose_first",
    "DirichletParams",
    "dirichlet_elements",
    "dirichlet_negativity",
    "dirichlet_normalized_k",
    "FreeFieldParams",
    "critical_separation",
    "free_matrix_elements",
    "free_negativity",
    "free_negativity_asymptotic",
    "free_p_massless_analytic",
    "QuadratureSpec",
    "SeriesSpec",
    "PotentialParams",
    "corrected_elements",
    "effective_mass",
    "potential_corrections",
    "potential_negativity",
    "potential_normalized_k",
    "CriticalTemperature",
    "ThermalParams",
    "critical_temperature",
    "low_temperature_p1",
    "thermal_elements",
    "thermal_negativity",
    "thermal_normalized_k",
    "RampResult",
    "RampSchedule",
    "TruncatedHamiltonian",
    "build_truncated",
    "elements_from_rho",
    "evolve_ramp",
    "exact_ground_reduced",
    "field_mode_model",
]
