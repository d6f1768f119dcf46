"""Landau-type bound states of a magnetic-quadrupole atom in a rotating frame.

Analytic spectrum and wavefunctions, an independent finite-difference
eigensolver that cross-checks them, the external field configuration, and
a CLI for reports.  Natural units (hbar = c = 1) throughout.
"""

from .core import (
    DegeneracyGroup,
    NoBoundStatesError,
    QuantumNumbers,
    Spectrum,
    SpectrumLine,
    SystemParams,
    cyclotron_frequency,
    degeneracy_groups,
    effective_frequency,
    energy_level,
    page_werner_term,
    spectrum,
)
from .eigensolve import (
    NumericSpectrum,
    RadialGrid,
    TridiagonalOperator,
    build_operator,
    default_grid,
    labeled_energies,
    lowest_eigenvalues,
    richardson,
    solve_radial,
    sturm_count,
)
from .fields import (
    CylindricalVector,
    curl_z_numeric,
    effective_vector_potential,
    electric_field,
    electrostatic_check,
)
from .specfun import HypergeometricParams, confluent_m, laguerre, log_gamma
from .wavefn import (
    RadialState,
    dimensionless_radius,
    node_count,
    normalize,
    ode_residual,
    radial_value,
)

__version__ = "0.1.0"

__all__ = [
    "DegeneracyGroup",
    "NoBoundStatesError",
    "QuantumNumbers",
    "Spectrum",
    "SpectrumLine",
    "SystemParams",
    "cyclotron_frequency",
    "degeneracy_groups",
    "effective_frequency",
    "energy_level",
    "page_werner_term",
    "spectrum",
    "NumericSpectrum",
    "RadialGrid",
    "TridiagonalOperator",
    "build_operator",
    "default_grid",
    "labeled_energies",
    "lowest_eigenvalues",
    "richardson",
    "solve_radial",
    "sturm_count",
    "CylindricalVector",
    "curl_z_numeric",
    "effective_vector_potential",
    "electric_field",
    "electrostatic_check",
    "HypergeometricParams",
    "confluent_m",
    "laguerre",
    "log_gamma",
    "RadialState",
    "dimensionless_radius",
    "node_count",
    "normalize",
    "ode_residual",
    "radial_value",
    "__version__",
]
