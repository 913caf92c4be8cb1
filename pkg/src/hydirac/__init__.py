"""Dirac-Coulomb hydrogen bound states via real conjugate radial amplitudes.

The library computes the exact fine-structure spectrum and the closed-form
bound-state wave functions in both the conjugate-amplitude and bi-spinor
representations, and numerically certifies that the closed forms satisfy the
underlying differential equations.  The series evaluation hot loop runs on a
compiled extension when available; ``backend_name()`` reports which kernel
is active.
"""

from ._backend import backend_name
from .core import (
    ALPHA_CODATA,
    ELECTRON_REST_ENERGY_EV,
    EnergyValue,
    InvalidStateError,
    PhysicsConfig,
    QuantumState,
    convert_energy,
    derive_gamma,
    make_state,
)
from .spectrum import (
    SpectrumRow,
    energy,
    fine_structure_splitting,
    quantization_a,
    sommerfeld_expansion,
    spectrum_table,
)
from .wavefn import (
    EtaCoefficients,
    RadialProfile,
    assemble_bispinor_radials,
    conjugate_transform,
    default_grid,
    normalize,
    radial_phi,
    radial_phi_tilde,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_CODATA",
    "ELECTRON_REST_ENERGY_EV",
    "EnergyValue",
    "EtaCoefficients",
    "InvalidStateError",
    "PhysicsConfig",
    "QuantumState",
    "RadialProfile",
    "SpectrumRow",
    "assemble_bispinor_radials",
    "backend_name",
    "conjugate_transform",
    "convert_energy",
    "default_grid",
    "derive_gamma",
    "energy",
    "fine_structure_splitting",
    "make_state",
    "normalize",
    "quantization_a",
    "radial_phi",
    "radial_phi_tilde",
    "sommerfeld_expansion",
    "spectrum_table",
    "__version__",
]
