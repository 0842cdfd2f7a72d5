"""Bragg-scattering spectra of bosons in a 1D optical lattice."""

from ._braggsim import (
    Error,
    LatticeConfig,
    bloch_momentum_factor,
    bogoliubov_modes,
    diffraction_kernel,
    hubbard_parameters,
    run,
    spectrum,
)

__all__ = [
    "Error",
    "LatticeConfig",
    "bloch_momentum_factor",
    "bogoliubov_modes",
    "diffraction_kernel",
    "hubbard_parameters",
    "run",
    "spectrum",
]
