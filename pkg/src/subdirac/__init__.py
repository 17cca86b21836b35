"""Point spectra of sub-Dirac operators on nilmanifolds Z^n x_A Z \\ R^n x_A R."""
from .assembler import SpectrumTable, assemble, growth_diagnostics
from .closed_form import AffineDiracSymbol, affine_spectrum, fixed_point_spectrum
from .connection import christoffel, is_symmetric_connection
from .formulas import explicit_m_formulas
from .group_model import (ModelSpec, fivedim, heisenberg, threestep, validate_model)
from .kernels import BACKEND
from .modelio import load_model
from .orbits import representatives, zorbit_count_bruteforce
from .quartic import dirac3step_spectrum, quartic_spectrum, rescale_quartic
from .spin import SpinStructure, enumerate_spin_structures

__version__ = "0.1.0"

__all__ = [
    "AffineDiracSymbol", "BACKEND", "ModelSpec", "SpectrumTable", "SpinStructure",
    "affine_spectrum", "assemble", "christoffel", "dirac3step_spectrum",
    "enumerate_spin_structures", "fivedim", "fixed_point_spectrum", "growth_diagnostics",
    "heisenberg", "is_symmetric_connection", "load_model", "explicit_m_formulas",
    "quartic_spectrum", "representatives", "rescale_quartic", "threestep",
    "validate_model", "zorbit_count_bruteforce",
]
