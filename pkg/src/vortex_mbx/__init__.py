"""Vortex transfer and dispersion in a three-level Er:YAG ladder system."""

from .core import (
    CoherenceCoefficients,
    FieldPair,
    PropagationKernel,
    coherence_coefficients,
    coherences_along_z,
    conversion_efficiency,
    efficiency_as_printed,
    kernel_for,
    lg_profile,
    observables,
    propagate,
    propagation_kernel,
    xi,
)
from .params import CONCENTRATIONS, TABLE_1, DecayRates, MediumConfig, ProbeSpec, all_media, medium_for

__version__ = "0.1.0"
