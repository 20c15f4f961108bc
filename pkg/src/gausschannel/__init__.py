"""Two-mode Gaussian states in bosonic thermal channels with memory.

The package evolves bipartite Gaussian states through a channel built from
an Ohmic environment with Lorentz-Drude cutoff, tracks the time-dependent
damping/diffusion rates beyond the Markov approximation, and analyses
entanglement loss and revivals through the positivity of the partial
transpose.
"""

__version__ = "0.1.0"

from .channel import (ChannelMode, ChannelState, CoefficientTable,
                      big_gamma, build_channel, build_table, delta_gamma,
                      evolve)
from .numerics import (NoRootInBracketError, QuadratureError,
                       QuadratureResult, find_root_bracketed,
                       integrate_adaptive, integrate_oscillatory,
                       integrate_semi_infinite, min_eigenvalue_hermitian4)
from .reservoir import (CoefficientSample, ReservoirSpec, delta_coefficient,
                        delta_exact_profile, dissipation_kernel,
                        gamma_coefficient, gamma_markov, markov_limits,
                        noise_kernel, sample_coefficients, spectral_density,
                        thermal_occupation)
from .separability import (PptMethod, SeparabilityTrace, SeparabilityVerdict,
                           first_up_crossing, markov_separability_time,
                           ppt_closed_form, ppt_min_eigenvalue, ppt_spectral,
                           s_exact, s_high_T, s_markovian, s_short_time,
                           trace_and_analyze)
from .states import (CanonicalCovariance, SymplecticForm,
                     TwoModeGaussianState, assemble, is_physical, make_twb,
                     physicality_margin, rotate, symplectic_form)

__all__ = [
    "ChannelMode", "ChannelState", "CoefficientTable", "big_gamma",
    "build_channel", "build_table", "delta_gamma", "evolve",
    "NoRootInBracketError", "QuadratureError", "QuadratureResult",
    "find_root_bracketed", "integrate_adaptive", "integrate_oscillatory",
    "integrate_semi_infinite", "min_eigenvalue_hermitian4",
    "CoefficientSample", "ReservoirSpec", "delta_coefficient",
    "delta_exact_profile", "dissipation_kernel", "gamma_coefficient",
    "gamma_markov", "markov_limits", "noise_kernel", "sample_coefficients",
    "spectral_density", "thermal_occupation",
    "PptMethod", "SeparabilityTrace", "SeparabilityVerdict",
    "first_up_crossing", "markov_separability_time", "ppt_closed_form",
    "ppt_min_eigenvalue", "ppt_spectral", "s_exact", "s_high_T",
    "s_markovian", "s_short_time", "trace_and_analyze",
    "CanonicalCovariance", "SymplecticForm", "TwoModeGaussianState",
    "assemble", "is_physical", "make_twb", "physicality_margin", "rotate",
    "symplectic_form",
]
