"""Discrete Wigner functions and value statistics on the quantized torus.

The library simulates the kicked sawtooth map on an odd-dimension torus
Hilbert space, computes discrete Wigner functions in O(N^2 log N), and
tracks how the value distribution of an initially localized packet relaxes
to the random-state Gaussian limit on the log(N)/lyapunov(K) time scale.
"""

__version__ = "0.1.0"

from .dynamics import (Propagator, SawtoothParams, adjoint_step, build_propagator,
                       evolve, lyapunov, propagator_matrix, step)
from .states import coherent_state, inner, position_state, random_state
from .stats import (EnsembleSummary, GaussianReference, Moments, RelaxationSeries,
                    ValueDistribution, cdf_sup_distance, ensemble_gaussianity,
                    excess, gaussian_reference, negative_fraction,
                    negativity_crossing_time, relaxation_time, value_distribution)
from .wigner import (RESIDUE_TOL, delta_kernel, prefactor, wigner_fast,
                     wigner_naive, wigner_point)
from .experiments import (relaxation_series, rerun_from_manifest, run_excess_vs_K,
                          run_excess_vs_N, run_negativity, run_random_ensemble,
                          run_snapshots, run_wigner)

__all__ = [
    "__version__",
    "SawtoothParams", "Propagator", "build_propagator", "step", "adjoint_step",
    "evolve", "propagator_matrix", "lyapunov",
    "position_state", "random_state", "coherent_state", "inner",
    "delta_kernel", "prefactor", "wigner_fast", "wigner_naive", "wigner_point",
    "RESIDUE_TOL",
    "Moments", "ValueDistribution", "value_distribution", "excess",
    "negative_fraction", "GaussianReference", "gaussian_reference",
    "cdf_sup_distance", "RelaxationSeries", "relaxation_time",
    "negativity_crossing_time", "EnsembleSummary", "ensemble_gaussianity",
    "relaxation_series", "run_snapshots", "run_excess_vs_N", "run_excess_vs_K",
    "run_negativity", "run_random_ensemble", "run_wigner", "rerun_from_manifest",
]
