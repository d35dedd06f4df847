"""Extreme-eigenvalue laws for Jacobi beta-ensembles."""

__version__ = "0.1.0"

from ._backend import BACKEND_NAME, get_backend
from .edge_laws import (
    EdgeCurve,
    EnvelopeError,
    ModeMismatchError,
    TwoTerm,
    cdf_exact,
    cdf_exact_jue_determinant,
    cdf_limit,
    cdf_two_term,
    cdf_two_term_jue_bessel,
    density_exact,
    jacobi_poly_representation,
    largest_cdf_two_term,
    largest_exact,
    recentred_form,
    survival_exact,
    tabulate_curve,
)
from .hypergeom import HypergeomSpec, hyp0f1, hyp2f1, mhg_equal_args, pfaff_transform
from .jack import jack_at, jack_at_ones, jack_monomial_expansion
from .montecarlo import empirical_cdf, ks_distance, run_experiment
from .partitions import Partition, enumerate_partitions
from .sampling import SamplerConfig, sample, sample_double_wishart, sample_killip_nenciu
from .selberg import EnsembleParams, selberg_s, z_n, z_n_asymptotic

__all__ = [
    "__version__",
    "BACKEND_NAME",
    "get_backend",
    "EnsembleParams",
    "EdgeCurve",
    "EnvelopeError",
    "ModeMismatchError",
    "TwoTerm",
    "cdf_exact",
    "cdf_exact_jue_determinant",
    "cdf_limit",
    "cdf_two_term",
    "cdf_two_term_jue_bessel",
    "density_exact",
    "jacobi_poly_representation",
    "largest_cdf_two_term",
    "largest_exact",
    "recentred_form",
    "survival_exact",
    "tabulate_curve",
    "HypergeomSpec",
    "hyp0f1",
    "hyp2f1",
    "mhg_equal_args",
    "pfaff_transform",
    "jack_at",
    "jack_at_ones",
    "jack_monomial_expansion",
    "empirical_cdf",
    "ks_distance",
    "run_experiment",
    "Partition",
    "enumerate_partitions",
    "SamplerConfig",
    "sample",
    "sample_double_wishart",
    "sample_killip_nenciu",
    "selberg_s",
    "z_n",
    "z_n_asymptotic",
]
