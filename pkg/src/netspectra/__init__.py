"""Spectra of random graphs with arbitrary expected degrees.

Analytic bulk densities, band edges, detached leading/hub eigenvalues and
hub-eigenvector localization, plus a matching Monte Carlo network sampler and
eigenvalue machinery to validate every prediction.
"""

__version__ = "0.1.0"

from .degree_model import DegreeModel, DegreeSequence
from .analytic import (
    HSolution,
    HubPrediction,
    SpectralCurve,
    band_edges,
    density_grid,
    hub_critical_degree,
    hub_eigenvalues,
    hub_eigenvector_profile,
    leading_eigenvalue,
    leading_eigenvalue_approx,
    semicircle_cauchy_transform,
    semicircle_density,
    solve_h,
    spectral_density,
    stieltjes_transform,
)
from .sampler import (
    ModularityView,
    SampledNetwork,
    attach_hub,
    dense_cap,
    densify_modularity,
    sample_network,
    write_edge_list,
)
from .empirical import (
    EigenReport,
    EnsembleHistogram,
    dense_symmetric_eigen,
    empirical_density,
    ensemble_hub_localization,
    ensemble_hub_top,
    ensemble_leading,
    hub_vector_stats,
    l1_distance,
    pooled_spectra,
    replicate_seed,
    top_eigenpair,
    write_eigenvalue_dump,
    write_histogram_csv,
)
from .errors import (
    AmbiguousRootError,
    ConvergenceError,
    DenseCapError,
    InternalConsistencyError,
    MeanOverflowError,
    ModelValidationError,
    NetspectraError,
    NoDetachedEigenvalueError,
    PoleError,
    RootNotFoundError,
    StagnationError,
)
