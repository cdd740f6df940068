"""Sampling and verification toolkit for generalized Dirichlet laws on
lp balls and canonical-moment parameterizations of moment spaces."""

__version__ = "0.1.0"

from .dirichlet import (
    GDParams,
    draw_beta,
    draw_dirichlet,
    draw_gamma,
    draw_gd,
    draw_gp,
    draw_rademacher,
    gem_params,
    gp_cdf,
    stick_break,
    stick_break_inverse,
)
from .errors import (
    DomainError,
    MomentSpaceError,
    ParameterError,
    ParseError,
    UsageError,
)
from .geometry import (
    complex_embed,
    from_canonical,
    jacobian_logdet,
    p_norm,
    polar,
    to_canonical,
)
from .moments import (
    hankel_bounds,
    moments_to_ball,
    real_canonical_jacobian_logdet,
    real_canonical_to_moments,
    real_moments_to_canonical,
    sample_uniform_moment_space,
)
from .opuc import (
    reversed_polynomial_coordinates,
    reversed_polynomial_projections,
    toeplitz_moment_matrix,
    trig_moments_from_verblunsky,
    verblunsky_from_trig_moments,
)
from .rates import (
    ldp_rate_ball,
    ldp_rate_beta,
    ldp_rate_canonical,
    ldp_rate_functional,
    limit_cdf_pgd,
    limit_density_pgd,
    self_normalized_path,
)
from .rng import RandomStream
from .samplers import (
    BallDistributionSpec,
    SampleBatch,
    canonical_coord_cdf,
    radial_cdf,
    sample_cone_sphere,
    sample_pgd,
    sample_uniform_ball,
    uniform_ball_params,
)
from .stats import (
    TestOutcome,
    TestReport,
    independence_scan,
    kolmogorov_sf,
    ks_one_sample,
    ks_two_sample,
    nuod_check,
)
from .suites import SUITES, run_suite, suite_defaults

__all__ = [
    "__version__",
    "RandomStream",
    "GDParams",
    "draw_gamma",
    "draw_beta",
    "draw_gp",
    "draw_rademacher",
    "draw_dirichlet",
    "stick_break",
    "stick_break_inverse",
    "draw_gd",
    "gem_params",
    "gp_cdf",
    "p_norm",
    "to_canonical",
    "from_canonical",
    "jacobian_logdet",
    "polar",
    "complex_embed",
    "BallDistributionSpec",
    "SampleBatch",
    "uniform_ball_params",
    "sample_pgd",
    "sample_uniform_ball",
    "sample_cone_sphere",
    "radial_cdf",
    "canonical_coord_cdf",
    "hankel_bounds",
    "real_moments_to_canonical",
    "real_canonical_to_moments",
    "real_canonical_jacobian_logdet",
    "sample_uniform_moment_space",
    "moments_to_ball",
    "toeplitz_moment_matrix",
    "verblunsky_from_trig_moments",
    "trig_moments_from_verblunsky",
    "reversed_polynomial_projections",
    "reversed_polynomial_coordinates",
    "ldp_rate_ball",
    "ldp_rate_canonical",
    "ldp_rate_beta",
    "ldp_rate_functional",
    "limit_density_pgd",
    "limit_cdf_pgd",
    "self_normalized_path",
    "kolmogorov_sf",
    "ks_one_sample",
    "ks_two_sample",
    "nuod_check",
    "independence_scan",
    "TestOutcome",
    "TestReport",
    "SUITES",
    "run_suite",
    "suite_defaults",
    "ParameterError",
    "DomainError",
    "MomentSpaceError",
    "UsageError",
    "ParseError",
]
