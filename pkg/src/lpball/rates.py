"""Closed-form limit objects: large-deviation rate functions, the
high-dimensional projection limit density, and self-normalized
partial-sum paths.

Rate functions evaluate to +inf outside their domain and vanish exactly
at the concentration point (the origin).  The functional-ball rate is
implemented exactly as printed, with the norm *not* squared, which
differs from the finite-dimensional p = 2 rate; callers comparing the
two should be aware of the mismatch.
"""

from __future__ import annotations

import numpy as np
from scipy import special

from .errors import DomainError, ParameterError
from .geometry import p_norm
from .rng import RandomStream
from .samplers import sample_cone_sphere

__all__ = [
    "ldp_rate_ball",
    "ldp_rate_canonical",
    "ldp_rate_beta",
    "ldp_rate_functional",
    "limit_density_pgd",
    "limit_cdf_pgd",
    "self_normalized_path",
]


def _check_p(p) -> float:
    p = float(p)
    if not np.isfinite(p) or p < 1.0:
        raise ParameterError(f"p must be a finite real >= 1, got {p}")
    return p


def ldp_rate_ball(x, p) -> float:
    """Rate -log(1 - ||x||_p^p) / p of ball projections; +inf outside
    the closed unit ball."""
    p = _check_p(p)
    x = np.asarray(x, dtype=float)
    v = p_norm(x, p) ** p
    if v >= 1.0:
        return float("inf")
    return float(-np.log1p(-v) / p)


def ldp_rate_canonical(c, p) -> float:
    """Rate -sum_i log(1 - |c_i|^p) / p of canonical coordinates; +inf
    once any coordinate leaves (-1, 1)."""
    p = _check_p(p)
    c = np.asarray(c, dtype=float)
    q = np.abs(c) ** p
    if np.any(q >= 1.0):
        return float("inf")
    return float(-np.sum(np.log1p(-q)) / p)


def ldp_rate_beta(x, c) -> float:
    """Rate -c * log(1 - x) of Beta(a, c*theta) tails on (0, 1)."""
    c = float(c)
    if not np.isfinite(c) or c <= 0.0:
        raise ParameterError(f"rate constant must be positive, got {c}")
    x = float(x)
    if x >= 1.0 or x < 0.0:
        return float("inf")
    return float(-c * np.log1p(-x))


def ldp_rate_functional(coeffs) -> float:
    """Functional-ball rate -log(1 - ||f||_2) / 2 on basis coefficients
    (norm unsquared, exactly as printed)."""
    coeffs = np.asarray(coeffs, dtype=float)
    norm = float(np.linalg.norm(coeffs))
    if norm >= 1.0:
        return float("inf")
    return float(-0.5 * np.log1p(-norm))


def limit_density_pgd(a, p, x):
    """Limit density p^(1-a) / (2 Gamma(a)) * |x|^(pa-1) * exp(-|x|^p / p)
    of rescaled leading coordinates when p*b_j grows like the dimension."""
    a = float(a)
    if not np.isfinite(a) or a <= 0.0:
        raise ParameterError(f"a must be positive, got {a}")
    p = _check_p(p)
    x = np.asarray(x, dtype=float)
    absx = np.abs(x)
    expo = p * a - 1.0
    with np.errstate(divide="ignore"):
        power = np.where(
            absx > 0.0,
            absx**expo,
            np.inf if expo < 0.0 else (1.0 if expo == 0.0 else 0.0),
        )
    out = p ** (1.0 - a) / (2.0 * special.gamma(a)) * power * np.exp(-(absx**p) / p)
    return out if out.ndim else float(out)


def limit_cdf_pgd(a, p, x):
    """CDF of the :func:`limit_density_pgd` law (sign times a
    gamma(a, 1/p) variate to the power 1/p)."""
    a = float(a)
    if not np.isfinite(a) or a <= 0.0:
        raise ParameterError(f"a must be positive, got {a}")
    p = _check_p(p)
    x = np.asarray(x, dtype=float)
    tail = special.gammainc(a, np.abs(x) ** p / p)
    out = 0.5 + 0.5 * np.sign(x) * tail
    return out if out.ndim else float(out)


def self_normalized_path(dim: int, p, grid, stream: RandomStream,
                         count: int | None = None) -> np.ndarray:
    """Partial-sum path p^(-1/p) N^(1/p - 1/2) sum_{k <= floor(N s)} eta_k
    of a cone-measure draw eta, evaluated at the grid times s.

    Returns a vector over the grid, or a (count, len(grid)) matrix when
    ``count`` is given.  At desk scale the s = 1 marginal is close to a
    centered normal law with the variance of the exp(-|x|^p) density.
    """
    p = _check_p(p)
    if dim < 1:
        raise ParameterError(f"dimension must be >= 1, got {dim}")
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if np.any(grid < 0.0) or np.any(grid > 1.0):
        raise DomainError("grid values must lie in [0, 1]")
    n = 1 if count is None else int(count)
    eta = sample_cone_sphere(dim, p, n, stream).rows
    partial = np.concatenate([np.zeros((n, 1)), np.cumsum(eta, axis=1)], axis=1)
    idx = np.floor(dim * grid).astype(int)
    scale = p ** (-1.0 / p) * dim ** (1.0 / p - 0.5)
    values = scale * partial[:, idx]
    return values[0] if count is None else values
