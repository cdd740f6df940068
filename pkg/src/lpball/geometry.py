"""Canonical coordinates on real and complex lp balls.

The triangular change of variables

    c_1 = x_1,    c_k = x_k / (1 - ||x^(k-1)||_p^p)^(1/p)

maps the open unit ball onto the open cube (-1,1)^N (real case) or the
polydisk (complex case); its inverse rebuilds x_k as c_k times the
accumulated product of (1 - |c_j|^p)^(1/p).  Both directions and the
log-Jacobian are implemented here, together with p-norms, the polar
decomposition and the complex-to-real interleaving.

Numerical policy: the prefix slack 1 - ||x^(k)||_p^p is carried
multiplicatively as prod_j (1 - |c_j|^p) instead of by subtraction, and
the inverse accumulates the product in log space; inputs within 1e-14 of
the boundary are rejected, never clamped.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, ParameterError

__all__ = [
    "p_norm",
    "to_canonical",
    "from_canonical",
    "jacobian_logdet",
    "polar",
    "complex_embed",
    "BOUNDARY_TOL",
]

#: points (or canonical coordinates) whose remaining slack 1 - |.|^p falls
#: at or below this margin are rejected as boundary cases
BOUNDARY_TOL = 1e-14


def _check_p(p, allow_inf: bool = False) -> float:
    p = float(p)
    if np.isinf(p) and allow_inf:
        return p
    if not np.isfinite(p) or p < 1.0:
        raise ParameterError(f"p must be a finite real >= 1, got {p}")
    return p


def p_norm(x, p, axis: int = -1):
    """lp norm along ``axis``, max-rescaled for stability.

    ``p`` may be ``numpy.inf`` (sup norm).  Scalars are returned for
    single vectors, arrays for stacked input.
    """
    p = _check_p(p, allow_inf=True)
    x = np.asarray(x)
    if x.size == 0 or x.shape[axis] == 0:
        raise DomainError("p_norm of an empty vector")
    mag = np.abs(x)
    if np.isinf(p):
        out = mag.max(axis=axis)
    else:
        scale = mag.max(axis=axis, keepdims=True)
        safe = np.where(scale == 0.0, 1.0, scale)
        out = np.squeeze(scale, axis=axis) * np.sum((mag / safe) ** p, axis=axis) ** (1.0 / p)
    return out if np.ndim(out) else float(out)


def to_canonical(x, p):
    """Canonical coordinates of strict interior points of the unit lp ball.

    Accepts a vector or a (rows, N) stack, real or complex; complex
    entries are treated through their modulus, phases pass through.
    Points on or outside the boundary raise :class:`DomainError` naming
    the offending prefix.
    """
    p = _check_p(p)
    x = np.asarray(x)
    if x.size == 0:
        raise DomainError("empty coordinate vector")
    x = x.astype(complex) if np.iscomplexobj(x) else x.astype(float)
    c = np.empty_like(x)
    slack = np.ones(x.shape[:-1])  # prod_{j<k} (1 - |c_j|^p) = 1 - ||x^(k-1)||_p^p
    for k in range(x.shape[-1]):
        ck = x[..., k] / slack ** (1.0 / p)
        q = np.abs(ck) ** p
        slack_k = 1.0 - q
        if np.any(slack_k <= BOUNDARY_TOL):
            raise DomainError(
                f"prefix norm ||x^({k + 1})||_p is within {BOUNDARY_TOL} of 1: "
                "point is not strictly inside the ball"
            )
        c[..., k] = ck
        slack = slack * slack_k
    return c


def from_canonical(c, p):
    """Inverse canonical map: x_k = c_k * prod_{j<k} (1 - |c_j|^p)^(1/p).

    The product is accumulated in log space.  Any coordinate with
    1 - |c_k|^p <= 1e-14 is rejected.
    """
    p = _check_p(p)
    c = np.asarray(c)
    if c.size == 0:
        raise DomainError("empty canonical coordinate vector")
    c = c.astype(complex) if np.iscomplexobj(c) else c.astype(float)
    slack = 1.0 - np.abs(c) ** p
    if np.any(slack <= BOUNDARY_TOL):
        raise DomainError(
            f"canonical coordinate within {BOUNDARY_TOL} of the boundary |c| = 1"
        )
    logslack = np.log(slack)
    cum = np.cumsum(logslack, axis=-1) - logslack  # excludes the k-th factor
    return c * np.exp(cum / p)


def jacobian_logdet(c, p) -> float:
    """Log-determinant of the inverse canonical map at ``c``:
    sum_k ((N-k)/p) * log(1 - |c_k|^p)."""
    p = _check_p(p)
    c = np.asarray(c)
    if c.ndim != 1 or c.size == 0:
        raise DomainError("expected a nonempty coordinate vector")
    slack = 1.0 - np.abs(c) ** p
    if np.any(slack <= BOUNDARY_TOL):
        raise DomainError("canonical coordinate on or outside the boundary")
    n = c.size
    weights = (n - np.arange(1, n + 1)) / p
    return float(np.sum(weights * np.log(slack)))


def polar(x, p):
    """Polar decomposition (||x||_p, x / ||x||_p) of a nonzero vector."""
    p = _check_p(p, allow_inf=True)
    x = np.asarray(x)
    r = p_norm(x, p)
    if np.any(np.asarray(r) == 0.0):
        raise DomainError("polar decomposition of the zero vector")
    r_arr = np.asarray(r)
    direction = x / (r_arr[..., None] if x.ndim > 1 else r_arr)
    return r, direction


def complex_embed(z) -> np.ndarray:
    """Interleave a complex vector into (re_1, im_1, ..., re_N, im_N).

    For p = 2 this identifies the complex ball with the real ball of
    doubled dimension; for other p it does not preserve the ball.
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],))
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out
