"""Trigonometric moments, Verblunsky coefficients and reversed-polynomial
coordinates.

For a probability measure on the unit circle with moments
t_k = integral of z^k, the monic orthogonal polynomials Phi_n are built
by Gram-Schmidt against the Hermitian Toeplitz moment form (inner
product linear in the first argument, conjugated in the second).  The
n-th Verblunsky coefficient is c_n = -conj(Phi_n(0)); the map between
(t_1, ..., t_N) and (c_1, ..., c_N) is a triangular bijection.

The forward direction solves the Toeplitz systems directly so that the
Szego norm recursion ||Phi_n||^2 = (1 - |c_n|^2) ||Phi_{n-1}||^2 can be
*verified* as an invariant rather than assumed; the backward direction
builds Phi_n through that recursion and reads off the unique t_n fixed
by orthogonality to constants, which enters the equation affinely.

The projections of the normalized reversed polynomial onto the
orthonormal family have squared moduli summing to one, which embeds any
admissible coefficient vector into the complex Euclidean unit ball.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, MomentSpaceError, ParameterError, UsageError

__all__ = [
    "toeplitz_moment_matrix",
    "verblunsky_from_trig_moments",
    "trig_moments_from_verblunsky",
    "opuc_norms_sq",
    "reversed_polynomial_projections",
    "reversed_polynomial_coordinates",
    "MAX_TRIG_DIM",
]

#: same exponential-conditioning cap as the real moment transforms
MAX_TRIG_DIM = 20


def _check_dim(n: int, max_dim: int) -> None:
    if n < 1:
        raise ParameterError("moment/coefficient vector must be nonempty")
    if n > max_dim:
        raise UsageError(
            f"dimension {n} exceeds the cap {max_dim}; the transform is "
            "exponentially ill-conditioned, pass max_dim explicitly to override"
        )


def toeplitz_moment_matrix(t) -> np.ndarray:
    """Moment form M[j, k] = <z^k, z^j> = t_{k-j} on the monomial basis.

    ``t`` holds t_1 .. t_N; t_0 = 1 and t_{-k} = conj(t_k) are implied.
    """
    t = np.atleast_1d(np.asarray(t, dtype=complex))
    full = np.concatenate(([1.0 + 0.0j], t))
    n = t.size + 1
    k, j = np.meshgrid(np.arange(n), np.arange(n))
    diff = k - j
    return np.where(diff >= 0, full[np.abs(diff)], np.conj(full[np.abs(diff)]))


def _first_failing_minor(gram: np.ndarray) -> int | None:
    for k in range(1, gram.shape[0] + 1):
        try:
            np.linalg.cholesky(gram[:k, :k])
        except np.linalg.LinAlgError:
            return k
    return None


def verblunsky_from_trig_moments(t, max_dim: int = MAX_TRIG_DIM,
                                 return_norms: bool = False):
    """Verblunsky coefficients of a trigonometric moment vector.

    Requires the (N+1) x (N+1) Toeplitz moment matrix to be positive
    definite; otherwise :class:`MomentSpaceError` reports the first
    failing principal minor.  With ``return_norms=True`` the squared
    norms ||Phi_n||^2, n = 0..N, are returned alongside.
    """
    t = np.atleast_1d(np.asarray(t, dtype=complex))
    _check_dim(t.size, max_dim)
    gram = toeplitz_moment_matrix(t)
    bad = _first_failing_minor(gram)
    if bad is not None:
        raise MomentSpaceError(
            f"Toeplitz moment matrix is not positive definite "
            f"(principal minor {bad} fails)",
            index=bad,
        )
    n = t.size
    c = np.empty(n, dtype=complex)
    norms_sq = np.empty(n + 1)
    norms_sq[0] = 1.0
    for k in range(1, n + 1):
        coeffs = np.empty(k + 1, dtype=complex)
        coeffs[:k] = np.linalg.solve(gram[:k, :k], -gram[:k, k])
        coeffs[k] = 1.0
        c[k - 1] = -np.conj(coeffs[0])
        norms_sq[k] = float(np.real(gram[k, : k + 1] @ coeffs))
    if return_norms:
        return c, norms_sq
    return c


def _check_coeffs(c, max_dim: int) -> np.ndarray:
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    _check_dim(c.size, max_dim)
    if np.any(np.abs(c) >= 1.0):
        raise DomainError("Verblunsky coefficients must lie in the open unit disk")
    return c


def trig_moments_from_verblunsky(c, max_dim: int = MAX_TRIG_DIM) -> np.ndarray:
    """Trigonometric moments of a Verblunsky coefficient vector.

    Phi_n is grown by the Szego recursion
    Phi_n = z Phi_{n-1} - conj(c_n) Phi*_{n-1}; orthogonality to the
    constants then pins t_n through one affine equation (the moment
    enters with coefficient 1 since Phi_n is monic).
    """
    c = _check_coeffs(c, max_dim)
    n = c.size
    t_full = np.empty(n + 1, dtype=complex)
    t_full[0] = 1.0
    phi = np.array([1.0 + 0.0j])
    phistar = np.array([1.0 + 0.0j])
    for k in range(1, n + 1):
        newphi = np.concatenate(([0.0 + 0.0j], phi))
        newphi[:k] -= np.conj(c[k - 1]) * phistar
        # <Phi_k, 1> = sum_i coeff_i t_i = 0, leading coefficient is 1
        t_full[k] = -(newphi[:k] @ t_full[:k])
        phi = newphi
        phistar = np.conj(newphi[::-1])
    return t_full[1:]


def opuc_norms_sq(c) -> np.ndarray:
    """Squared norms prod_{j<=n} (1 - |c_j|^2) of the monic orthogonal
    polynomials determined by the coefficients, n = 0..N."""
    c = _check_coeffs(c, max_dim=np.inf)
    return np.concatenate(([1.0], np.cumprod(1.0 - np.abs(c) ** 2)))


def reversed_polynomial_projections(c) -> np.ndarray:
    """Projections of the normalized reversed polynomial onto the
    orthonormal family, k = 0..N.

    The zeroth entry is prod_r sqrt(1 - |c_r|^2) and entry k equals
    -conj(c_k) * prod_{r>k} sqrt(1 - |c_r|^2); the squared moduli sum to
    one exactly.
    """
    c = _check_coeffs(c, max_dim=np.inf)
    n = c.size
    roots = np.sqrt(1.0 - np.abs(c) ** 2)
    # suffix[k] = prod_{r > k} sqrt(1 - |c_r|^2), suffix[n] = 1
    suffix = np.concatenate((np.cumprod(roots[::-1])[::-1], [1.0]))
    out = np.empty(n + 1, dtype=complex)
    out[0] = suffix[0]
    out[1:] = -np.conj(c) * suffix[1:]
    return out


def reversed_polynomial_coordinates(c) -> np.ndarray:
    """Point of the complex Euclidean unit ball attached to a coefficient
    vector: the reversed-polynomial projections in reversed order,
    z_j = pi_{N+1-j}.  Satisfies 1 - ||z||_2^2 = prod_j (1 - |c_j|^2)."""
    pi = reversed_polynomial_projections(c)
    return pi[1:][::-1]
