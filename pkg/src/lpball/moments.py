"""Canonical moments of the Hausdorff moment space on [0, 1].

A moment vector (m_1, ..., m_N) lies in the interior of the moment body
exactly when two families of Hankel matrices built from it are positive
definite.  Given an interior prefix (m_1, ..., m_{n-1}), the admissible
range of the next moment is an interval (lo_n, hi_n); the n-th canonical
moment is the relative position

    c_n = (m_n - lo_n) / (hi_n - lo_n)  in (0, 1).

Each Hankel determinant is affine in the trailing moment, so the
endpoints are its roots.  Numerically the two *gaps* are computed as
ratios of realized determinants,

    m_n - lo_n = det L_n(m_n) / det L_{n-2}(m_{n-2}),
    hi_n - m_n = det U_n(m_n) / det U_{n-2}(m_{n-2}),

(the deleted-last-row-and-column minor of a level-n matrix is the
realized level-(n-2) matrix of the same family), which keeps every
quantity positive and avoids the catastrophic cancellation of
subtracting two nearby roots: the range width shrinks like
prod_j c_j (1 - c_j), at least geometrically in N.  Both transform
directions walk the same bound computation, so round trips reproduce
their input down to the intrinsic representation floor of the map.

The determinant of the moment -> canonical-moment map and uniform
sampling of the moment body (independent Beta(N-j+1, N-j+1) canonical
moments) are also provided.
"""

from __future__ import annotations

import numpy as np
from scipy import special

from .errors import MomentSpaceError, ParameterError, UsageError
from .geometry import from_canonical
from .rng import RandomStream

__all__ = [
    "hankel_bounds",
    "real_moments_to_canonical",
    "real_canonical_to_moments",
    "real_canonical_jacobian_logdet",
    "sample_uniform_moment_space",
    "moments_to_ball",
    "MAX_MOMENT_DIM",
]

#: moment transforms are exponentially ill-conditioned in the dimension;
#: lengths above this cap are refused unless the caller overrides max_dim
MAX_MOMENT_DIM = 20

_WIDTH_TOL = 1e-14


def _check_dim(n: int, max_dim: int) -> None:
    if n < 1:
        raise ParameterError("moment vector must be nonempty")
    if n > max_dim:
        raise UsageError(
            f"moment dimension {n} exceeds the cap {max_dim}; the transform is "
            "exponentially ill-conditioned, pass max_dim explicitly to override"
        )


def _hankel_dets(prefix: np.ndarray, r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Determinants of the level-n lower/upper Hankel matrices with the
    candidate n-th moment set to ``r`` (per row)."""
    rows, nm1 = prefix.shape
    n = nm1 + 1
    mu = np.empty((rows, n + 1))
    mu[:, 0] = 1.0
    mu[:, 1:n] = prefix
    mu[:, n] = r
    k, odd = divmod(n, 2)
    i = np.arange(k + 1)
    if odd:  # n = 2k + 1
        lower = mu[:, i[:, None] + i[None, :] + 1]
        upper = mu[:, i[:, None] + i[None, :]] - mu[:, i[:, None] + i[None, :] + 1]
    else:  # n = 2k
        lower = mu[:, i[:, None] + i[None, :]]
        j = np.arange(k)
        upper = (
            mu[:, j[:, None] + j[None, :] + 1] - mu[:, j[:, None] + j[None, :] + 2]
        )
    return np.linalg.det(lower), np.linalg.det(upper)


class _RangeWalker:
    """Sequential range computation shared by both transform directions.

    Tracks the realized determinants two levels back in each Hankel
    family (the denominators of the gap ratios).
    """

    def __init__(self, rows: int):
        ones = np.ones(rows)
        self._dlo = [ones, ones]  # levels n-2, n-1 of the lower family
        self._dup = [ones, ones]
        self._level = 0

    def gaps(self, prefix: np.ndarray, r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(r - lo, hi - r) at the evaluation point ``r``; positive iff
        ``r`` lies inside the admissible range of moment n."""
        dlo, dup = _hankel_dets(prefix, r)
        return dlo / self._dlo[0], dup / self._dup[0]

    def midpoint(self, prefix: np.ndarray) -> np.ndarray:
        """A strictly interior evaluation point: the midpoint of the two
        affine determinant roots."""
        n = self._level + 1
        lo0, up0 = _hankel_dets(prefix, np.zeros(prefix.shape[0]))
        lo1, up1 = _hankel_dets(prefix, np.ones(prefix.shape[0]))
        slope_lo = lo1 - lo0
        slope_up = up0 - up1
        if np.any(slope_lo <= 0.0) or np.any(slope_up <= 0.0):
            raise MomentSpaceError(
                f"moment prefix of length {n - 1} is not interior "
                "(a Hankel principal minor is not positive)",
                index=n - 1,
            )
        return 0.5 * (-lo0 / slope_lo + up0 / slope_up)

    def advance(self, prefix: np.ndarray, m_n: np.ndarray) -> None:
        """Append the realized level-n determinants to the history."""
        dlo, dup = _hankel_dets(prefix, m_n)
        self._dlo = [self._dlo[1], dlo]
        self._dup = [self._dup[1], dup]
        self._level += 1


def _width_guard(width: np.ndarray, n: int) -> None:
    if np.any(width <= _WIDTH_TOL):
        raise MomentSpaceError(
            f"admissible range of moment {n} has width <= {_WIDTH_TOL}: "
            "input is on the boundary or too ill-conditioned",
            index=n,
        )


def hankel_bounds(m) -> tuple[float, float]:
    """Extreme admissible values of the next moment after the prefix ``m``.

    ``m`` holds the first n-1 moments of some interior point; the empty
    vector yields the full range (0, 1) of a first moment.
    """
    m = np.atleast_1d(np.asarray(m, dtype=float))
    _check_dim(m.size + 1, MAX_MOMENT_DIM)
    if m.size and (np.any(m <= 0.0) or np.any(m >= 1.0)):
        raise MomentSpaceError("moments of a measure on [0,1] must lie in (0,1)")
    rows = m.reshape(1, -1)
    walker = _RangeWalker(1)
    for k in range(1, m.size + 1):
        prefix = rows[:, : k - 1]
        mid = walker.midpoint(prefix)
        gl, gu = walker.gaps(prefix, mid)
        if np.any(gl <= 0.0) or np.any(gu <= 0.0) or np.any(
            rows[:, k - 1] <= mid - gl
        ) or np.any(rows[:, k - 1] >= mid + gu):
            raise MomentSpaceError(
                f"moment {k} leaves the admissible range: vector is not interior",
                index=k,
            )
        walker.advance(prefix, rows[:, k - 1])
    prefix = rows
    mid = walker.midpoint(prefix)
    gl, gu = walker.gaps(prefix, mid)
    if np.any(gl <= 0.0) or np.any(gu <= 0.0):
        raise MomentSpaceError(
            f"admissible range of moment {m.size + 1} collapsed: "
            "prefix is on the boundary or too ill-conditioned",
            index=m.size + 1,
        )
    _width_guard(gl + gu, m.size + 1)
    return float(mid[0] - gl[0]), float(mid[0] + gu[0])


def _as_rows(x) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        return x.reshape(1, -1), True
    if x.ndim == 2:
        return x, False
    raise ParameterError(f"expected a vector or a matrix of rows, got shape {x.shape}")


def real_moments_to_canonical(m, max_dim: int = MAX_MOMENT_DIM) -> np.ndarray:
    """Map interior moment vectors to canonical moments in (0, 1)^N.

    Accepts a vector or a (rows, N) stack.  Boundary or non-interior
    input raises :class:`MomentSpaceError` with the first failing index.
    """
    rows, single = _as_rows(m)
    n = rows.shape[-1]
    _check_dim(n, max_dim)
    if np.any(rows <= 0.0) or np.any(rows >= 1.0):
        raise MomentSpaceError("moments of a measure on [0,1] must lie in (0,1)")
    walker = _RangeWalker(rows.shape[0])
    c = np.empty_like(rows)
    for k in range(1, n + 1):
        prefix = rows[:, : k - 1]
        gl, gu = walker.gaps(prefix, rows[:, k - 1])
        if np.any(gl <= 0.0) or np.any(gu <= 0.0):
            raise MomentSpaceError(
                f"moment {k} leaves the admissible range: vector is not interior",
                index=k,
            )
        _width_guard(gl + gu, k)
        c[:, k - 1] = gl / (gl + gu)
        walker.advance(prefix, rows[:, k - 1])
    return c[0] if single else c


def real_canonical_to_moments(c, max_dim: int = MAX_MOMENT_DIM) -> np.ndarray:
    """Rebuild the moment vector from canonical moments in (0, 1)^N."""
    rows, single = _as_rows(c)
    n = rows.shape[-1]
    _check_dim(n, max_dim)
    if np.any(rows <= 0.0) or np.any(rows >= 1.0):
        raise MomentSpaceError("canonical moments must lie strictly in (0, 1)")
    walker = _RangeWalker(rows.shape[0])
    m = np.empty_like(rows)
    for k in range(1, n + 1):
        prefix = m[:, : k - 1]
        mid = walker.midpoint(prefix)
        gl, gu = walker.gaps(prefix, mid)
        if np.any(gl <= 0.0) or np.any(gu <= 0.0):
            raise MomentSpaceError(
                f"admissible range of moment {k} collapsed: "
                "prefix is on the boundary or too ill-conditioned",
                index=k,
            )
        width = gl + gu
        _width_guard(width, k)
        m[:, k - 1] = (mid - gl) + rows[:, k - 1] * width
        walker.advance(prefix, m[:, k - 1])
    return m[0] if single else m


def transform_range_widths(m, max_dim: int = MAX_MOMENT_DIM) -> np.ndarray:
    """Admissible range widths hi_n - lo_n encountered along the forward
    transform of one moment vector (width of moment 1 is 1)."""
    m = np.atleast_1d(np.asarray(m, dtype=float))
    _check_dim(m.size, max_dim)
    walker = _RangeWalker(1)
    rows = m.reshape(1, -1)
    widths = np.empty(m.size)
    for k in range(1, m.size + 1):
        prefix = rows[:, : k - 1]
        gl, gu = walker.gaps(prefix, rows[:, k - 1])
        if np.any(gl <= 0.0) or np.any(gu <= 0.0):
            raise MomentSpaceError(
                f"moment {k} leaves the admissible range: vector is not interior",
                index=k,
            )
        widths[k - 1] = float(gl[0] + gu[0])
        walker.advance(prefix, rows[:, k - 1])
    return widths


def real_canonical_jacobian_logdet(c) -> float:
    """Log-determinant of the canonical -> moment map:
    sum_{j<N} (N-j) * log(c_j (1 - c_j))."""
    c = np.asarray(c, dtype=float)
    if c.ndim != 1 or c.size == 0:
        raise ParameterError("expected a nonempty canonical moment vector")
    if np.any(c <= 0.0) or np.any(c >= 1.0):
        raise MomentSpaceError("canonical moments must lie strictly in (0, 1)")
    n = c.size
    if n == 1:
        return 0.0
    j = np.arange(1, n)
    return float(np.sum((n - j) * np.log(c[:-1] * (1.0 - c[:-1]))))


def sample_uniform_moment_space(dim: int, count: int, stream: RandomStream,
                                max_dim: int = MAX_MOMENT_DIM) -> np.ndarray:
    """Sample moment vectors uniformly from the N-dimensional moment body.

    Canonical moments C_j ~ Beta(N-j+1, N-j+1) are drawn independently
    (one uniform per entry, row-major) and mapped back to moments.
    Returns a (count, dim) array.
    """
    _check_dim(dim, max_dim)
    if count < 0:
        raise ParameterError(f"count must be nonnegative, got {count}")
    if count == 0:
        return np.empty((0, dim))
    u = stream.uniforms(count * dim).reshape(count, dim)
    c = np.empty_like(u)
    for j in range(1, dim + 1):
        beta_par = float(dim - j + 1)
        col = special.betaincinv(beta_par, beta_par, u[:, j - 1])
        while True:
            bad = np.flatnonzero((col <= 0.0) | (col >= 1.0))
            if bad.size == 0:
                break
            col[bad] = special.betaincinv(beta_par, beta_par, stream.uniforms(bad.size))
        c[:, j - 1] = col
    return real_canonical_to_moments(c, max_dim=max_dim)


def moments_to_ball(m, max_dim: int = MAX_MOMENT_DIM) -> np.ndarray:
    """Triangular map from the interior of the moment body into the
    Euclidean unit ball: canonical moments, then t -> 2t - 1 on each
    coordinate, then the inverse canonical coordinate map at p = 2."""
    c = real_moments_to_canonical(m, max_dim=max_dim)
    return from_canonical(2.0 * c - 1.0, 2.0)
