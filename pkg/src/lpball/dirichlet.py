"""Univariate and simplex building blocks.

Gamma, Beta, two-sided Gamma-power, Rademacher and Dirichlet draws, the
stick-breaking bijection between (0,1)^n and the open simplex, the
generalized Dirichlet law built from independent Beta factors, and the
GEM parameter families.

Sampling routes
---------------
* ``draw_gamma`` uses Marsaglia-Tsang rejection (valid for shape >= 1)
  with the boosting identity ``gamma(a) = gamma(a+1) * U**(1/a)`` for
  shape < 1, so tiny shapes such as 1/p for large p stay exact.
* ``draw_beta`` inverts the regularized incomplete Beta function on a
  single uniform, which keeps stream consumption fixed at one word per
  variate.  The classical gamma-ratio construction is deliberately left
  to the test suite as an independent oracle.
* Any Beta variate that rounds to exactly 0 or 1 (a probability-zero
  event at finite precision) is resampled so downstream transforms stay
  interior.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError, ParameterError, UsageError
from .rng import RandomStream

__all__ = [
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
]


@dataclass(frozen=True)
class GDParams:
    """Parameter pair (a, b) of a (p-)generalized Dirichlet law.

    Both vectors must have equal length and strictly positive entries.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.a, dtype=float))
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        if a.ndim != 1 or b.ndim != 1:
            raise ParameterError("a and b must be vectors")
        if a.size == 0:
            raise ParameterError("parameter vectors must be nonempty")
        if a.size != b.size:
            raise ParameterError(f"length mismatch: len(a)={a.size}, len(b)={b.size}")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ParameterError("parameters must be finite")
        if np.any(a <= 0.0) or np.any(b <= 0.0):
            raise ParameterError("all entries of a and b must be strictly positive")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.a.size

    def truncated(self, k: int) -> "GDParams":
        """First ``k`` parameter pairs (the law of the first k coordinates)."""
        if not 1 <= k <= self.n:
            raise ParameterError(f"truncation length {k} outside 1..{self.n}")
        return GDParams(self.a[:k], self.b[:k])

    def satisfies_dirichlet_relation(self, rtol: float = 1e-12) -> bool:
        """True when b_{j-1} = a_j + b_j for all j, i.e. the law collapses
        to an ordinary Dirichlet distribution."""
        return bool(
            np.allclose(self.b[:-1], self.a[1:] + self.b[1:], rtol=rtol, atol=0.0)
        )


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0.0:
        raise ParameterError(f"{name} must be a positive finite real, got {value}")
    return value


def _standard_gamma(shape: float, stream: RandomStream, n: int) -> np.ndarray:
    """Marsaglia-Tsang sampler; shape < 1 goes through the boost identity."""
    if shape < 1.0:
        g = _standard_gamma(shape + 1.0, stream, n)
        return g * stream.uniforms(n) ** (1.0 / shape)
    d = shape - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)
    out = np.empty(n)
    todo = np.arange(n)
    while todo.size:
        x = special.ndtri(stream.uniforms(todo.size))
        v = (1.0 + c * x) ** 3
        u = stream.uniforms(todo.size)
        pos = v > 0.0
        logv = np.log(v, out=np.full(todo.size, -np.inf), where=pos)
        accept = pos & (np.log(u) < 0.5 * x * x + d - d * v + d * logv)
        out[todo[accept]] = d * v[accept]
        todo = todo[~accept]
    return out


def draw_gamma(shape, rate, stream: RandomStream, size: int | None = None):
    """Draw from the Gamma law with the given shape and rate.

    Returns a float when ``size`` is None, else an array of ``size``
    independent variates.  Draws are strictly positive (exact zeros from
    underflow are resampled).
    """
    shape = _check_positive("shape", shape)
    rate = _check_positive("rate", rate)
    n = 1 if size is None else int(size)
    g = _standard_gamma(shape, stream, n)
    while True:
        bad = np.flatnonzero(g == 0.0)
        if bad.size == 0:
            break
        g[bad] = _standard_gamma(shape, stream, bad.size)
    g /= rate
    return float(g[0]) if size is None else g


def draw_beta(a, b, stream: RandomStream, size: int | None = None,
              symmetric: bool = False):
    """Draw from Beta(a, b) on (0, 1), or its affine image on (-1, 1).

    With ``symmetric=True`` the variate is pushed through x -> 2x - 1.
    """
    a = _check_positive("a", a)
    b = _check_positive("b", b)
    n = 1 if size is None else int(size)
    x = special.betaincinv(a, b, stream.uniforms(n))
    while True:
        bad = np.flatnonzero((x <= 0.0) | (x >= 1.0))
        if bad.size == 0:
            break
        x[bad] = special.betaincinv(a, b, stream.uniforms(bad.size))
    if symmetric:
        x = 2.0 * x - 1.0
    return float(x[0]) if size is None else x


def draw_rademacher(stream: RandomStream, size: int | None = None):
    """Draw fair signs in {-1.0, +1.0}."""
    n = 1 if size is None else int(size)
    s = np.where(stream.uniforms(n) < 0.5, -1.0, 1.0)
    return float(s[0]) if size is None else s


def draw_gp(p, stream: RandomStream, size: int | None = None):
    """Draw from the two-sided law with density proportional to exp(-|x|^p).

    Equals a fair sign times gamma(1/p, 1)**(1/p).  Magnitudes are drawn
    first (as a block), then the matching signs.
    """
    p = float(p)
    if not np.isfinite(p) or p < 1.0:
        raise ParameterError(f"p must be a finite real >= 1, got {p}")
    n = 1 if size is None else int(size)
    mag = draw_gamma(1.0 / p, 1.0, stream, n) ** (1.0 / p)
    out = mag * draw_rademacher(stream, n)
    return float(out[0]) if size is None else out


def gp_cdf(x, p: float):
    """CDF of the exp(-|x|^p) law (closed form via the incomplete Gamma)."""
    p = float(p)
    if not np.isfinite(p) or p < 1.0:
        raise ParameterError(f"p must be a finite real >= 1, got {p}")
    x = np.asarray(x, dtype=float)
    tail = special.gammainc(1.0 / p, np.abs(x) ** p)
    return 0.5 + 0.5 * np.sign(x) * tail


def draw_dirichlet(a, stream: RandomStream, size: int | None = None):
    """Draw from the Dirichlet law on the closed simplex.

    ``a`` is the full parameter vector (k+1 entries for the k-simplex);
    the result sums to 1 along the last axis.  Components are drawn as
    normalized independent Gamma variates, column by column.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if a.size == 0:
        raise ParameterError("Dirichlet parameter vector must be nonempty")
    if np.any(~np.isfinite(a)) or np.any(a <= 0.0):
        raise ParameterError("Dirichlet parameters must be strictly positive")
    n = 1 if size is None else int(size)
    g = np.empty((n, a.size))
    for j, aj in enumerate(a):
        g[:, j] = draw_gamma(aj, 1.0, stream, n)
    rows = g / g.sum(axis=1, keepdims=True)
    # normalization can still round a coordinate to 0 for tiny shapes
    while True:
        bad = np.flatnonzero(np.any(rows <= 0.0, axis=1))
        if bad.size == 0:
            break
        for j, aj in enumerate(a):
            g[bad, j] = draw_gamma(aj, 1.0, stream, bad.size)
        rows[bad] = g[bad] / g[bad].sum(axis=1, keepdims=True)
    return rows[0] if size is None else rows


def stick_break(z) -> np.ndarray:
    """Map break fractions in (0,1)^n to an open-simplex point.

    P_1 = Z_1 and P_j = Z_j * prod_{k<j} (1 - Z_k).  Accepts a vector or
    a (rows, n) matrix; boundary values 0 or 1 are rejected.
    """
    z = np.asarray(z, dtype=float)
    if z.size == 0:
        raise DomainError("empty break-fraction vector")
    if np.any(z <= 0.0) or np.any(z >= 1.0):
        raise DomainError("break fractions must lie strictly inside (0, 1)")
    rem = np.cumprod(1.0 - z, axis=-1)
    shifted = np.roll(rem, 1, axis=-1)
    shifted[..., 0] = 1.0
    return z * shifted


def stick_break_inverse(p) -> np.ndarray:
    """Recover break fractions from an open-simplex point.

    Inverse of :func:`stick_break`; the running remainder is maintained
    multiplicatively so near-boundary points do not lose precision to
    cancellation.  Partial sums reaching 1 are rejected.
    """
    p = np.asarray(p, dtype=float)
    if p.size == 0:
        raise DomainError("empty simplex point")
    if np.any(p <= 0.0):
        raise DomainError("simplex coordinates must be strictly positive")
    z = np.empty_like(p)
    rem = np.ones(p.shape[:-1])
    for j in range(p.shape[-1]):
        zj = p[..., j] / rem
        if np.any(zj >= 1.0):
            raise DomainError(
                f"partial sum reaches 1 at coordinate {j + 1}: not an open-simplex point"
            )
        z[..., j] = zj
        rem = rem * (1.0 - zj)
    return z


def draw_gd(params: GDParams, stream: RandomStream, size: int | None = None):
    """Draw from the generalized Dirichlet law on the open simplex.

    Break fractions Z_j ~ Beta(a_j, b_j) are drawn independently (one
    uniform each, in row-major order) and pushed through
    :func:`stick_break`.
    """
    if not isinstance(params, GDParams):
        params = GDParams(*params)
    n = 1 if size is None else int(size)
    u = stream.uniforms(n * params.n).reshape(n, params.n)
    z = np.empty_like(u)
    for j in range(params.n):
        z[:, j] = special.betaincinv(params.a[j], params.b[j], u[:, j])
        while True:
            bad = np.flatnonzero((z[:, j] <= 0.0) | (z[:, j] >= 1.0))
            if bad.size == 0:
                break
            z[bad, j] = special.betaincinv(
                params.a[j], params.b[j], stream.uniforms(bad.size)
            )
    rows = stick_break(z)
    return rows[0] if size is None else rows


def gem_params(kind: str, theta: float, alpha: float = 0.0, n: int = 1) -> GDParams:
    """Stick-breaking parameters of the GEM families.

    ``gem-theta`` gives Beta(1, theta) factors; ``gem-alpha-theta``
    gives Beta(1 - alpha, theta + j*alpha) with j running from 1 to n.
    """
    kind = str(kind).lower()
    if kind not in ("gem-theta", "gem-alpha-theta"):
        raise UsageError(
            f"unknown GEM kind {kind!r}; expected 'gem-theta' or 'gem-alpha-theta'"
        )
    theta = float(theta)
    alpha = float(alpha)
    if kind == "gem-theta":
        if alpha != 0.0:
            raise ParameterError("gem-theta requires alpha = 0")
    elif not 0.0 <= alpha < 1.0:
        raise ParameterError(f"alpha must lie in [0, 1), got {alpha}")
    if theta <= -alpha:
        raise ParameterError(f"theta must exceed -alpha, got theta={theta}, alpha={alpha}")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    j = np.arange(1, n + 1, dtype=float)
    return GDParams(np.full(n, 1.0 - alpha), theta + j * alpha)
