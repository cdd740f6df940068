"""Distribution samplers on the lp ball and sphere.

Three exact routes to the uniform ball law:

* ``canonical``   -- independent canonical coordinates eps_j * Z_j^(1/p)
  with Z_j ~ Beta(1/p, 1 + (N-j)/p), pushed through the inverse
  canonical map.  O(N) per draw and numerically stable, so it is the
  primary route.
* ``scaled-cone`` -- U^(1/N) times a cone-measure direction G/||G||_p,
  G having iid exp(-|g|^p) coordinates.
* ``gamma-exp``   -- G / (||G||_p^p + Z)^(1/p) with Z a unit exponential.

plus the p-generalized Dirichlet family (arbitrary Beta parameters on
the canonical coordinates) and cone-measure sampling on the sphere.

Draw order is fixed and documented: the canonical routes consume, per
draw in row-major order, one uniform for each coordinate magnitude
immediately followed by one uniform for its sign; the G-based routes
consume a magnitude block followed by a sign block, then the auxiliary
radial variables.  Batches are generated sequentially from the caller's
stream, so a batch is a pure function of (seed, position, count).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .dirichlet import GDParams, _standard_gamma
from .errors import DomainError, ParameterError, UsageError
from .geometry import from_canonical, p_norm
from .rng import RandomStream

__all__ = [
    "UNIFORM_METHODS",
    "BallDistributionSpec",
    "SampleBatch",
    "uniform_ball_params",
    "sample_pgd",
    "sample_uniform_ball",
    "sample_cone_sphere",
    "radial_cdf",
    "canonical_coord_cdf",
]

UNIFORM_METHODS = ("canonical", "scaled-cone", "gamma-exp")

_INTERIOR_TOL = 1e-14


@dataclass(frozen=True)
class BallDistributionSpec:
    """What to sample: dimension, exponent and distribution kind."""

    dim: int
    p: float
    kind: str  # 'pgd' | 'uniform' | 'cone-sphere'
    params: GDParams | None = None
    method: str | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ParameterError(f"dimension must be >= 1, got {self.dim}")
        p = float(self.p)
        if not (p >= 1.0):
            raise ParameterError(f"p must be >= 1, got {p}")
        if self.kind not in ("pgd", "uniform", "cone-sphere"):
            raise UsageError(f"unknown distribution kind {self.kind!r}")
        if self.kind == "pgd":
            if self.params is None:
                raise ParameterError("pgd spec requires parameters")
            if self.params.n != self.dim:
                raise ParameterError(
                    f"parameter length {self.params.n} does not match dimension {self.dim}"
                )
            if np.isinf(p):
                raise ParameterError("pgd requires finite p")
        if self.kind == "uniform":
            method = self.method or "canonical"
            if method not in UNIFORM_METHODS:
                raise UsageError(
                    f"unknown uniform method {method!r}; expected one of {UNIFORM_METHODS}"
                )
            object.__setattr__(self, "method", method)
        if self.kind == "cone-sphere" and np.isinf(p):
            raise ParameterError("cone-sphere requires finite p")
        object.__setattr__(self, "p", p)

    def to_dict(self) -> dict:
        out = {"dim": self.dim, "p": self.p, "kind": self.kind}
        if self.params is not None:
            out["a"] = self.params.a.tolist()
            out["b"] = self.params.b.tolist()
        if self.method is not None:
            out["method"] = self.method
        return out


@dataclass(frozen=True)
class SampleBatch:
    """A (count, dim) block of draws plus the spec and seed that made it."""

    spec: BallDistributionSpec | None
    rows: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        rows = np.asarray(self.rows)
        if rows.ndim != 2:
            raise ParameterError(f"rows must be a 2-d array, got shape {rows.shape}")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def count(self) -> int:
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


def uniform_ball_params(dim: int, p: float) -> GDParams:
    """Beta parameters a_j = 1/p, b_j = 1 + (N-j)/p that make the
    p-generalized Dirichlet law uniform on the ball."""
    p = float(p)
    if dim < 1:
        raise ParameterError(f"dimension must be >= 1, got {dim}")
    if not np.isfinite(p) or p < 1.0:
        raise ParameterError(f"p must be a finite real >= 1, got {p}")
    j = np.arange(1, dim + 1, dtype=float)
    return GDParams(np.full(dim, 1.0 / p), 1.0 + (dim - j) / p)


def _pgd_canonical_rows(params: GDParams, p: float, count: int,
                        stream: RandomStream) -> np.ndarray:
    """Independent canonical coordinates eps_j * Z_j^(1/p), Z_j ~ Beta(a_j, b_j).

    Consumes 2*count*n uniforms laid out row-major, sign after magnitude.
    """
    n = params.n
    u = stream.uniforms(2 * count * n).reshape(count, n, 2)
    coords = np.empty((count, n))
    for j in range(n):
        z = special.betaincinv(params.a[j], params.b[j], u[:, j, 0])
        while True:
            bad = np.flatnonzero((z <= 0.0) | (z >= 1.0))
            if bad.size == 0:
                break
            z[bad] = special.betaincinv(params.a[j], params.b[j],
                                        stream.uniforms(bad.size))
        signs = np.where(u[:, j, 1] < 0.5, -1.0, 1.0)
        coords[:, j] = signs * z ** (1.0 / p)
    return coords


def sample_pgd(params: GDParams, p: float, count: int,
               stream: RandomStream) -> SampleBatch:
    """Sample the p-generalized Dirichlet law on the unit lp ball."""
    spec = BallDistributionSpec(dim=params.n, p=float(p), kind="pgd", params=params)
    if count < 0:
        raise ParameterError(f"count must be nonnegative, got {count}")
    coords = _pgd_canonical_rows(params, spec.p, count, stream)
    rows = from_canonical(coords, spec.p) if count else np.empty((0, params.n))
    return SampleBatch(spec=spec, rows=rows, seed=stream.seed)


def _gp_block(p: float, count: int, dim: int, stream: RandomStream) -> np.ndarray:
    """(count, dim) block of iid exp(-|g|^p) draws: magnitude block, sign block."""
    n = count * dim
    mag = _standard_gamma(1.0 / p, stream, n)
    while True:
        bad = np.flatnonzero(mag == 0.0)
        if bad.size == 0:
            break
        mag[bad] = _standard_gamma(1.0 / p, stream, bad.size)
    mag **= 1.0 / p
    signs = np.where(stream.uniforms(n) < 0.5, -1.0, 1.0)
    return (mag * signs).reshape(count, dim)


def sample_uniform_ball(dim: int, p: float, count: int, stream: RandomStream,
                        method: str = "canonical") -> SampleBatch:
    """Sample uniformly in the unit lp ball by the chosen method.

    ``p = numpy.inf`` is allowed (iid uniform coordinates on (-1, 1));
    the method argument is then irrelevant.
    """
    spec = BallDistributionSpec(dim=dim, p=p, kind="uniform", method=method)
    if count < 0:
        raise ParameterError(f"count must be nonnegative, got {count}")
    if count == 0:
        return SampleBatch(spec=spec, rows=np.empty((0, dim)), seed=stream.seed)
    p = spec.p
    if np.isinf(p):
        rows = 2.0 * stream.uniforms(count * dim).reshape(count, dim) - 1.0
        return SampleBatch(spec=spec, rows=rows, seed=stream.seed)

    def draw(n: int) -> np.ndarray:
        if spec.method == "canonical":
            coords = _pgd_canonical_rows(uniform_ball_params(dim, p), p, n, stream)
            return from_canonical(coords, p)
        g = _gp_block(p, n, dim, stream)
        norm = p_norm(g, p, axis=-1)
        if spec.method == "scaled-cone":
            radius = stream.uniforms(n) ** (1.0 / dim)
            return g * (radius / norm)[:, None]
        # gamma-exp
        z = -np.log(stream.uniforms(n))
        return g / (norm**p + z)[:, None] ** (1.0 / p)

    rows = draw(count)
    while True:
        bad = np.flatnonzero(p_norm(rows, p, axis=-1) ** p >= 1.0 - _INTERIOR_TOL)
        if bad.size == 0:
            break
        rows[bad] = draw(bad.size)
    return SampleBatch(spec=spec, rows=rows, seed=stream.seed)


def sample_cone_sphere(dim: int, p: float, count: int,
                       stream: RandomStream) -> SampleBatch:
    """Sample the cone measure on the unit lp sphere: G / ||G||_p."""
    spec = BallDistributionSpec(dim=dim, p=p, kind="cone-sphere")
    if count < 0:
        raise ParameterError(f"count must be nonnegative, got {count}")
    if count == 0:
        return SampleBatch(spec=spec, rows=np.empty((0, dim)), seed=stream.seed)
    g = _gp_block(spec.p, count, dim, stream)
    norm = p_norm(g, spec.p, axis=-1)
    while True:
        bad = np.flatnonzero(norm == 0.0)
        if bad.size == 0:
            break
        g[bad] = _gp_block(spec.p, bad.size, dim, stream)
        norm[bad] = p_norm(g[bad], spec.p, axis=-1)
    rows = g / norm[:, None]
    return SampleBatch(spec=spec, rows=rows, seed=stream.seed)


def radial_cdf(dim: int, p: float, t):
    """CDF t -> t^(N/p) of ||X||_p^p under the uniform ball law."""
    if dim < 1:
        raise ParameterError(f"dimension must be >= 1, got {dim}")
    p = float(p)
    if not np.isfinite(p) or p < 1.0:
        raise ParameterError(f"p must be a finite real >= 1, got {p}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) or np.any(t > 1.0):
        raise DomainError("radial argument must lie in [0, 1]")
    out = t ** (dim / p)
    return out if out.ndim else float(out)


def canonical_coord_cdf(x, a: float, b: float, p: float):
    """CDF of eps * Z^(1/p) on (-1, 1), Z ~ Beta(a, b), eps a fair sign."""
    x = np.asarray(x, dtype=float)
    inside = np.clip(np.abs(x), 0.0, 1.0) ** p
    tail = special.betainc(a, b, inside)
    out = 0.5 + 0.5 * np.sign(x) * tail
    return out if out.ndim else float(out)
