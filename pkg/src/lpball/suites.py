"""Named verification suites.

Each suite turns one family of distributional statements into a
:class:`~lpball.stats.TestReport`: Kolmogorov-Smirnov checks run at a
Bonferroni-corrected level within the suite, algebraic identities store
their worst error in ``statistic`` and the tolerance in ``threshold``
(with p_value 1.0 or 0.0), and orthant-dependence checks pass when the
violation stays within the Monte-Carlo band.

Every test draws from its own sub-stream of the caller's stream and the
outcomes are sorted by name, so a report is a pure function of
(suite, seed, config) and reruns are byte-identical.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import optimize, special

from .dirichlet import GDParams, draw_dirichlet, gp_cdf
from .errors import UsageError
from .geometry import from_canonical, p_norm, to_canonical
from .moments import (
    real_canonical_to_moments,
    real_moments_to_canonical,
    sample_uniform_moment_space,
    moments_to_ball,
    transform_range_widths,
)
from .opuc import (
    opuc_norms_sq,
    reversed_polynomial_coordinates,
    reversed_polynomial_projections,
    trig_moments_from_verblunsky,
    verblunsky_from_trig_moments,
)
from .rates import ldp_rate_ball, ldp_rate_beta, ldp_rate_canonical, limit_cdf_pgd
from .rng import RandomStream
from .samplers import (
    canonical_coord_cdf,
    radial_cdf,
    sample_cone_sphere,
    sample_pgd,
    sample_uniform_ball,
    uniform_ball_params,
    UNIFORM_METHODS,
)
from .stats import (
    TestOutcome,
    TestReport,
    independence_scan,
    ks_one_sample,
    ks_two_sample,
    nuod_check,
)

__all__ = ["SUITES", "run_suite", "suite_defaults"]

_DEFAULTS: dict[str, dict] = {
    "uniform-equivalence": {"dim": 5, "p": 1.5, "count": 100_000, "alpha": 0.01},
    "pgd-canonical": {
        "dim": 5, "p": 2.0, "a": None, "b": None, "count": 100_000, "alpha": 0.01,
    },
    "radial-law": {
        "dim": 5, "p": 1.5, "count": 100_000, "method": "canonical", "alpha": 0.01,
    },
    "cone-dirichlet": {"dim": 4, "p": 1.5, "count": 100_000, "alpha": 0.01},
    "nuod": {
        "dim": 3, "p": 2.0, "count": 100_000, "grid": [0.2, 0.4, 0.6],
        "band": 3.0, "bootstrap": 200,
    },
    "poincare-borel": {
        "dim": 10_000, "k": 3, "p": 2.0, "count": 2_500, "alpha": 0.01, "chunk": 500,
    },
    "tpoing-limit": {
        "dim": 10_000, "p": 2.0, "a": [0.5, 1.0, 2.0], "count": 100_000, "alpha": 0.01,
    },
    "rate-identities": {
        "dim": 6, "p": 1.5, "count": 10_000, "tol": 1e-12, "crange": 0.6,
        "beta_points": 20, "beta_tol": 1e-6, "beta_c": 0.75,
    },
    "moment-roundtrips": {
        "dims": [1, 4, 8, 12], "count": 200, "tol": 1e-10, "anchor_dim": 6,
        "anchor_tol": 1e-9, "skibinsky_tol": 1e-10,
    },
    "sigma-pushforward": {"dim": 4, "count": 100_000, "alpha": 0.01},
    "verblunsky-roundtrips": {
        "dim": 12, "count": 200, "cmax": 0.9, "tol": 1e-10, "pi_tol": 1e-12,
    },
}

SUITES = tuple(sorted(_DEFAULTS))


def suite_defaults(suite: str) -> dict:
    """Default configuration of a named suite."""
    if suite not in _DEFAULTS:
        raise UsageError(
            f"unknown suite {suite!r}; known suites: {', '.join(SUITES)}"
        )
    return dict(_DEFAULTS[suite])


def _ks_outcome(name, pair, threshold, n, seed) -> TestOutcome:
    d, p = pair
    return TestOutcome(
        name=name, statistic=float(d), p_value=float(p),
        threshold=float(threshold), passed=bool(p >= threshold),
        sample_size=int(n), seed=seed,
    )


def _identity_outcome(name, err, tol, n, seed) -> TestOutcome:
    err = float(err)
    return TestOutcome(
        name=name, statistic=err, p_value=1.0 if err <= tol else 0.0,
        threshold=float(tol), passed=bool(err <= tol),
        sample_size=int(n), seed=seed,
    )


def _rel_err(actual, expected) -> float:
    actual = np.asarray(actual, dtype=float)
    expected = np.asarray(expected, dtype=float)
    scale = np.maximum(np.abs(expected), np.finfo(float).tiny)
    return float(np.max(np.abs(actual - expected) / scale))


def _suite_uniform_equivalence(cfg, stream) -> list[TestOutcome]:
    dim, p, count, alpha = cfg["dim"], cfg["p"], cfg["count"], cfg["alpha"]
    seed = stream.seed
    batches = {
        m: sample_uniform_ball(dim, p, count, stream.substream(i), method=m)
        for i, m in enumerate(UNIFORM_METHODS)
    }
    pairs = [(a, b) for i, a in enumerate(UNIFORM_METHODS)
             for b in UNIFORM_METHODS[i + 1:]]
    thr = alpha / (len(pairs) * (dim + 1))
    out = []
    for m1, m2 in pairs:
        r1, r2 = batches[m1].rows, batches[m2].rows
        for j in range(dim):
            out.append(_ks_outcome(
                f"coord{j + 1}:{m1}|{m2}",
                ks_two_sample(r1[:, j], r2[:, j]), thr, count, seed,
            ))
        out.append(_ks_outcome(
            f"radial:{m1}|{m2}",
            ks_two_sample(p_norm(r1, p, axis=-1) ** p, p_norm(r2, p, axis=-1) ** p),
            thr, count, seed,
        ))
    return out


def _suite_pgd_canonical(cfg, stream) -> list[TestOutcome]:
    dim, p, count, alpha = cfg["dim"], cfg["p"], cfg["count"], cfg["alpha"]
    params = (
        uniform_ball_params(dim, p)
        if cfg["a"] is None
        else GDParams(np.asarray(cfg["a"]), np.asarray(cfg["b"]))
    )
    seed = stream.seed
    batch = sample_pgd(params, p, count, stream.substream(0))
    coords = to_canonical(batch.rows, p)
    thr = alpha / params.n
    out = [
        _ks_outcome(
            f"coord{j + 1}:beta-power",
            ks_one_sample(
                coords[:, j],
                lambda x, j=j: canonical_coord_cdf(x, params.a[j], params.b[j], p),
            ),
            thr, count, seed,
        )
        for j in range(params.n)
    ]
    out.append(independence_scan(coords, alpha=alpha, seed=seed))
    return out


def _suite_radial_law(cfg, stream) -> list[TestOutcome]:
    dim, p, count, alpha = cfg["dim"], cfg["p"], cfg["count"], cfg["alpha"]
    batch = sample_uniform_ball(dim, p, count, stream.substream(0),
                                method=cfg["method"])
    radii = p_norm(batch.rows, p, axis=-1) ** p
    pair = ks_one_sample(radii, lambda t: radial_cdf(dim, p, t))
    return [_ks_outcome("radial:power-law", pair, alpha, count, stream.seed)]


def _suite_cone_dirichlet(cfg, stream) -> list[TestOutcome]:
    dim, p, count, alpha = cfg["dim"], cfg["p"], cfg["count"], cfg["alpha"]
    seed = stream.seed
    batch = sample_cone_sphere(dim, p, count, stream.substream(0))
    xi = np.abs(batch.rows) ** p
    ref = draw_dirichlet(np.full(dim, 1.0 / p), stream.substream(1), count)
    thr = alpha / (2 * dim - 1)
    out = [
        _ks_outcome(f"coord{j + 1}:dirichlet", ks_two_sample(xi[:, j], ref[:, j]),
                    thr, count, seed)
        for j in range(dim)
    ]
    prefix = np.cumsum(xi, axis=1)
    for k in range(1, dim):
        out.append(_ks_outcome(
            f"prefix{k}:beta",
            ks_one_sample(
                prefix[:, k - 1],
                lambda t, k=k: special.betainc(k / p, (dim - k) / p, t),
            ),
            thr, count, seed,
        ))
    return out


def _relab_params(dim: int) -> GDParams:
    # an asymmetric Dirichlet-collapsed family: b_{j-1} = a_j + b_j
    a = np.array([[0.8, 1.3, 0.6][j % 3] for j in range(dim)])
    b_last = 1.1
    b = np.concatenate([np.cumsum(a[:0:-1])[::-1] + b_last, [b_last]])
    return GDParams(a, b)


def _suite_nuod(cfg, stream) -> list[TestOutcome]:
    dim, p, count = cfg["dim"], cfg["p"], cfg["count"]
    grid = [np.asarray(cfg["grid"], dtype=float)] * dim
    band, bootstrap = cfg["band"], cfg["bootstrap"]
    ball = sample_uniform_ball(dim, p, count, stream.substream(0))
    sphere = sample_cone_sphere(dim, p, count, stream.substream(1))
    pgd = sample_pgd(_relab_params(dim), p, count, stream.substream(2))
    return [
        nuod_check(ball, grid, stream=stream.substream(10),
                   bootstrap=bootstrap, band=band, name="uniform-ball"),
        nuod_check(sphere, grid, stream=stream.substream(11),
                   bootstrap=bootstrap, band=band, name="cone-sphere"),
        nuod_check(pgd, grid, stream=stream.substream(12),
                   bootstrap=bootstrap, band=band, name="pgd-dirichlet-family"),
    ]


def _suite_poincare_borel(cfg, stream) -> list[TestOutcome]:
    dim, k, p, count, alpha = cfg["dim"], cfg["k"], cfg["p"], cfg["count"], cfg["alpha"]
    chunk = cfg["chunk"]
    seed = stream.seed
    heads = {}
    for name, idx in (("sphere", 0), ("ball", 1)):
        sub = stream.substream(idx)
        parts = []
        remaining = count
        while remaining > 0:
            n = min(chunk, remaining)
            if name == "sphere":
                rows = sample_cone_sphere(dim, p, n, sub).rows
            else:
                rows = sample_uniform_ball(dim, p, n, sub, method="scaled-cone").rows
            parts.append(rows[:, :k].copy())
            remaining -= n
        heads[name] = dim ** (1.0 / p) * np.concatenate(parts, axis=0)
    thr = alpha / (2 * k)
    out = []
    for name in ("sphere", "ball"):
        for j in range(k):
            out.append(_ks_outcome(
                f"{name}-coord{j + 1}:gp",
                ks_one_sample(heads[name][:, j], lambda x: gp_cdf(x, p)),
                thr, count, seed,
            ))
    return out


def _suite_tpoing_limit(cfg, stream) -> list[TestOutcome]:
    dim, p, count, alpha = cfg["dim"], cfg["p"], cfg["count"], cfg["alpha"]
    a = np.asarray(cfg["a"], dtype=float)
    k = a.size
    # p * b_j = dim exactly; the first k coordinates of the dim-dimensional
    # law coincide with the k-dimensional draw by triangularity
    params = GDParams(a, np.full(k, dim / p))
    rows = sample_pgd(params, p, count, stream.substream(0)).rows
    scaled = dim ** (1.0 / p) * rows
    thr = alpha / k
    return [
        _ks_outcome(
            f"coord{j + 1}:limit",
            ks_one_sample(scaled[:, j], lambda x, j=j: limit_cdf_pgd(a[j], p, x)),
            thr, count, stream.seed,
        )
        for j in range(k)
    ]


def _beta_contraction_value(x: float, c: float) -> float:
    """Numeric contraction of the two Gamma rate functions onto x."""

    def objective(x2: float) -> float:
        return x * x2 / (1.0 - x) + c * x2 - 1.0 - math.log(c * x2)

    res = optimize.minimize_scalar(
        objective, bounds=(1e-12, 1e4), method="bounded",
        options={"xatol": 1e-10},
    )
    return float(res.fun)


def _suite_rate_identities(cfg, stream) -> list[TestOutcome]:
    dim, p, count, tol = cfg["dim"], cfg["p"], cfg["count"], cfg["tol"]
    crange = cfg["crange"]
    seed = stream.seed
    u = stream.substream(0).uniforms(count * dim).reshape(count, dim)
    c = crange * (2.0 * u - 1.0)
    x = from_canonical(c, p)
    err_comp = 0.0
    err_slack = 0.0
    for i in range(count):
        ji = ldp_rate_canonical(c[i], p)
        ii = ldp_rate_ball(x[i], p)
        err_comp = max(err_comp, abs(ii - ji) / max(ji, np.finfo(float).tiny))
        prod = float(np.prod(1.0 - np.abs(c[i]) ** p))
        slack = 1.0 - float(p_norm(x[i], p) ** p)
        err_slack = max(err_slack, abs(prod - slack) / prod)
    out = [
        _identity_outcome("rate-composition", err_comp, tol, count, seed),
        _identity_outcome("slack-product", err_slack, tol, count, seed),
    ]
    cc = cfg["beta_c"]
    xs = np.linspace(0.04, 0.9, cfg["beta_points"])
    err_beta = max(
        abs(_beta_contraction_value(float(xv), cc) - ldp_rate_beta(float(xv), cc))
        for xv in xs
    )
    out.append(_identity_outcome("beta-contraction", err_beta,
                                 cfg["beta_tol"], cfg["beta_points"], seed))
    return out


def _central_band(dim: int) -> float:
    # the admissible range of moment n shrinks like prod_j c_j (1 - c_j);
    # keep test points near the arcsine center so double precision can
    # resolve the round trip at the stated tolerance
    if dim <= 6:
        return 0.40
    if dim <= 9:
        return 0.20
    return 0.08


_ARCSINE_MOMENTS = [math.comb(2 * k, k) / 4.0**k for k in range(1, 21)]


def _lebesgue_canonical(dim: int) -> np.ndarray:
    out = np.empty(dim)
    out[0::2] = 0.5
    js = np.arange(1, dim // 2 + 1)
    out[1::2] = js / (2.0 * js + 1.0)
    return out


def _suite_moment_roundtrips(cfg, stream) -> list[TestOutcome]:
    count, tol = cfg["count"], cfg["tol"]
    seed = stream.seed
    out = []
    skib_err = 0.0
    for i, dim in enumerate(cfg["dims"]):
        w = _central_band(dim)
        u = stream.substream(i).uniforms(count * dim).reshape(count, dim)
        c = 0.5 + w * (2.0 * u - 1.0)
        m = real_canonical_to_moments(c)
        c_back = real_moments_to_canonical(m)
        out.append(_identity_outcome(
            f"roundtrip-canonical-N{dim}",
            float(np.max(np.abs(c - c_back))), tol, count, seed,
        ))
        m_back = real_canonical_to_moments(c_back)
        out.append(_identity_outcome(
            f"roundtrip-moment-N{dim}",
            float(np.max(np.abs(m - m_back))), tol, count, seed,
        ))
        # Skibinsky: admissible width vs prod c_j (1 - c_j), along the forward pass
        for row in range(min(count, 50)):
            widths = transform_range_widths(m[row])
            expect = np.cumprod(c_back[row] * (1.0 - c_back[row]))[:-1]
            skib_err = max(skib_err, _rel_err(widths[1:], expect))
    out.append(_identity_outcome(
        "skibinsky-range", skib_err, cfg["skibinsky_tol"], count, seed,
    ))
    adim, atol = cfg["anchor_dim"], cfg["anchor_tol"]
    arcsine = np.asarray(_ARCSINE_MOMENTS[:adim])
    out.append(_identity_outcome(
        "arcsine-prefix",
        float(np.max(np.abs(real_moments_to_canonical(arcsine) - 0.5))),
        atol, adim, seed,
    ))
    lebesgue = 1.0 / np.arange(2, adim + 2)
    out.append(_identity_outcome(
        "lebesgue-prefix",
        float(np.max(np.abs(
            real_moments_to_canonical(lebesgue) - _lebesgue_canonical(adim)
        ))),
        atol, adim, seed,
    ))
    return out


def _suite_sigma_pushforward(cfg, stream) -> list[TestOutcome]:
    dim, count, alpha = cfg["dim"], cfg["count"], cfg["alpha"]
    seed = stream.seed
    moments = sample_uniform_moment_space(dim, count, stream.substream(0))
    pushed = moments_to_ball(moments)
    params = GDParams(np.full(dim, 0.5), dim - np.arange(dim, dtype=float))
    direct = sample_pgd(params, 2.0, count, stream.substream(1)).rows
    thr = alpha / (dim + 1)
    out = [
        _ks_outcome(f"coord{j + 1}:pushforward",
                    ks_two_sample(pushed[:, j], direct[:, j]), thr, count, seed)
        for j in range(dim)
    ]
    out.append(_ks_outcome(
        "radial:pushforward",
        ks_two_sample(
            p_norm(pushed, 2.0, axis=-1) ** 2, p_norm(direct, 2.0, axis=-1) ** 2
        ),
        thr, count, seed,
    ))
    return out


def _suite_verblunsky_roundtrips(cfg, stream) -> list[TestOutcome]:
    dim, count, cmax, tol = cfg["dim"], cfg["count"], cfg["cmax"], cfg["tol"]
    seed = stream.seed
    sub = stream.substream(0)
    err_coeff = err_moment = err_norm = err_pi = err_tel = 0.0
    for _ in range(count):
        u = sub.uniforms(2 * dim)
        c = cmax * u[:dim] * np.exp(2j * np.pi * u[dim:])
        t = trig_moments_from_verblunsky(c)
        c_back, norms = verblunsky_from_trig_moments(t, return_norms=True)
        err_coeff = max(err_coeff, float(np.max(np.abs(c - c_back))))
        err_moment = max(err_moment, float(np.max(np.abs(
            t - trig_moments_from_verblunsky(c_back)
        ))))
        err_norm = max(err_norm, _rel_err(norms, opuc_norms_sq(c_back)))
        pi = reversed_polynomial_projections(c)
        err_pi = max(err_pi, abs(float(np.sum(np.abs(pi) ** 2)) - 1.0))
        z = reversed_polynomial_coordinates(c)
        err_tel = max(err_tel, _rel_err(
            1.0 - float(np.sum(np.abs(z) ** 2)),
            float(np.prod(1.0 - np.abs(c) ** 2)),
        ))
    return [
        _identity_outcome("roundtrip-coefficients", err_coeff, tol, count, seed),
        _identity_outcome("roundtrip-moments", err_moment, tol, count, seed),
        _identity_outcome("norm-recursion", err_norm, tol, count, seed),
        _identity_outcome("projection-unit-norm", err_pi, cfg["pi_tol"], count, seed),
        _identity_outcome("slack-telescoping", err_tel, cfg["pi_tol"], count, seed),
    ]


_SUITE_FNS = {
    "uniform-equivalence": _suite_uniform_equivalence,
    "pgd-canonical": _suite_pgd_canonical,
    "radial-law": _suite_radial_law,
    "cone-dirichlet": _suite_cone_dirichlet,
    "nuod": _suite_nuod,
    "poincare-borel": _suite_poincare_borel,
    "tpoing-limit": _suite_tpoing_limit,
    "rate-identities": _suite_rate_identities,
    "moment-roundtrips": _suite_moment_roundtrips,
    "sigma-pushforward": _suite_sigma_pushforward,
    "verblunsky-roundtrips": _suite_verblunsky_roundtrips,
}


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def run_suite(suite: str, config: dict | None = None,
              stream: RandomStream | None = None) -> TestReport:
    """Run a named verification suite and return its report.

    ``config`` overrides the suite defaults (unknown keys are rejected);
    all randomness derives from ``stream``, so reruns with the same
    (suite, seed, config) produce byte-identical reports.
    """
    defaults = suite_defaults(suite)  # raises UsageError on unknown names
    config = dict(config or {})
    unknown = sorted(set(config) - set(defaults))
    if unknown:
        raise UsageError(
            f"unknown config keys for suite {suite!r}: {', '.join(unknown)}"
        )
    merged = {**defaults, **config}
    merged = {k: _jsonable(v) for k, v in sorted(merged.items())}
    if stream is None:
        raise UsageError("run_suite requires a RandomStream")
    outcomes = _SUITE_FNS[suite](merged, stream)
    outcomes.sort(key=lambda o: o.name)
    return TestReport(suite=suite, seed=stream.seed, config=merged,
                      outcomes=outcomes)
