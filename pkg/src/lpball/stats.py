"""Statistical verification machinery.

Kolmogorov-Smirnov tests with asymptotic p-values, the empirical
negative-orthant-dependence check, a pairwise independence scan, and the
structured outcome/report types that the verification suites emit.

All p-values come from the asymptotic Kolmogorov series
Q(lam) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lam^2), truncated once the
tail drops below 1e-10; sample sizes of 1e4 and above keep the
approximation adequate.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import UsageError
from .rng import RandomStream

__all__ = [
    "kolmogorov_sf",
    "ks_one_sample",
    "ks_two_sample",
    "nuod_check",
    "independence_scan",
    "TestOutcome",
    "TestReport",
    "config_digest",
]

_SERIES_TOL = 1e-10
#: below this argument the survival function is 1 to double precision
_SERIES_SMALL = 0.18


def kolmogorov_sf(lam: float) -> float:
    """Survival function of the Kolmogorov distribution at ``lam``."""
    lam = float(lam)
    if lam < _SERIES_SMALL:
        return 1.0
    total = 0.0
    sign = 1.0
    k = 1
    while True:
        term = math.exp(-2.0 * (k * lam) ** 2)
        total += sign * term
        if term < _SERIES_TOL:
            break
        sign = -sign
        k += 1
    return min(max(2.0 * total, 0.0), 1.0)


def ks_one_sample(samples, cdf) -> tuple[float, float]:
    """One-sample KS statistic and asymptotic p-value against ``cdf``."""
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise UsageError("KS test requires a nonempty sample")
    f = np.asarray(cdf(x), dtype=float)
    steps = np.arange(n + 1) / n
    d = max(float(np.max(steps[1:] - f)), float(np.max(f - steps[:-1])))
    return d, kolmogorov_sf(math.sqrt(n) * d)


def ks_two_sample(s1, s2) -> tuple[float, float]:
    """Two-sample KS statistic and asymptotic p-value.

    The effective size n1*n2/(n1+n2) feeds the same Kolmogorov series as
    the one-sample test.
    """
    x1 = np.sort(np.asarray(s1, dtype=float).ravel())
    x2 = np.sort(np.asarray(s2, dtype=float).ravel())
    n1, n2 = x1.size, x2.size
    if n1 == 0 or n2 == 0:
        raise UsageError("KS test requires two nonempty samples")
    pooled = np.concatenate([x1, x2])
    cdf1 = np.searchsorted(x1, pooled, side="right") / n1
    cdf2 = np.searchsorted(x2, pooled, side="right") / n2
    d = float(np.max(np.abs(cdf1 - cdf2)))
    n_eff = n1 * n2 / (n1 + n2)
    return d, kolmogorov_sf(math.sqrt(n_eff) * d)


@dataclass(frozen=True)
class TestOutcome:
    """One named check: statistic, p-value, decision threshold, verdict."""

    name: str
    statistic: float
    p_value: float
    threshold: float
    passed: bool
    sample_size: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "threshold": self.threshold,
            "passed": self.passed,
            "sample_size": self.sample_size,
            "seed": self.seed,
        }


def config_digest(suite: str, seed: int, config: dict) -> str:
    """Stable digest of a suite invocation."""
    payload = json.dumps(
        {"suite": suite, "seed": seed, "config": config},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class TestReport:
    """Outcome bundle of one verification suite run."""

    suite: str
    seed: int
    config: dict
    outcomes: list[TestOutcome] = field(default_factory=list)

    @property
    def digest(self) -> str:
        return config_digest(self.suite, self.seed, self.config)

    @property
    def all_passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "config": self.config,
            "config_digest": self.digest,
            "passed": self.all_passed,
            "outcomes": [o.to_dict() for o in self.outcomes],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    def to_text(self) -> str:
        lines = [
            f"suite: {self.suite}   seed: {self.seed}   digest: {self.digest[:16]}",
            f"{'name':<42} {'statistic':>12} {'p_value':>10} {'threshold':>10} verdict",
        ]
        for o in self.outcomes:
            lines.append(
                f"{o.name:<42} {o.statistic:>12.5g} {o.p_value:>10.4g} "
                f"{o.threshold:>10.4g} {'pass' if o.passed else 'FAIL'}"
            )
        lines.append(f"overall: {'pass' if self.all_passed else 'FAIL'}")
        return "\n".join(lines)


def _orthant_violation(exceed: list[np.ndarray], cells: np.ndarray,
                       idx: np.ndarray | None = None) -> float:
    """Max over grid cells of P(all coords exceed) - prod P(coord exceeds)."""
    worst = -np.inf
    for cell in cells:
        cols = [exceed[i][:, ti] for i, ti in enumerate(cell)]
        if idx is not None:
            cols = [col[idx] for col in cols]
        joint = np.logical_and.reduce(cols).mean()
        prod = math.prod(float(col.mean()) for col in cols)
        worst = max(worst, joint - prod)
    return float(worst)


def nuod_check(batch, grid, stream: RandomStream | None = None,
               bootstrap: int = 200, band: float = 3.0,
               name: str = "nuod") -> TestOutcome:
    """Empirical negative-upper-orthant-dependence check on |coordinates|.

    ``grid`` gives per-coordinate threshold lists; the statistic is the
    worst signed violation of P(|X_i| > x_i for all i) below the product
    of marginals over the full threshold grid, and the check passes when
    it does not exceed ``band`` bootstrap standard errors.
    """
    rows = np.abs(np.asarray(batch.rows, dtype=float))
    n, dim = rows.shape
    grid = [np.atleast_1d(np.asarray(g, dtype=float)) for g in grid]
    if len(grid) != dim:
        raise UsageError(f"grid must give thresholds for all {dim} coordinates")
    if any(g.size == 0 for g in grid):
        raise UsageError("empty threshold grid")
    if n == 0:
        raise UsageError("empty sample batch")
    exceed = [rows[:, i][:, None] > grid[i][None, :] for i in range(dim)]
    cells = np.stack(
        np.meshgrid(*[np.arange(g.size) for g in grid], indexing="ij"), axis=-1
    ).reshape(-1, dim)
    violation = _orthant_violation(exceed, cells)
    if stream is None:
        stream = RandomStream(batch.seed or 0).substream(0xB0075)
    reps = np.empty(bootstrap)
    for b in range(bootstrap):
        idx = (stream.uniforms(n) * n).astype(np.intp)
        reps[b] = _orthant_violation(exceed, cells, idx)
    se = float(reps.std(ddof=1))
    if se == 0.0:
        p_value = 1.0 if violation <= 0.0 else 0.0
    else:
        p_value = float(special.ndtr(-violation / se))
    threshold = float(special.ndtr(-band))
    return TestOutcome(
        name=name,
        statistic=violation,
        p_value=p_value,
        threshold=threshold,
        passed=bool(p_value >= threshold),
        sample_size=n,
        seed=batch.seed or 0,
    )


def _ranks(col: np.ndarray) -> np.ndarray:
    order = np.argsort(col, kind="stable")
    ranks = np.empty_like(order)
    ranks[order] = np.arange(col.size)
    return ranks


def independence_scan(rows, alpha: float = 0.01, seed: int = 0,
                      name: str = "independence") -> TestOutcome:
    """Pairwise independence scan over the columns of ``rows``.

    Every pair gets a Spearman rank-correlation z-test and a chi-square
    test on the 4x4 rank-quadrant table; the scan passes when all raw
    p-values clear the Bonferroni-corrected level alpha / (#tests).
    """
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2:
        raise UsageError("expected a (rows, coords) matrix")
    n, dim = rows.shape
    if n < 100:
        raise UsageError(f"independence scan needs at least 100 rows, got {n}")
    if dim < 2:
        raise UsageError("independence scan needs at least two coordinates")
    ranks = np.column_stack([_ranks(rows[:, j]) for j in range(dim)])
    quart = (4 * ranks) // n  # quartile bin 0..3 per coordinate
    min_p = 1.0
    n_tests = 0
    for i in range(dim):
        for j in range(i + 1, dim):
            rho = float(np.corrcoef(ranks[:, i], ranks[:, j])[0, 1])
            p_rho = float(2.0 * special.ndtr(-abs(rho) * math.sqrt(n - 1)))
            table = np.zeros((4, 4))
            np.add.at(table, (quart[:, i], quart[:, j]), 1.0)
            expected = table.sum(axis=1, keepdims=True) * table.sum(axis=0, keepdims=True) / n
            chi2 = float(np.sum((table - expected) ** 2 / expected))
            p_chi = float(special.chdtrc(9.0, chi2))
            min_p = min(min_p, p_rho, p_chi)
            n_tests += 2
    adjusted = min(1.0, min_p * n_tests)
    return TestOutcome(
        name=name,
        statistic=min_p,
        p_value=adjusted,
        threshold=float(alpha),
        passed=bool(adjusted >= alpha),
        sample_size=n,
        seed=seed,
    )
