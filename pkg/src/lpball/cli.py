"""Batch command-line front end.

Subcommands: ``sample`` (draw batches), ``transform`` (ball coordinates
to/from canonical coordinates), ``moments`` (real or trigonometric
moment transforms and uniform moment-space sampling), ``rate``
(rate-function evaluation) and ``verify`` (named statistical suites).

Exit codes: 0 success, 1 a verification suite failed, 2 usage or
parameter errors.  All randomness derives from ``--seed``, so identical
command lines produce byte-identical outputs.  ``LPBALL_THREADS`` caps
worker parallelism; generation is currently sequential, the variable is
validated and retained as an upper bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .dirichlet import GDParams, gem_params
from .errors import DomainError, ParameterError, ParseError, UsageError
from .geometry import from_canonical, to_canonical
from .moments import (
    real_canonical_to_moments,
    real_moments_to_canonical,
    sample_uniform_moment_space,
)
from .opuc import trig_moments_from_verblunsky, verblunsky_from_trig_moments
from .rates import (
    ldp_rate_ball,
    ldp_rate_beta,
    ldp_rate_canonical,
    ldp_rate_functional,
)
from .rng import RandomStream
from .samplers import (
    SampleBatch,
    UNIFORM_METHODS,
    sample_cone_sphere,
    sample_pgd,
    sample_uniform_ball,
    uniform_ball_params,
)
from .batchio import read_batch, read_matrix, write_batch, write_matrix
from .suites import SUITES, run_suite

_ERRORS = (UsageError, ParameterError, DomainError, ParseError, ValueError)


def thread_cap() -> int:
    """Validated value of LPBALL_THREADS (default 1)."""
    raw = os.environ.get("LPBALL_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"LPBALL_THREADS must be a positive integer, got {raw!r}")
    if cap < 1:
        raise UsageError(f"LPBALL_THREADS must be >= 1, got {cap}")
    return cap


def _parse_vector(text: str, name: str) -> np.ndarray:
    try:
        return np.asarray([float(v) for v in text.split(",") if v.strip() != ""])
    except ValueError:
        raise UsageError(f"--{name} expects a comma-separated list of reals, got {text!r}")


def _parse_p(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"--p expects a real number (or 'inf'), got {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpball",
        description="Samplers and verification suites for lp-ball Dirichlet "
                    "laws and canonical-moment spaces.",
    )
    parser.add_argument("--version", action="version", version=f"lpball {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="draw a batch and write it to disk")
    sp.add_argument("--dist", required=True, choices=["uniform", "pgd", "cone-sphere"])
    sp.add_argument("--n", required=True, type=int, help="dimension")
    sp.add_argument("--p", required=True, type=_parse_p)
    sp.add_argument("--method", choices=list(UNIFORM_METHODS), default="canonical")
    sp.add_argument("--a", type=str, help="comma list of a parameters (pgd)")
    sp.add_argument("--b", type=str, help="comma list of b parameters (pgd)")
    sp.add_argument("--preset", choices=["uniform", "gem-theta", "gem-alpha-theta"],
                    help="named parameter preset (pgd)")
    sp.add_argument("--theta", type=float, default=1.0)
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--count", required=True, type=int)
    sp.add_argument("--seed", required=True, type=int)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=["csv", "json"], default=None)
    sp.add_argument("--plot", help="write per-coordinate histogram data (CSV)")
    sp.add_argument("--bins", type=int, default=50)

    tp = sub.add_parser("transform", help="ball coordinates <-> canonical coordinates")
    tp.add_argument("--direction", required=True,
                    choices=["to-canonical", "from-canonical"])
    tp.add_argument("--p", required=True, type=_parse_p)
    tp.add_argument("--in", dest="infile", required=True)
    tp.add_argument("--out", required=True)

    mp = sub.add_parser("moments", help="moment-space transforms and sampling")
    mp.add_argument("--kind", choices=["real", "trig"], default="real")
    mp.add_argument("--direction", required=True,
                    choices=["to-canonical", "from-canonical", "sample-uniform"])
    mp.add_argument("--n", type=int, help="dimension (sample-uniform)")
    mp.add_argument("--count", type=int)
    mp.add_argument("--seed", type=int)
    mp.add_argument("--in", dest="infile")
    mp.add_argument("--out", required=True)

    rp = sub.add_parser("rate", help="evaluate rate functions")
    rp.add_argument("--kind", required=True,
                    choices=["ball", "canonical", "beta", "functional"])
    rp.add_argument("--p", type=_parse_p, default=2.0)
    rp.add_argument("--c", type=float, help="rate constant (beta)")
    rp.add_argument("--x", type=str, help="inline comma-separated point")
    rp.add_argument("--in", dest="infile", help="CSV of points, one per row")
    rp.add_argument("--out", help="write rates as CSV instead of stdout")

    vp = sub.add_parser("verify", help="run a named verification suite")
    vp.add_argument("--suite", required=True)
    vp.add_argument("--seed", required=True, type=int)
    vp.add_argument("--n", type=int, help="dimension override")
    vp.add_argument("--p", type=_parse_p)
    vp.add_argument("--count", type=int)
    vp.add_argument("--alpha", type=float)
    vp.add_argument("--method", choices=list(UNIFORM_METHODS))
    vp.add_argument("--out", help="write the JSON report here (default stdout)")
    vp.add_argument("--format", choices=["json", "text"], default="json")
    return parser


def _pgd_params(args) -> GDParams:
    if args.preset == "uniform" or (args.preset is None and args.a is None):
        return uniform_ball_params(args.n, args.p)
    if args.preset in ("gem-theta", "gem-alpha-theta"):
        return gem_params(args.preset, theta=args.theta, alpha=args.alpha, n=args.n)
    if args.a is None or args.b is None:
        raise UsageError("pgd needs either --preset or both --a and --b")
    a = _parse_vector(args.a, "a")
    b = _parse_vector(args.b, "b")
    if a.size != args.n or b.size != args.n:
        raise UsageError(
            f"parameter vectors must have length n={args.n}, "
            f"got len(a)={a.size}, len(b)={b.size}"
        )
    return GDParams(a, b)


def _write_histograms(rows: np.ndarray, path: str, bins: int) -> None:
    lines = ["coord,bin_lo,bin_hi,count"]
    for j in range(rows.shape[1]):
        counts, edges = np.histogram(rows[:, j], bins=bins)
        for b in range(bins):
            lines.append(
                f"{j + 1},{edges[b]:.17g},{edges[b + 1]:.17g},{counts[b]}"
            )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _cmd_sample(args) -> int:
    stream = RandomStream(args.seed)
    if args.dist == "uniform":
        batch = sample_uniform_ball(args.n, args.p, args.count, stream,
                                    method=args.method)
    elif args.dist == "cone-sphere":
        batch = sample_cone_sphere(args.n, args.p, args.count, stream)
    else:
        batch = sample_pgd(_pgd_params(args), args.p, args.count, stream)
    fmt = args.format or ("json" if str(args.out).endswith(".json") else "csv")
    write_batch(batch, args.out, fmt=fmt)
    if args.plot:
        if args.bins < 1:
            raise UsageError(f"--bins must be >= 1, got {args.bins}")
        _write_histograms(np.asarray(batch.rows), args.plot, args.bins)
    return 0


def _cmd_transform(args) -> int:
    rows, _ = read_matrix(args.infile)
    if args.direction == "to-canonical":
        out = to_canonical(rows, args.p)
        write_matrix(args.out, out, prefix="c")
    else:
        out = from_canonical(rows, args.p)
        write_matrix(args.out, out, prefix="x")
    return 0


def _cmd_moments(args) -> int:
    if args.direction == "sample-uniform":
        if args.kind != "real":
            raise UsageError("uniform moment-space sampling exists only for kind=real")
        if args.n is None or args.count is None or args.seed is None:
            raise UsageError("sample-uniform requires --n, --count and --seed")
        rows = sample_uniform_moment_space(args.n, args.count, RandomStream(args.seed))
        write_matrix(args.out, rows, prefix="m")
        return 0
    if args.infile is None:
        raise UsageError(f"direction {args.direction} requires --in")
    rows, _ = read_matrix(args.infile)
    if args.kind == "real":
        if args.direction == "to-canonical":
            write_matrix(args.out, real_moments_to_canonical(rows), prefix="c")
        else:
            write_matrix(args.out, real_canonical_to_moments(rows), prefix="m")
        return 0
    rows = np.atleast_2d(rows)
    if not np.iscomplexobj(rows):
        rows = rows.astype(complex)
    if args.direction == "to-canonical":
        out = np.vstack([verblunsky_from_trig_moments(r) for r in rows])
    else:
        out = np.vstack([trig_moments_from_verblunsky(r) for r in rows])
    write_matrix(args.out, out, prefix="re")
    return 0


def _cmd_rate(args) -> int:
    if (args.x is None) == (args.infile is None):
        raise UsageError("rate needs exactly one of --x or --in")
    if args.x is not None:
        points = _parse_vector(args.x, "x").reshape(1, -1)
    else:
        points, _ = read_matrix(args.infile)
        points = np.atleast_2d(points)
    if args.kind == "ball":
        values = [ldp_rate_ball(row, args.p) for row in points]
    elif args.kind == "canonical":
        values = [ldp_rate_canonical(row, args.p) for row in points]
    elif args.kind == "beta":
        if args.c is None:
            raise UsageError("rate --kind beta requires --c")
        values = [ldp_rate_beta(float(row[0]), args.c) for row in points]
    else:
        values = [ldp_rate_functional(row) for row in points]
    if args.out:
        write_matrix(args.out, np.asarray(values).reshape(-1, 1), prefix="rate")
    else:
        for v in values:
            print(f"{v:.17g}")
    return 0


def _cmd_verify(args) -> int:
    config = {}
    if args.n is not None:
        config["dim"] = args.n
    for key in ("p", "count", "alpha", "method"):
        value = getattr(args, key)
        if value is not None:
            config[key] = value
    report = run_suite(args.suite, config, RandomStream(args.seed))
    rendered = report.to_json() if args.format == "json" else report.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered + "\n")
    else:
        print(rendered)
    return 0 if report.all_passed else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        thread_cap()
        handler = {
            "sample": _cmd_sample,
            "transform": _cmd_transform,
            "moments": _cmd_moments,
            "rate": _cmd_rate,
            "verify": _cmd_verify,
        }[args.command]
        return handler(args)
    except _ERRORS as exc:
        print(f"lpball: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
