"""Reading and writing sample batches.

CSV batches carry a header row ``x1,...,xN`` (complex data interleaves
as ``re1,im1,...``) and one row per draw; values are written with 17
significant digits so doubles survive the round trip bit-exactly.  JSON
batches additionally record the distribution spec and seed.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .dirichlet import GDParams
from .errors import ParseError, UsageError
from .samplers import BallDistributionSpec, SampleBatch

__all__ = ["write_batch", "read_batch", "write_matrix", "read_matrix"]

_HEADER_RE = re.compile(r"^([A-Za-z_]+)(\d+)$")


def _format_value(v: float) -> str:
    return f"{v:.17g}"


def _header_for(rows: np.ndarray, prefix: str) -> list[str]:
    n = rows.shape[1]
    if np.iscomplexobj(rows):
        cols = []
        for j in range(1, n + 1):
            cols += [f"re{j}", f"im{j}"]
        return cols
    return [f"{prefix}{j}" for j in range(1, n + 1)]


def _flatten(rows: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(rows):
        out = np.empty((rows.shape[0], 2 * rows.shape[1]))
        out[:, 0::2] = rows.real
        out[:, 1::2] = rows.imag
        return out
    return np.asarray(rows, dtype=float)


def write_matrix(path, rows, prefix: str = "x") -> None:
    """Write a bare coordinate matrix as CSV with a ``prefix1,...`` header."""
    rows = np.atleast_2d(np.asarray(rows))
    header = _header_for(rows, prefix)
    flat = _flatten(rows)
    lines = [",".join(header)]
    lines += [",".join(_format_value(v) for v in row) for row in flat]
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path) -> tuple[np.ndarray, list[str]]:
    """Read a CSV coordinate matrix; returns (rows, header names).

    ``re/im`` column pairs are reassembled into complex rows.  Malformed
    content raises :class:`ParseError` with the 1-based line number.
    """
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise ParseError("missing header row", line=1)
    header = [h.strip() for h in lines[0].split(",")]
    names = []
    for h in header:
        m = _HEADER_RE.match(h)
        if not m:
            raise ParseError(f"malformed column name {h!r}", line=1)
        names.append(m.group(1))
    expected = [f"{nm}{j}" for j, nm in enumerate(names, start=1)]
    complex_cols = names and names[0] == "re"
    if complex_cols:
        if len(header) % 2:
            raise ParseError("re/im columns must come in pairs", line=1)
        expected = []
        for j in range(1, len(header) // 2 + 1):
            expected += [f"re{j}", f"im{j}"]
    if header != expected:
        raise ParseError(
            f"header {header} does not match the expected layout {expected}", line=1
        )
    data = []
    for i, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        parts = ln.split(",")
        if len(parts) != len(header):
            raise ParseError(
                f"expected {len(header)} columns, found {len(parts)}", line=i
            )
        try:
            data.append([float(v) for v in parts])
        except ValueError as exc:
            raise ParseError(f"bad numeric value: {exc}", line=i) from None
    rows = np.asarray(data, dtype=float).reshape(-1, len(header))
    if complex_cols:
        rows = rows[:, 0::2] + 1j * rows[:, 1::2]
    return rows, header


def write_batch(batch: SampleBatch, path, fmt: str = "csv") -> None:
    """Write a sample batch as CSV (rows only) or JSON (spec, seed, rows)."""
    if fmt == "csv":
        write_matrix(path, batch.rows, prefix="x")
    elif fmt == "json":
        payload = {
            "spec": batch.spec.to_dict() if batch.spec is not None else None,
            "seed": batch.seed,
            "rows": _flatten(batch.rows).tolist(),
            "complex": bool(np.iscomplexobj(batch.rows)),
        }
        Path(path).write_text(json.dumps(payload, sort_keys=True) + "\n")
    else:
        raise UsageError(f"unknown batch format {fmt!r}; expected 'csv' or 'json'")


def _spec_from_dict(d: dict | None) -> BallDistributionSpec | None:
    if d is None:
        return None
    params = None
    if "a" in d:
        params = GDParams(np.asarray(d["a"]), np.asarray(d["b"]))
    return BallDistributionSpec(
        dim=int(d["dim"]), p=float(d["p"]), kind=d["kind"],
        params=params, method=d.get("method"),
    )


def read_batch(path, fmt: str | None = None) -> SampleBatch:
    """Read a batch back; CSV carries no spec/seed, JSON restores both."""
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix.lower() == ".json" else "csv"
    if fmt == "csv":
        rows, _ = read_matrix(path)
        return SampleBatch(spec=None, rows=np.atleast_2d(rows), seed=None)
    if fmt != "json":
        raise UsageError(f"unknown batch format {fmt!r}; expected 'csv' or 'json'")
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    rows = np.asarray(payload["rows"], dtype=float)
    if rows.size == 0:
        rows = rows.reshape(0, 0)
    if payload.get("complex"):
        rows = rows[:, 0::2] + 1j * rows[:, 1::2]
    return SampleBatch(
        spec=_spec_from_dict(payload.get("spec")),
        rows=np.atleast_2d(rows),
        seed=payload.get("seed"),
    )
