"""File formats: coefficient JSON, sampled CSV, norm-sequence CSV, reports.

All writers are deterministic (sorted entries, fixed key order) and atomic
(write to a sibling temp file, then rename), so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .series import HermiteSeries, MultiIndex
from .spectral import NormSequence
from .logscalar import LogScalar

__all__ = ["save_series", "load_series", "load_samples_csv", "save_norm_sequence_csv",
           "save_stft_field_csv", "save_json_report", "atomic_write_text",
           "InputFormatError"]


class InputFormatError(ValueError):
    pass


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def series_to_json_dict(series: HermiteSeries) -> dict:
    entries = [{"alpha": list(a), "re": c.real, "im": c.imag}
               for a, c in sorted(series.items())]
    return {"d": series.dimension, "max_degree": series.max_degree, "entries": entries}


def save_series(series: HermiteSeries, path) -> None:
    """Write the coefficient JSON format:

        {"d": int, "max_degree": int,
         "entries": [{"alpha": [int, ...], "re": float, "im": float}, ...]}
    """
    atomic_write_text(path, json.dumps(series_to_json_dict(series), indent=1) + "\n")


def load_series(path) -> HermiteSeries:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: not valid JSON ({exc})") from exc
    try:
        d = int(data["d"])
        max_degree = int(data["max_degree"])
        coeffs = {}
        for i, entry in enumerate(data["entries"]):
            alpha = MultiIndex(entry["alpha"])
            coeffs[alpha] = complex(float(entry["re"]), float(entry.get("im", 0.0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"{path}: bad coefficient entry ({exc})") from exc
    return HermiteSeries(dimension=d, max_degree=max_degree, coefficients=coeffs,
                         truncation_tag=str(data.get("truncation_tag", "file")))


def load_samples_csv(path):
    """Read the two-column sampled-data format (x, f(x)); header optional.

    Returns (x, y) as float arrays sorted by x.  Malformed rows raise
    InputFormatError naming the row.
    """
    xs, ys = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for row_no, row in enumerate(reader, start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise InputFormatError(f"{path}: row {row_no} has {len(row)} column(s), need 2")
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError:
                if row_no == 1:
                    continue  # header line
                raise InputFormatError(f"{path}: row {row_no} is not numeric: {row!r}")
            xs.append(x)
            ys.append(y)
    if not xs:
        raise InputFormatError(f"{path}: no data rows")
    order = np.argsort(xs)
    return np.asarray(xs)[order], np.asarray(ys)[order]


def save_norm_sequence_csv(seq: NormSequence, path, config_line: str = "") -> None:
    """Write columns N, log_norm, norm_kind; log of a zero norm is -inf."""
    lines = []
    if config_line:
        lines.append(f"# {config_line}")
    lines.append("N,log_norm,norm_kind")
    for n, v in seq.values:
        log = v.log_magnitude if v.sign else -math.inf
        lines.append(f"{n},{log!r},{seq.norm_kind}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def save_stft_field_csv(fld, path) -> None:
    """Write an STFT field: grid-spec header lines, then row-major |V| values.

    Rows sweep the spatial axes, columns the frequency axes (flattened in C
    order for dimension 2).
    """
    g = fld.grid
    lines = [
        f"# stft_field d={fld.dimension}",
        f"# spatial_step={g.spatial_step!r} freq_step={g.freq_step!r}",
        f"# spatial_extent={g.spatial_extent!r} freq_extent={g.freq_extent!r}",
        f"# window_width={g.window_width!r}",
        f"# nx={fld.x_axis.size} nxi={fld.xi_axis.size}",
    ]
    mag = np.abs(fld.values)
    d = fld.dimension
    rows = mag.reshape(fld.x_axis.size**d, fld.xi_axis.size**d)
    for row in rows:
        lines.append(",".join(repr(float(v)) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def _default(obj):
    if isinstance(obj, LogScalar):
        return obj.to_json_pair()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if obj == math.inf:
        return "inf"
    raise TypeError(f"not JSON serializable: {type(obj)}")


def save_json_report(payload: dict, path) -> None:
    atomic_write_text(path, json.dumps(payload, indent=1, default=_default,
                                       allow_nan=True) + "\n")
