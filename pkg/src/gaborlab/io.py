"""CSV and JSON serialization of scan results.

Files carry full double precision (``repr``-exact, 17 significant digits in
CSV) and a fixed row order, so identical runs give byte-identical output.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from .lattice2d import ModuliPoint
from .moduli_scan import LandscapeSample
from .gabor_core import FrameBounds

__all__ = [
    "LANDSCAPE_HEADER",
    "RESULT_SCHEMA",
    "format_float",
    "write_landscape_csv",
    "read_landscape_csv",
    "write_table_csv",
    "write_json",
]

LANDSCAPE_HEADER = ("tau_x", "tau_y", "A", "B", "cond")

RESULT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "params", "results"],
    "properties": {
        "command": {
            "type": "string",
            "enum": ["bounds", "landscape", "rect-sweep", "identities", "landau", "montgomery", "oracle"],
        },
        "params": {"type": "object"},
        "results": {"type": "array", "items": {"type": "object"}},
    },
    "additionalProperties": False,
}


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def write_landscape_csv(samples, path) -> None:
    """One row per sample, sorted by ``(tau_y, tau_x)``."""
    samples = list(samples)
    if not samples:
        raise ValueError("no samples to write")
    rows = sorted(samples, key=lambda s: (s.tau.y, s.tau.x))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(LANDSCAPE_HEADER)
        for s in rows:
            w.writerow([format_float(v) for v in (s.tau.x, s.tau.y, s.bounds.lower, s.bounds.upper, s.bounds.cond)])


def read_landscape_csv(path):
    out = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != LANDSCAPE_HEADER:
            raise ValueError(f"unexpected landscape header {header}")
        for row in reader:
            x, y, a, b, _ = (float(v) for v in row)
            out.append(LandscapeSample(ModuliPoint(x, y), FrameBounds(a, b)))
    return out


def write_table_csv(header, rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format_float(v) if isinstance(v, float) else v for v in row])


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def write_json(command: str, params: dict, results: list, path) -> None:
    doc = {"command": command, "params": _clean(params), "results": _clean(results)}
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
