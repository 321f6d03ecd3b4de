"""Deterministic artifact writers.

Every CSV starts with one comment line holding a JSON metadata block
(command, parameters, tolerances, seed, build identifier, wall time) and is
otherwise a plain delimited body.  Bodies are byte-identical across runs
with the same configuration and seed; only the metadata line may differ
(wall time).  A sidecar ``<name>.meta.json`` repeats the metadata for
consumers that skip comments.  Partial results carry ``"truncated": true``
in the metadata.
"""

from __future__ import annotations

import json
import subprocess
from pathlib import Path

import numpy as np

__all__ = [
    "git_describe",
    "build_metadata",
    "format_float",
    "write_csv",
    "write_json",
    "read_csv_body",
]


def git_describe() -> str:
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"],
                             capture_output=True, text=True, timeout=10,
                             cwd=Path(__file__).parent)
        return out.stdout.strip() or "unknown"
    except (OSError, subprocess.SubprocessError):
        return "unknown"


def build_metadata(command: str, params: dict, tolerances: dict,
                   seed: int | None, wall_time_s: float,
                   truncated: bool = False, extra: dict | None = None) -> dict:
    meta = {
        "command": command,
        "params": params,
        "tolerances": tolerances,
        "seed": seed,
        "build": git_describe(),
        "wall_time_s": round(wall_time_s, 6),
        "truncated": truncated,
    }
    if extra:
        meta.update(extra)
    return meta


def format_float(v) -> str:
    """Shortest round-trip decimal form; deterministic across runs."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    f = float(v)
    if np.isnan(f):
        return "nan"
    return repr(f)


def _cell(v) -> str:
    s = v if isinstance(v, str) else format_float(v)
    if "," in s or '"' in s or "\n" in s:
        s = '"' + s.replace('"', '""') + '"'
    return s


def write_csv(path, columns: list[str], rows, metadata: dict) -> Path:
    """Write a metadata-headed CSV; cell values are formatted one way only."""
    path = Path(path)
    lines = ["# " + json.dumps(metadata, sort_keys=True, default=_json_default)]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    sidecar = path.with_suffix(path.suffix + ".meta.json")
    sidecar.write_text(json.dumps(metadata, indent=2, sort_keys=True,
                                  default=_json_default) + "\n")
    return path


def write_json(path, payload: dict, metadata: dict | None = None) -> Path:
    path = Path(path)
    doc = dict(payload)
    if metadata is not None:
        doc["metadata"] = metadata
    path.write_text(json.dumps(doc, indent=2, sort_keys=True,
                               default=_json_default) + "\n")
    return path


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "value"):
        return obj.value
    return str(obj)


def read_csv_body(path) -> str:
    """The non-comment part of a CSV, used for byte-identity checks."""
    lines = Path(path).read_text().splitlines()
    return "\n".join(ln for ln in lines if not ln.startswith("#"))
