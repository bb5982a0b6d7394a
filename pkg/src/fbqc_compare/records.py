"""Line-delimited result records."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

SCHEMA_VERSION = 1


def _plain(v):
    if isinstance(v, Fraction):
        return float(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if hasattr(v, "item"):  # numpy scalars
        return v.item()
    return v


def make_record(kind: str, **fields) -> dict:
    rec = {"schema_version": SCHEMA_VERSION, "kind": kind}
    rec.update({k: _plain(v) for k, v in fields.items()})
    return rec


def format_record(rec: dict, fmt: str = "records") -> str:
    if fmt == "records":
        return json.dumps(rec, sort_keys=True, separators=(",", ":"))
    parts = []
    for k, v in rec.items():
        if k == "schema_version":
            continue
        if isinstance(v, float):
            v = f"{v:.6g}"
        elif isinstance(v, (list, dict)):
            v = json.dumps(v, separators=(",", ":"))
        parts.append(f"{k}={v}")
    return " ".join(parts)


def append_records(path, records) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a") as fh:
        for rec in records:
            fh.write(format_record(rec) + "\n")


def read_records(path) -> list[dict]:
    with Path(path).open() as fh:
        return [json.loads(ln) for ln in fh if ln.strip()]
