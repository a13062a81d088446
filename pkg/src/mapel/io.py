"""JSON instance files and result documents.

An instance file is a JSON object::

    {"gains": [[...], ...], "noise_w": [...], "p_max_w": [...],
     "weights": [...], "r_min_bps_hz": [...]}

``r_min_bps_hz`` is optional and defaults to zeros. Floats are written with
``repr`` so a write/read cycle reproduces every value exactly.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from mapel.network import InvalidInputError, Network

REQUIRED = ("gains", "noise_w", "p_max_w", "weights")


class InstanceFormatError(InvalidInputError):
    pass


def _vector(doc, key, m):
    val = doc[key]
    if not isinstance(val, list) or len(val) != m:
        raise InstanceFormatError(f"field {key!r}: expected a list of {m} numbers")
    for k, x in enumerate(val):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise InstanceFormatError(f"field {key!r}[{k}]: expected a number, got {x!r}")
    return np.array(val, dtype=float)


def instance_from_dict(doc: dict) -> Network:
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance must be a JSON object")
    for key in REQUIRED:
        if key not in doc:
            raise InstanceFormatError(f"missing field {key!r}")
    unknown = set(doc) - set(REQUIRED) - {"r_min_bps_hz"}
    if unknown:
        raise InstanceFormatError(f"unknown field(s): {', '.join(sorted(unknown))}")
    gains = doc["gains"]
    if not isinstance(gains, list) or not gains or not all(isinstance(r, list) for r in gains):
        raise InstanceFormatError("field 'gains': expected a non-empty list of rows")
    m = len(gains)
    rows = []
    for i, row in enumerate(gains):
        if len(row) != m:
            raise InstanceFormatError(f"field 'gains' row {i}: expected {m} entries, got {len(row)}")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise InstanceFormatError(f"field 'gains'[{i}][{j}]: expected a number, got {x!r}")
        rows.append(row)
    r_min = _vector(doc, "r_min_bps_hz", m) if "r_min_bps_hz" in doc else np.zeros(m)
    try:
        return Network(np.array(rows, dtype=float), _vector(doc, "noise_w", m),
                       _vector(doc, "p_max_w", m), _vector(doc, "weights", m), r_min)
    except InvalidInputError as exc:
        raise InstanceFormatError(str(exc)) from None


def instance_to_dict(net: Network) -> dict:
    return {
        "gains": net.gains.tolist(),
        "noise_w": net.noise.tolist(),
        "p_max_w": net.p_max.tolist(),
        "weights": net.weights.tolist(),
        "r_min_bps_hz": net.r_min.tolist(),
    }


def loads_instance(text: str) -> Network:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(doc)


def dumps_instance(net: Network) -> str:
    doc = instance_to_dict(net)
    rows = ",\n    ".join(json.dumps(r) for r in doc["gains"])
    lines = [f'  "gains": [\n    {rows}\n  ]']
    lines += [f"  {json.dumps(k)}: {json.dumps(doc[k])}" for k in list(doc)[1:]]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def read_instance(path) -> Network:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InstanceFormatError(f"{path}: {exc.strerror}") from None
    try:
        return loads_instance(text)
    except InstanceFormatError as exc:
        raise InstanceFormatError(f"{path}: {exc}") from None


def write_instance(net: Network, path) -> None:
    Path(path).write_text(dumps_instance(net))


def _plain(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def result_to_dict(res) -> dict:
    """Flatten a ``MapelResult`` into JSON-friendly values (powers in watts)."""
    return {
        "status": res.status.value,
        "p_star_w": _plain(res.p_star),
        "z_star": _plain(res.z_star),
        "objective_bps_hz": res.objective_bps_hz,
        "upper_bound_bps_hz": res.upper_bound_bps_hz,
        "epsilon_bound": res.epsilon_bound,
        "outer_iterations": res.outer_iterations,
        "vertex_peak": res.vertex_peak,
    }
