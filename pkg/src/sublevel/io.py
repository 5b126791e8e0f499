"""File formats: point-cloud CSV, set JSON, relation-table JSON.

Floats are written with 17 significant digits so that every value survives a
write/read cycle unchanged.
"""

import csv
import io as _io
import json
import math

import numpy as np

from ._validation import as_cloud
from .decision import TableRelation
from .extvalue import ExtValue
from .sets import LinealityStripped, ParabolaEpigraph, PolyhedralSet, Shifted, UnionTranslates


def fmt(x):
    return format(float(x), ".17g")


# -- CSV --------------------------------------------------------------------------

def parse_csv(text):
    rows = [r for r in csv.reader(_io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise ValueError("CSV has no header")
    header = [h.strip() for h in rows[0]]
    expected = [f"y{j + 1}" for j in range(len(header))]
    if header != expected:
        raise ValueError(f"CSV header must be {','.join(expected)}, got {','.join(header)}")
    try:
        data = [[float(c) for c in r] for r in rows[1:]]
    except ValueError as exc:
        raise ValueError(f"CSV has a non-numeric entry: {exc}") from None
    if any(len(r) != len(header) for r in data):
        raise ValueError("CSV rows must all have as many columns as the header")
    return as_cloud(np.array(data, dtype=float).reshape(len(data), len(header)), allow_empty=True)


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_csv(fh.read())


def format_csv(F):
    F = np.asarray(F, dtype=float)
    lines = [",".join(f"y{j + 1}" for j in range(F.shape[1]))]
    lines += [",".join(fmt(x) for x in row) for row in F]
    return "\n".join(lines) + "\n"


def write_csv(path, F):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_csv(F))


# -- set descriptions ---------------------------------------------------------------

def set_from_dict(d):
    kind = d.get("type")
    if kind == "polyhedral":
        return PolyhedralSet(np.array(d["normals"], dtype=float), np.array(d["offsets"], dtype=float))
    if kind == "shifted":
        return Shifted(set_from_dict(d["base"]), np.array(d["shift"], dtype=float))
    if kind == "union-translates":
        return UnionTranslates(set_from_dict(d["base"]), np.array(d["translates"], dtype=float))
    if kind == "parabola-epigraph":
        return ParabolaEpigraph(int(d["dim"]))
    raise ValueError(f"unknown set type {kind!r}")


def set_to_dict(S):
    if isinstance(S, PolyhedralSet):
        return {"type": "polyhedral", "normals": S.normals.tolist(), "offsets": S.offsets.tolist()}
    if isinstance(S, Shifted):
        return {"type": "shifted", "base": set_to_dict(S.base), "shift": S.shift.tolist()}
    if isinstance(S, UnionTranslates):
        return {"type": "union-translates", "base": set_to_dict(S.base),
                "translates": S.translates.tolist()}
    if isinstance(S, ParabolaEpigraph):
        return {"type": "parabola-epigraph", "dim": S.dim}
    if isinstance(S, LinealityStripped):
        raise ValueError("D \\ (-D) has no JSON form")
    raise TypeError(f"not a supported set: {type(S).__name__}")


def read_set(path):
    with open(path, encoding="utf-8") as fh:
        return set_from_dict(json.load(fh))


def read_table(path):
    with open(path, encoding="utf-8") as fh:
        d = json.load(fh)
    return TableRelation(np.array(d["points"], dtype=float), np.array(d["matrix"], dtype=bool))


# -- deterministic JSON ---------------------------------------------------------------

def _encode(obj):
    if isinstance(obj, ExtValue):
        return _encode(obj.to_json())
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return '"nu"'
        if math.isinf(x):
            return '"inf"' if x > 0 else '"-inf"'
        return fmt(x)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ", ".join(f"{json.dumps(k, ensure_ascii=False)}: {_encode(v)}" for k, v in items) + "}"
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    """JSON with 17-significant-digit floats, "nu"/"-inf" strings and sorted keys."""
    return _encode(obj)
