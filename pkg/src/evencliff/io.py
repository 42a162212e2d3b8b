"""Form, instance and algebra-dump files.

A form file (TOML or JSON) holds ``base_dim``, ``field`` ("Q" or "Fp:<p>"),
``a = [a1, a2, a3]``, ``l`` and ``M``: the six upper-triangular entries
M11, M12, M13, M22, M23, M33 as polynomial strings. Instance files add ``tag``
and ``seed``. Algebra dumps are JSON with labels, degrees and a product table.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from .clifford import FourDimAlgebra
from .exactalg.fields import Field, parse_field
from .exactalg.poly import parse_poly
from .quadform import SplitTwist, TwistedQuadraticForm
from .reconstruct import AlgebraWithSplitting
from .report import canonical_json, digest

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class FormatError(ValueError):
    """Input file does not follow the shared grammar."""


def load_data(path) -> dict:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() == ".json":
            data = json.loads(text)
        else:
            data = tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top level must be a table")
    return data


def _require(data, key, kind):
    if key not in data:
        raise FormatError(f"missing field {key!r}")
    v = data[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise FormatError(f"field {key!r} must be an integer")
    if kind is list and not isinstance(v, list):
        raise FormatError(f"field {key!r} must be a list")
    return v


def form_from_dict(data: dict, field: Field | None = None) -> TwistedQuadraticForm:
    try:
        field = field or parse_field(str(data.get("field", "Q")))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    base_dim = _require(data, "base_dim", int)
    a = _require(data, "a", list)
    if len(a) != 3 or any(isinstance(x, bool) or not isinstance(x, int) for x in a):
        raise FormatError("field 'a' must be three integers")
    l = _require(data, "l", int)
    entries = _require(data, "M", list)
    if len(entries) != 6 or not all(isinstance(e, str) for e in entries):
        raise FormatError("field 'M' must be six polynomial strings (M11, M12, M13, M22, M23, M33)")
    try:
        twist = SplitTwist(base_dim, tuple(a), l)
        upper = [parse_poly(e, field, twist.nvars) for e in entries]
        return TwistedQuadraticForm.from_upper(twist, upper)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def form_to_dict(q: TwistedQuadraticForm) -> dict:
    return {
        "base_dim": q.twist.base_dim,
        "field": str(q.field),
        "a": list(q.twist.a),
        "l": q.twist.l,
        "M": [str(e) for e in q.upper()],
    }


def load_form(path, field: Field | None = None) -> TwistedQuadraticForm:
    return form_from_dict(load_data(path), field)


def form_digest(q: TwistedQuadraticForm) -> str:
    return digest(canonical_json(form_to_dict(q)))


def _toml_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return json.dumps(v)  # JSON string escapes are valid TOML basic strings
    if isinstance(v, list):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    raise TypeError(f"cannot write {type(v).__name__} to TOML")


def dumps_toml(data: dict) -> str:
    """Flat tables only, which is all the form format needs."""
    return "".join(f"{k} = {_toml_value(v)}\n" for k, v in data.items())


def write_form(q: TwistedQuadraticForm, path, extra: dict | None = None):
    data = {**(extra or {}), **form_to_dict(q)}
    path = Path(path)
    text = json.dumps(data, indent=2) + "\n" if path.suffix.lower() == ".json" else dumps_toml(data)
    path.write_text(text, encoding="utf-8")


# algebra dumps ---------------------------------------------------------------


def algebra_to_dict(A: FourDimAlgebra) -> dict:
    out = {
        "kind": "algebra",
        "field": str(A.field),
        "nvars": A.nvars,
        "labels": list(A.labels),
        "degrees": list(A.degrees),
        "table": A.structure_dict(),
    }
    twist = getattr(A, "twist", None)
    if twist is not None:
        out["twist"] = twist.to_dict()
        out["index"] = A.index
    return out


def algebra_from_dict(data: dict, field: Field | None = None) -> AlgebraWithSplitting:
    try:
        field = field or parse_field(str(data["field"]))
        nvars = int(data["nvars"])
        labels = [str(x) for x in data["labels"]]
        degrees = [int(x) for x in data["degrees"]]
        if len(labels) != 4 or len(degrees) != 4:
            raise FormatError("an algebra dump needs four labels and four degrees")
        table = [[None] * 4 for _ in range(4)]
        for s in range(4):
            for t in range(4):
                entry = data["table"][f"{labels[s]}*{labels[t]}"]
                if len(entry) != 4:
                    raise FormatError(f"product {labels[s]}*{labels[t]} needs four coordinates")
                table[s][t] = [parse_poly(c, field, nvars) for c in entry]
    except KeyError as exc:
        raise FormatError(f"algebra dump is missing {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc
    return AlgebraWithSplitting(field, nvars, degrees, table, provenance="dump", labels=labels)


def is_algebra_dump(data: dict) -> bool:
    return data.get("kind") == "algebra" or "table" in data
