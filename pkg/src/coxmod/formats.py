"""Canonical JSON forms for the objects exchanged on the command line."""

from __future__ import annotations

import json
import re
from typing import Any, Dict, List, Mapping, Optional, Sequence

from .cemds import CEMDS, STATUSES, WEAK
from .ideal import Ideal
from .intlinalg import Grading
from .lineargen import PointConfig
from .polynomial import Polynomial, rational
from .textio import format_polynomial, max_variable_index, parse_polynomial
from .toric import Fan


class SchemaError(ValueError):
    """Input data does not follow the expected layout."""


def _render(obj: Any, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_render(obj[k], indent + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, (list, tuple)):
        if all(isinstance(x, (int, float)) or x is None for x in obj):
            return json.dumps(list(obj), ensure_ascii=False)
        items = [pad + _render(x, indent + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj: Any) -> str:
    """Deterministic JSON text: sorted keys, numeric lists kept on one line."""
    return _render(obj, 0) + "\n"


def load(path: str) -> Dict[str, Any]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected an object at top level")
    return data


def _require(d: Mapping[str, Any], key: str, kind=None):
    if key not in d:
        raise SchemaError(f"missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise SchemaError(f"field {key!r} has the wrong type")
    return v


def _int_matrix(rows, name: str) -> List[List[int]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{name} must be a list of rows")
    out = []
    for row in rows:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise SchemaError(f"{name} must contain integers only")
        out.append(list(row))
    if out and len({len(r) for r in out}) != 1:
        raise SchemaError(f"{name} has rows of different lengths")
    return out


# ---------------------------------------------------------------- parameters
def specialize(text: str, values: Optional[Mapping[str, object]]) -> str:
    """Replace parameter names in a polynomial string by rational values."""
    if not values:
        return text
    for name, val in sorted(values.items(), key=lambda kv: -len(kv[0])):
        q = rational(val)
        if q.denominator == 1 and q >= 0:
            rep = str(int(q))
        else:
            rep = f"({int(q.numerator)}/{int(q.denominator)})"
        text = re.sub(rf"(?<![A-Za-z0-9_]){re.escape(name)}(?![A-Za-z0-9_])", rep, text)
    return text


def parse_polys(texts: Sequence[str], arity: Optional[int] = None,
                params: Optional[Mapping[str, object]] = None) -> List[Polynomial]:
    texts = [specialize(str(t), params) for t in texts]
    if arity is None:
        arity = max([max_variable_index(t) for t in texts] + [0])
    return [parse_polynomial(t, arity) for t in texts]


def format_rational_value(q) -> Any:
    q = rational(q)
    return int(q) if q.denominator == 1 else f"{int(q.numerator)}/{int(q.denominator)}"


# ---------------------------------------------------------------- CEMDS
def cemds_to_dict(X: CEMDS) -> Dict[str, Any]:
    out = {
        "n": X.n,
        "r": X.r,
        "P": [list(row) for row in X.P],
        "max_cones": [list(c) for c in X.fan.max_cones],
        "relations": [format_polynomial(g) for g in X.relations],
        "grading": X.grading.to_dict(),
        "ample": list(X.ample) if X.ample is not None else None,
        "status": X.status,
    }
    if X.report is not None and hasattr(X.report, "to_dict"):
        out["report"] = X.report.to_dict()
    return out


def cemds_from_dict(d: Mapping[str, Any], params=None, check: bool = True) -> CEMDS:
    P = _int_matrix(_require(d, "P"), "P")
    n = d.get("n", len(P))
    if n != len(P):
        raise SchemaError("n differs from the number of rows of P")
    r = d.get("r", len(P[0]) if P else None)
    if r is None:
        raise SchemaError("r is required when P has no rows")
    if P and r != len(P[0]):
        raise SchemaError("r differs from the number of columns of P")
    cones = _require(d, "max_cones", list)
    rels = parse_polys(d.get("relations", []), r, params)
    grading = Grading.from_dict(d["grading"]) if d.get("grading") else None
    if grading is not None and grading.arity != r:
        raise SchemaError("grading has the wrong number of columns")
    status = d.get("status", WEAK)
    if status not in STATUSES:
        raise SchemaError(f"status must be one of {STATUSES}")
    ample = d.get("ample")
    fan = Fan(P, cones, check=bool(P))
    return CEMDS.create(P, fan, rels, grading, ample, status, check=check)


# ---------------------------------------------------------------- targets, centers, configs
def fan_from_dict(d: Mapping[str, Any]) -> Fan:
    P = _int_matrix(_require(d, "P") if "P" in d else _require(d, "rays"), "P")
    return Fan(P, _require(d, "max_cones", list))


def center_from_dict(d: Mapping[str, Any], arity: int, params=None) -> Dict[str, Any]:
    if "point" in d:
        return {"point": [rational(x) for x in d["point"]]}
    gens = parse_polys(_require(d, "gens", list), arity, params)
    mults = d.get("mults", [1] * len(gens))
    if len(mults) != len(gens):
        raise SchemaError("gens and mults differ in length")
    return {"gens": gens, "mults": [int(x) for x in mults]}


def config_from_dict(d: Mapping[str, Any]) -> PointConfig:
    return PointConfig(int(_require(d, "n")), _require(d, "points", list))


def config_to_dict(cfg: PointConfig) -> Dict[str, Any]:
    return cfg.to_dict()


def ideal_to_dict(I: Ideal) -> Dict[str, Any]:
    gens = [format_polynomial(g.primitive()) for g in I.generators]
    return {"arity": I.arity, "generators": gens}


def ideal_from_dict(d: Mapping[str, Any], params=None) -> Ideal:
    arity = int(_require(d, "arity"))
    return Ideal(parse_polys(_require(d, "generators", list), arity, params), arity)
