"""JSON encoding of family specs, transforms and reports."""

from __future__ import annotations

import json
import math

import numpy as np

from .colour_expr import ParseError
from .families import FamilySpec, WeightFunction
from .transforms import ColourReparam, IndexSwap, Scale, SpectralScale, WeightRescale
from .weights import FamilyError

SPEC_KEYS = {"family", "constants", "colour_fns", "variant", "transforms"}
TRANSFORM_KEYS = {
    "A": set(),
    "B": {"scale"},
    "C": {"N", "s", "negate567"},
    "D": {"mu"},
    "E": {"f"},
}
REGION_KEYS = {"spectral_re", "spectral_im", "colour_re", "colour_im", "samples", "seed"}


class SpecError(ValueError):
    pass


def complex_from_json(v, what: str = "value") -> complex:
    if isinstance(v, bool):
        raise SpecError(f"{what}: expected a number or [re, im]")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
        return complex(v[0], v[1])
    raise SpecError(f"{what}: expected a number or [re, im], got {v!r}")


def complex_from_flag(text: str) -> complex:
    """Parse ``RE`` or ``RE,IM``."""
    parts = text.split(",")
    if len(parts) > 2:
        raise ValueError(f"expected RE or RE,IM, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ValueError(f"expected RE or RE,IM, got {text!r}") from None
    z = complex(vals[0], vals[1] if len(vals) == 2 else 0.0)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex value {text!r}")
    return z


def _check_keys(obj, allowed: set, what: str):
    if not isinstance(obj, dict):
        raise SpecError(f"{what} must be a JSON object")
    extra = set(obj) - allowed
    if extra:
        raise SpecError(f"unknown key(s) in {what}: {', '.join(sorted(extra))}")


def transform_from_json(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SpecError("transform must be an object with a 'kind'")
    kind = obj["kind"]
    if kind not in TRANSFORM_KEYS:
        raise SpecError(f"unknown transform kind {kind!r}")
    _check_keys(obj, TRANSFORM_KEYS[kind] | {"kind"}, f"transform {kind}")
    try:
        if kind == "A":
            return IndexSwap()
        if kind == "B":
            return Scale(_str(obj, "scale"))
        if kind == "C":
            neg = obj.get("negate567", False)
            if not isinstance(neg, bool):
                raise SpecError("negate567 must be a boolean")
            return WeightRescale(obj.get("N", "1"), complex_from_json(obj.get("s", 1), "s"), neg)
        if kind == "D":
            return SpectralScale(complex_from_json(_req(obj, "mu"), "mu"))
        return ColourReparam(_str(obj, "f"))
    except (ParseError, FamilyError) as exc:
        raise SpecError(f"transform {kind}: {exc}") from None


def _req(obj, key):
    if key not in obj:
        raise SpecError(f"missing key {key!r}")
    return obj[key]


def _str(obj, key) -> str:
    v = _req(obj, key)
    if not isinstance(v, str):
        raise SpecError(f"{key} must be an expression string")
    return v


def spec_from_json(obj) -> WeightFunction:
    _check_keys(obj, SPEC_KEYS, "spec")
    family = _req(obj, "family")
    if not isinstance(family, str):
        raise SpecError("family must be a string")
    consts = obj.get("constants", {})
    fns = obj.get("colour_fns", {})
    if not isinstance(consts, dict) or not isinstance(fns, dict):
        raise SpecError("constants and colour_fns must be objects")
    for name, src in fns.items():
        if not isinstance(src, str):
            raise SpecError(f"colour function {name} must be an expression string")
    transforms = obj.get("transforms", [])
    if not isinstance(transforms, list):
        raise SpecError("transforms must be a list")
    variant = obj.get("variant", "derived")
    try:
        base = FamilySpec(family, {n: complex_from_json(v, n) for n, v in consts.items()}, fns, variant)
    except (ParseError, FamilyError) as exc:
        raise SpecError(str(exc)) from None
    return WeightFunction(base, tuple(transform_from_json(t) for t in transforms))


def spec_to_json(wf: WeightFunction) -> dict:
    b = wf.base
    return {
        "family": b.family,
        "constants": {n: [v.real, v.imag] for n, v in b.constants.items()},
        "colour_fns": {n: e.source for n, e in b.colour_fns.items()},
        "variant": b.variant,
        "transforms": [t.to_json() for t in wf.transforms],
    }


def load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def region_from_json(obj, base):
    _check_keys(obj, REGION_KEYS, "region")
    changes = {}
    for key in ("spectral_re", "spectral_im", "colour_re", "colour_im"):
        if key in obj:
            v = obj[key]
            if not (isinstance(v, list) and len(v) == 2):
                raise SpecError(f"{key} must be [lo, hi]")
            changes[key] = tuple(v)
    for key in ("samples", "seed"):
        if key in obj:
            if not isinstance(obj[key], int) or isinstance(obj[key], bool):
                raise SpecError(f"{key} must be an integer")
            changes[key] = obj[key]
    try:
        return base.with_(**changes)
    except (ValueError, TypeError) as exc:
        raise SpecError(f"region: {exc}") from None


def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x + 0.0, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with 17-significant-digit floats; complex values become [re, im]."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps([obj.real, obj.imag], indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")
