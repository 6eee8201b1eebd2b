"""JSON loading/saving for the documented file formats.

All floating point values are emitted with 17 significant digits
(format(x, ".17g")), which round-trips IEEE doubles bit-exactly.  The stdlib
json encoder cannot be told how to format floats, so a small recursive
emitter lives here instead.

Formats:
    series   {"terms": [{"b": <dec>, "theta": <dec>}, ...]}
    params   {"M": int, "y": [dec...], "c": [dec...]}
             checkpoints add {"iteration": int, "rho": dec, "constant": dec}
    intset   {"N": int, "elems": [ints]}
"""

from __future__ import annotations

import json
import math
import os
import tempfile

from .errors import InputError, ValidationError


def fmt17(x: float) -> str:
    """17-significant-digit decimal form of a float (bit-exact round trip)."""
    if not math.isfinite(x):
        raise ValidationError(f"cannot serialize non-finite value {x!r}")
    return format(float(x), ".17g")


def dumps(obj, indent: int = 2) -> str:
    """Serialize dict/list/str/int/float/bool/None with 17-digit floats."""
    out = []
    _emit(obj, out, indent, 0)
    out.append("\n")
    return "".join(out)


def _emit(obj, out, indent, level):
    pad = " " * (indent * (level + 1))
    closing = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(fmt17(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(pad + json.dumps(str(k)) + ": ")
            _emit(v, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(closing + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _emit(v, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(closing + "]")
    else:
        # numpy scalars and similar duck-typed numbers
        if hasattr(obj, "item"):
            _emit(obj.item(), out, indent, level)
        else:
            raise ValidationError(f"cannot serialize {type(obj).__name__}")


def write_text_atomic(path: str, text: str) -> None:
    """Write via a temp file + rename so readers never see partial files."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


# -- series ------------------------------------------------------------

def series_to_obj(series) -> dict:
    return {
        "terms": [
            {"b": float(t.coeff), "theta": float(t.freq)} for t in series.terms
        ]
    }


def series_from_obj(obj) -> "CosineSeries":
    from .series import CosineSeries

    if not isinstance(obj, dict) or "terms" not in obj:
        raise InputError('series JSON must be an object with a "terms" list')
    terms = obj["terms"]
    if not isinstance(terms, list):
        raise InputError('"terms" must be a list')
    pairs = []
    for i, term in enumerate(terms):
        if not isinstance(term, dict) or "b" not in term or "theta" not in term:
            raise InputError(f'term {i} must be an object with "b" and "theta"')
        try:
            pairs.append((float(term["b"]), float(term["theta"])))
        except (TypeError, ValueError) as exc:
            raise InputError(f"term {i} has non-numeric fields") from exc
    return CosineSeries(pairs)


def load_series(path: str):
    return series_from_obj(load_json(path))


def save_series(path: str, series) -> None:
    write_text_atomic(path, dumps(series_to_obj(series)))


# -- family params ------------------------------------------------------

def params_to_obj(params, extra: dict | None = None) -> dict:
    obj = {
        "M": int(params.m),
        "y": [float(v) for v in params.y],
        "c": [float(v) for v in params.c],
    }
    if extra:
        obj.update(extra)
    return obj


def params_from_obj(obj) -> "FamilyParams":
    from .family import FamilyParams

    if not isinstance(obj, dict):
        raise InputError("params JSON must be an object")
    for key in ("M", "y", "c"):
        if key not in obj:
            raise InputError(f'params JSON missing "{key}"')
    m = obj["M"]
    y = obj["y"]
    c = obj["c"]
    if not isinstance(m, int) or not isinstance(y, list) or not isinstance(c, list):
        raise InputError('params JSON fields must be "M": int, "y": list, "c": list')
    if len(y) != m + 1 or len(c) != m:
        raise InputError(
            f"params JSON inconsistent: M={m} needs len(y)={m + 1}, len(c)={m}, "
            f"got {len(y)} and {len(c)}"
        )
    return FamilyParams(y=[float(v) for v in y], c=[float(v) for v in c])


def load_params(path: str):
    return params_from_obj(load_json(path))


def save_params(path: str, params, extra: dict | None = None) -> None:
    write_text_atomic(path, dumps(params_to_obj(params, extra)))


# -- integer sets --------------------------------------------------------

def intset_to_obj(a) -> dict:
    return {"N": int(a.n), "elems": [int(e) for e in a.elems]}


def intset_from_obj(obj) -> "IntSet":
    from .combinatorics import IntSet

    if not isinstance(obj, dict) or "N" not in obj or "elems" not in obj:
        raise InputError('intset JSON must be an object with "N" and "elems"')
    return IntSet(elems=obj["elems"], n=obj["N"])


def load_intset(path: str):
    return intset_from_obj(load_json(path))


def save_intset(path: str, a) -> None:
    write_text_atomic(path, dumps(intset_to_obj(a)))
