"""JSON file formats.

Sets are written as sorted 1-based element lists, rationals as canonical
``"p/q"`` strings (bare integer string when q = 1).  :func:`dumps` fixes key
order and layout so equal reports serialize to identical bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .core import (
    MAX_M,
    CoverageInstance,
    CountingOracle,
    DenseSetFunction,
    DENSE_MAX_M,
    check_m,
    fraction_str,
    from_elements,
    to_elements,
    to_fraction,
)


class FormatError(ValueError):
    """Malformed input document."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from e


def _m(doc: dict, limit: int = MAX_M) -> int:
    m = doc.get("m")
    if not isinstance(m, int) or isinstance(m, bool):
        raise FormatError("missing or non-integer 'm'")
    return check_m(m, limit)


def _set(entry, m: int) -> int:
    s = entry.get("set") if isinstance(entry, dict) else None
    if not isinstance(s, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in s):
        raise FormatError(f"bad 'set' field in {entry!r}")
    if len(set(s)) != len(s):
        raise FormatError(f"repeated element in {s}")
    try:
        return from_elements(s, m)
    except ValueError as e:
        raise FormatError(str(e)) from e


def _value(entry, key: str) -> Fraction:
    try:
        return to_fraction(entry[key])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad '{key}' in {entry!r}") from e


def set_entry(mask: int, key: str, value: Fraction) -> dict:
    return {"set": to_elements(mask), key: fraction_str(value)}


# -- coverage instances -------------------------------------------------------

def instance_to_json(inst: CoverageInstance) -> dict:
    return {"m": inst.m, "elements": [set_entry(s, "weight", w) for s, w in inst.elements]}


def instance_from_json(doc: dict) -> CoverageInstance:
    m = _m(doc)
    elements = doc.get("elements")
    if not isinstance(elements, list):
        raise FormatError("missing 'elements' list")
    pairs = [(_set(e, m), _value(e, "weight")) for e in elements]
    try:
        return CoverageInstance(m, tuple(pairs))
    except ValueError as e:
        raise FormatError(str(e)) from e


# -- dense function tables ----------------------------------------------------

def table_to_json(f: DenseSetFunction) -> dict:
    return {"m": f.m, "values": [set_entry(t, "value", v) for t, v in enumerate(f.values)]}


def table_entries(doc: dict, limit: int = DENSE_MAX_M) -> tuple[int, dict[int, Fraction]]:
    m = _m(doc, limit)
    values = doc.get("values")
    if not isinstance(values, list):
        raise FormatError("missing 'values' list")
    table: dict[int, Fraction] = {}
    for e in values:
        t = _set(e, m)
        if t in table:
            raise FormatError(f"duplicate set {to_elements(t)}")
        table[t] = _value(e, "value")
    return m, table


def table_from_json(doc: dict, limit: int = DENSE_MAX_M) -> DenseSetFunction:
    m, table = table_entries(doc, limit)
    if len(table) != 1 << m:
        raise FormatError(f"table lists {len(table)} sets, need all {1 << m}")
    return DenseSetFunction(m, tuple(table[t] for t in range(1 << m)))


# -- W-coefficients -----------------------------------------------------------

def coefficients_to_json(w) -> dict:
    return {
        "m": w.m,
        "coefficients": [set_entry(s, "value", w.values[s]) for s in range(1, 1 << w.m)],
    }


def coefficients_from_json(doc: dict, limit: int = DENSE_MAX_M):
    from .wtransform import WCoefficients

    m = _m(doc, limit)
    entries = doc.get("coefficients")
    if not isinstance(entries, list):
        raise FormatError("missing 'coefficients' list")
    values = [Fraction(0)] * (1 << m)
    seen = set()
    for e in entries:
        s = _set(e, m)
        if s == 0 or s in seen:
            raise FormatError(f"empty or duplicate set {to_elements(s)}")
        seen.add(s)
        values[s] = _value(e, "value")
    if len(seen) != (1 << m) - 1:
        raise FormatError(f"need all {(1 << m) - 1} nonempty sets, got {len(seen)}")
    return WCoefficients(m, tuple(values))


# -- oracle specs -------------------------------------------------------------

def oracle_from_json(doc: dict, *, max_m: int = MAX_M) -> CountingOracle:
    """Build an oracle from a spec document.

    Accepts ``{"backend": "fstar", "m", "k", "N"}``, ``{"backend": "instance", ...}``,
    ``{"backend": "table", ...}`` or a bare instance / table document.
    """
    if not isinstance(doc, dict):
        raise FormatError("oracle spec must be a JSON object")
    backend = doc.get("backend")
    if backend is None:
        backend = "instance" if "elements" in doc else "table" if "values" in doc else None
    if backend == "fstar":
        from .adversarial import FStarParams

        m = _m(doc, max_m)
        k = doc.get("k")
        if not isinstance(k, int) or isinstance(k, bool):
            raise FormatError("fstar spec needs integer 'k'")
        N = _value(doc, "N") if "N" in doc else None
        try:
            return FStarParams(m, k, N).oracle()
        except ValueError as e:
            raise FormatError(str(e)) from e
    if backend == "instance":
        inst = instance_from_json(doc)
        check_m(inst.m, max_m)
        return CountingOracle.from_instance(inst)
    if backend == "table":
        m, table = table_entries(doc, min(max_m, DENSE_MAX_M))
        if table.get(0, Fraction(0)) != 0:
            raise FormatError("table has f(emptyset) != 0")
        return CountingOracle.from_mapping(m, table)
    raise FormatError(f"unknown oracle backend {backend!r}")


def fstar_spec(params) -> dict:
    return {"backend": "fstar", "m": params.m, "k": params.k, "N": fraction_str(params.N)}
