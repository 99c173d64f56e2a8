"""Readers for the simulator's diagnostic output files.

Two formats are consumed, both produced by the solver CLI:

* a diagnostics stream: newline-delimited JSON, one record per sample,
  each with a time ``t``, scalar series like ``lqZeta``, and grouped
  series like ``lqRho`` (an object keyed by exponent);
* an envelope file: a JSON object with a ``fits`` array, each entry
  ``{"quantity", "A", "B", "maxRelExcess", "degenerate"}``.

Nothing here imports the solver; the files are the contract.
"""

from __future__ import annotations

import json

import numpy as np

__all__ = [
    "LoadError",
    "load_records",
    "load_envelopes",
    "available_quantities",
    "series",
]


class LoadError(ValueError):
    """Input file missing, malformed, or lacking a requested series."""


def load_records(path: str) -> list:
    """Parse a diagnostics NDJSON stream into a list of dicts."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise LoadError(f"cannot read diagnostics stream: {exc}") from exc
    records = []
    for i, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LoadError(f"line {i} is not valid JSON: {exc}") from exc
        if not isinstance(rec, dict) or "t" not in rec:
            raise LoadError(f"line {i} is not a diagnostics record (no 't')")
        records.append(rec)
    if not records:
        raise LoadError(f"no records in {path}")
    return records


def load_envelopes(path: str) -> dict:
    """Parse an envelope file into {quantity: fit dict}."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise LoadError(f"cannot read envelope file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise LoadError(f"envelope file is not valid JSON: {exc}") from exc
    fits = data.get("fits")
    if not isinstance(fits, list):
        raise LoadError("envelope file has no 'fits' array")
    out = {}
    for fit in fits:
        missing = {"quantity", "A", "B"} - set(fit)
        if missing:
            raise LoadError(f"envelope fit missing keys {sorted(missing)}")
        out[fit["quantity"]] = fit
    return out


def available_quantities(records: list) -> list:
    """Series names in a stream, grouped entries flattened to name_key."""
    first = records[0]
    names = []
    for key, value in first.items():
        if key == "t":
            continue
        if isinstance(value, dict):
            names.extend(f"{key}_{sub}" for sub in value)
        elif isinstance(value, (int, float)):
            names.append(key)
    return names


def series(records: list, quantity: str):
    """Extract (ts, values) arrays for one named series.

    Grouped series use the flattened name, e.g. ``lqRho_4`` for the
    exponent-4 entry of the ``lqRho`` object.
    """
    ts = np.array([float(r["t"]) for r in records])

    def pick(record: dict):
        if quantity in record:
            return record[quantity]
        if "_" in quantity:
            group, _, sub = quantity.rpartition("_")
            if group in record and isinstance(record[group], dict):
                if sub in record[group]:
                    return record[group][sub]
        raise LoadError(
            f"series '{quantity}' not present; stream has "
            f"{', '.join(available_quantities(records))}"
        )

    values = np.array([float(pick(r)) for r in records])
    return ts, values
