"""Binary field snapshots.

Layout, all little-endian:

    bytes 0..11   magic ``b"FBQ2D-FIELD\\0"``
    bytes 12..15  format version, u32 (currently 1)
    bytes 16..19  grid size n, u32
    bytes 20..27  box length, f64
    bytes 28..    n*n physical values, f64, row-major (x1 index slowest)

Physical values are stored verbatim, so a write/read round trip is
bitwise exact.
"""

from __future__ import annotations

import os

import numpy as np

from .fields import ScalarField
from .grid import SpectralGrid

__all__ = ["SnapshotError", "write_snapshot", "read_snapshot"]

MAGIC = b"FBQ2D-FIELD\x00"
VERSION = 1
_HEADER = len(MAGIC) + 4  # magic + version


class SnapshotError(Exception):
    """Raised for malformed or truncated snapshot files."""


def write_snapshot(path: str | os.PathLike, f: ScalarField) -> None:
    values = np.ascontiguousarray(f.physical, dtype="<f8")
    if not np.isfinite(values).all():
        raise SnapshotError(f"refusing to write non-finite field to {path}")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(np.array(VERSION, dtype="<u4").tobytes())
        fh.write(np.array(f.grid.n, dtype="<u4").tobytes())
        fh.write(np.array(f.grid.length, dtype="<f8").tobytes())
        fh.write(values.tobytes())


def read_snapshot(path: str | os.PathLike) -> ScalarField:
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER + 4 + 8:
        raise SnapshotError(f"{path}: truncated header ({len(raw)} bytes)")
    if raw[: len(MAGIC)] != MAGIC:
        raise SnapshotError(f"{path}: bad magic, not a field snapshot")
    version = int(np.frombuffer(raw, "<u4", count=1, offset=len(MAGIC))[0])
    if version != VERSION:
        raise SnapshotError(f"{path}: unsupported format version {version}")
    n = int(np.frombuffer(raw, "<u4", count=1, offset=_HEADER)[0])
    length = float(np.frombuffer(raw, "<f8", count=1, offset=_HEADER + 4)[0])
    expected = _HEADER + 4 + 8 + 8 * n * n
    if len(raw) != expected:
        raise SnapshotError(
            f"{path}: expected {expected} bytes for n={n}, found {len(raw)}"
        )
    values = np.frombuffer(raw, "<f8", count=n * n, offset=_HEADER + 12)
    if not np.isfinite(values).all():
        raise SnapshotError(f"{path}: snapshot contains non-finite values")
    grid = SpectralGrid(n, length)
    return ScalarField.from_physical(grid, values.reshape(n, n))
