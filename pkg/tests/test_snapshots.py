"""Binary field snapshot format: round trips and corruption handling."""

import numpy as np
import pytest

from fracbouss.fields import ScalarField
from fracbouss.grid import SpectralGrid
from fracbouss.randomfields import random_scalar
from fracbouss.snapshots import SnapshotError, read_snapshot, write_snapshot


def test_round_trip_is_bitwise(tmp_path):
    g = SpectralGrid(32, length=5.0)
    f = random_scalar(g, seed=21, band=8)
    path = tmp_path / "field.snap"
    write_snapshot(path, f)
    back = read_snapshot(path)
    assert back.grid.n == 32
    assert back.grid.length == 5.0
    assert np.array_equal(back.physical, f.physical)


def test_rewrite_is_deterministic(tmp_path):
    g = SpectralGrid(16)
    f = random_scalar(g, seed=2, band=4)
    a, b = tmp_path / "a.snap", tmp_path / "b.snap"
    write_snapshot(a, f)
    write_snapshot(b, f)
    assert a.read_bytes() == b.read_bytes()


def test_bad_magic(tmp_path):
    g = SpectralGrid(16)
    path = tmp_path / "x.snap"
    write_snapshot(path, ScalarField.zeros(g))
    data = bytearray(path.read_bytes())
    data[0] ^= 0xFF
    path.write_bytes(bytes(data))
    with pytest.raises(SnapshotError):
        read_snapshot(path)


def test_unknown_version(tmp_path):
    g = SpectralGrid(16)
    path = tmp_path / "x.snap"
    write_snapshot(path, ScalarField.zeros(g))
    data = bytearray(path.read_bytes())
    data[12] = 99  # version field sits right after the magic
    path.write_bytes(bytes(data))
    with pytest.raises(SnapshotError):
        read_snapshot(path)


def test_truncated_payload(tmp_path):
    g = SpectralGrid(16)
    path = tmp_path / "x.snap"
    write_snapshot(path, ScalarField.zeros(g))
    data = path.read_bytes()
    path.write_bytes(data[:-9])
    with pytest.raises(SnapshotError):
        read_snapshot(path)


def test_trailing_garbage(tmp_path):
    g = SpectralGrid(16)
    path = tmp_path / "x.snap"
    write_snapshot(path, ScalarField.zeros(g))
    path.write_bytes(path.read_bytes() + b"extra")
    with pytest.raises(SnapshotError):
        read_snapshot(path)


def test_nonfinite_field_refused(tmp_path):
    g = SpectralGrid(16)
    values = np.zeros((16, 16))
    values[3, 3] = np.inf
    f = ScalarField.from_physical(g, values)
    with pytest.raises(SnapshotError):
        write_snapshot(tmp_path / "bad.snap", f)


def test_missing_file():
    with pytest.raises((SnapshotError, OSError)):
        read_snapshot("/nonexistent/path/field.snap")
