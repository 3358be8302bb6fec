"""Acquisition geometry: sensor arrays, image grids and integer delay tables.

Every forward operator in the package consumes the same integer
time-of-flight table built here, so the delay law (including its rounding
tie rule) is defined exactly once.

Conventions
-----------
* Coordinates are (lateral x, azimuthal y, axial z) in meters, SI units
  throughout.  Sensors sit at azimuth y = 0; pixels at a fixed plane
  offset ``y0``.
* Pixels are indexed laterally by ``i`` in ``[0, nx)`` and axially by
  ``j`` in ``[0, nz)``; the flattened pixel index is ``n = j * nx + i``
  (lateral-major).
* Sensor, pixel and sample indices in this API are 0-based.  The one
  exception is :func:`central_sensor_index`, which returns the
  conventional 1-based ordinal ``ceil(n_sensors / 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import ConfigurationError

# Absolute tolerance (meters) for pitch equality and lattice alignment.
LATTICE_TOL = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SensorArray:
    """Equispaced linear array of sensors at positions (x_m, 0, z_m)."""

    positions: np.ndarray  # (n_sensors, 3)
    pitch: float

    def __post_init__(self) -> None:
        pos = _readonly(self.positions)
        object.__setattr__(self, "positions", pos)
        if pos.ndim != 2 or pos.shape[1] != 3 or pos.shape[0] < 1:
            raise ConfigurationError("sensor positions must have shape (n_sensors, 3)")
        if self.pitch <= 0:
            raise ConfigurationError("sensor pitch must be positive")
        if np.any(pos[:, 1] != 0.0):
            raise ConfigurationError("sensor azimuthal coordinate must be exactly 0")
        if pos.shape[0] > 1:
            steps = np.diff(pos[:, 0])
            if np.any(steps <= 0):
                raise ConfigurationError("sensor lateral positions must be strictly increasing")
            if np.any(np.abs(steps - self.pitch) > LATTICE_TOL):
                raise ConfigurationError("sensors are not equispaced at the declared pitch")

    @property
    def count(self) -> int:
        return self.positions.shape[0]

    @property
    def x(self) -> np.ndarray:
        return self.positions[:, 0]

    @property
    def z(self) -> np.ndarray:
        return self.positions[:, 2]

    def is_coplanar(self) -> bool:
        """True when every sensor sits at the same axial coordinate."""
        return bool(np.all(self.z == self.z[0]))


def linear_array(count: int, pitch: float, first_x: float = 0.0, z: float = 0.0) -> SensorArray:
    """Build a uniform linear array along x at constant axial position."""
    if count < 1:
        raise ConfigurationError("sensor count must be >= 1")
    xs = first_x + pitch * np.arange(count, dtype=np.float64)
    pos = np.column_stack([xs, np.zeros(count), np.full(count, float(z))])
    return SensorArray(pos, float(pitch))


@dataclass(frozen=True, eq=False)
class ImageGrid:
    """Regular lateral-axial reconstruction grid in the plane y = y0.

    Pixel (i, j) is located at (x0 + i * pitch_x, y0, z0 + j * pitch_z);
    its flattened index is ``n = j * nx + i``.
    """

    x0: float
    z0: float
    pitch_x: float
    pitch_z: float
    nx: int
    nz: int
    y0: float = 0.0

    def __post_init__(self) -> None:
        if self.nx < 1 or self.nz < 1:
            raise ConfigurationError("grid dimensions must be positive")
        if self.pitch_x <= 0 or self.pitch_z <= 0:
            raise ConfigurationError("grid pitches must be positive")

    @property
    def pixel_count(self) -> int:
        return self.nx * self.nz

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.pitch_x * np.arange(self.nx, dtype=np.float64)

    @property
    def z(self) -> np.ndarray:
        return self.z0 + self.pitch_z * np.arange(self.nz, dtype=np.float64)

    def flat_index(self, i: int, j: int) -> int:
        if not (0 <= i < self.nx and 0 <= j < self.nz):
            raise IndexError(f"pixel ({i}, {j}) outside {self.nx} x {self.nz} grid")
        return j * self.nx + i

    def unflatten(self, n: int) -> tuple[int, int]:
        if not (0 <= n < self.pixel_count):
            raise IndexError(f"pixel index {n} outside grid of {self.pixel_count} pixels")
        return n % self.nx, n // self.nx

    def pixel_coords(self) -> tuple[np.ndarray, np.ndarray]:
        """Lateral and axial coordinates of all pixels in flat order."""
        xi, zj = np.meshgrid(self.x, self.z, indexing="xy")
        return xi.ravel(), zj.ravel()


@dataclass(frozen=True, eq=False)
class AcquisitionConfig:
    """Speed of sound, sampling rate and record length."""

    c: float
    fs: float
    nt: int

    def __post_init__(self) -> None:
        if self.c <= 0:
            raise ConfigurationError("speed of sound must be positive")
        if self.fs <= 0:
            raise ConfigurationError("sampling frequency must be positive")
        if self.nt < 1:
            raise ConfigurationError("record length must be >= 1 sample")

    def sample_times(self) -> np.ndarray:
        return np.arange(self.nt, dtype=np.float64) / self.fs


@dataclass(frozen=True, eq=False)
class DelayTable:
    """Integer sensor-to-pixel propagation delays, in samples.

    ``delays[m, n]`` is the travel time from pixel n to sensor m quantized
    to the nearest sample.  This table is the single source of truth for
    every operator in the package.
    """

    delays: np.ndarray  # (n_sensors, n_pixels) int64
    array: SensorArray = field(repr=False)
    grid: ImageGrid = field(repr=False)
    acq: AcquisitionConfig = field(repr=False)

    def __post_init__(self) -> None:
        d = np.asarray(self.delays)
        d.setflags(write=False)
        object.__setattr__(self, "delays", d)

    @property
    def n_sensors(self) -> int:
        return self.delays.shape[0]

    @property
    def n_pixels(self) -> int:
        return self.delays.shape[1]

    @property
    def max_delay(self) -> int:
        return int(self.delays.max())


def round_half_away(x: np.ndarray | float) -> np.ndarray | float:
    """Round to the nearest integer, ties away from zero.

    This is the tie rule used for delay quantization everywhere in the
    package (``np.round`` rounds ties to even and must not be used here).
    """
    return np.floor(np.abs(x) + 0.5) * np.sign(x)


def build_delay_table(array: SensorArray, grid: ImageGrid, acq: AcquisitionConfig) -> DelayTable:
    """Quantize sensor-to-pixel travel times to integer sample delays.

    The delay is ``round(||r_m - r_n|| / c * fs)`` with the
    round-half-away-from-zero tie rule; the pixel position includes the
    grid's azimuthal plane offset y0, so the distance is fully 3D.
    """
    px, pz = grid.pixel_coords()
    dx = array.x[:, None] - px[None, :]
    dz = array.z[:, None] - pz[None, :]
    dist = np.sqrt(dx * dx + dz * dz + grid.y0 * grid.y0)
    delays = round_half_away(dist / acq.c * acq.fs).astype(np.int64)
    return DelayTable(delays, array, grid, acq)


def contributor_set(table: DelayTable, m: int, k: int) -> np.ndarray:
    """Pixels whose emissions reach sensor ``m`` exactly at sample ``k``.

    Returns the sorted flat pixel indices with ``delays[m, n] == k``;
    the result may be empty.
    """
    if not 0 <= m < table.n_sensors:
        raise IndexError(f"sensor index {m} outside [0, {table.n_sensors})")
    if not 0 <= k < table.acq.nt:
        raise IndexError(f"sample index {k} outside [0, {table.acq.nt})")
    return np.flatnonzero(table.delays[m] == k)


def central_sensor_index(n_sensors: int) -> int:
    """1-based ordinal of the array's central sensor, ``ceil(n/2)``."""
    if n_sensors < 1:
        raise ConfigurationError("sensor count must be >= 1")
    return (n_sensors + 1) // 2


@dataclass(frozen=True)
class PitchMatchResult:
    """Outcome of the pitch-matching check, with the first failed condition."""

    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_pitch_matching(array: SensorArray, grid: ImageGrid) -> PitchMatchResult:
    """Check the geometry prerequisites of the convolutional operators.

    Passes iff the sensor pitch equals the lateral pixel pitch (within
    ``LATTICE_TOL``), all sensors share one axial coordinate, and every
    sensor lateral position lies on the grid's lateral lattice.  Never
    raises: failures are reported in the result's ``reason``.
    """
    if abs(array.pitch - grid.pitch_x) > LATTICE_TOL:
        return PitchMatchResult(False, "pitch mismatch")
    if not array.is_coplanar():
        return PitchMatchResult(False, "sensors not coplanar")
    steps = (array.x - grid.x0) / grid.pitch_x
    nearest = np.round(steps)
    if np.any(np.abs(array.x - (grid.x0 + nearest * grid.pitch_x)) > LATTICE_TOL):
        return PitchMatchResult(False, "lattice misalignment")
    return PitchMatchResult(True)


def sensor_lattice_indices(array: SensorArray, grid: ImageGrid) -> np.ndarray:
    """Lateral lattice index of each sensor relative to the grid origin.

    Index 0 is the grid column at x0; values may be negative or beyond
    nx - 1 when the array extends past the grid.  Requires a passing
    pitch-matching check.
    """
    check = validate_pitch_matching(array, grid)
    if not check:
        raise ConfigurationError(f"validate_pitch_matching failed: {check.reason}")
    return np.round((array.x - grid.x0) / grid.pitch_x).astype(np.int64)
