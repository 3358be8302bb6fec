"""Forward models mapping cavitation activity to recorded RF signals.

Three interchangeable implementations of the same linear operator are
provided, together with their exact adjoints:

* :func:`forward_matrix_free` — delay-scatter directly from the integer
  delay table.  It is the reference the other two are validated against
  and works for any geometry.
* :func:`forward_conv` — sparse direct evaluation of the per-depth 2D
  (lateral x time) convolutions with the binary kernel.  Requires a
  pitch-matched geometry.
* :func:`forward_conv_fft` — the same convolutions accumulated in the
  frequency domain, one forward transform per kernel and datacube depth
  row and a single inverse transform.

The convolutional forms compute, for each axial row, a full-mode 2D
convolution whose output is cropped back onto the physical sensor/time
window by :func:`extract`; the lateral crop position is calibrated once
per kernel against the matrix-free reference (see :func:`build_kernel`).

Operator classes (:class:`MatrixFreeOperator`, :class:`ConvOperator`)
wrap the same math with cached internal structure for use inside
iterative solvers; the module-level functions are thin wrappers that
take and return the domain types.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field, replace
from typing import Protocol

import numpy as np
import scipy.fft
import scipy.sparse

from .errors import ConfigurationError, ModelError
from .geometry import (
    AcquisitionConfig,
    DelayTable,
    ImageGrid,
    SensorArray,
    round_half_away,
    sensor_lattice_indices,
    validate_pitch_matching,
)


@dataclass(frozen=True, eq=False)
class CavitationCube:
    """Source activity datacube of shape (nx, nz, nt)."""

    values: np.ndarray
    grid: ImageGrid = field(repr=False)
    acq: AcquisitionConfig = field(repr=False)

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", v)
        expected = (self.grid.nx, self.grid.nz, self.acq.nt)
        if v.shape != expected:
            raise ConfigurationError(f"cube shape {v.shape} != grid/acq shape {expected}")
        if not np.all(np.isfinite(v)):
            raise ConfigurationError("cube contains non-finite values")

    @property
    def nt(self) -> int:
        return self.values.shape[2]


@dataclass(frozen=True, eq=False)
class RfData:
    """Recorded sensor signals of shape (n_sensors, nt)."""

    values: np.ndarray
    array: SensorArray = field(repr=False)
    acq: AcquisitionConfig = field(repr=False)

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", v)
        expected = (self.array.count, self.acq.nt)
        if v.shape != expected:
            raise ConfigurationError(f"RF shape {v.shape} != array/acq shape {expected}")
        if not np.all(np.isfinite(v)):
            raise ConfigurationError("RF data contains non-finite values")

    @property
    def nt(self) -> int:
        return self.values.shape[1]


# ---------------------------------------------------------------------------
# Matrix-free reference operator
# ---------------------------------------------------------------------------

class _LagBlocks:
    """Per-lag sparse sensor-pixel incidence derived from a delay table.

    Block d couples every (sensor, pixel) pair with delay exactly d; the
    forward scatter is then a short sum of sparse matrix products, one
    per distinct delay value.
    """

    def __init__(self, table: DelayTable):
        n = table.n_pixels
        flat = table.delays.ravel()
        order = np.argsort(flat, kind="stable")
        lags, starts = np.unique(flat[order], return_index=True)
        bounds = np.append(starts, flat.size)
        self.lags = lags.astype(np.int64)
        self.blocks = []
        for a, b in zip(bounds[:-1], bounds[1:]):
            idx = order[a:b]
            coo = scipy.sparse.coo_matrix(
                (np.ones(idx.size), (idx // n, idx % n)),
                shape=(table.n_sensors, n),
            )
            self.blocks.append(coo.tocsr())
        self._blocks_t: list[scipy.sparse.csr_matrix] | None = None

    @property
    def blocks_t(self) -> list[scipy.sparse.csr_matrix]:
        if self._blocks_t is None:
            self._blocks_t = [b.T.tocsr() for b in self.blocks]
        return self._blocks_t


_lag_cache: "weakref.WeakKeyDictionary[DelayTable, _LagBlocks]" = weakref.WeakKeyDictionary()


def _lag_blocks(table: DelayTable) -> _LagBlocks:
    blocks = _lag_cache.get(table)
    if blocks is None:
        blocks = _LagBlocks(table)
        _lag_cache[table] = blocks
    return blocks


class MatrixFreeOperator:
    """Delay-scatter forward operator and its exact adjoint.

    ``n_src`` is the temporal length of the source cube and ``n_rec`` the
    record length; both default to the table's record length (the square
    case).  Emissions whose delayed arrival falls beyond the record are
    discarded, which is what makes the adjoint a pure gather.
    """

    def __init__(self, table: DelayTable, n_src: int | None = None, n_rec: int | None = None):
        self.table = table
        self.n_src = table.acq.nt if n_src is None else int(n_src)
        self.n_rec = table.acq.nt if n_rec is None else int(n_rec)
        if self.n_src < 1 or self.n_rec < 1:
            raise ConfigurationError("temporal lengths must be >= 1")
        self._lag = _lag_blocks(table)
        grid = table.grid
        self.cube_shape = (grid.nx, grid.nz, self.n_src)
        self.rf_shape = (table.n_sensors, self.n_rec)

    def _flatten(self, values: np.ndarray) -> np.ndarray:
        # pixel n = j * nx + i -> row n
        nx, nz, nt = values.shape
        return values.transpose(1, 0, 2).reshape(nx * nz, nt)

    def _unflatten(self, flat: np.ndarray) -> np.ndarray:
        nx, nz = self.cube_shape[0], self.cube_shape[1]
        return flat.reshape(nz, nx, -1).transpose(1, 0, 2)

    def forward(self, values: np.ndarray) -> np.ndarray:
        if values.shape != self.cube_shape:
            raise ConfigurationError(f"cube shape {values.shape} != {self.cube_shape}")
        xf = self._flatten(np.asarray(values, dtype=np.float64))
        y = np.zeros(self.rf_shape)
        for lag, block in zip(self._lag.lags, self._lag.blocks):
            if lag >= self.n_rec:
                break
            span = min(self.n_src, self.n_rec - lag)
            y[:, lag:lag + span] += block @ xf[:, :span]
        return y

    def adjoint(self, values: np.ndarray) -> np.ndarray:
        if values.shape != self.rf_shape:
            raise ConfigurationError(f"RF shape {values.shape} != {self.rf_shape}")
        y = np.asarray(values, dtype=np.float64)
        xf = np.zeros((self.table.n_pixels, self.n_src))
        for lag, block_t in zip(self._lag.lags, self._lag.blocks_t):
            if lag >= self.n_rec:
                break
            span = min(self.n_src, self.n_rec - lag)
            xf[:, :span] += block_t @ y[:, lag:lag + span]
        return self._unflatten(xf)


def forward_matrix_free(x: CavitationCube, table: DelayTable) -> RfData:
    """Scatter every cube sample onto its delayed arrival at every sensor.

    ``Y[m, k]`` sums ``x[n, k - delay(m, n)]`` over all pixels with
    non-negative shifted index; arrivals beyond the record are dropped.
    """
    op = MatrixFreeOperator(table, n_src=x.nt, n_rec=x.nt)
    acq = replace(table.acq, nt=x.nt)
    return RfData(op.forward(x.values), table.array, acq)


def adjoint_matrix_free(y: RfData, table: DelayTable) -> CavitationCube:
    """Exact adjoint of :func:`forward_matrix_free` (delayed gather)."""
    op = MatrixFreeOperator(table, n_src=y.nt, n_rec=y.nt)
    acq = replace(table.acq, nt=y.nt)
    return CavitationCube(op.adjoint(y.values), table.grid, acq)


# ---------------------------------------------------------------------------
# Binary convolution kernel
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConvKernel:
    """Sparse binary kernel of logical shape (n_w, nz, nt).

    Entry (w, j, d) is set when a source at lateral offset ``w - center``
    pixels from a sensor, in axial row j, arrives with delay d.  The
    lateral width ``n_w = nx + 2 * ceil(n_sensors / 2)`` extends past the
    grid so the single pattern serves every sensor's shift; only lags
    d < nt are stored (later arrivals fall outside the record).

    Storage is one coordinate list per temporal slice (``lag_w[d]``,
    ``lag_j[d]``) plus the same entries regrouped per axial row for the
    convolution paths.  ``lateral_offset`` is the calibrated crop
    position: sensor m's signal is row ``lateral_offset + m`` of the
    full-mode convolution output.
    """

    n_w: int
    n_x: int
    n_z: int
    n_t: int
    n_sensors: int
    center: int
    lateral_offset: int
    lag_w: tuple[np.ndarray, ...]  # indexed by lag d
    lag_j: tuple[np.ndarray, ...]
    row_w: tuple[np.ndarray, ...]  # indexed by axial row j
    row_d: tuple[np.ndarray, ...]
    array: SensorArray = field(repr=False)
    grid: ImageGrid = field(repr=False)
    acq: AcquisitionConfig = field(repr=False)

    @property
    def n_lags(self) -> int:
        return len(self.lag_w)

    @property
    def unit_count(self) -> int:
        return int(sum(w.size for w in self.lag_w))

    @property
    def full_shape(self) -> tuple[int, int]:
        """Shape of the full-mode (lateral x time) convolution output."""
        return (self.n_x + self.n_w - 1, 2 * self.n_t - 1)

    def slice_entries(self, d: int) -> tuple[np.ndarray, np.ndarray]:
        """(lateral, axial) unit coordinates of temporal slice d."""
        if not 0 <= d < self.n_t:
            raise IndexError(f"kernel slice {d} outside [0, {self.n_t})")
        if d >= self.n_lags:
            empty = np.empty(0, dtype=np.int64)
            return empty, empty
        return self.lag_w[d], self.lag_j[d]

    def to_dense(self, max_elements: int = 50_000_000) -> np.ndarray:
        if self.n_w * self.n_z * self.n_t > max_elements:
            raise MemoryError("kernel too large to densify")
        dense = np.zeros((self.n_w, self.n_z, self.n_t))
        for d in range(self.n_lags):
            dense[self.lag_w[d], self.lag_j[d], d] = 1.0
        return dense


def _kernel_pattern_delays(table: DelayTable, offsets: np.ndarray) -> np.ndarray:
    """Quantized delay for each (lateral offset, axial row) kernel position.

    Uses the same delay law as :func:`convpam.geometry.build_delay_table`
    with the lateral distance taken as ``offset * pitch`` on the shared
    lattice.  (The two computations can disagree only when a travel time
    lands within one float ulp of a half-sample tie.)
    """
    grid, array, acq = table.grid, table.array, table.acq
    dxs = offsets.astype(np.float64) * array.pitch
    dzs = grid.z - array.z[0]
    dist = np.sqrt(dxs[:, None] ** 2 + dzs[None, :] ** 2 + grid.y0 ** 2)
    return round_half_away(dist / acq.c * acq.fs).astype(np.int64)


def build_kernel(table: DelayTable, n_rec: int | None = None) -> ConvKernel:
    """Build the binary convolution kernel for a pitch-matched geometry.

    The kernel holds the central-sensor arrival pattern on a lateral
    window wide enough that shifting it reproduces every sensor's
    contributor sets; the extraction offset is fixed here by running a
    single-pixel impulse through the convolution and matching the
    matrix-free response.
    """
    check = validate_pitch_matching(table.array, table.grid)
    if not check:
        raise ModelError(f"validate_pitch_matching failed: {check.reason}")
    grid, array = table.grid, table.array
    n_rec = table.acq.nt if n_rec is None else int(n_rec)
    n_m = array.count
    n_w = grid.nx + 2 * ((n_m + 1) // 2)

    lattice = sensor_lattice_indices(array, grid)
    i_min, i_max = int(lattice.min()), int(lattice.max())
    lo, hi = grid.nx - 1 - i_min, n_w - 1 - i_max
    if lo > hi:
        raise ModelError(
            f"kernel width {n_w} cannot cover sensors at lattice [{i_min}, {i_max}] "
            f"for a {grid.nx}-pixel grid"
        )
    center = (lo + hi) // 2

    offsets = np.arange(n_w, dtype=np.int64) - center
    pattern = _kernel_pattern_delays(table, offsets)  # (n_w, nz)
    keep = pattern < n_rec
    w_idx, j_idx = np.nonzero(keep)
    d_idx = pattern[w_idx, j_idx]
    n_lags = int(d_idx.max()) + 1 if d_idx.size else 0

    lag_w, lag_j = [], []
    order = np.argsort(d_idx, kind="stable")
    bounds = np.searchsorted(d_idx[order], np.arange(n_lags + 1))
    for a, b in zip(bounds[:-1], bounds[1:]):
        lag_w.append(np.ascontiguousarray(w_idx[order[a:b]]))
        lag_j.append(np.ascontiguousarray(j_idx[order[a:b]]))

    row_w, row_d = [], []
    for j in range(grid.nz):
        sel = j_idx == j
        row_w.append(np.ascontiguousarray(w_idx[sel]))
        row_d.append(np.ascontiguousarray(d_idx[sel]))

    kernel = ConvKernel(
        n_w=n_w,
        n_x=grid.nx,
        n_z=grid.nz,
        n_t=n_rec,
        n_sensors=n_m,
        center=center,
        lateral_offset=center + int(lattice[0]),
        lag_w=tuple(lag_w),
        lag_j=tuple(lag_j),
        row_w=tuple(row_w),
        row_d=tuple(row_d),
        array=array,
        grid=grid,
        acq=replace(table.acq, nt=n_rec),
    )
    offset = _calibrate_lateral_offset(kernel, table, n_rec)
    if offset != kernel.lateral_offset:
        kernel = replace(kernel, lateral_offset=offset)
    return kernel


def _calibrate_lateral_offset(kernel: ConvKernel, table: DelayTable, n_rec: int) -> int:
    """Locate the lateral crop of the full convolution against the oracle.

    Runs a corner-pixel impulse through both the convolutional and the
    matrix-free paths and returns the unique row offset at which they
    agree; raises when no offset reproduces the reference.
    """
    grid = table.grid
    impulse = np.zeros((grid.nx, grid.nz, 1))
    impulse[0, 0, 0] = 1.0
    ref_op = MatrixFreeOperator(table, n_src=1, n_rec=n_rec)
    reference = ref_op.forward(impulse)

    full = _conv_full(impulse, kernel, n_rec)
    cols = min(full.shape[1], n_rec)
    if reference[:, cols:].any():
        raise ModelError("extraction calibration failed: reference extends past kernel lags")
    n_m = table.n_sensors
    candidates = [
        o
        for o in range(full.shape[0] - n_m + 1)
        if np.array_equal(full[o:o + n_m, :cols], reference[:, :cols])
    ]
    if not candidates:
        raise ModelError("extraction calibration failed: no offset matches the reference")
    expected = kernel.lateral_offset
    return expected if expected in candidates else candidates[0]


# ---------------------------------------------------------------------------
# Direct sparse convolution path
# ---------------------------------------------------------------------------

def _conv_full(values: np.ndarray, kernel: ConvKernel, n_rec: int) -> np.ndarray:
    """Sum over depth of full-mode 2D convolutions, evaluated sparsely.

    Each kernel unit entry shifts the whole (lateral x time) plane of its
    axial row, so the cost is one block add per entry.  Output columns
    are clipped at ``n_rec`` since later samples are cropped anyway.
    """
    nx, nz, n_src = values.shape
    width = nx + kernel.n_w - 1
    q_full = n_src + max(kernel.n_lags, 1) - 1
    out = np.zeros((width, max(1, min(q_full, n_rec))))
    for j in range(nz):
        plane = values[:, j, :]
        for w, d in zip(kernel.row_w[j], kernel.row_d[j]):
            if d >= out.shape[1]:
                continue
            span = min(n_src, out.shape[1] - d)
            out[w:w + nx, d:d + span] += plane[:, :span]
    return out


def extract(full_slice: np.ndarray, kernel: ConvKernel) -> np.ndarray:
    """Crop the full-mode convolution output onto the sensor/time window.

    Accepts the (nx + n_w - 1) x (2 nt - 1) axial output slice and
    returns the (n_sensors, nt) measurement block at the kernel's
    calibrated lateral offset.
    """
    if full_slice.shape != kernel.full_shape:
        raise ConfigurationError(
            f"full slice shape {full_slice.shape} != {kernel.full_shape}"
        )
    o = kernel.lateral_offset
    return np.ascontiguousarray(full_slice[o:o + kernel.n_sensors, :kernel.n_t])


def _extract_values(full: np.ndarray, kernel: ConvKernel, n_rec: int) -> np.ndarray:
    o = kernel.lateral_offset
    out = np.zeros((kernel.n_sensors, n_rec))
    cols = min(n_rec, full.shape[1])
    out[:, :cols] = full[o:o + kernel.n_sensors, :cols]
    return out


def _check_conv_input(x: CavitationCube, kernel: ConvKernel) -> None:
    if x.values.shape[0] != kernel.n_x or x.values.shape[1] != kernel.n_z:
        raise ModelError(
            f"cube grid {x.values.shape[:2]} does not match kernel "
            f"({kernel.n_x}, {kernel.n_z})"
        )
    if x.nt != kernel.n_t:
        raise ModelError(f"cube record length {x.nt} != kernel record length {kernel.n_t}")


def forward_conv(x: CavitationCube, kernel: ConvKernel) -> RfData:
    """Forward model as a sum over depth of sparse 2D convolutions."""
    _check_conv_input(x, kernel)
    op = ConvOperator(kernel, use_fft=False)
    return RfData(op.forward(x.values), kernel.array, kernel.acq)


def adjoint_conv(y: RfData, kernel: ConvKernel) -> CavitationCube:
    """Adjoint of :func:`forward_conv`: embed at the crop window, correlate."""
    _check_conv_rf(y, kernel)
    op = ConvOperator(kernel, use_fft=False)
    return CavitationCube(op.adjoint(y.values), kernel.grid, kernel.acq)


def forward_conv_fft(x: CavitationCube, kernel: ConvKernel) -> RfData:
    """FFT-accelerated evaluation of :func:`forward_conv`."""
    _check_conv_input(x, kernel)
    op = ConvOperator(kernel, use_fft=True)
    return RfData(op.forward(x.values), kernel.array, kernel.acq)


def adjoint_conv_fft(y: RfData, kernel: ConvKernel) -> CavitationCube:
    """FFT-accelerated evaluation of :func:`adjoint_conv`."""
    _check_conv_rf(y, kernel)
    op = ConvOperator(kernel, use_fft=True)
    return CavitationCube(op.adjoint(y.values), kernel.grid, kernel.acq)


def _check_conv_rf(y: RfData, kernel: ConvKernel) -> None:
    if y.values.shape[0] != kernel.n_sensors:
        raise ModelError(f"RF rows {y.values.shape[0]} != kernel sensors {kernel.n_sensors}")
    if y.nt != kernel.n_t:
        raise ModelError(f"RF record length {y.nt} != kernel record length {kernel.n_t}")


# ---------------------------------------------------------------------------
# Operator classes for iterative use
# ---------------------------------------------------------------------------

class LinearOperatorPair(Protocol):
    """Forward/adjoint pair acting on raw arrays."""

    cube_shape: tuple[int, int, int]
    rf_shape: tuple[int, int]

    def forward(self, values: np.ndarray) -> np.ndarray: ...

    def adjoint(self, values: np.ndarray) -> np.ndarray: ...


class ConvOperator:
    """Convolutional forward/adjoint pair with optional FFT acceleration.

    When ``use_fft`` is set, per-depth kernel transforms are cached up to
    ``fft_cache_budget`` bytes (they are reused across applies, which is
    what iterative solvers need); past the budget they are recomputed on
    the fly.  ``n_src`` allows a source window shorter than the record.
    """

    def __init__(
        self,
        kernel: ConvKernel,
        use_fft: bool = True,
        n_src: int | None = None,
        workers: int | None = None,
        fft_cache_budget: int = 256 * 2**20,
    ):
        self.kernel = kernel
        self.use_fft = use_fft
        self.workers = workers
        self.n_src = kernel.n_t if n_src is None else int(n_src)
        self.n_rec = kernel.n_t
        if self.n_src < 1 or self.n_src > self.n_rec:
            raise ConfigurationError("source window must satisfy 1 <= n_src <= record length")
        self.cube_shape = (kernel.n_x, kernel.n_z, self.n_src)
        self.rf_shape = (kernel.n_sensors, self.n_rec)

        p = kernel.n_x + kernel.n_w - 1
        self._q_full = self.n_src + max(kernel.n_lags, 1) - 1
        self._p_full = p
        # The transform must hold the whole linear convolution; the direct
        # path clips columns past the record since extraction drops them.
        self._fft_shape = (scipy.fft.next_fast_len(p), scipy.fft.next_fast_len(self._q_full))
        self._khat: list[np.ndarray] | None = None
        if use_fft:
            per_row = self._fft_shape[0] * (self._fft_shape[1] // 2 + 1) * 16
            if per_row * kernel.n_z <= fft_cache_budget:
                self._khat = [self._kernel_fft(j) for j in range(kernel.n_z)]

    def _kernel_fft(self, j: int) -> np.ndarray:
        kernel = self.kernel
        plane = np.zeros((kernel.n_w, max(kernel.n_lags, 1)))
        w, d = kernel.row_w[j], kernel.row_d[j]
        plane[w, d] = 1.0
        return scipy.fft.rfft2(plane, s=self._fft_shape, workers=self.workers)

    def _row_khat(self, j: int) -> np.ndarray:
        return self._khat[j] if self._khat is not None else self._kernel_fft(j)

    def forward(self, values: np.ndarray) -> np.ndarray:
        if values.shape != self.cube_shape:
            raise ConfigurationError(f"cube shape {values.shape} != {self.cube_shape}")
        values = np.asarray(values, dtype=np.float64)
        if not self.use_fft:
            full = _conv_full(values, self.kernel, self.n_rec)
            return _extract_values(full, self.kernel, self.n_rec)
        acc = None
        for j in range(self.kernel.n_z):
            xhat = scipy.fft.rfft2(values[:, j, :], s=self._fft_shape, workers=self.workers)
            xhat *= self._row_khat(j)
            acc = xhat if acc is None else acc + xhat
        full = scipy.fft.irfft2(acc, s=self._fft_shape, workers=self.workers)
        return _extract_values(full[: self._p_full, : self._q_full], self.kernel, self.n_rec)

    def adjoint(self, values: np.ndarray) -> np.ndarray:
        if values.shape != self.rf_shape:
            raise ConfigurationError(f"RF shape {values.shape} != {self.rf_shape}")
        kernel = self.kernel
        embedded = np.zeros((self._p_full, max(1, min(self._q_full, self.n_rec))))
        o = kernel.lateral_offset
        cols = embedded.shape[1]
        embedded[o:o + kernel.n_sensors, :cols] = values[:, :cols]
        out = np.zeros(self.cube_shape)
        if not self.use_fft:
            nx = kernel.n_x
            for j in range(kernel.n_z):
                plane = out[:, j, :]
                for w, d in zip(kernel.row_w[j], kernel.row_d[j]):
                    if d >= embedded.shape[1]:
                        continue
                    span = min(self.n_src, embedded.shape[1] - d)
                    plane[:, :span] += embedded[w:w + nx, d:d + span]
            return out
        zhat = scipy.fft.rfft2(embedded, s=self._fft_shape, workers=self.workers)
        for j in range(kernel.n_z):
            corr = scipy.fft.irfft2(
                np.conj(self._row_khat(j)) * zhat, s=self._fft_shape, workers=self.workers
            )
            out[:, j, :] = corr[: kernel.n_x, : self.n_src]
        return out


def operator_pair(
    kind: str,
    table: DelayTable,
    kernel: ConvKernel | None = None,
    n_src: int | None = None,
    n_rec: int | None = None,
    workers: int | None = None,
) -> LinearOperatorPair:
    """Construct a named forward/adjoint pair.

    ``kind`` is one of ``matrixfree``, ``conv`` or ``fft``.  The
    convolutional kinds need a kernel built for the requested record
    length (built here from the table when not supplied).
    """
    if kind == "matrixfree":
        return MatrixFreeOperator(table, n_src=n_src, n_rec=n_rec)
    if kind in ("conv", "fft"):
        n_rec_eff = table.acq.nt if n_rec is None else int(n_rec)
        if kernel is None:
            kernel = build_kernel(table, n_rec=n_rec_eff)
        elif kernel.n_t != n_rec_eff:
            raise ConfigurationError(
                f"kernel record length {kernel.n_t} != requested {n_rec_eff}"
            )
        return ConvOperator(kernel, use_fft=(kind == "fft"), n_src=n_src, workers=workers)
    raise ConfigurationError(f"unknown operator kind: {kind!r}")
