"""Shared fixtures-in-plain-python for the test suite."""

from __future__ import annotations

import numpy as np

from convpam.geometry import (
    AcquisitionConfig,
    DelayTable,
    ImageGrid,
    build_delay_table,
    linear_array,
)


def make_geometry(
    nx: int,
    nz: int,
    n_sensors: int,
    nt: int,
    pitch: float = 0.3e-3,
    z0: float | None = None,
    c: float = 1540.0,
    fs: float = 1e7,
    y0: float = 0.0,
):
    """Pitch-matched test geometry: sensors centered on a shallow grid.

    The grid starts one pitch below the array by default so that every
    pixel's delay fits comfortably inside short test records.
    """
    first_lattice = (nx - n_sensors) // 2
    array = linear_array(n_sensors, pitch, first_x=first_lattice * pitch)
    grid = ImageGrid(
        x0=0.0,
        z0=pitch if z0 is None else z0,
        pitch_x=pitch,
        pitch_z=pitch,
        nx=nx,
        nz=nz,
        y0=y0,
    )
    acq = AcquisitionConfig(c=c, fs=fs, nt=nt)
    return array, grid, acq


def make_table(*args, **kwargs) -> DelayTable:
    array, grid, acq = make_geometry(*args, **kwargs)
    return build_delay_table(array, grid, acq)


def rel_err(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius-norm relative error of a against reference b."""
    denom = np.linalg.norm(b)
    if denom == 0:
        return float(np.linalg.norm(a))
    return float(np.linalg.norm(a - b) / denom)


def scatter_reference(values: np.ndarray, table: DelayTable, n_rec: int) -> np.ndarray:
    """Forward model straight from its definition, by triple loop.

    Independent of the package's vectorized implementations; only usable
    on tiny geometries.
    """
    nx, nz, n_src = values.shape
    out = np.zeros((table.n_sensors, n_rec))
    for m in range(table.n_sensors):
        for j in range(nz):
            for i in range(nx):
                d = int(table.delays[m, j * nx + i])
                for k in range(n_src):
                    if k + d < n_rec:
                        out[m, k + d] += values[i, j, k]
    return out


def gather_reference(rf: np.ndarray, table: DelayTable, n_src: int) -> np.ndarray:
    """Adjoint model straight from its definition, by triple loop."""
    n_m, n_rec = rf.shape
    nx, nz = table.grid.nx, table.grid.nz
    out = np.zeros((nx, nz, n_src))
    for m in range(n_m):
        for j in range(nz):
            for i in range(nx):
                d = int(table.delays[m, j * nx + i])
                for k in range(n_src):
                    if k + d < n_rec:
                        out[i, j, k] += rf[m, k + d]
    return out
