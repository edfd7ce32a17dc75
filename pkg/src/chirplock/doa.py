"""Azimuth estimation for a uniform linear array, sharpened by fractional
focusing.

Each sensor's snapshot is transformed at the matched order found during
detection, which collapses the chirp into a near line spectrum and boosts
the effective SNR entering the covariance estimate. The estimator itself
is subspace-based: eigendecompose the (forward/backward smoothed) sample
covariance, keep the noise-side eigenvectors, and scan a steering-vector
null spectrum over azimuth. With a single source the signal subspace is
the dominant eigenvector and everything below it is noise.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .frft import frft, frft_two_phase
from .signals import ArraySnapshot, steering_phases

_TRANSFORMS = {"single_phase": frft, "two_phase": frft_two_phase}
_SPECTRUM_CEILING = 1e18
_GAP_FLAG_RATIO = 2.0


@dataclass(frozen=True)
class FocusedArrayData:
    """Per-sensor matched-order transform rows plus the order used."""

    rows: np.ndarray
    order: float

    def __post_init__(self):
        rows = np.ascontiguousarray(self.rows, dtype=np.complex128)
        if rows.ndim != 2 or rows.shape[0] < 2:
            raise ValueError("need a (M >= 2, N) row matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "order", float(self.order))

    @property
    def m(self) -> int:
        return self.rows.shape[0]


@dataclass(frozen=True)
class SpatialSpectrum:
    """Null-spectrum values over a uniform azimuth grid."""

    azimuth_grid_deg: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.ascontiguousarray(self.azimuth_grid_deg, dtype=np.float64)
        vals = np.ascontiguousarray(self.values, dtype=np.float64)
        if grid.ndim != 1 or grid.shape != vals.shape:
            raise ValueError("grid and values must be matching 1-D arrays")
        if grid.size and (grid[0] < -90.0 or grid[-1] > 90.0
                          or np.any(np.diff(grid) <= 0)):
            raise ValueError("grid must be sorted within [-90, 90] degrees")
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
            raise ValueError("spectrum values must be positive and finite")
        object.__setattr__(self, "azimuth_grid_deg", grid)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class DoAEstimate:
    """Azimuth at the spectrum argmax, with the full spectrum attached."""

    azimuth_deg: float
    peak_value: float
    spectrum: SpatialSpectrum

    def to_dict(self) -> dict:
        return {"azimuth_deg": float(self.azimuth_deg),
                "peak_value": float(self.peak_value)}


def focus(snapshot: ArraySnapshot, a_opt: float,
          engine_variant: str = "two_phase",
          cached_first_row: Optional[np.ndarray] = None) -> FocusedArrayData:
    """Transform every sensor at the shared matched order.

    cached_first_row lets the caller hand over sensor 1's coefficients
    already computed by the detection stage; they are used verbatim, so
    the detector and the bearing estimator stay numerically consistent
    (and one transform is saved).
    """
    if not (np.isfinite(a_opt) and 0.0 <= a_opt < 4.0):
        raise ValueError("matched order must lie in [0, 4)")
    tf = _TRANSFORMS[engine_variant]
    rows = []
    for i, sensor in enumerate(snapshot.sensors):
        if i == 0 and cached_first_row is not None:
            row = np.ascontiguousarray(cached_first_row,
                                       dtype=np.complex128)
            if row.shape != (len(sensor),):
                raise ValueError("cached row length does not match sensor 1")
            rows.append(row)
        else:
            rows.append(tf(sensor, a_opt).coefficients)
    return FocusedArrayData(np.array(rows), a_opt)


def covariance(data: FocusedArrayData) -> np.ndarray:
    """Sample covariance (1/N) R R^H of the focused rows, symmetrized so
    rounding never breaks the Hermitian structure downstream."""
    rows = data.rows
    m, n = rows.shape
    if n < m:
        raise ValueError("need at least as many samples as sensors")
    c = rows @ rows.conj().T / n
    return 0.5 * (c + c.conj().T)


def spatial_smooth(r_cov: np.ndarray) -> np.ndarray:
    """Forward/backward smoothing: add the exchange-conjugated covariance.

    R_c = R + T conj(R) T with T the anti-diagonal exchange matrix. This
    decorrelates coherent components and keeps the result Hermitian.
    """
    r = np.asarray(r_cov, dtype=np.complex128)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError("covariance must be square")
    flipped = r.conj()[::-1, ::-1]
    return r + flipped


def noise_subspace(r_c: np.ndarray) -> np.ndarray:
    """Eigenvectors spanning everything below the dominant eigenvalue.

    Returns an M x (M-1) matrix of orthonormal columns (the single-source
    assumption puts the signal in the top eigenvector and noise in the
    rest). Warns when the spectral gap between signal and noise is under
    2x: the split is then poorly conditioned and the columns are whatever
    the solver's deterministic ordering yields.
    """
    r = np.asarray(r_c, dtype=np.complex128)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(r, r.conj().T, rtol=0, atol=1e-10 * max(
            1.0, float(np.abs(r).max()))):
        raise ValueError("matrix must be Hermitian")
    w, v = np.linalg.eigh(r)
    floor = max(abs(w[-2]), 1e-300)
    if w[-1] / floor < _GAP_FLAG_RATIO:
        warnings.warn("signal/noise eigenvalue gap under 2x; subspace "
                      "split is poorly conditioned", RuntimeWarning)
    return v[:, :-1]


def steering_grid(m: int, spacing_over_lambda: float,
                  grid_step_deg: float) -> tuple:
    """Uniform azimuth grid over [-90, 90] and its steering matrix."""
    if not (grid_step_deg > 0):
        raise ValueError("grid step must be positive")
    count = int(round(180.0 / grid_step_deg)) + 1
    grid = np.linspace(-90.0, 90.0, count)
    s = np.sin(np.deg2rad(grid))
    i = np.arange(m)[:, None]
    return grid, np.exp(-2j * np.pi * spacing_over_lambda * i * s)


def spatial_spectrum(noise_ss: np.ndarray, spacing_over_lambda: float,
                     grid_step_deg: float = 0.1) -> SpatialSpectrum:
    """Null spectrum 1 / ||E^H steering(theta)||^2 over the azimuth grid.

    Azimuths whose steering vector is orthogonal to the noise subspace
    blow up; exactly-zero denominators (possible in noise-free cases) are
    clamped to a large finite ceiling and flagged with a warning.
    """
    e = np.asarray(noise_ss, dtype=np.complex128)
    if e.ndim != 2:
        raise ValueError("noise subspace must be an M x (M-1) matrix")
    grid, steer = steering_grid(e.shape[0], spacing_over_lambda,
                                grid_step_deg)
    proj = e.conj().T @ steer
    denom = np.sum(proj.real ** 2 + proj.imag ** 2, axis=0)
    tiny = denom < 1.0 / _SPECTRUM_CEILING
    if np.any(tiny):
        warnings.warn("spatial spectrum clamped at %d grid point(s) with "
                      "vanishing null-projection" % int(tiny.sum()),
                      RuntimeWarning)
        denom = np.where(tiny, 1.0 / _SPECTRUM_CEILING, denom)
    return SpatialSpectrum(grid, 1.0 / denom)


def estimate_azimuth(snapshot: ArraySnapshot, a_opt: float,
                     grid_step_deg: float = 0.1,
                     engine_variant: str = "two_phase",
                     cached_first_row: Optional[np.ndarray] = None
                     ) -> DoAEstimate:
    """Full bearing pipeline: focus, covariance, smoothing, subspace
    split, grid scan. Ties at the peak resolve to the lowest azimuth."""
    data = focus(snapshot, a_opt, engine_variant, cached_first_row)
    r_c = spatial_smooth(covariance(data))
    spec = spatial_spectrum(noise_subspace(r_c),
                            snapshot.spacing_over_lambda, grid_step_deg)
    k = int(np.argmax(spec.values))
    return DoAEstimate(float(spec.azimuth_grid_deg[k]),
                       float(spec.values[k]), spec)
