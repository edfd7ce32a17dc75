"""Signal generation and IQ plumbing: LFM chirps, complex white noise,
mixtures, multi-sensor array snapshots, and raw IQ file I/O.

Everything here is deterministic given its inputs (including seeds), so
Monte-Carlo runs can be reproduced bit-for-bit and trials can be scheduled
in any order.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np


def child_seed(seed, *path):
    """Derive an independent child seed from a base seed and an index path.

    Uses numpy's SeedSequence so that (seed, 3, 17) and (seed, 3, 18) give
    statistically independent streams regardless of the order they are
    drawn in. This is what makes sweep output independent of chunking or
    scheduling. The path length is folded into the entropy because
    SeedSequence ignores trailing zero words, which would otherwise make
    (seed, 2) and (seed, 2, 0) collide.
    """
    entropy = (int(seed), len(path)) + tuple(int(p) for p in path)
    return np.random.SeedSequence(entropy)


@dataclass(frozen=True)
class IQBuffer:
    """A finite block of complex baseband samples with its sample rate."""

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1 or samples.size < 1:
            raise ValueError("IQBuffer needs a non-empty 1-D sample vector")
        if not np.all(np.isfinite(samples.view(np.float64))):
            raise ValueError("IQBuffer samples must be finite")
        if not (self.sample_rate_hz > 0):
            raise ValueError("sample_rate_hz must be positive")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))

    def __len__(self):
        return self.samples.size


@dataclass(frozen=True)
class ChirpParams:
    """LFM source description.

    scaling_db is an amplitude scale: every generated sample has magnitude
    10**(scaling_db/20).
    """

    initial_freq_hz: float = 0.0
    chirp_rate_hz_per_s: float = 2e6
    duration_s: float = 4096 / 3e6
    scaling_db: float = 0.0

    def __post_init__(self):
        if not (self.duration_s > 0):
            raise ValueError("duration_s must be positive")


@dataclass(frozen=True)
class ArraySnapshot:
    """Aligned IQ blocks from a uniform linear array.

    spacing_over_lambda is d / lambda; 0.5 or less keeps azimuths in
    [-90, 90] degrees unambiguous.
    """

    sensors: tuple
    spacing_over_lambda: float

    def __post_init__(self):
        sensors = tuple(self.sensors)
        if len(sensors) < 2:
            raise ValueError("need at least two sensors")
        n0 = len(sensors[0])
        fs0 = sensors[0].sample_rate_hz
        for s in sensors[1:]:
            if len(s) != n0 or s.sample_rate_hz != fs0:
                raise ValueError("sensor buffers must share length and rate")
        if not (self.spacing_over_lambda > 0):
            raise ValueError("spacing_over_lambda must be positive")
        object.__setattr__(self, "sensors", sensors)

    @property
    def m(self):
        return len(self.sensors)

    def matrix(self):
        """Sensor data stacked as an (M, N) array."""
        return np.vstack([s.samples for s in self.sensors])


def gen_chirp(params: ChirpParams, sample_rate_hz: float) -> IQBuffer:
    """Generate a complex baseband LFM chirp.

    Sample n is 10**(scaling_db/20) * exp(j 2 pi (f t_n + (mu/2) t_n^2))
    with t_n = n / sample_rate_hz. Deterministic, constant magnitude.
    """
    if not (sample_rate_hz > 0):
        raise ValueError("sample_rate_hz must be positive")
    n = int(round(params.duration_s * sample_rate_hz))
    if n < 1:
        raise ValueError("duration too short for one sample at this rate")
    if abs(params.initial_freq_hz) >= sample_rate_hz / 2:
        raise ValueError("initial frequency must sit inside the Nyquist band")
    t = np.arange(n) / sample_rate_hz
    phase = 2.0 * np.pi * (params.initial_freq_hz * t
                           + 0.5 * params.chirp_rate_hz_per_s * t * t)
    amp = 10.0 ** (params.scaling_db / 20.0)
    return IQBuffer(amp * np.exp(1j * phase), sample_rate_hz)


def gen_wgn(n: int, sigma: float, seed, sample_rate_hz: float = 1.0) -> IQBuffer:
    """Circular complex white Gaussian noise with E|n|^2 = sigma^2.

    Each quadrature has std sigma/sqrt(2). seed may be an int or a
    SeedSequence from child_seed().
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not (sigma > 0):
        raise ValueError("sigma must be positive")
    rng = np.random.default_rng(seed)
    scale = sigma / np.sqrt(2.0)
    z = rng.standard_normal(2 * n)
    samples = scale * (z[0::2] + 1j * z[1::2])
    return IQBuffer(samples, sample_rate_hz)


def mix(a: IQBuffer, b: IQBuffer) -> IQBuffer:
    """Elementwise sum of two aligned buffers."""
    if len(a) != len(b):
        raise ValueError("buffers must have equal length")
    if a.sample_rate_hz != b.sample_rate_hz:
        raise ValueError("buffers must share a sample rate")
    return IQBuffer(a.samples + b.samples, a.sample_rate_hz)


def steering_phases(azimuth_deg: float, m: int, spacing_over_lambda: float) -> np.ndarray:
    """Per-sensor steering factors exp(-j (i-1) 2 pi (d/lambda) sin theta)."""
    s = np.sin(np.deg2rad(azimuth_deg))
    i = np.arange(m)
    return np.exp(-1j * i * 2.0 * np.pi * spacing_over_lambda * s)


def gen_array_snapshot(params: ChirpParams, azimuth_deg: float, m: int,
                       spacing_over_lambda: float, noise_sigma: float,
                       sample_rate_hz: float, seed) -> ArraySnapshot:
    """Simulate one far-field chirp hitting a uniform linear array.

    Sensor i carries the chirp times its steering factor plus independent
    white noise (sub-seed derived per sensor). noise_sigma = 0 gives the
    noise-free geometry used by control experiments.
    """
    if m < 2:
        raise ValueError("need m >= 2 sensors")
    if abs(azimuth_deg) > 90:
        raise ValueError("azimuth must lie in [-90, 90] degrees")
    if not (spacing_over_lambda > 0):
        raise ValueError("spacing_over_lambda must be positive")
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be non-negative")
    src = gen_chirp(params, sample_rate_hz)
    nu = steering_phases(azimuth_deg, m, spacing_over_lambda)
    base = seed if isinstance(seed, np.random.SeedSequence) else child_seed(seed)
    sensors = []
    for i in range(m):
        clean = src.samples * nu[i]
        if noise_sigma > 0:
            noise = gen_wgn(len(src), noise_sigma,
                            np.random.SeedSequence(base.entropy, spawn_key=(i,)),
                            sample_rate_hz)
            clean = clean + noise.samples
        sensors.append(IQBuffer(clean, sample_rate_hz))
    return ArraySnapshot(tuple(sensors), spacing_over_lambda)


def write_iq(path, buf: IQBuffer, sidecar: bool = True):
    """Write interleaved 32-bit little-endian float I/Q pairs.

    With sidecar=True, drops a JSON file next to the data recording the
    sample rate so readers do not need an out-of-band flag.
    """
    inter = np.empty(2 * len(buf), dtype="<f4")
    inter[0::2] = buf.samples.real.astype(np.float32)
    inter[1::2] = buf.samples.imag.astype(np.float32)
    inter.tofile(path)
    if sidecar:
        with open(str(path) + ".json", "w") as fh:
            json.dump({"sample_rate_hz": buf.sample_rate_hz}, fh)


def read_iq(path, sample_rate_hz=None) -> IQBuffer:
    """Read an interleaved float32 I/Q file.

    The sample rate comes from the explicit argument when given, else from
    the sidecar JSON written by write_iq.
    """
    if sample_rate_hz is None:
        sidecar = str(path) + ".json"
        if not os.path.exists(sidecar):
            raise ValueError(
                "sample rate unknown: pass sample_rate_hz or provide %s" % sidecar)
        with open(sidecar) as fh:
            sample_rate_hz = float(json.load(fh)["sample_rate_hz"])
    inter = np.fromfile(path, dtype="<f4")
    if inter.size < 2 or inter.size % 2 != 0:
        raise ValueError("IQ file must hold a whole number of I/Q pairs")
    samples = inter[0::2].astype(np.float64) + 1j * inter[1::2].astype(np.float64)
    return IQBuffer(samples, sample_rate_hz)
