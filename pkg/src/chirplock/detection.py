"""Chirp detector bank: coarse spectral screening, fine matched-order
search, an energy baseline, and Monte-Carlo threshold calibration.

Three statistics run side by side on each snapshot:

* coarse: non-excess kurtosis of the FFT magnitude spectrum, OR'd with the
  best mean transform magnitude over a small fixed set of fractional
  orders. Cheap, order-agnostic.
* fine: golden-section search over the transform order for the peakiest
  (highest kurtosis) fractional spectrum. A chirp collapses to a near
  line spectrum at its matched order, so the kurtosis there separates
  sharply from noise.
* energy: mean squared magnitude. The classical radiometer reference.

Thresholds come from calibrate(), which replays the full bank over many
pure-noise snapshots and takes empirical (or, deep in the tail, fitted)
quantiles at the requested false-alarm rate. The block engine used for
calibration is also exposed (BlockDetector) so sweep harnesses can score
thousands of snapshots without paying scalar-path overhead per trial.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.fft as sfft
from scipy import stats as sps

from .frft import (
    MultiOrderTransformer,
    _as_samples,
    frft,
    frft_two_phase,
)
from .signals import IQBuffer, child_seed, gen_wgn

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0
_ENGINE_CHUNK = 256
_TAIL_ANCHOR_Q = 0.95
_MIN_TAIL_EXPECTED = 100.0


class DegenerateInputError(ValueError):
    """Raised when a statistic is undefined for the given input, e.g. a
    magnitude spectrum with zero variance."""


# ---------------------------------------------------------------------------
# configuration and result records

@dataclass(frozen=True)
class DetectorConfig:
    """Knobs shared by every detector path.

    gss_interval brackets the fine order search; coarse_orders are the
    fixed probes used by the cheap pre-screen. target_pfa is the per-path
    false-alarm budget (the two coarse branches split it evenly).
    """

    snapshot_len: int = 4096
    gss_interval: tuple = (0.001, 1.51)
    gss_tolerance: float = 1e-3
    coarse_orders: tuple = (0.2, 0.3, 0.4)
    target_pfa: float = 1e-3

    def __post_init__(self):
        lo, hi = self.gss_interval
        object.__setattr__(self, "gss_interval", (float(lo), float(hi)))
        object.__setattr__(self, "coarse_orders",
                           tuple(float(a) for a in self.coarse_orders))
        if self.snapshot_len < 4:
            raise ValueError("snapshot_len must be at least 4")
        if not (0.0 < lo < hi):
            raise ValueError("gss_interval must satisfy 0 < lo < hi")
        if not (0.0 < self.gss_tolerance < hi - lo):
            raise ValueError("gss_tolerance must be positive and narrower "
                             "than the search interval")
        if not self.coarse_orders:
            raise ValueError("need at least one coarse probe order")
        if not (0.0 < self.target_pfa < 1.0):
            raise ValueError("target_pfa must lie in (0, 1)")


@dataclass(frozen=True)
class NoiseModel:
    """Circular complex white Gaussian noise with total power sigma**2."""

    sigma: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0):
            raise ValueError("sigma must be positive")


@dataclass(frozen=True)
class ThresholdSet:
    """Calibrated decision thresholds plus their provenance.

    extrapolated marks thresholds that came from a fitted tail rather than
    a plain empirical quantile (needed when trials * pfa is too small for
    the order statistic to be trustworthy).
    """

    kurtosis_threshold: float
    frft_kurtosis_threshold: float
    energy_threshold: float
    coarse_frft_threshold: float
    calibrated_pfa: float
    calibration_snapshots: int
    extrapolated: bool = False

    def __post_init__(self):
        vals = (self.kurtosis_threshold, self.frft_kurtosis_threshold,
                self.energy_threshold, self.coarse_frft_threshold,
                self.calibrated_pfa)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("thresholds must be finite")
        if self.calibration_snapshots < 1000:
            raise ValueError("need at least 1000 calibration snapshots")

    def to_dict(self) -> dict:
        return {
            "kurtosis_threshold": float(self.kurtosis_threshold),
            "frft_kurtosis_threshold": float(self.frft_kurtosis_threshold),
            "energy_threshold": float(self.energy_threshold),
            "coarse_frft_threshold": float(self.coarse_frft_threshold),
            "calibrated_pfa": float(self.calibrated_pfa),
            "calibration_snapshots": int(self.calibration_snapshots),
            "extrapolated": bool(self.extrapolated),
        }

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def from_dict(cls, d: dict) -> "ThresholdSet":
        return cls(**{k: d[k] for k in (
            "kurtosis_threshold", "frft_kurtosis_threshold",
            "energy_threshold", "coarse_frft_threshold",
            "calibrated_pfa", "calibration_snapshots", "extrapolated")})

    @classmethod
    def load(cls, path) -> "ThresholdSet":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class DetectionReport:
    """Per-snapshot verdicts, statistics and cost counters.

    A partial report (from fine_detect or coarse_detect alone) leaves the
    other path's fields at their neutral defaults. degenerate flags inputs
    on which some statistic was undefined; those paths report no
    detection rather than raising, so sibling paths still run.
    """

    detected_coarse: bool = False
    detected_fine: bool = False
    detected_energy: bool = False
    matched_order: float = float("nan")
    peak_frft_value: float = float("nan")
    peak_bin: int = 0
    kurtosis_stat: float = float("nan")
    frft_kurtosis_stat: float = float("nan")
    energy_stat: float = float("nan")
    coarse_frft_stat: float = float("nan")
    objective_evals: int = 0
    fft_calls: int = 0
    degenerate: bool = False
    matched_frft: Optional[np.ndarray] = None

    def to_dict(self, retain_frft: bool = False) -> dict:
        d = {
            "detected_coarse": bool(self.detected_coarse),
            "detected_fine": bool(self.detected_fine),
            "detected_energy": bool(self.detected_energy),
            "matched_order": float(self.matched_order),
            "peak_frft_value": float(self.peak_frft_value),
            "peak_bin": int(self.peak_bin),
            "kurtosis_stat": float(self.kurtosis_stat),
            "frft_kurtosis_stat": float(self.frft_kurtosis_stat),
            "energy_stat": float(self.energy_stat),
            "coarse_frft_stat": float(self.coarse_frft_stat),
            "objective_evals": int(self.objective_evals),
            "fft_calls": int(self.fft_calls),
            "degenerate": bool(self.degenerate),
        }
        if retain_frft and self.matched_frft is not None:
            d["matched_frft"] = {
                "real": [float(v) for v in self.matched_frft.real],
                "imag": [float(v) for v in self.matched_frft.imag],
            }
        return d


# ---------------------------------------------------------------------------
# scalar statistics

def _central_kurtosis(mags: np.ndarray) -> float:
    m = float(mags.mean())
    d = mags - m
    m2 = float(np.mean(d * d))
    if m2 == 0.0:
        raise DegenerateInputError(
            "kurtosis undefined: magnitudes have zero variance")
    m4 = float(np.mean((d * d) ** 2))
    return m4 / (m2 * m2)


def spectral_kurtosis(x) -> float:
    """Non-excess kurtosis of the FFT magnitude spectrum.

    White noise gives a Rayleigh magnitude population (kurtosis about
    3.245); a strong narrowband or chirp component pushes it up. Flat
    (zero-variance) spectra raise DegenerateInputError.
    """
    samples = _as_samples(x)
    if samples.size < 4:
        raise ValueError("need at least 4 samples for a kurtosis")
    mags = np.abs(sfft.fft(samples))
    return _central_kurtosis(mags)


def energy_statistic(x) -> float:
    """Mean squared magnitude of the snapshot (radiometer statistic)."""
    samples = _as_samples(x)
    return float(np.mean(samples.real ** 2 + samples.imag ** 2))


# ---------------------------------------------------------------------------
# order search

def gss_maximize(objective: Callable[[float], float],
                 interval, tolerance: float):
    """Golden-section maximization over a bracket.

    Returns (argmax, best observed value, evaluations). The argmax is the
    midpoint of the final bracket, so it is within tolerance/2 of the
    located optimum for unimodal objectives. Ties between the interior
    probes keep the left (lower-argument) bracket so results do not
    depend on evaluation order.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not (lo < hi):
        raise ValueError("interval must satisfy lo < hi")
    if not (0.0 < tolerance < hi - lo):
        raise ValueError("tolerance must be positive and narrower than "
                         "the interval")
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1 = objective(x1)
    f2 = objective(x2)
    evals = 2
    best = max(f1, f2)
    while hi - lo > tolerance:
        if f1 < f2:
            lo = x1
            x1, f1 = x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = objective(x2)
            best = max(best, f2)
        else:
            hi = x2
            x2, f2 = x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = objective(x1)
            best = max(best, f1)
        evals += 1
    return 0.5 * (lo + hi), best, evals


def gss_eval_budget(interval, tolerance: float) -> int:
    """Upper bound on gss_maximize evaluation count for a given bracket."""
    lo, hi = float(interval[0]), float(interval[1])
    return int(math.ceil(math.log((hi - lo) / tolerance)
                         / math.log(1.0 / _INVPHI))) + 2


def iterative_maximize(objective: Callable[[float], float],
                       interval, step: float = 0.01):
    """Exhaustive grid maximization, the reference the search is judged
    against. Probes lo, lo+step, ... up to hi inclusive; first maximum
    wins on ties. Returns (argmax, value, evaluations)."""
    lo, hi = float(interval[0]), float(interval[1])
    if not (lo < hi):
        raise ValueError("interval must satisfy lo < hi")
    if not (0.0 < step <= hi - lo):
        raise ValueError("step must be positive and at most the interval")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    grid = lo + step * np.arange(count)
    vals = [objective(float(a)) for a in grid]
    k = int(np.argmax(vals))
    return float(grid[k]), float(vals[k]), count


# ---------------------------------------------------------------------------
# scalar detector paths

_TRANSFORMS = {"single_phase": frft, "two_phase": frft_two_phase}


def _checked_samples(x, cfg: DetectorConfig) -> np.ndarray:
    samples = _as_samples(x)
    if samples.size != cfg.snapshot_len:
        raise ValueError("snapshot length %d does not match configured %d"
                         % (samples.size, cfg.snapshot_len))
    return samples


def fine_detect(x, cfg: DetectorConfig, thresholds: ThresholdSet,
                engine_variant: str = "two_phase") -> DetectionReport:
    """Matched-order search detector.

    Golden-section search maximizes the kurtosis of the fractional
    spectrum magnitude over the configured order bracket, then the
    transform is recomputed at the bracket midpoint: that value is the
    decision statistic and its coefficients give the peak location (and
    are retained on the report for downstream bearing estimation).
    """
    samples = _checked_samples(x, cfg)
    tf = _TRANSFORMS[engine_variant]
    counters = {"evals": 0, "units": 0}

    def objective(a: float) -> float:
        res = tf(samples, a)
        counters["evals"] += 1
        counters["units"] += res.fft_calls
        return _central_kurtosis(np.abs(res.coefficients))

    try:
        order, _, _ = gss_maximize(objective, cfg.gss_interval,
                                   cfg.gss_tolerance)
        res = tf(samples, order)
        counters["units"] += res.fft_calls
        mags = np.abs(res.coefficients)
        stat = _central_kurtosis(mags)
    except DegenerateInputError:
        return DetectionReport(objective_evals=counters["evals"],
                               fft_calls=counters["units"],
                               degenerate=True)
    peak = int(np.argmax(mags))
    return DetectionReport(
        detected_fine=bool(stat > thresholds.frft_kurtosis_threshold),
        matched_order=float(order),
        peak_frft_value=float(mags[peak]),
        peak_bin=peak,
        frft_kurtosis_stat=float(stat),
        objective_evals=counters["evals"],
        fft_calls=counters["units"],
        matched_frft=res.coefficients,
    )


def coarse_detect(x, cfg: DetectorConfig,
                  thresholds: ThresholdSet,
                  engine_variant: str = "two_phase") -> DetectionReport:
    """Cheap pre-screen: spectral kurtosis OR'd with the best mean
    transform magnitude over the fixed coarse probe orders.

    A flat magnitude spectrum makes the kurtosis branch degenerate; that
    branch then reports no detection (flagged) while the probe branch
    still runs.
    """
    samples = _checked_samples(x, cfg)
    tf = _TRANSFORMS[engine_variant]
    units = 1  # the magnitude-spectrum FFT
    degenerate = False
    kurt = float("nan")
    try:
        kurt = spectral_kurtosis(samples)
    except DegenerateInputError:
        degenerate = True
    probe_means = []
    for a in cfg.coarse_orders:
        res = tf(samples, a)
        units += res.fft_calls
        probe_means.append(float(np.mean(np.abs(res.coefficients))))
    cf = max(probe_means)
    hit_kurt = (not degenerate) and kurt > thresholds.kurtosis_threshold
    hit_probe = cf > thresholds.coarse_frft_threshold
    return DetectionReport(
        detected_coarse=bool(hit_kurt or hit_probe),
        kurtosis_stat=kurt,
        coarse_frft_stat=cf,
        fft_calls=units,
        degenerate=degenerate,
    )


def detect(x, cfg: DetectorConfig, thresholds: ThresholdSet,
           engine_variant: str = "two_phase",
           retain_frft: bool = False) -> DetectionReport:
    """Run all three detector paths on one snapshot and merge the verdicts.

    Paths are independent: a degenerate statistic on one path flags the
    report but never suppresses the others. Cost counters accumulate
    across paths. Deterministic: no randomness, no shared mutable state.
    """
    samples = _checked_samples(x, cfg)
    coarse = coarse_detect(samples, cfg, thresholds, engine_variant)
    fine = fine_detect(samples, cfg, thresholds, engine_variant)
    energy = energy_statistic(samples)
    return DetectionReport(
        detected_coarse=coarse.detected_coarse,
        detected_fine=fine.detected_fine,
        detected_energy=bool(energy > thresholds.energy_threshold),
        matched_order=fine.matched_order,
        peak_frft_value=fine.peak_frft_value,
        peak_bin=fine.peak_bin,
        kurtosis_stat=coarse.kurtosis_stat,
        frft_kurtosis_stat=fine.frft_kurtosis_stat,
        energy_stat=energy,
        coarse_frft_stat=coarse.coarse_frft_stat,
        objective_evals=fine.objective_evals,
        fft_calls=coarse.fft_calls + fine.fft_calls,
        degenerate=coarse.degenerate or fine.degenerate,
        matched_frft=fine.matched_frft if retain_frft else None,
    )


# ---------------------------------------------------------------------------
# block engine: the same bank, vectorized over a batch of snapshots

def _kurt_rows(mags: np.ndarray) -> np.ndarray:
    """Row-wise non-excess kurtosis in float64, nan where degenerate."""
    m = mags.mean(axis=-1, dtype=np.float64)
    d = mags - m[:, None]
    d *= d
    m2 = d.mean(axis=-1, dtype=np.float64)
    d *= d
    m4 = d.mean(axis=-1, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = m4 / (m2 * m2)
    out[m2 == 0.0] = np.nan
    return out


class BlockDetector:
    """Vectorized detector bank for Monte-Carlo runs.

    Scores a (trials, snapshot_len) block in one pass, sharing chirp and
    kernel setup between snapshots that probe the same order. The search
    runs in lockstep: bracket widths shrink identically for every row, so
    each golden-section iteration is a single batched transform at a
    mixed order vector. Statistics match the scalar paths to float32
    accuracy (the block engine computes in complex64; detection rates and
    thresholds are insensitive to that), and per-row cost counters use
    the same canonical units as the scalar transforms.
    """

    def __init__(self, cfg: DetectorConfig,
                 engine_variant: str = "two_phase"):
        if engine_variant not in _TRANSFORMS:
            raise ValueError("unknown engine variant %r" % (engine_variant,))
        self.cfg = cfg
        self.engine_variant = engine_variant

    def _objective_rows(self, trans: MultiOrderTransformer, orders):
        coef, units = trans.transform(orders, scaled=False)
        return _kurt_rows(np.abs(coef)), units

    def _search_gss(self, trans: MultiOrderTransformer):
        lo0, hi0 = self.cfg.gss_interval
        b = trans.batch
        lo = np.full(b, lo0)
        hi = np.full(b, hi0)
        width = hi0 - lo0
        x1 = hi - _INVPHI * (hi - lo)
        x2 = lo + _INVPHI * (hi - lo)
        f1, u1 = self._objective_rows(trans, x1)
        f2, u2 = self._objective_rows(trans, x2)
        units = u1 + u2
        evals = 2
        while width > self.cfg.gss_tolerance:
            right = f1 < f2
            lo = np.where(right, x1, lo)
            hi = np.where(right, hi, x2)
            span = _INVPHI * (hi - lo)
            probe = np.where(right, lo + span, hi - span)
            fp, up = self._objective_rows(trans, probe)
            x1, x2 = (np.where(right, x2, probe),
                      np.where(right, probe, x1))
            f1, f2 = (np.where(right, f2, fp),
                      np.where(right, fp, f1))
            units += up
            evals += 1
            width *= _INVPHI
        return 0.5 * (lo + hi), units, evals

    def _search_iterative(self, trans: MultiOrderTransformer,
                          step: float = 0.01):
        lo, hi = self.cfg.gss_interval
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        b = trans.batch
        best = np.full(b, -np.inf)
        arg = np.full(b, lo)
        units = np.zeros(b, dtype=np.int64)
        for k in range(count):
            a = lo + step * k
            fk, uk = self._objective_rows(trans, a)
            better = fk > best
            best = np.where(better, fk, best)
            arg = np.where(better, a, arg)
            units += uk
        return arg, units, count

    def run(self, block, thresholds: Optional[ThresholdSet] = None,
            search: str = "gss") -> dict:
        """Score a block of snapshots.

        block is (trials, snapshot_len) complex. Returns a dict of per-row
        arrays: the five statistics, matched_order, peak_frft_value,
        peak_bin, objective_evals, fft_calls, and (when thresholds are
        given) the three verdict arrays. search selects the fine-path
        maximizer: "gss" (default) or "iterative" grid scan.
        """
        X = np.ascontiguousarray(block, dtype=np.complex64)
        if X.ndim != 2 or X.shape[1] != self.cfg.snapshot_len:
            raise ValueError("block must be (trials, %d)"
                             % self.cfg.snapshot_len)
        trans = MultiOrderTransformer(X, variant=self.engine_variant)
        energy = np.mean(X.real.astype(np.float64) ** 2
                         + X.imag.astype(np.float64) ** 2, axis=-1)
        kurt = _kurt_rows(np.abs(sfft.fft(X, axis=-1)))
        units = np.full(X.shape[0], 1, dtype=np.int64)
        cf = np.full(X.shape[0], -np.inf)
        for a in self.cfg.coarse_orders:
            coef, u = trans.transform(a)
            np.maximum(cf, np.abs(coef).mean(axis=-1, dtype=np.float64),
                       out=cf)
            units += u
        if search == "gss":
            order, u_fine, evals = self._search_gss(trans)
        elif search == "iterative":
            order, u_fine, evals = self._search_iterative(trans)
        else:
            raise ValueError("unknown search mode %r" % (search,))
        coef, u_mid = trans.transform(order)
        mags = np.abs(coef)
        fine_kurt = _kurt_rows(mags)
        peak_bin = np.argmax(mags, axis=-1)
        peak_val = mags[np.arange(mags.shape[0]), peak_bin]
        units += u_fine + u_mid
        out = {
            "kurtosis_stat": kurt,
            "coarse_frft_stat": cf,
            "frft_kurtosis_stat": fine_kurt,
            "energy_stat": energy,
            "matched_order": order,
            "peak_frft_value": peak_val.astype(np.float64),
            "peak_bin": peak_bin.astype(np.int64),
            "objective_evals": np.full(X.shape[0], evals, dtype=np.int64),
            "fft_calls": units,
        }
        if thresholds is not None:
            with np.errstate(invalid="ignore"):
                out["detected_coarse"] = (
                    (kurt > thresholds.kurtosis_threshold)
                    | (cf > thresholds.coarse_frft_threshold))
                out["detected_fine"] = (
                    fine_kurt > thresholds.frft_kurtosis_threshold)
                out["detected_energy"] = energy > thresholds.energy_threshold
        return out


def run_block_trials(make_block, total: int, runner,
                     chunk: int = _ENGINE_CHUNK) -> dict:
    """Feed trial blocks through a BlockDetector-style runner in chunks.

    make_block(start, stop) must return the snapshot block for trial
    indices [start, stop); runner(block) returns the per-row dict. Chunk
    size only controls memory, never results: every trial is seeded by
    its own index.
    """
    pieces = []
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        pieces.append(runner(make_block(start, stop)))
    return {k: np.concatenate([p[k] for p in pieces]) for k in pieces[0]}


# ---------------------------------------------------------------------------
# calibration

def _tail_threshold(stat: np.ndarray, pfa: float):
    """(1 - pfa) quantile of a statistic population.

    Empirical when the tail holds enough mass (trials * pfa >= 100);
    otherwise a generalized Pareto fit to the exceedances over the 95th
    percentile extrapolates the tail (peaks-over-threshold). Returns
    (threshold, extrapolated flag).
    """
    trials = stat.size
    if trials * pfa >= _MIN_TAIL_EXPECTED:
        return float(np.quantile(stat, 1.0 - pfa)), False
    anchor = float(np.quantile(stat, _TAIL_ANCHOR_Q))
    exceed = stat[stat > anchor] - anchor
    if exceed.size < 20:
        raise ValueError("too few tail samples to fit; increase trials")
    p_anchor = exceed.size / trials
    if pfa >= p_anchor:
        return float(np.quantile(stat, 1.0 - pfa)), False
    c, _, scale = sps.genpareto.fit(exceed, floc=0.0)
    thr = anchor + float(sps.genpareto.ppf(1.0 - pfa / p_anchor, c,
                                           loc=0.0, scale=scale))
    return thr, True


def calibrate(noise_model: NoiseModel, cfg: DetectorConfig, trials: int,
              seed: int, engine_variant: str = "two_phase",
              chunk: int = _ENGINE_CHUNK) -> ThresholdSet:
    """Monte-Carlo threshold calibration against a noise-only model.

    Replays the full detector bank over `trials` independent noise
    snapshots and sets each path's threshold at its false-alarm quantile:
    target_pfa for the fine and energy paths, target_pfa/2 for each of
    the two OR'd coarse branches (a union bound, so the combined coarse
    rate stays at or under target). Each trial draws from its own
    counter-derived substream, so results are identical for any chunk
    size or execution order.
    """
    if trials < 1000:
        raise ValueError("calibration needs at least 1000 trials")
    if not isinstance(noise_model, NoiseModel):
        noise_model = NoiseModel(float(noise_model))
    n = cfg.snapshot_len
    det = BlockDetector(cfg, engine_variant)

    def make_block(start, stop):
        X = np.empty((stop - start, n), dtype=np.complex64)
        for i, t in enumerate(range(start, stop)):
            X[i] = gen_wgn(n, noise_model.sigma,
                           child_seed(seed, t)).samples
        return X

    stats = run_block_trials(make_block, trials, det.run, chunk)
    thr_kurt, e1 = _tail_threshold(stats["kurtosis_stat"],
                                   cfg.target_pfa / 2.0)
    thr_cf, e2 = _tail_threshold(stats["coarse_frft_stat"],
                                 cfg.target_pfa / 2.0)
    thr_fine, e3 = _tail_threshold(stats["frft_kurtosis_stat"],
                                   cfg.target_pfa)
    thr_energy, e4 = _tail_threshold(stats["energy_stat"], cfg.target_pfa)
    return ThresholdSet(
        kurtosis_threshold=thr_kurt,
        frft_kurtosis_threshold=thr_fine,
        energy_threshold=thr_energy,
        coarse_frft_threshold=thr_cf,
        calibrated_pfa=cfg.target_pfa,
        calibration_snapshots=trials,
        extrapolated=bool(e1 or e2 or e3 or e4),
    )
