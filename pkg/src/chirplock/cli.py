"""Command-line front end.

Subcommands map one-to-one onto the library surface: generate writes IQ
test vectors, calibrate produces a threshold file, detect scores a single
IQ capture, and pd-sweep / roc / table1 / doa run the Monte-Carlo
harnesses and emit CSV plus a JSON manifest echoing the exact
configuration used.

Exit codes: 0 success, 2 configuration or usage error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys

import numpy as np
import scipy

from . import __version__
from .detection import NoiseModel, ThresholdSet, calibrate, detect
from .harness import (
    ScenarioConfig,
    run_doa_sweep,
    run_pd_sweep,
    run_roc,
    run_table1,
)
from .signals import IQBuffer, child_seed, gen_chirp, gen_wgn, mix, read_iq, write_iq


class _UsageError(Exception):
    """Bad flags, paths or configuration; exits with code 2."""


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="scenario config JSON (defaults used if omitted)")
    common.add_argument("--seed", type=int, default=None,
                        help="override the config seed")
    common.add_argument("--out", metavar="DIR", default=".",
                        help="output directory (default: current)")

    p = argparse.ArgumentParser(
        prog="chirplock",
        description="chirp-jammer detection and bearing estimation toolkit")
    p.add_argument("--version", action="version",
                   version="chirplock " + __version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common],
                       help="write an IQ snapshot file from the scenario")
    g.add_argument("--kind", choices=("mix", "chirp", "noise"),
                   default="mix", help="what to synthesize (default: mix)")
    g.add_argument("--noise-sigma", type=float, default=1.0)

    c = sub.add_parser("calibrate", parents=[common],
                       help="Monte-Carlo threshold calibration")
    c.add_argument("--trials", type=int, default=None,
                   help="override config calibration_trials")
    c.add_argument("--noise-sigma", type=float, default=None,
                   help="override config calibration_sigma")
    c.add_argument("--variant", choices=("two_phase", "single_phase"),
                   default="two_phase")

    d = sub.add_parser("detect", parents=[common],
                       help="run the detector bank on one IQ file")
    d.add_argument("--in", dest="infile", required=True, metavar="PATH")
    d.add_argument("--sample-rate", type=float, default=None)
    d.add_argument("--thresholds", metavar="PATH", required=True)
    d.add_argument("--retain-frft", action="store_true",
                   help="include matched-order coefficients in the report")
    d.add_argument("--variant", choices=("two_phase", "single_phase"),
                   default="two_phase")

    s = sub.add_parser("pd-sweep", parents=[common],
                       help="detection probability vs chirp scaling")
    s.add_argument("--thresholds", metavar="PATH")

    r = sub.add_parser("roc", parents=[common],
                       help="empirical ROC at one scaling point")
    r.add_argument("--scaling-db", type=float, default=-40.0)

    t = sub.add_parser("table1", parents=[common],
                       help="search-scheme cost comparison")
    t.add_argument("--thresholds", metavar="PATH")

    a = sub.add_parser("doa", parents=[common],
                       help="bearing error vs SNR sweep")
    a.add_argument("--grid-step", type=float, default=0.1)
    return p


def _load_config(args) -> ScenarioConfig:
    if args.config is None:
        cfg = ScenarioConfig()
    else:
        try:
            with open(args.config) as fh:
                cfg = ScenarioConfig.from_dict(json.load(fh))
        except (OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
            raise _UsageError("bad config %s: %s" % (args.config, exc))
    if args.seed is not None:
        cfg = ScenarioConfig.from_dict({**cfg.to_dict(), "seed": args.seed})
    return cfg


def _load_thresholds(path) -> ThresholdSet:
    if path is None:
        raise _UsageError("no thresholds given: run the calibrate "
                          "subcommand first and pass --thresholds")
    try:
        return ThresholdSet.load(path)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise _UsageError("bad thresholds %s: %s" % (path, exc))


def _write_manifest(outdir, command, cfg, outputs, extra=None):
    manifest = {
        "command": command,
        "config": cfg.to_dict(),
        "seed": cfg.seed,
        "outputs": sorted(outputs),
        "versions": {
            "chirplock": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
    }
    if extra:
        manifest.update(extra)
    path = os.path.join(outdir, command.replace("-", "_") + "_manifest.json")
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _cmd_generate(args, cfg: ScenarioConfig, outdir: str) -> int:
    chirp = gen_chirp(cfg.chirp, cfg.sample_rate_hz)
    if args.kind == "chirp":
        buf = chirp
    else:
        noise = gen_wgn(cfg.snapshot_len, args.noise_sigma,
                        child_seed(cfg.seed, 0, 0, 0), cfg.sample_rate_hz)
        buf = noise if args.kind == "noise" else mix(chirp, noise)
    path = os.path.join(outdir, "snapshot.iq")
    write_iq(path, buf)
    _write_manifest(outdir, "generate", cfg,
                    ["snapshot.iq", "snapshot.iq.json"],
                    {"kind": args.kind})
    print(path)
    return 0


def _cmd_calibrate(args, cfg: ScenarioConfig, outdir: str) -> int:
    trials = cfg.calibration_trials if args.trials is None else args.trials
    sigma = (cfg.calibration_sigma if args.noise_sigma is None
             else args.noise_sigma)
    thr = calibrate(NoiseModel(sigma), cfg.detector, trials, cfg.seed,
                    engine_variant=args.variant)
    path = os.path.join(outdir, "thresholds.json")
    thr.save(path)
    _write_manifest(outdir, "calibrate", cfg, ["thresholds.json"],
                    {"trials": trials, "noise_sigma": sigma,
                     "engine_variant": args.variant})
    print(path)
    return 0


def _cmd_detect(args, cfg: ScenarioConfig, outdir: str) -> int:
    try:
        buf = read_iq(args.infile, args.sample_rate)
    except (OSError, ValueError) as exc:
        raise _UsageError("cannot read %s: %s" % (args.infile, exc))
    thr = _load_thresholds(args.thresholds)
    samples = buf.samples
    n = cfg.snapshot_len
    if samples.size < n:
        padded = np.zeros(n, dtype=np.complex128)
        padded[:samples.size] = samples
        samples = padded
    elif samples.size > n:
        samples = samples[:n]
    report = detect(samples, cfg.detector, thr, engine_variant=args.variant,
                    retain_frft=args.retain_frft)
    doc = report.to_dict(retain_frft=args.retain_frft)
    with open(os.path.join(outdir, "detect_report.json"), "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def _cmd_pd_sweep(args, cfg: ScenarioConfig, outdir: str) -> int:
    thr = _load_thresholds(args.thresholds)
    result = run_pd_sweep(cfg, thr)
    result.write_csv(os.path.join(outdir, "pd_sweep.csv"))
    _write_manifest(outdir, "pd-sweep", cfg, ["pd_sweep.csv"],
                    {"thresholds": thr.to_dict()})
    return 0


def _cmd_roc(args, cfg: ScenarioConfig, outdir: str) -> int:
    result = run_roc(cfg, args.scaling_db)
    result.write_csv(os.path.join(outdir, "roc.csv"))
    _write_manifest(outdir, "roc", cfg, ["roc.csv"],
                    {"scaling_db": args.scaling_db})
    return 0


def _cmd_table1(args, cfg: ScenarioConfig, outdir: str) -> int:
    thr = _load_thresholds(args.thresholds)
    result = run_table1(cfg, thr)
    result.write_csv(os.path.join(outdir, "table1.csv"))
    _write_manifest(outdir, "table1", cfg, ["table1.csv"],
                    {"thresholds": thr.to_dict()})
    return 0


def _cmd_doa(args, cfg: ScenarioConfig, outdir: str) -> int:
    result = run_doa_sweep(cfg, args.grid_step)
    result.write_csv(os.path.join(outdir, "doa_sweep.csv"))
    _write_manifest(outdir, "doa", cfg, ["doa_sweep.csv"],
                    {"grid_step_deg": args.grid_step})
    return 0


_HANDLERS = {
    "generate": _cmd_generate,
    "calibrate": _cmd_calibrate,
    "detect": _cmd_detect,
    "pd-sweep": _cmd_pd_sweep,
    "roc": _cmd_roc,
    "table1": _cmd_table1,
    "doa": _cmd_doa,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        outdir = args.out
        os.makedirs(outdir, exist_ok=True)
        return _HANDLERS[args.command](args, cfg, outdir)
    except _UsageError as exc:
        print("chirplock: %s" % exc, file=sys.stderr)
        return 2
    except Exception as exc:  # keep scripts scriptable: no tracebacks
        print("chirplock: %s: %s" % (type(exc).__name__, exc),
              file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
