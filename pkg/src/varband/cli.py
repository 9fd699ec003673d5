"""Experiment driver: end-to-end sampling/reconstruction runs with artifacts.

A run is described by an ExperimentConfig (JSON document or named
preset): a space, a test signal, a sampling scheme with an optional
boundary extension of the sampled interval, a solver, and an output
directory.  ``run_experiment`` writes

    samples.csv          (k, j, x, y) sample points and values
    coefficients.csv     (i, n, l, value) solved coefficients
    reconstruction.csv   (x, f, f_tilde) on the evaluation grid
    errors.json          relative l2 / sup errors on the space interval
    report.json          dimensions, counts, oversampling, sufficiency,
                         solver diagnostics

Reruns with the same config are byte-identical except for the timestamp
in report.json.  Subcommands expose the intermediate stages
(verify-window, dims, gen-signal, gen-samples, reconstruct, project,
rho-sweep, spectrogram, density-report).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import metrics, recon, sampling, signals, space, window, wilson

__all__ = ["ExperimentConfig", "PRESETS", "preset_config", "run_experiment", "rho_sweep", "main"]


@dataclass
class ExperimentConfig:
    """Declarative description of one reconstruction experiment."""

    space: wilson.SpaceSpec
    signal_kind: str                 # sparse | full | chirp | gw
    signal_params: dict = field(default_factory=dict)
    seed: int = 0
    sampling_kind: str = "gap"       # gap | rho
    rho: float = 1.0
    extension: float = 0.0           # widen the sampled interval both sides
    solver: str = "lsq"              # lsq | adaptive
    iterations: int = 50
    quad_step: float = 1e-4
    grid_step: float = 1e-4
    outdir: Path = Path("out")

    def __post_init__(self):
        if self.signal_kind not in ("sparse", "full", "chirp", "gw"):
            raise ValueError(f"unknown signal kind {self.signal_kind!r}")
        if self.sampling_kind not in ("gap", "rho"):
            raise ValueError(f"unknown sampling kind {self.sampling_kind!r}")
        if self.solver not in ("lsq", "adaptive"):
            raise ValueError(f"unknown solver {self.solver!r}")
        if self.extension < 0:
            raise ValueError("extension must be >= 0")
        self.outdir = Path(self.outdir)

    def to_json_dict(self) -> dict:
        return {
            "space": self.space.to_json_dict(),
            "signal": {"kind": self.signal_kind, "seed": self.seed, **self.signal_params},
            "sampling": {
                "kind": self.sampling_kind,
                "rho": self.rho,
                "extension": self.extension,
            },
            "solver": {
                "method": self.solver,
                "iterations": self.iterations,
                "quad_step": self.quad_step,
            },
            "grid_step": self.grid_step,
            "outputs": str(self.outdir),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ExperimentConfig":
        sig = dict(d.get("signal", {}))
        kind = sig.pop("kind", "sparse")
        seed = int(sig.pop("seed", 0))
        samp = d.get("sampling", {})
        solver = d.get("solver", {})
        return cls(
            space=wilson.SpaceSpec.from_json_dict(d["space"]),
            signal_kind=kind,
            signal_params=sig,
            seed=seed,
            sampling_kind=samp.get("kind", "gap"),
            rho=float(samp.get("rho", 1.0)),
            extension=float(samp.get("extension", 0.0)),
            solver=solver.get("method", "lsq"),
            iterations=int(solver.get("iterations", 50)),
            quad_step=float(solver.get("quad_step", 1e-4)),
            grid_step=float(d.get("grid_step", 1e-4)),
            outdir=Path(d.get("outputs", "out")),
        )


_CHIRP_DEFAULTS = {"duration": 6.0, "phi0": 0.0, "omega0": 40.0, "omegaT": 300.0}


def _demo_chirp_bandwidths() -> wilson.BandwidthSeq:
    p = signals.ChirpParams(**_CHIRP_DEFAULTS)
    return signals.chirp_bandwidth_model(p, margin=30, n_range=range(0, 13))


def preset_config(name: str, outdir: Path | str = "out") -> ExperimentConfig:
    """Return a frozen demo configuration by name."""
    cw = window.cosine_window()
    presets = {
        # in-space recovery on [0, 6], one active top frequency per slot
        "inspace-sparse": lambda: ExperimentConfig(
            space=wilson.SpaceSpec(cw, signals.BANDWIDTH_PRESETS["profile-a"], (0.0, 6.0), "interior"),
            signal_kind="sparse",
            seed=101,
        ),
        # same space and sampling, every coefficient active
        "inspace-full": lambda: ExperimentConfig(
            space=wilson.SpaceSpec(cw, signals.BANDWIDTH_PRESETS["profile-a"], (0.0, 6.0), "interior"),
            signal_kind="full",
            seed=202,
        ),
        # signal leaks over the interval ends; samples taken inside only
        "boundary-plain": lambda: ExperimentConfig(
            space=wilson.SpaceSpec(cw, signals.BANDWIDTH_PRESETS["profile-b"], (0.0, 6.0), "overlapping"),
            signal_kind="sparse",
            seed=303,
        ),
        # same signal, sampled interval widened by 0.5 on both sides
        "boundary-extended": lambda: ExperimentConfig(
            space=wilson.SpaceSpec(cw, signals.BANDWIDTH_PRESETS["profile-b"], (0.0, 6.0), "overlapping"),
            signal_kind="sparse",
            seed=303,
            extension=0.5,
        ),
        # linear chirp approximated in a space modeled on its frequency law
        "chirp": lambda: ExperimentConfig(
            space=wilson.SpaceSpec(cw, _demo_chirp_bandwidths(), (0.0, 6.0), "overlapping"),
            signal_kind="chirp",
            signal_params=dict(_CHIRP_DEFAULTS),
            extension=0.5,
        ),
        # scaled-down in-space demo, runs in seconds
        "inspace-small": lambda: ExperimentConfig(
            space=wilson.SpaceSpec(cw, signals.BANDWIDTH_PRESETS["profile-small"], (0.0, 3.0), "interior"),
            signal_kind="sparse",
            seed=404,
        ),
    }
    if name not in presets:
        raise ValueError(f"unknown preset {name!r}; available: {sorted(presets)}")
    cfg = presets[name]()
    cfg.outdir = Path(outdir)
    return cfg


PRESETS = ("inspace-sparse", "inspace-full", "boundary-plain", "boundary-extended", "chirp", "inspace-small")


def _signal_function(cfg: ExperimentConfig, basis: wilson.BasisSet):
    """Build (callable f, true coefficients or None) for the config."""
    if cfg.signal_kind == "sparse":
        c = signals.sparse_random_signal(basis, cfg.seed)
        return recon.synthesize(c, basis, cfg.space.window), c
    if cfg.signal_kind == "full":
        c = signals.full_random_signal(basis, cfg.seed)
        return recon.synthesize(c, basis, cfg.space.window), c
    if cfg.signal_kind == "chirp":
        params = {**_CHIRP_DEFAULTS, **cfg.signal_params}
        return signals.linear_chirp(signals.ChirpParams(**params)), None
    params = {"c": 1.0, "omega": 100.0, "t0": 7.0, "phi": 0.0}
    params.update(cfg.signal_params)
    return signals.gw_chirp(**params), None


def _sampling_set(cfg: ExperimentConfig) -> sampling.SamplingSet:
    alpha, beta = cfg.space.interval
    cov = sampling.coverage(alpha - cfg.extension, beta + cfg.extension)
    if cfg.sampling_kind == "gap":
        return sampling.gen_gap_set(cfg.space, cov)
    return sampling.gen_rho_set(cfg.space, cov, cfg.rho)


def _write_reconstruction_csv(path, grid, fv, gv):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "f", "f_tilde"])
        for x, a, b in zip(grid, fv, gv):
            writer.writerow([repr(float(x)), repr(float(a)), repr(float(b))])


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Run one experiment end to end; returns the report dictionary."""
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    basis = wilson.enumerate_basis(cfg.space)
    if len(basis) == 0:
        raise ValueError("the configured space is trivial (dimension 0)")
    f, c_true = _signal_function(cfg, basis)

    sset = _sampling_set(cfg)
    y = np.asarray(f(sset.points()), dtype=float)
    data = recon.SampledData(points=sset, values=y)
    suff = sampling.verify_sufficiency(sset, cfg.space, sset.group_keys())

    history: list[float] = []
    if cfg.solver == "lsq":
        coeffs = recon.reconstruct_lsq(data, basis, cfg.space.window)
    else:
        weights = sampling.adaptive_weights(sset)
        coeffs = recon.adaptive_weights_reconstruct(
            data,
            weights,
            basis,
            cfg.space.window,
            iterations=cfg.iterations,
            quad_step=cfg.quad_step,
            callback=lambda _i, r: history.append(r),
        )
    f_tilde = recon.synthesize(coeffs, basis, cfg.space.window)

    grid = metrics.grid_points(cfg.space.interval, cfg.grid_step)
    err = metrics.relative_errors(f, f_tilde, cfg.space.interval, cfg.grid_step)

    sampling.write_samples_csv(sset, cfg.outdir / "samples.csv", values=y)
    recon.write_coefficients_csv(coeffs, basis, cfg.outdir / "coefficients.csv")
    _write_reconstruction_csv(cfg.outdir / "reconstruction.csv", grid, f(grid), f_tilde(grid))
    (cfg.outdir / "errors.json").write_text(json.dumps(err.to_json_dict(), indent=2))

    n_points = len(sset)
    report = {
        "config": cfg.to_json_dict(),
        "dim": len(basis),
        "points": n_points,
        "oversampling": n_points / len(basis),
        "sufficiency": suff.to_json_dict(),
        "solver": {
            "method": cfg.solver,
            "residual_history": history,
            "coefficient_norm": float(np.linalg.norm(coeffs)),
            "true_coefficient_error": (
                float(np.linalg.norm(coeffs - c_true)) if c_true is not None else None
            ),
        },
        "errors": err.to_json_dict(),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    (cfg.outdir / "report.json").write_text(json.dumps(report, indent=2))
    return report


def rho_sweep(cfg: ExperimentConfig, rho_list, out_path=None) -> list[dict]:
    """One reconstruction per rho with gen_rho_set sampling.

    Row failures are recorded and the sweep continues.  Writes
    rho_sweep.csv (rho, q, e2, einf, status) when ``out_path`` is given.
    """
    if len(rho_list) == 0 or any(r <= 0 for r in rho_list):
        raise ValueError("rho_list must be non-empty and positive")
    basis = wilson.enumerate_basis(cfg.space)
    f, _ = _signal_function(cfg, basis)
    alpha, beta = cfg.space.interval
    cov = sampling.coverage(alpha - cfg.extension, beta + cfg.extension)
    rows = []
    for rho in rho_list:
        row = {"rho": float(rho), "q": float("nan"), "e2": float("nan"),
               "einf": float("nan"), "status": "ok"}
        try:
            sset = sampling.gen_rho_set(cfg.space, cov, rho)
            data = recon.SampledData.from_function(sset, f)
            coeffs = recon.reconstruct_lsq(data, basis, cfg.space.window)
            err = metrics.relative_errors(
                f, recon.synthesize(coeffs, basis, cfg.space.window),
                cfg.space.interval, cfg.grid_step,
            )
            row.update(q=len(sset) / len(basis), e2=err.e2, einf=err.einf)
        except Exception as exc:  # record and continue
            row["status"] = f"error: {exc}"
        rows.append(row)
    if out_path is not None:
        with open(out_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["rho", "q", "e2", "einf", "status"])
            for row in rows:
                writer.writerow([row["rho"], row["q"], row["e2"], row["einf"], row["status"]])
    return rows


# ---------------------------------------------------------------------------
# command-line front end


def _load_config(args) -> ExperimentConfig:
    if args.config:
        cfg = ExperimentConfig.from_json_dict(json.loads(Path(args.config).read_text()))
    elif args.preset:
        cfg = preset_config(args.preset)
    else:
        raise ValueError("provide --preset or --config")
    if getattr(args, "outdir", None):
        cfg.outdir = Path(args.outdir)
    for attr in ("seed", "rho", "extension", "iterations", "quad_step", "grid_step"):
        val = getattr(args, attr, None)
        if val is not None:
            setattr(cfg, attr, val)
    if getattr(args, "signal", None):
        cfg.signal_kind = args.signal
    if getattr(args, "sampling", None):
        cfg.sampling_kind = args.sampling
    if getattr(args, "solver", None):
        cfg.solver = args.solver
    return cfg


def _add_config_args(p: argparse.ArgumentParser, need_out=True):
    p.add_argument("--preset", choices=PRESETS, help="named demo configuration")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--signal", choices=("sparse", "full", "chirp", "gw"))
    p.add_argument("--seed", type=int)
    p.add_argument("--sampling", choices=("gap", "rho"))
    p.add_argument("--rho", type=float)
    p.add_argument("--extension", type=float)
    p.add_argument("--solver", choices=("lsq", "adaptive"))
    p.add_argument("--iterations", type=int)
    p.add_argument("--quad-step", dest="quad_step", type=float)
    p.add_argument("--grid-step", dest="grid_step", type=float)
    if need_out:
        p.add_argument("--outdir", default="out")


def _parse_radii(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="varband",
                                 description="variable-bandwidth sampling and reconstruction")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-window", help="orthonormality defect and gap-bound constant")
    p.add_argument("--window", default="cosine", choices=sorted(wilson.WINDOW_REGISTRY))
    p.add_argument("--k-range", type=int, default=2)
    p.add_argument("--grid-step", type=float, default=1e-3)

    p = sub.add_parser("dims", help="dimension of the configured space")
    _add_config_args(p, need_out=False)

    p = sub.add_parser("gen-signal", help="evaluate the configured signal on a grid")
    _add_config_args(p)

    p = sub.add_parser("gen-samples", help="generate the sampling set")
    _add_config_args(p)
    p.add_argument("--coverage", help="override coverage as kmin:kmax (inclusive)")

    p = sub.add_parser("reconstruct", help="run the experiment end to end")
    _add_config_args(p)

    p = sub.add_parser("project", help="quadrature projection of the signal onto the space")
    _add_config_args(p)

    p = sub.add_parser("rho-sweep", help="reconstruction quality against rho")
    _add_config_args(p)
    p.add_argument("--rhos", default="0.7,0.8,0.9,1.0,1.5,2.0,2.5",
                   help="comma-separated rho values")

    p = sub.add_parser("spectrogram", help="short-time Fourier magnitudes of the signal")
    _add_config_args(p)
    p.add_argument("--win-len", type=float, default=0.25)
    p.add_argument("--hop", type=float, default=0.01)
    p.add_argument("--fft-size", type=int, default=4096)
    p.add_argument("--max-freq", type=float, default=None)

    p = sub.add_parser("density-report", help="sampling density against the necessary bound")
    _add_config_args(p)
    p.add_argument("--radii", default="1.0,2.0,2.5", help="comma-separated window radii")

    return ap


def _cmd_verify_window(args) -> dict:
    w = wilson.WINDOW_REGISTRY[args.window]()
    defect = window.orthonormality_defect(w, args.k_range, args.grid_step)
    d_const = window.sufficiency_constant(w)
    return {
        "window": args.window,
        "orthonormality_defect": defect,
        "gap_constant": d_const,
        "gap_constant_over_pi": d_const / np.pi,
    }


def _cmd_dims(args) -> dict:
    cfg = _load_config(args)
    basis = wilson.enumerate_basis(cfg.space)
    return {
        "interval": list(cfg.space.interval),
        "mode": cfg.space.mode,
        "dim": len(basis),
    }


def _cmd_gen_signal(args) -> dict:
    cfg = _load_config(args)
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    basis = wilson.enumerate_basis(cfg.space)
    f, c_true = _signal_function(cfg, basis)
    grid = metrics.grid_points(cfg.space.interval, cfg.grid_step)
    vals = np.asarray(f(grid), dtype=float)
    path = cfg.outdir / "signal.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "value"])
        for x, v in zip(grid, vals):
            writer.writerow([repr(float(x)), repr(float(v))])
    if c_true is not None:
        recon.write_coefficients_csv(c_true, basis, cfg.outdir / "coefficients.csv")
    return {"signal": cfg.signal_kind, "points": int(grid.size), "outputs": str(path)}


def _cmd_gen_samples(args) -> dict:
    cfg = _load_config(args)
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    if args.coverage:
        kmin, kmax = (int(t) for t in args.coverage.split(":"))
        cov = range(kmin, kmax + 1)
        if cfg.sampling_kind == "gap":
            sset = sampling.gen_gap_set(cfg.space, cov)
        else:
            sset = sampling.gen_rho_set(cfg.space, cov, cfg.rho)
    else:
        sset = _sampling_set(cfg)
    sampling.write_samples_csv(sset, cfg.outdir / "samples.csv")
    suff = sampling.verify_sufficiency(sset, cfg.space, sset.group_keys())
    dim_ = wilson.dim(cfg.space)
    return {
        "points": len(sset),
        "dim": dim_,
        "oversampling": len(sset) / dim_ if dim_ else None,
        "sufficiency_all_pass": suff.all_pass,
        "outputs": str(cfg.outdir / "samples.csv"),
    }


def _cmd_project(args) -> dict:
    cfg = _load_config(args)
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    basis = wilson.enumerate_basis(cfg.space)
    f, _ = _signal_function(cfg, basis)
    coeffs = recon.project_quadrature(f, basis, cfg.space.window, step=cfg.quad_step)
    proj = recon.synthesize(coeffs, basis, cfg.space.window)
    err = metrics.relative_errors(f, proj, cfg.space.interval, cfg.grid_step)
    grid = metrics.grid_points(cfg.space.interval, cfg.grid_step)
    recon.write_coefficients_csv(coeffs, basis, cfg.outdir / "coefficients.csv")
    _write_reconstruction_csv(cfg.outdir / "reconstruction.csv", grid, f(grid), proj(grid))
    (cfg.outdir / "errors.json").write_text(json.dumps(err.to_json_dict(), indent=2))
    return {"method": "projection", "dim": len(basis), "errors": err.to_json_dict()}


def _cmd_rho_sweep(args) -> dict:
    cfg = _load_config(args)
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    rows = rho_sweep(cfg, _parse_radii(args.rhos), cfg.outdir / "rho_sweep.csv")
    return {"rows": rows, "outputs": str(cfg.outdir / "rho_sweep.csv")}


def _cmd_spectrogram(args) -> dict:
    cfg = _load_config(args)
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    basis = wilson.enumerate_basis(cfg.space)
    f, _ = _signal_function(cfg, basis)
    result = metrics.spectrogram(
        f, cfg.space.interval, win_len=args.win_len, hop=args.hop,
        fft_size=args.fft_size, step=cfg.grid_step,
    )
    path = cfg.outdir / "spectrogram.csv"
    metrics.write_spectrogram_csv(result, path, max_freq=args.max_freq)
    return {"frames": int(result.times.size), "outputs": str(path)}


def _cmd_density_report(args) -> dict:
    cfg = _load_config(args)
    sset = _sampling_set(cfg)
    pts = sset.points()
    b = cfg.space.bandwidths
    radii = _parse_radii(args.radii)
    entries = []
    for r in radii:
        try:
            dens = space.beurling_lower_density(pts, r)
        except ValueError as exc:
            entries.append({"r": r, "error": str(exc)})
            continue
        centers = np.concatenate([pts, 0.5 * (pts[1:] + pts[:-1])])
        avg = max(space.average_bandwidth(b, float(x), r) for x in centers)
        avg_min = min(space.average_bandwidth(b, float(x), r) for x in centers)
        entries.append({
            "r": r,
            "lower_density": dens,
            "avg_bandwidth_min": avg_min,
            "avg_bandwidth_max": avg,
            "necessary_min": 1.0 + avg_min,
            "satisfied": dens >= 1.0 + avg_min,
        })
    return {"points": len(sset), "radii": entries}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "verify-window": _cmd_verify_window,
        "dims": _cmd_dims,
        "gen-signal": _cmd_gen_signal,
        "gen-samples": _cmd_gen_samples,
        "reconstruct": lambda a: run_experiment(_load_config(a)),
        "project": _cmd_project,
        "rho-sweep": _cmd_rho_sweep,
        "spectrogram": _cmd_spectrogram,
        "density-report": _cmd_density_report,
    }
    try:
        result = handlers[args.command](args)
    except (ValueError, KeyError, OSError, recon.ConvergenceError) as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stdout, indent=2)
        print()
        return 1
    json.dump(result, sys.stdout, indent=2, default=float)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
