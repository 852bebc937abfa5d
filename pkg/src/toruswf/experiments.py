"""End-to-end experiment drivers with CSV artifacts and reproducible manifests.

Each runner evaluates one experiment (value-distribution snapshots along an
evolution, excess-vs-time across dimensions or kicking strengths, negativity
growth, random-state ensembles, single grid dumps) and writes:

  * plain CSV files: comma separators, 17 significant digits, metadata only
    on '#'-prefixed lines, so every unprefixed line is numeric data;
  * manifest.json holding the exact runner arguments plus RNG identity,
    conventions, version, and headline results; rerun_from_manifest feeds
    the recorded arguments back to the same runner, reproducing the CSVs
    byte for byte on the same build regardless of thread count;
  * optionally a gnuplot script referencing the CSVs.

Volatile fields (wall-clock, timestamp) live only in the manifest, never in
the CSVs, to keep re-runs byte-identical.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, torus
from .dynamics import SawtoothParams, build_propagator, lyapunov, step
from .states import coherent_state, position_state, random_state
from .stats import (GaussianReference, Moments, RelaxationSeries, cdf_sup_distance,
                    ensemble_gaussianity, gaussian_reference, negative_fraction,
                    negativity_crossing_time, relaxation_time, value_distribution)
from .wigner import RESIDUE_TOL, wigner_fast

DEFAULT_K = 0.5
DEFAULT_N = 2187
DEFAULT_BINS = 101
DEFAULT_THRESHOLD = 0.5
DEFAULT_HOLD = 2
DEFAULT_NEG_LEVEL = 0.45

_RNG_IDENTITY = {
    "bit_generator": "PCG64",
    "seeding": "numpy.random.SeedSequence(seed), one spawned child per sample",
    "numpy_version": np.__version__,
}
_DFT_CONVENTION = "position->momentum kernel exp(-2*pi*i*k*n/N)/sqrt(N), symmetric integer momenta"


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _meta_value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def write_csv(path: Path, meta: dict, columns: list[tuple[str, np.ndarray]]) -> None:
    """Comma-separated numeric table with '#'-prefixed metadata lines."""
    names = ",".join(name for name, _ in columns)
    lines = [f"# {key}={_meta_value(val)}" for key, val in meta.items()]
    lines.append(f"# columns={names}")
    data = [np.asarray(col, dtype=float) for _, col in columns]
    for row in zip(*data):
        lines.append(",".join(_fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n")


def write_wigner_grid(path: Path, W: np.ndarray) -> None:
    """Grid dump, row-major over n, columns m, single summary header line."""
    mom = Moments.from_values(W)
    lines = [f"# N={W.shape[0]} mean={_fmt(mom.mean)} sigma2={_fmt(mom.variance)}"]
    for row in W:
        lines.append(",".join(_fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n")


def _write_manifest(out: Path, experiment: str, args: dict, extra: dict,
                    outputs: list[str], t0: float) -> None:
    manifest = {
        "experiment": experiment,
        "args": args,
        "version": __version__,
        "rng": _RNG_IDENTITY,
        "conventions": {
            "dft": _DFT_CONVENTION,
            "coherent_state": "periodized Gaussian, width pi/N in the exponent, "
                              "phase referenced to the packet center, 3 images",
            "negativity_floor": RESIDUE_TOL,
            "grid_layout": "symmetric labels -(N-1)/2..(N-1)/2, rows n, columns m",
        },
        **extra,
        "outputs": outputs,
        "duration_seconds": time.perf_counter() - t0,
        "written_at": datetime.now(timezone.utc).isoformat(),
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _prepare(out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_plot_script(out: Path, title: str, plots: list[str]) -> str:
    lines = ["set datafile separator ','", f"set title '{title}'", "set key top right"]
    lines.append("plot " + ", \\\n     ".join(plots))
    (out / "plot.gp").write_text("\n".join(lines) + "\n")
    return "plot.gp"


def _reference_curve(ref: GaussianReference, bins: int = 2000, span: float = 10.0):
    # bin-integrated densities, so the emitted curve integrates to 1 exactly
    # up to the 1e-23 tail mass beyond +-span widths
    edges = np.linspace(ref.center - span * ref.width, ref.center + span * ref.width,
                        bins + 1)
    cdf = ref.cdf(edges)
    width = edges[1] - edges[0]
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers, np.diff(cdf) / width


def relaxation_series(params: SawtoothParams, q0: float = 0.0, p0: float = 0.0,
                      t_max: int | None = None, t_max_factor: float = 6.0) -> RelaxationSeries:
    """Evolve a coherent packet and record grid statistics after every kick."""
    if t_max is None:
        t_max = int(np.ceil(t_max_factor * np.log(params.N)))
    prop = build_propagator(params)
    psi = coherent_state(params.N, q0, p0)
    times = np.arange(t_max + 1)
    ex = np.empty(t_max + 1)
    neg = np.empty(t_max + 1)
    mu = np.empty(t_max + 1)
    sg = np.empty(t_max + 1)
    for t in range(t_max + 1):
        W = wigner_fast(psi)
        mom = Moments.from_values(W)
        ex[t], mu[t], sg[t] = mom.excess, mom.mean, mom.sigma
        neg[t] = negative_fraction(W)
        if t < t_max:
            psi = step(prop, psi)
    return RelaxationSeries(params, times, ex, neg, mu, sg)


def _series_cells(cells, threads: int):
    # deterministic gather order regardless of scheduling
    if threads > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda c: relaxation_series(*c), cells))
    return [relaxation_series(*c) for c in cells]


def default_snapshot_times(N: int) -> list[int]:
    """Geometric-ish ladder 0, 1, 2, 4, 8, ... capped by ceil(4 log N)."""
    top = int(np.ceil(4.0 * np.log(N)))
    return sorted({0, 1, 2, 4, 8} | {top})


def run_snapshots(K: float = DEFAULT_K, N: int = DEFAULT_N, q0: float = 0.0,
                  p0: float = 0.0, times: list[int] | None = None,
                  bins: int = DEFAULT_BINS, out_dir="runs/snapshots",
                  threads: int = 1, emit_plot_script: bool = False) -> Path:
    """Value-distribution snapshots of an evolving coherent packet.

    Emits dist_t<t>.csv (bin_center, density) per requested time plus the
    Gaussian reference curve, and records per-snapshot excess, negativity,
    and CDF sup-distance to the reference in the manifest.
    """
    t0 = time.perf_counter()
    params = SawtoothParams(K=K, N=N)
    if times is None:
        times = default_snapshot_times(N)
    times = sorted(set(int(t) for t in times))
    if times[0] < 0:
        raise ValueError("snapshot times must be non-negative")
    out = _prepare(out_dir)
    prop = build_propagator(params)
    ref = gaussian_reference(N)
    psi = coherent_state(N, q0, p0)
    outputs, per_t = [], {}
    t_now = 0
    for t in times:
        while t_now < t:
            psi = step(prop, psi)
            t_now += 1
        W = wigner_fast(psi)
        dist = value_distribution(W, bins)
        centers = 0.5 * (dist.bin_edges[:-1] + dist.bin_edges[1:])
        name = f"dist_t{t}.csv"
        write_csv(out / name,
                  {"experiment": "snapshots", "N": N, "K": K, "t": t,
                   "mean": dist.mean, "sigma": dist.sigma, "excess": dist.excess,
                   "neg_fraction": dist.neg_fraction},
                  [("bin_center", centers), ("density", dist.densities)])
        outputs.append(name)
        per_t[str(t)] = {"excess": dist.excess, "neg_fraction": dist.neg_fraction,
                         "sup_distance": cdf_sup_distance(W, ref)}
    ref_centers, ref_density = _reference_curve(ref)
    write_csv(out / "gaussian_reference.csv",
              {"experiment": "snapshots", "N": N, "center": ref.center,
               "width": ref.width},
              [("bin_center", ref_centers), ("density", ref_density)])
    outputs.append("gaussian_reference.csv")
    if emit_plot_script:
        plots = [f"'dist_t{t}.csv' using 1:2 with lines title 't={t}'" for t in times]
        plots.append("'gaussian_reference.csv' using 1:2 with lines dashtype 2 "
                     "title 'reference'")
        outputs.append(_write_plot_script(out, f"WF value distribution, N={N}, K={K}", plots))
    args = {"K": K, "N": N, "q0": q0, "p0": p0, "times": times, "bins": bins,
            "emit_plot_script": emit_plot_script}
    _write_manifest(out, "snapshots", args,
                    {"initial_state": {"type": "coherent", "q0": q0, "p0": p0},
                     "params": {"K": K, "N": N, "T": params.T, "ergodic": params.ergodic},
                     "bins": bins, "results": per_t},
                    outputs, t0)
    return out


def run_excess_vs_N(K: float = DEFAULT_K, N_list=(243, 729, 2187),
                    t_max_factor: float = 6.0, q0: float = 0.0, p0: float = 0.0,
                    threshold: float = DEFAULT_THRESHOLD, hold: int = DEFAULT_HOLD,
                    out_dir="runs/excess_n", threads: int = 1,
                    emit_plot_script: bool = False) -> Path:
    """Excess decay at fixed K across dimensions, on the t/log N axis.

    Emits excess_N<N>.csv (t, t_over_logN, excess) per dimension and records
    the threshold-hold relaxation time per cell in the manifest.
    """
    t0 = time.perf_counter()
    N_list = [int(N) for N in N_list]
    cells = [(SawtoothParams(K=K, N=N), q0, p0, None, t_max_factor) for N in N_list]
    out = _prepare(out_dir)
    outputs, results = [], {}
    for N, series in zip(N_list, _series_cells(cells, threads)):
        t_r = relaxation_time(series, threshold, hold)
        name = f"excess_N{N}.csv"
        write_csv(out / name,
                  {"experiment": "excess-n", "N": N, "K": K,
                   "threshold": threshold, "hold": hold,
                   "relaxation_time": "none" if t_r is None else t_r},
                  [("t", series.times),
                   ("t_over_logN", series.times / np.log(N)),
                   ("excess", series.excess_series)])
        outputs.append(name)
        results[str(N)] = {"relaxation_time": t_r,
                           "t_r_over_logN": None if t_r is None else t_r / np.log(N)}
    if emit_plot_script:
        plots = [f"'excess_N{N}.csv' using 2:3 with lines title 'N={N}'" for N in N_list]
        outputs.append(_write_plot_script(out, f"excess vs t/log N, K={K}", plots))
    args = {"K": K, "N_list": N_list, "t_max_factor": t_max_factor, "q0": q0,
            "p0": p0, "threshold": threshold, "hold": hold,
            "emit_plot_script": emit_plot_script}
    _write_manifest(out, "excess-n", args,
                    {"initial_state": {"type": "coherent", "q0": q0, "p0": p0},
                     "params": {"K": K, "ergodic": K > 0},
                     "scaled_time": "t/log(N)",
                     "thresholds": {"excess_threshold": threshold, "hold": hold},
                     "results": results},
                    outputs, t0)
    return out


def run_excess_vs_K(K_list=(0.5, 1.0, 2.0), N: int = DEFAULT_N,
                    t_max: int | None = None, q0: float = 0.0, p0: float = 0.0,
                    threshold: float = DEFAULT_THRESHOLD, hold: int = DEFAULT_HOLD,
                    out_dir="runs/excess_k", threads: int = 1,
                    emit_plot_script: bool = False) -> Path:
    """Excess decay at fixed N across kicking strengths.

    Emits excess_K<K>.csv (t, scaled_time, excess) per K, where scaled_time
    is lyapunov(K) * t / log N, the stretching-rate-corrected time axis; the
    lambda value itself is in each CSV header and the manifest.
    """
    t0 = time.perf_counter()
    K_list = [float(K) for K in K_list]
    lams = {K: lyapunov(K) for K in K_list}  # validates K > 0 up front
    if t_max is None:
        t_max = int(np.ceil(6.0 * np.log(N)))
    cells = [(SawtoothParams(K=K, N=N), q0, p0, t_max) for K in K_list]
    out = _prepare(out_dir)
    outputs, results = [], {}
    for K, series in zip(K_list, _series_cells(cells, threads)):
        t_r = relaxation_time(series, threshold, hold)
        name = f"excess_K{K:g}.csv"
        write_csv(out / name,
                  {"experiment": "excess-k", "N": N, "K": K, "lambda": lams[K],
                   "threshold": threshold, "hold": hold,
                   "relaxation_time": "none" if t_r is None else t_r},
                  [("t", series.times),
                   ("scaled_time", lams[K] * series.times / np.log(N)),
                   ("excess", series.excess_series)])
        outputs.append(name)
        results[f"{K:g}"] = {"lambda": lams[K], "relaxation_time": t_r,
                             "lambda_t_r": None if t_r is None else lams[K] * t_r}
    if emit_plot_script:
        plots = [f"'excess_K{K:g}.csv' using 2:3 with lines title 'K={K:g}'"
                 for K in K_list]
        outputs.append(_write_plot_script(out, f"excess vs lambda t/log N, N={N}", plots))
    args = {"K_list": K_list, "N": N, "t_max": t_max, "q0": q0, "p0": p0,
            "threshold": threshold, "hold": hold, "emit_plot_script": emit_plot_script}
    _write_manifest(out, "excess-k", args,
                    {"initial_state": {"type": "coherent", "q0": q0, "p0": p0},
                     "scaled_time": "lyapunov(K)*t/log(N)",
                     "thresholds": {"excess_threshold": threshold, "hold": hold},
                     "results": results},
                    outputs, t0)
    return out


def run_negativity(K: float = DEFAULT_K, N_list=(243, 729, 2187),
                   t_max_factor: float = 6.0, q0: float = 0.0, p0: float = 0.0,
                   level: float = DEFAULT_NEG_LEVEL, hold: int = DEFAULT_HOLD,
                   threshold: float = DEFAULT_THRESHOLD,
                   out_dir="runs/negativity", threads: int = 1,
                   emit_plot_script: bool = False) -> Path:
    """Negative-fraction growth across dimensions on the t/log N axis.

    Emits neg_N<N>.csv (t, t_over_logN, neg_fraction) per dimension; the
    manifest records both the negativity crossing time t_c (first P- >= level,
    held) and the excess relaxation time t_r of the same run.
    """
    t0 = time.perf_counter()
    N_list = [int(N) for N in N_list]
    cells = [(SawtoothParams(K=K, N=N), q0, p0, None, t_max_factor) for N in N_list]
    out = _prepare(out_dir)
    outputs, results = [], {}
    for N, series in zip(N_list, _series_cells(cells, threads)):
        t_c = negativity_crossing_time(series, level, hold)
        t_r = relaxation_time(series, threshold, hold)
        name = f"neg_N{N}.csv"
        write_csv(out / name,
                  {"experiment": "negativity", "N": N, "K": K, "level": level,
                   "hold": hold,
                   "crossing_time": "none" if t_c is None else t_c,
                   "relaxation_time": "none" if t_r is None else t_r},
                  [("t", series.times),
                   ("t_over_logN", series.times / np.log(N)),
                   ("neg_fraction", series.neg_fraction_series)])
        outputs.append(name)
        results[str(N)] = {"crossing_time": t_c, "relaxation_time": t_r,
                           "t_c_over_logN": None if t_c is None else t_c / np.log(N)}
    if emit_plot_script:
        plots = [f"'neg_N{N}.csv' using 2:3 with lines title 'N={N}'" for N in N_list]
        plots.append("0.5 with lines dashtype 2 title '1/2'")
        outputs.append(_write_plot_script(out, f"negative fraction, K={K}", plots))
    args = {"K": K, "N_list": N_list, "t_max_factor": t_max_factor, "q0": q0,
            "p0": p0, "level": level, "hold": hold, "threshold": threshold,
            "emit_plot_script": emit_plot_script}
    _write_manifest(out, "negativity", args,
                    {"initial_state": {"type": "coherent", "q0": q0, "p0": p0},
                     "params": {"K": K, "ergodic": K > 0},
                     "scaled_time": "t/log(N)",
                     "thresholds": {"negativity_level": level, "hold": hold,
                                    "excess_threshold": threshold,
                                    "negativity_floor": RESIDUE_TOL},
                     "results": results},
                    outputs, t0)
    return out


def run_random_ensemble(N: int = DEFAULT_N, samples: int = 20, seed: int = 0,
                        bins: int = DEFAULT_BINS, out_dir="runs/ensemble",
                        threads: int = 1, emit_plot_script: bool = False) -> Path:
    """Gaussianity diagnostics over an ensemble of random states.

    Emits the pooled value histogram and the Gaussian reference curve;
    the manifest records mean excess, mean negative fraction, and the
    pooled-CDF sup-distance to the reference.
    """
    t0 = time.perf_counter()
    out = _prepare(out_dir)
    summary, pooled = ensemble_gaussianity(N, samples, seed, threads)
    dist = value_distribution(pooled, bins)
    del pooled
    centers = 0.5 * (dist.bin_edges[:-1] + dist.bin_edges[1:])
    write_csv(out / "ensemble_hist.csv",
              {"experiment": "ensemble", "N": N, "samples": samples, "seed": seed,
               "mean_excess": summary.mean_excess,
               "mean_neg_fraction": summary.mean_neg_fraction,
               "sup_distance": summary.sup_distance,
               "pooled_mean": summary.pooled_mean,
               "pooled_sigma": summary.pooled_sigma},
              [("bin_center", centers), ("density", dist.densities)])
    ref = gaussian_reference(N)
    ref_centers, ref_density = _reference_curve(ref)
    write_csv(out / "gaussian_reference.csv",
              {"experiment": "ensemble", "N": N, "center": ref.center,
               "width": ref.width},
              [("bin_center", ref_centers), ("density", ref_density)])
    outputs = ["ensemble_hist.csv", "gaussian_reference.csv"]
    if emit_plot_script:
        plots = ["'ensemble_hist.csv' using 1:2 with boxes title 'pooled'",
                 "'gaussian_reference.csv' using 1:2 with lines title 'reference'"]
        outputs.append(_write_plot_script(out, f"random-state values, N={N}", plots))
    args = {"N": N, "samples": samples, "seed": seed, "bins": bins,
            "emit_plot_script": emit_plot_script}
    _write_manifest(out, "ensemble", args,
                    {"initial_state": {"type": "random", "seed": seed},
                     "bins": bins,
                     "results": {"mean_excess": summary.mean_excess,
                                 "mean_neg_fraction": summary.mean_neg_fraction,
                                 "sup_distance": summary.sup_distance,
                                 "pooled_mean": summary.pooled_mean,
                                 "pooled_sigma": summary.pooled_sigma}},
                    outputs, t0)
    return out


def run_wigner(N: int = 27, state: str = "coherent", q0: float = 0.0,
               p0: float = 0.0, n0: int = 0, seed: int = 0,
               out_dir="runs/wigner", threads: int = 1,
               emit_plot_script: bool = False) -> Path:
    """Single-state Wigner grid dump (wigner_N<N>.csv)."""
    t0 = time.perf_counter()
    if state == "coherent":
        psi = coherent_state(N, q0, p0)
        descriptor = {"type": "coherent", "q0": q0, "p0": p0}
    elif state == "random":
        psi = random_state(N, seed)
        descriptor = {"type": "random", "seed": seed}
    elif state == "position":
        psi = position_state(N, n0)
        descriptor = {"type": "position", "n0": n0}
    else:
        raise ValueError(f"unknown state type {state!r} "
                         "(expected coherent, random, or position)")
    W = wigner_fast(psi)
    out = _prepare(out_dir)
    name = f"wigner_N{N}.csv"
    write_wigner_grid(out / name, W)
    outputs = [name]
    if emit_plot_script:
        plots = [f"'{name}' matrix nonuniform with image title 'W'"]
        outputs.append(_write_plot_script(out, f"Wigner grid, N={N}", plots))
    args = {"N": N, "state": state, "q0": q0, "p0": p0, "n0": n0, "seed": seed,
            "emit_plot_script": emit_plot_script}
    _write_manifest(out, "wigner", args, {"initial_state": descriptor}, outputs, t0)
    return out


_RUNNERS = {
    "snapshots": run_snapshots,
    "excess-n": run_excess_vs_N,
    "excess-k": run_excess_vs_K,
    "negativity": run_negativity,
    "ensemble": run_random_ensemble,
    "wigner": run_wigner,
}


def rerun_from_manifest(manifest_path, out_dir, threads: int = 1) -> Path:
    """Re-run an experiment from its manifest into out_dir.

    Feeds the recorded arguments back to the recorded runner; on the same
    build this reproduces the CSV outputs byte for byte, independent of the
    thread count.
    """
    manifest = json.loads(Path(manifest_path).read_text())
    runner = _RUNNERS.get(manifest.get("experiment"))
    if runner is None:
        raise ValueError(f"manifest names no known experiment: {manifest.get('experiment')!r}")
    return runner(**manifest["args"], out_dir=out_dir, threads=threads)
