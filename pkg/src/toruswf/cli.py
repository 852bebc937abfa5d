"""Command-line driver for the torus Wigner-function experiments.

Subcommands: snapshots, excess-n, excess-k, negativity, ensemble, wigner,
plus rerun (reproduce a run from its manifest).  Exit codes: 0 success,
2 argument/validation error (before any computation), 1 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments, torus
from .experiments import (DEFAULT_BINS, DEFAULT_HOLD, DEFAULT_K, DEFAULT_N,
                          DEFAULT_NEG_LEVEL, DEFAULT_THRESHOLD)


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _add_common(sp: argparse.ArgumentParser, out_default: str) -> None:
    sp.add_argument("--K", type=float, default=DEFAULT_K, help="kicking strength")
    sp.add_argument("--N", type=int, default=DEFAULT_N, help="Hilbert dimension (odd)")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed")
    sp.add_argument("--bins", type=int, default=DEFAULT_BINS, help="histogram bin count")
    sp.add_argument("--out", default=out_default, help="output directory")
    sp.add_argument("--threads", type=int, default=1,
                    help="worker threads across cells/samples")
    sp.add_argument("--q0", type=float, default=0.0, help="packet center, position")
    sp.add_argument("--p0", type=float, default=0.0, help="packet center, momentum")
    sp.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                    help="|excess| threshold for the relaxation time")
    sp.add_argument("--hold", type=int, default=DEFAULT_HOLD,
                    help="consecutive samples a threshold must hold")
    sp.add_argument("--emit-plot-script", action="store_true",
                    help="also write a gnuplot script referencing the CSVs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toruswf",
        description="Wigner-function value statistics of the quantized sawtooth map")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("snapshots", help="value-distribution snapshots along one run")
    _add_common(sp, "runs/snapshots")
    sp.add_argument("--times", type=_int_list, default=None,
                    help="comma-separated snapshot times (default geometric ladder)")

    sp = sub.add_parser("excess-n", help="excess decay across dimensions")
    _add_common(sp, "runs/excess_n")
    sp.add_argument("--N-list", type=_int_list, default=[243, 729, 2187],
                    help="comma-separated odd dimensions")
    sp.add_argument("--t-max-factor", type=float, default=6.0,
                    help="series length in units of log N")

    sp = sub.add_parser("excess-k", help="excess decay across kicking strengths")
    _add_common(sp, "runs/excess_k")
    sp.add_argument("--K-list", type=_float_list, default=[0.5, 1.0, 2.0],
                    help="comma-separated kicking strengths (> 0)")
    sp.add_argument("--t-max", type=int, default=None,
                    help="series length in kicks (default ceil(6 log N))")

    sp = sub.add_parser("negativity", help="negative-fraction growth across dimensions")
    _add_common(sp, "runs/negativity")
    sp.add_argument("--N-list", type=_int_list, default=[243, 729, 2187],
                    help="comma-separated odd dimensions")
    sp.add_argument("--t-max-factor", type=float, default=6.0,
                    help="series length in units of log N")
    sp.add_argument("--level", type=float, default=DEFAULT_NEG_LEVEL,
                    help="negative-fraction level defining the crossing time")

    sp = sub.add_parser("ensemble", help="random-state Gaussianity diagnostics")
    _add_common(sp, "runs/ensemble")
    sp.add_argument("--samples", type=int, default=20, help="ensemble size")

    sp = sub.add_parser("wigner", help="single-state Wigner grid dump")
    _add_common(sp, "runs/wigner")
    sp.add_argument("--state", choices=("coherent", "random", "position"),
                    default="coherent", help="initial state type")
    sp.add_argument("--n0", type=int, default=0, help="position label for --state position")

    sp = sub.add_parser("rerun", help="reproduce an experiment from its manifest")
    sp.add_argument("manifest", help="path to a manifest.json")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--threads", type=int, default=1)

    return parser


def _validate(args: argparse.Namespace) -> None:
    for name in ("N",):
        if hasattr(args, name):
            torus.check_odd(getattr(args, name))
    for N in getattr(args, "N_list", []) or []:
        torus.check_odd(N)
    for K in getattr(args, "K_list", []) or []:
        if K <= 0:
            raise ValueError(f"kicking strengths must be positive, got {K}")
    if getattr(args, "bins", DEFAULT_BINS) < 2:
        raise ValueError(f"bins must be at least 2, got {args.bins}")
    if getattr(args, "threads", 1) < 1:
        raise ValueError(f"threads must be at least 1, got {args.threads}")
    if getattr(args, "hold", DEFAULT_HOLD) < 1:
        raise ValueError(f"hold must be at least 1, got {args.hold}")
    if getattr(args, "threshold", DEFAULT_THRESHOLD) <= 0:
        raise ValueError(f"threshold must be positive, got {args.threshold}")
    if not 0 < getattr(args, "level", DEFAULT_NEG_LEVEL) < 1:
        raise ValueError(f"level must lie in (0, 1), got {args.level}")
    if getattr(args, "samples", 1) < 1:
        raise ValueError(f"samples must be at least 1, got {args.samples}")
    if getattr(args, "seed", 0) < 0:
        raise ValueError(f"seed must be non-negative, got {args.seed}")


def _dispatch(args: argparse.Namespace):
    if args.command == "snapshots":
        return experiments.run_snapshots(
            K=args.K, N=args.N, q0=args.q0, p0=args.p0, times=args.times,
            bins=args.bins, out_dir=args.out, threads=args.threads,
            emit_plot_script=args.emit_plot_script)
    if args.command == "excess-n":
        return experiments.run_excess_vs_N(
            K=args.K, N_list=args.N_list, t_max_factor=args.t_max_factor,
            q0=args.q0, p0=args.p0, threshold=args.threshold, hold=args.hold,
            out_dir=args.out, threads=args.threads,
            emit_plot_script=args.emit_plot_script)
    if args.command == "excess-k":
        return experiments.run_excess_vs_K(
            K_list=args.K_list, N=args.N, t_max=args.t_max, q0=args.q0,
            p0=args.p0, threshold=args.threshold, hold=args.hold,
            out_dir=args.out, threads=args.threads,
            emit_plot_script=args.emit_plot_script)
    if args.command == "negativity":
        return experiments.run_negativity(
            K=args.K, N_list=args.N_list, t_max_factor=args.t_max_factor,
            q0=args.q0, p0=args.p0, level=args.level, hold=args.hold,
            threshold=args.threshold, out_dir=args.out, threads=args.threads,
            emit_plot_script=args.emit_plot_script)
    if args.command == "ensemble":
        return experiments.run_random_ensemble(
            N=args.N, samples=args.samples, seed=args.seed, bins=args.bins,
            out_dir=args.out, threads=args.threads,
            emit_plot_script=args.emit_plot_script)
    if args.command == "wigner":
        return experiments.run_wigner(
            N=args.N, state=args.state, q0=args.q0, p0=args.p0, n0=args.n0,
            seed=args.seed, out_dir=args.out, threads=args.threads,
            emit_plot_script=args.emit_plot_script)
    if args.command == "rerun":
        return experiments.rerun_from_manifest(args.manifest, args.out, args.threads)
    raise ValueError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        out = _dispatch(args)
    except (ValueError, IndexError) as exc:
        # late validation (e.g. manifest contents, state construction)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
