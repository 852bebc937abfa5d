#!/usr/bin/env python3
"""Run every experiment at production scale into one output tree.

Produces runs/{snapshots,excess_n,excess_k,negativity,ensemble}, each with
its CSV artifacts, manifest.json, and a gnuplot script.  The full ladder
(N up to 2187, 20-state ensemble) takes a few minutes and peaks around
2.5 GB of memory; --fast swaps in a reduced ladder that finishes in
seconds for smoke runs.  Outputs are byte-reproducible for a fixed
configuration regardless of --threads.
"""

import argparse
import time
from pathlib import Path

from toruswf import experiments

FULL = {
    "snapshots": dict(N=2187, K=0.5),
    "excess_n": dict(K=0.5, N_list=(243, 729, 2187)),
    "excess_k": dict(N=2187, K_list=(0.5, 1.0, 2.0)),
    "negativity": dict(K=0.5, N_list=(243, 729, 2187)),
    "ensemble": dict(N=2187, samples=20, seed=0),
}

FAST = {
    "snapshots": dict(N=81, K=0.5),
    "excess_n": dict(K=0.5, N_list=(27, 81, 243)),
    "excess_k": dict(N=243, K_list=(0.5, 1.0, 2.0)),
    "negativity": dict(K=0.5, N_list=(27, 81, 243)),
    "ensemble": dict(N=243, samples=10, seed=0),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs", help="root output directory")
    ap.add_argument("--threads", type=int, default=1,
                    help="worker threads across cells/samples")
    ap.add_argument("--fast", action="store_true",
                    help="reduced ladder for a quick smoke run")
    args = ap.parse_args()

    cfg = FAST if args.fast else FULL
    out = Path(args.out)
    jobs = [
        ("snapshots", experiments.run_snapshots),
        ("excess_n", experiments.run_excess_vs_N),
        ("excess_k", experiments.run_excess_vs_K),
        ("negativity", experiments.run_negativity),
        ("ensemble", experiments.run_random_ensemble),
    ]
    for name, runner in jobs:
        t0 = time.perf_counter()
        path = runner(out_dir=out / name, threads=args.threads,
                      emit_plot_script=True, **cfg[name])
        print(f"{name}: {path} ({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
