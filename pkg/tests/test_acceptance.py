"""Acceptance gate: one test per headline guarantee of the library.

Every test prints a single `[criterion NN] PASS/FAIL: detail` line before
asserting, so `pytest -s tests/test_acceptance.py` reads as a checklist.
The checks run at full production scale (N up to 2187) off the shared
session fixtures in conftest.py.
"""

import json

import numpy as np

from toruswf import (
    SawtoothParams,
    adjoint_step,
    build_propagator,
    coherent_state,
    delta_kernel,
    lyapunov,
    negativity_crossing_time,
    position_state,
    prefactor,
    random_state,
    relaxation_time,
    step,
    value_distribution,
    wigner_fast,
    wigner_naive,
    wigner_point,
)
from toruswf.experiments import (
    rerun_from_manifest,
    run_excess_vs_K,
    run_excess_vs_N,
    run_random_ensemble,
)


def _crit(num: int, ok: bool, detail: str) -> bool:
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


def _within_of_mean(values, frac: float) -> bool:
    v = np.asarray(values, dtype=float)
    center = v.mean()
    return bool(np.abs(v - center).max() <= frac * center)


def test_criterion_01_grid_moment_identities(grid_matrix):
    worst_mean, worst_var = 0.0, 0.0
    for N, label, psi, W in grid_matrix:
        worst_mean = max(worst_mean, abs(W.mean() - 1.0 / np.sqrt(N - 1.0)))
        worst_var = max(worst_var, abs(W.var() - 1.0))
    ok = worst_mean <= 1e-10 and worst_var <= 1e-9
    assert _crit(1, ok, f"grid mean/variance identities over {len(grid_matrix)} "
                        f"states, N up to 2187: max |mean err| = {worst_mean:.2e} "
                        f"(<= 1e-10), max |var err| = {worst_var:.2e} (<= 1e-9)")


def test_criterion_02_fast_transform_matches_oracle():
    worst = 0.0
    for N in (3, 9, 27):
        for seed in range(20):
            psi = random_state(N, seed)
            worst = max(worst, float(np.abs(wigner_fast(psi) - wigner_naive(psi)).max()))
    ok = worst <= 1e-10
    assert _crit(2, ok, f"FFT pipeline vs literal sum, 20 random states at each "
                        f"N in (3, 9, 27): max |diff| = {worst:.2e} (<= 1e-10)")


def test_criterion_03_momentum_marginal(grid_matrix):
    worst = 0.0
    for N, label, psi, W in grid_matrix:
        marginal = W.mean(axis=1)
        worst = max(worst, float(np.abs(marginal - prefactor(N) * np.abs(psi) ** 2).max()))
    ok = worst <= 1e-10
    assert _crit(3, ok, f"momentum-averaged grid vs scaled position density over "
                        f"{len(grid_matrix)} states: max |diff| = {worst:.2e} (<= 1e-10)")


def test_criterion_04_unitarity_and_reversibility():
    prop = build_propagator(SawtoothParams(K=0.5, N=2187))
    psi = coherent_state(2187)
    drift = 0.0
    for _ in range(100):
        psi = step(prop, psi)
        drift = max(drift, abs(np.linalg.norm(psi) - 1.0))
    prop_s = build_propagator(SawtoothParams(K=0.5, N=243))
    psi0 = coherent_state(243, 3.0, -2.0)
    psi_s = psi0
    for _ in range(50):
        psi_s = step(prop_s, psi_s)
    for _ in range(50):
        psi_s = adjoint_step(prop_s, psi_s)
    rev = float(np.abs(psi_s - psi0).max())
    ok = drift <= 1e-12 and rev <= 1e-10
    assert _crit(4, ok, f"norm drift over 100 steps at N = 2187: {drift:.2e} "
                        f"(<= 1e-12); 50-step forward/adjoint return at N = 243: "
                        f"{rev:.2e} (<= 1e-10)")


def test_criterion_05_random_state_gaussianity(ensemble_2187):
    s = ensemble_2187
    neg_off = abs(s.mean_neg_fraction - 0.5)
    ok = (abs(s.mean_excess) <= 0.05 and s.sup_distance <= 0.01 and neg_off <= 0.02)
    assert _crit(5, ok, f"20 random states at N = 2187: mean excess = "
                        f"{s.mean_excess:+.4f} (|.| <= 0.05), pooled CDF distance = "
                        f"{s.sup_distance:.4f} (<= 0.01), mean negative fraction off "
                        f"1/2 by {neg_off:.4f} (<= 0.02)")


def test_criterion_06_relaxation_scales_with_log_dimension(k05_series):
    dims = sorted(k05_series)
    t_r = {N: relaxation_time(k05_series[N]) for N in dims}
    have_all = all(v is not None for v in t_r.values())
    increasing = have_all and all(t_r[a] < t_r[b] for a, b in zip(dims, dims[1:]))
    scaled = [t_r[N] / np.log(N) for N in dims] if have_all else []
    collapse = have_all and _within_of_mean(scaled, 0.30)
    ok = have_all and increasing and collapse
    detail = ", ".join(f"N={N}: t_r={t_r[N]}" for N in dims)
    if have_all:
        detail += "; t_r/log N = " + ", ".join(f"{s:.3f}" for s in scaled)
    assert _crit(6, ok, f"K = 0.5 relaxation times ({detail}); raw strictly "
                        f"increasing and scaled values within 30% of their mean")


def test_criterion_07_relaxation_scales_with_lyapunov(k_series_2187, tmp_path):
    ks = sorted(k_series_2187)
    t_r = {K: relaxation_time(k_series_2187[K]) for K in ks}
    have_all = all(v is not None for v in t_r.values())
    decreasing = have_all and all(t_r[a] > t_r[b] for a, b in zip(ks, ks[1:]))
    products = [lyapunov(K) * t_r[K] for K in ks] if have_all else []
    collapse = have_all and _within_of_mean(products, 0.35)
    out = run_excess_vs_K(K_list=[0.5], N=27, t_max=3, out_dir=tmp_path / "lam")
    lam_line = next(line for line in (out / "excess_K0.5.csv").read_text().splitlines()
                    if line.startswith("# lambda="))
    lam_exact = float(lam_line.split("=", 1)[1]) == np.log(2.0)
    ok = have_all and decreasing and collapse and lam_exact
    detail = ", ".join(f"K={K:g}: t_r={t_r[K]}" for K in ks)
    if have_all:
        detail += "; lambda*t_r = " + ", ".join(f"{p:.2f}" for p in products)
    detail += f"; emitted lambda(0.5) == log 2 exactly: {lam_exact}"
    assert _crit(7, ok, f"N = 2187 across K ({detail}); raw strictly decreasing, "
                        f"products within 35% of their mean")


def test_criterion_08_negativity_growth(k05_series):
    dims = sorted(k05_series)
    hold_from, t_c, t_r = {}, {}, {}
    for N in dims:
        series = k05_series[N]
        dev_ok = np.abs(series.neg_fraction_series - 0.5) <= 0.02
        hold_from[N] = None
        for i in range(len(dev_ok)):
            if dev_ok[i:].all():
                hold_from[N] = int(series.times[i])
                break
        t_c[N] = negativity_crossing_time(series)
        t_r[N] = relaxation_time(series)
    reach_and_hold = all(hold_from[N] is not None for N in dims)
    ordering = all(t_c[N] is not None and t_r[N] is not None and t_c[N] < t_r[N]
                   for N in dims)
    have_tc = all(t_c[N] is not None for N in dims)
    scaled = [t_c[N] / np.log(N) for N in dims] if have_tc else []
    collapse = have_tc and _within_of_mean(scaled, 0.30)
    ok = reach_and_hold and ordering and collapse
    parts = []
    for N in dims:
        parts.append(f"N={N}: holds within 0.02 of 1/2 from t={hold_from[N]}, "
                     f"t_c={t_c[N]}, t_r={t_r[N]}")
    detail = "; ".join(parts)
    if have_tc:
        detail += "; t_c/log N = " + ", ".join(f"{s:.3f}" for s in scaled)
    assert _crit(8, ok, detail)


def test_criterion_09_three_level_hand_case():
    psi = position_state(3, 0)
    expected = np.zeros((3, 3))
    expected[1, :] = 3.0 / np.sqrt(2.0)
    W = wigner_naive(psi)  # oracle route
    d_fast = float(np.abs(wigner_fast(psi) - expected).max())
    d_naive = float(np.abs(W - expected).max())
    d_point = abs(wigner_point(psi, 0, 0) - 3.0 / np.sqrt(2.0))
    kern = delta_kernel(3)
    d_kern = float(np.abs(kern - np.array([1.0, 2 / 3, 0.0, -1 / 3, 0.0, 2 / 3])).max())
    dist = value_distribution(W)
    d_stats = max(abs(dist.mean - 1.0 / np.sqrt(2.0)), abs(dist.sigma**2 - 1.0),
                  abs(dist.excess - (-1.5)), abs(dist.neg_fraction - 0.0))
    worst = max(d_fast, d_naive, d_point, d_kern, d_stats)
    ok = worst <= 1e-12
    assert _crit(9, ok, f"N = 3 hand-checked grid (single row at 3/sqrt 2), kernel "
                        f"table, and statistics (mean 1/sqrt 2, var 1, excess -3/2, "
                        f"negative fraction 0): max |diff| = {worst:.2e} (<= 1e-12)")


def test_criterion_10_byte_identical_reruns(tmp_path):
    a = run_random_ensemble(N=27, samples=6, seed=3, out_dir=tmp_path / "a", threads=1)
    b = run_random_ensemble(N=27, samples=6, seed=3, out_dir=tmp_path / "b", threads=3)
    c = rerun_from_manifest(a / "manifest.json", tmp_path / "c", threads=2)
    names = json.loads((a / "manifest.json").read_text())["outputs"]
    same_ens = all((a / n).read_bytes() == (b / n).read_bytes() == (c / n).read_bytes()
                   for n in names)
    d = run_excess_vs_N(N_list=(9, 27), t_max_factor=2.0, out_dir=tmp_path / "d",
                        threads=1)
    e = run_excess_vs_N(N_list=(9, 27), t_max_factor=2.0, out_dir=tmp_path / "e",
                        threads=2)
    same_exn = all((d / f"excess_N{N}.csv").read_bytes() ==
                   (e / f"excess_N{N}.csv").read_bytes() for N in (9, 27))
    ok = same_ens and same_exn
    assert _crit(10, ok, f"ensemble CSVs identical across threads 1/3 and manifest "
                         f"rerun: {same_ens}; excess series identical across "
                         f"threads 1/2: {same_exn}")
