import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from toruswf import (SawtoothParams, coherent_state, ensemble_gaussianity,
                     position_state, random_state, relaxation_series, wigner_fast)

settings.register_profile(
    "suite", deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")

ACCEPTANCE_DIMS = (3, 27, 243, 2187)
ENSEMBLE_SEED = 20260816


@pytest.fixture(scope="session")
def grid_matrix():
    """(N, label, psi, W) for position, coherent, and 5 random states per N."""
    rows = []
    for N in ACCEPTANCE_DIMS:
        states = [("position", position_state(N, 0)),
                  ("coherent", coherent_state(N))]
        children = np.random.SeedSequence(2026).spawn(5)
        states += [(f"random{i}", random_state(N, c)) for i, c in enumerate(children)]
        for label, psi in states:
            rows.append((N, label, psi, wigner_fast(psi)))
    return rows


@pytest.fixture(scope="session")
def k05_series():
    """Coherent-start relaxation series at K = 0.5 for the scaling dimensions."""
    return {N: relaxation_series(SawtoothParams(K=0.5, N=N)) for N in (243, 729, 2187)}


@pytest.fixture(scope="session")
def k_series_2187(k05_series):
    """Relaxation series at N = 2187 for K in {0.5, 1, 2}."""
    series = {0.5: k05_series[2187]}
    for K in (1.0, 2.0):
        series[K] = relaxation_series(SawtoothParams(K=K, N=2187))
    return series


@pytest.fixture(scope="session")
def ensemble_2187():
    """Gaussianity summary over 20 random states at N = 2187."""
    summary, pooled = ensemble_gaussianity(2187, 20, seed=ENSEMBLE_SEED, threads=1)
    del pooled
    return summary
