"""Initial states on the torus Hilbert space.

A state is a complex amplitude vector of odd length N in symmetric storage
order (see torus.py).  Every constructor returns a unit-norm vector; states
are treated as immutable once built.
"""

from __future__ import annotations

import numpy as np

from . import torus


def check_normalized(psi: np.ndarray, tol: float = 1e-9) -> None:
    """Raise if psi is visibly off the unit sphere."""
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"state is not unit-norm: |psi| = {nrm!r}")


def position_state(N: int, n0: int) -> np.ndarray:
    """Basis vector with amplitude 1 at label n0, zero elsewhere."""
    torus.check_odd(N)
    M = torus.half_span(N)
    if not -M <= n0 <= M:
        raise IndexError(f"position label {n0} outside [{-M}, {M}]")
    psi = np.zeros(N, dtype=complex)
    psi[n0 + M] = 1.0
    return psi


def random_state(N: int, seed) -> np.ndarray:
    """Unit vector with independent complex-Gaussian coefficients.

    Real and imaginary parts are drawn N(0, 1/(2N)), so each coefficient has
    expected squared magnitude 1/N; the vector is then renormalized exactly.
    Deterministic for a fixed seed; `seed` may be anything accepted by
    numpy.random.default_rng (integer, SeedSequence, Generator).
    """
    torus.check_odd(N)
    rng = np.random.default_rng(seed)
    parts = rng.normal(scale=np.sqrt(0.5 / N), size=(2, N))
    psi = parts[0] + 1j * parts[1]
    return psi / np.linalg.norm(psi)


def coherent_state(N: int, q0: float = 0.0, p0: float = 0.0, images: int = 3) -> np.ndarray:
    """Normalized periodized Gaussian packet centered at (q0, p0).

    <n|psi> is proportional to

        sum_j exp(-(pi/N) (n + j N - q0)^2 + 2 pi i p0 (n + j N - q0) / N)

    over images j = -images .. images.  The plane-wave phase is referenced
    to the packet center, which makes integer shifts of q0 act as exact
    cyclic shifts of the amplitudes.  Truncation at images=3 is already
    converged below double precision for every odd N >= 3.
    """
    torus.check_odd(N)
    M = torus.half_span(N)
    if not (-M <= q0 <= M and -M <= p0 <= M):
        raise IndexError(f"packet center ({q0}, {p0}) outside the grid span [{-M}, {M}]")
    n = torus.sym_labels(N).astype(float)
    psi = np.zeros(N, dtype=complex)
    for j in range(-images, images + 1):
        d = n + j * N - q0
        psi += np.exp(-(np.pi / N) * d**2 + 2j * np.pi * p0 * d / N)
    return psi / np.linalg.norm(psi)


def inner(a: np.ndarray, b: np.ndarray) -> complex:
    """<a|b> with the conjugation on the first argument."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))
