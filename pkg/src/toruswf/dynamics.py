"""One-step quantum propagator for the kicked sawtooth map on the torus.

A map step applies the quadratic kick phase exp(i K T n^2 / 2) in the
position basis, moves to the momentum basis with a unitary DFT
(position -> momentum kernel exp(-2 pi i k n / N) / sqrt(N), momenta on the
same symmetric integer range as positions), applies the free phase
exp(-i T k^2 / 2), and transforms back; T = 2 pi / N ties the kick period
to the grid resolution.  For K > 0 the classical map is ergodic and
uniformly hyperbolic with stretching rate lyapunov(K) per step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from . import torus


@dataclass(frozen=True)
class SawtoothParams:
    """Kicking strength K and Hilbert dimension N; T is fixed to 2 pi / N.

    K <= 0 is admitted here (and flagged non-ergodic downstream) but has no
    Lyapunov exponent; the scaling experiments all run at K > 0.
    """

    K: float
    N: int

    def __post_init__(self):
        torus.check_odd(self.N)

    @property
    def T(self) -> float:
        return 2.0 * np.pi / self.N

    @property
    def ergodic(self) -> bool:
        return self.K > 0


@dataclass(frozen=True)
class Propagator:
    params: SawtoothParams
    kick_phases: np.ndarray
    kinetic_phases: np.ndarray


def build_propagator(params: SawtoothParams) -> Propagator:
    """Precompute the two diagonal phase factors of one map step."""
    n = torus.sym_labels(params.N).astype(float)
    kick = np.exp(0.5j * params.K * params.T * n**2)
    kinetic = np.exp(-0.5j * params.T * n**2)
    kick.setflags(write=False)
    kinetic.setflags(write=False)
    return Propagator(params, kick, kinetic)


def _to_momentum(psi: np.ndarray) -> np.ndarray:
    return np.fft.fftshift(sfft.fft(np.fft.ifftshift(psi), norm="ortho"))


def _to_position(phi: np.ndarray) -> np.ndarray:
    return np.fft.fftshift(sfft.ifft(np.fft.ifftshift(phi), norm="ortho"))


def _check_dims(prop: Propagator, psi: np.ndarray) -> None:
    if len(psi) != prop.params.N:
        raise ValueError(f"dimension mismatch: state {len(psi)}, propagator {prop.params.N}")


def step(prop: Propagator, psi: np.ndarray) -> np.ndarray:
    """Apply one kick period; returns a new state, norm preserved."""
    _check_dims(prop, psi)
    phi = _to_momentum(psi * prop.kick_phases)
    return _to_position(phi * prop.kinetic_phases)


def adjoint_step(prop: Propagator, psi: np.ndarray) -> np.ndarray:
    """Inverse of step: conjugated phases applied in reverse order."""
    _check_dims(prop, psi)
    phi = _to_momentum(psi)
    out = _to_position(phi * np.conj(prop.kinetic_phases))
    return out * np.conj(prop.kick_phases)


def evolve(prop: Propagator, psi: np.ndarray, t: int) -> np.ndarray:
    """t applications of step; t = 0 returns the input unchanged."""
    if t < 0:
        raise ValueError(f"step count must be non-negative, got {t}")
    for _ in range(t):
        psi = step(prop, psi)
    return psi


def propagator_matrix(prop: Propagator) -> np.ndarray:
    """Dense N x N one-step unitary, built from the explicit DFT kernel.

    Independent of the FFT path; used to cross-check step at small N.
    """
    N = prop.params.N
    lab = torus.sym_labels(N)
    F = np.exp(-2j * np.pi * np.outer(lab, lab) / N) / np.sqrt(N)
    return F.conj().T @ (prop.kinetic_phases[:, None] * F) @ np.diag(prop.kick_phases)


def lyapunov(K: float) -> float:
    """Classical stretching exponent log((2 + K + sqrt((2 + K)^2 - 4)) / 2).

    Strictly increasing in K, tends to 0 as K -> 0+.  Defined only for
    K > 0; inside -4 < K < 0 the square root turns complex (elliptic
    regime), so non-positive K is rejected.
    """
    if K <= 0:
        raise ValueError(f"Lyapunov exponent needs kicking strength K > 0, got {K}")
    a = 2.0 + K
    return float(np.log(0.5 * (a + np.sqrt(a * a - 4.0))))
