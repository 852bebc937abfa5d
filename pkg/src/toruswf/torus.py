"""Index conventions for the odd-dimension torus Hilbert space.

Every array in this package (state amplitudes, Wigner grids) is stored in
symmetric ascending order: storage slot j holds the integer label
n = j - (N-1)/2, so labels run over {-(N-1)/2, ..., (N-1)/2}.  For odd N,
numpy.fft.ifftshift converts symmetric storage to the wrapped order
{0, 1, ..., (N-1)/2, -(N-1)/2, ..., -1} that FFT routines index by, and
numpy.fft.fftshift converts back; the two are exact inverses.
"""

from __future__ import annotations

import numpy as np


def check_odd(N: int) -> None:
    """Reject dimensions that are not positive odd integers."""
    if not isinstance(N, (int, np.integer)) or N < 1 or N % 2 == 0:
        raise ValueError(f"dimension must be a positive odd integer, got {N!r}")


def half_span(N: int) -> int:
    """Largest symmetric label (N-1)/2."""
    return (N - 1) // 2


def sym_labels(N: int) -> np.ndarray:
    """Integer labels in storage order, -(N-1)/2 ... (N-1)/2."""
    M = half_span(N)
    return np.arange(-M, M + 1)


def wrap(n, N: int):
    """Reduce integer labels mod N back into the symmetric range."""
    M = half_span(N)
    return (np.asarray(n) + M) % N - M


def slot(n, N: int):
    """Storage position of label n; n may be any integer (wrapped mod N)."""
    M = half_span(N)
    return (np.asarray(n) + M) % N
