"""Value statistics of Wigner grids and their relaxation in time.

Every unit-norm pure state has grid mean 1/sqrt(N-1) and grid variance 1
identically, so the observables that distinguish states are the shape of
the value distribution: the excess kurtosis, which starts far above zero
for a localized packet and dies out as the state randomizes, and the
fraction of the grid carrying negative values, which climbs to the
random-state plateau just below 1/2.  The large-N reference law for random
states is a unit-width Gaussian centered at the grid mean.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from . import torus
from .dynamics import SawtoothParams
from .states import random_state
from .wigner import RESIDUE_TOL, wigner_fast

_CHUNK = 1 << 20  # elements per scratch block in streaming reductions


@dataclass
class Moments:
    """Streaming central moments up to order four, mergeable across batches.

    Holds the count, the mean, and the centered power sums m2..m4.  merge()
    applies the exact count-weighted pairwise update, so any partition of
    the data into batches reduces to the same result and parallel
    reductions are order-safe.
    """

    n: int = 0
    mean: float = 0.0
    m2: float = 0.0
    m3: float = 0.0
    m4: float = 0.0

    @classmethod
    def from_values(cls, values) -> "Moments":
        v = np.asarray(values, dtype=float).ravel()
        if v.size == 0:
            return cls()
        mean = float(v.mean())
        d = v - mean
        d2 = d * d
        return cls(v.size, mean, float(d2.sum()), float((d2 * d).sum()),
                   float((d2 * d2).sum()))

    def merge(self, other: "Moments") -> "Moments":
        if other.n == 0:
            return Moments(self.n, self.mean, self.m2, self.m3, self.m4)
        if self.n == 0:
            return Moments(other.n, other.mean, other.m2, other.m3, other.m4)
        na, nb = float(self.n), float(other.n)
        n = na + nb
        d = other.mean - self.mean
        mean = self.mean + d * nb / n
        m2 = self.m2 + other.m2 + d**2 * na * nb / n
        m3 = (self.m3 + other.m3 + d**3 * na * nb * (na - nb) / n**2
              + 3.0 * d * (na * other.m2 - nb * self.m2) / n)
        m4 = (self.m4 + other.m4
              + d**4 * na * nb * (na**2 - na * nb + nb**2) / n**3
              + 6.0 * d**2 * (na**2 * other.m2 + nb**2 * self.m2) / n**2
              + 4.0 * d * (na * other.m3 - nb * self.m3) / n)
        return Moments(self.n + other.n, mean, m2, m3, m4)

    __add__ = merge

    @property
    def variance(self) -> float:
        return self.m2 / self.n if self.n else 0.0

    @property
    def sigma(self) -> float:
        return float(np.sqrt(self.variance))

    @property
    def excess(self) -> float:
        """Fourth standardized moment minus 3; nan when the data is flat."""
        if self.n == 0 or self.m2 == 0.0:
            return float("nan")
        return float(self.n * self.m4 / self.m2**2 - 3.0)


@dataclass(frozen=True)
class ValueDistribution:
    """Histogram plus exact moments of a set of grid values.

    Moments, excess, and the negative fraction always come from the raw
    values in one numerically stable pass; the binned densities are for
    plotting only and never feed back into the statistics.
    """

    bin_edges: np.ndarray
    densities: np.ndarray
    mean: float
    sigma: float
    excess: float  # nan when sigma == 0
    neg_fraction: float
    kappa: float  # sigma / mean


def value_distribution(grid, bin_count: int = 101) -> ValueDistribution:
    """Uniform-bin histogram over the sample range plus raw-value moments.

    Densities are counts / (total * bin_width), so they integrate to 1.  A
    degenerate all-equal sample collapses to a single unit-width bin with
    zero sigma (and undefined excess, stored as nan).
    """
    if bin_count < 2:
        raise ValueError(f"bin_count must be at least 2, got {bin_count}")
    v = np.asarray(grid, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("empty grid")
    mom = Moments.from_values(v)
    neg = negative_fraction(v)
    lo, hi = float(v.min()), float(v.max())
    if hi == lo:
        edges = np.array([lo - 0.5, lo + 0.5])
        densities = np.array([1.0])
        return ValueDistribution(edges, densities, mom.mean, 0.0, float("nan"),
                                 neg, 0.0 if mom.mean else float("nan"))
    counts, edges = np.histogram(v, bins=bin_count, range=(lo, hi))
    width = (hi - lo) / bin_count
    densities = counts / (v.size * width)
    kappa = mom.sigma / mom.mean if mom.mean != 0.0 else float("nan")
    return ValueDistribution(edges, densities, mom.mean, mom.sigma, mom.excess,
                             neg, kappa)


def excess(dist: ValueDistribution) -> float:
    """Excess kurtosis of the distribution; undefined at zero sigma."""
    if dist.sigma == 0.0:
        raise ValueError("excess is undefined for a zero-sigma distribution")
    return dist.excess


def negative_fraction(values, tol: float = RESIDUE_TOL) -> float:
    """Fraction of grid points with resolved negative values, w < -tol.

    Anything within tol of zero counts as non-negative: the transform
    certifies grid values only down to about the RESIDUE_TOL absolute scale
    (the bound imposed on the discarded imaginary part), and the far field
    of a localized packet underflows to pure rounding noise whose signs
    carry no information.  Random-state grids have order-one values almost
    everywhere, so the floor moves their fraction by less than 1e-9.
    Pass tol=0 for the strict sign count.
    """
    v = np.asarray(values).ravel()
    if v.size == 0:
        raise ValueError("empty grid")
    return float((v < -tol).mean())


@dataclass(frozen=True)
class GaussianReference:
    """Reference law for random-state value distributions."""

    center: float
    width: float = 1.0

    def density(self, w):
        z = (np.asarray(w, dtype=float) - self.center) / self.width
        return np.exp(-0.5 * z * z) / (self.width * np.sqrt(2.0 * np.pi))

    def cdf(self, w):
        return ndtr((np.asarray(w, dtype=float) - self.center) / self.width)


def gaussian_reference(N: int) -> GaussianReference:
    """Unit-width Gaussian centered at the exact grid mean 1/sqrt(N-1)."""
    torus.check_odd(N)
    if N < 3:
        raise ValueError("reference law needs N >= 3 (center 1/sqrt(N-1))")
    return GaussianReference(center=1.0 / np.sqrt(N - 1.0), width=1.0)


def cdf_sup_distance(values, ref: GaussianReference) -> float:
    """Kolmogorov distance between the empirical CDF and the reference law.

    Sorts a private copy and walks it in chunks, so pooled ensembles of
    ~1e8 values need no scratch beyond the sorted copy itself.
    """
    v = np.asarray(values, dtype=float).ravel().copy()
    if v.size == 0:
        raise ValueError("empty sample")
    v.sort()
    n = v.size
    dist = 0.0
    for start in range(0, n, _CHUNK):
        block = v[start:start + _CHUNK]
        F = ref.cdf(block)
        idx = np.arange(start + 1, start + 1 + block.size, dtype=float)
        dist = max(dist, float((idx / n - F).max()), float((F - (idx - 1.0) / n).max()))
    return dist


@dataclass(frozen=True)
class RelaxationSeries:
    """Grid statistics of one evolution run, sampled after every kick."""

    params: SawtoothParams
    times: np.ndarray
    excess_series: np.ndarray
    neg_fraction_series: np.ndarray
    mean_series: np.ndarray
    sigma_series: np.ndarray

    def __post_init__(self):
        lengths = {len(self.times), len(self.excess_series), len(self.neg_fraction_series),
                   len(self.mean_series), len(self.sigma_series)}
        if lengths != {len(self.times)}:
            raise ValueError("series fields must have equal lengths")
        if len(self.times) == 0:
            raise ValueError("empty series")
        if self.times[0] != 0 or np.any(np.diff(self.times) <= 0):
            raise ValueError("times must increase strictly from 0")


def _first_hold(times, flags, hold: int):
    # earliest time whose next `hold` consecutive samples all satisfy flags
    if hold < 1:
        raise ValueError(f"hold must be at least 1, got {hold}")
    n = len(flags)
    for i in range(n - hold + 1):
        if flags[i:i + hold].all():
            return int(times[i])
    return None


def relaxation_time(series: RelaxationSeries, threshold: float = 0.5, hold: int = 2):
    """First time from which |excess| stays below threshold for hold samples.

    The window is `hold` consecutive samples (the series is sampled once
    per kick), and must fit inside the series; returns None when no window
    qualifies.
    """
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    return _first_hold(series.times, np.abs(series.excess_series) < threshold, hold)


def negativity_crossing_time(series: RelaxationSeries, level: float = 0.45, hold: int = 2):
    """First time from which the negative fraction stays at or above level."""
    if not 0 < level < 1:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    return _first_hold(series.times, series.neg_fraction_series >= level, hold)


@dataclass(frozen=True)
class EnsembleSummary:
    """Aggregate Gaussianity diagnostics over an ensemble of random states."""

    N: int
    samples: int
    seed: int
    mean_excess: float
    mean_neg_fraction: float
    sup_distance: float
    pooled_mean: float
    pooled_sigma: float


def ensemble_gaussianity(N: int, samples: int, seed: int, threads: int = 1):
    """Moments, negativity, and pooled-CDF distance over random states.

    Draws `samples` independent random states from sub-seeds spawned off one
    SeedSequence, so each sample is reproducible regardless of scheduling;
    all reductions run in fixed sample order, making the result independent
    of the thread count.  Returns (EnsembleSummary, pooled_values); the
    pooled array is samples x N^2 and can be large (about 765 MB at
    N = 2187, samples = 20).
    """
    torus.check_odd(N)
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    children = np.random.SeedSequence(seed).spawn(samples)
    pooled = np.empty((samples, N * N))
    per_excess = np.empty(samples)
    per_neg = np.empty(samples)

    def one(i: int) -> Moments:
        W = wigner_fast(random_state(N, children[i]))
        flat = W.ravel()
        pooled[i] = flat
        mom = Moments.from_values(flat)
        per_excess[i] = mom.excess
        per_neg[i] = negative_fraction(flat)
        return mom

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batch_moments = list(pool.map(one, range(samples)))
    else:
        batch_moments = [one(i) for i in range(samples)]

    total = Moments()
    for mom in batch_moments:  # fixed order keeps the merge deterministic
        total = total.merge(mom)
    sup = cdf_sup_distance(pooled, gaussian_reference(N))
    summary = EnsembleSummary(
        N=N, samples=samples, seed=seed,
        mean_excess=float(per_excess.mean()),
        mean_neg_fraction=float(per_neg.mean()),
        sup_distance=sup,
        pooled_mean=total.mean,
        pooled_sigma=total.sigma,
    )
    return summary, pooled
