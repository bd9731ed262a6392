"""Monte Carlo study of the plug-in Zenga index under multinomial sampling.

Every replicate owns a Philox stream whose counter is ``(0, 0, replicate,
size_index)`` under a key derived from the seed, so results do not depend on
how replicates are split across worker threads.
"""

from __future__ import annotations

import math
from functools import lru_cache
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .asymptotics import asymptotic_variance, corrected_variance_batch
from .distribution import CountVector, DiscreteDistribution, ValidationError
from .indices import zenga_from_counts, zenga_population
from .normal import norm_cdf, norm_ppf

MIN_REPLICATES = 100


@lru_cache(maxsize=32)
def _philox_key(seed: int) -> tuple:
    return tuple(int(k) for k in np.random.SeedSequence(seed).generate_state(2, np.uint64))


def replicate_stream(seed: int, size_index: int, replicate: int) -> np.random.Generator:
    """Counter-based generator for one replicate of one sample size."""
    key = np.array(_philox_key(seed), dtype=np.uint64)
    return np.random.Generator(np.random.Philox(counter=[0, 0, replicate, size_index], key=key))


def sample_counts(dist: DiscreteDistribution, n: int, stream: np.random.Generator) -> CountVector:
    """One multinomial draw of size ``n`` (conditional-binomial method)."""
    if n < 1:
        raise ValidationError(f"sample size {n} must be at least 1")
    return CountVector(stream.multinomial(n, dist.probs))


def normalized_counts(counts: CountVector, dist: DiscreteDistribution) -> np.ndarray:
    """``(n_h - n p_h) / sqrt(n p_h)`` for each cell."""
    n = counts.n
    return (counts.counts - n * dist.probs) / np.sqrt(n * dist.probs)


def standardize(zhat, dist: DiscreteDistribution, n: int, sigma: Optional[float] = None):
    """``sqrt(n) (zhat - Z) / sigma`` with ``sigma`` the corrected asymptotic sd."""
    if sigma is None:
        sigma = math.sqrt(asymptotic_variance(dist, "corrected"))
    if not sigma > 0:
        raise ValidationError("asymptotic standard deviation is zero; cannot standardize")
    z, _ = zenga_population(dist)
    return np.sqrt(n) * (np.asarray(zhat, dtype=float) - z) / sigma


def draw_counts(dist: DiscreteDistribution, n: int, replicates: int, seed: int,
                size_index: int = 0, workers: int = 1) -> np.ndarray:
    """``(replicates, m)`` array of multinomial counts, one stream per row."""
    p = dist.probs

    def chunk(bounds):
        lo, hi = bounds
        out = np.empty((hi - lo, p.size), dtype=np.int64)
        for i, r in enumerate(range(lo, hi)):
            out[i] = replicate_stream(seed, size_index, r).multinomial(n, p)
        return out

    if workers <= 1:
        return chunk((0, replicates))
    edges = np.linspace(0, replicates, workers + 1).astype(int)
    parts = list(zip(edges[:-1], edges[1:]))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.concatenate(list(pool.map(chunk, parts)), axis=0)


def simulate_indices(dist: DiscreteDistribution, n: int, replicates: int, seed: int,
                     size_index: int = 0, workers: int = 1) -> np.ndarray:
    counts = draw_counts(dist, n, replicates, seed, size_index, workers)
    return zenga_from_counts(counts, dist.values)


def ks_distance(sample) -> float:
    """Kolmogorov-Smirnov distance between a sample and the standard normal."""
    t = np.sort(np.asarray(sample, dtype=float))
    b = t.size
    cdf = norm_cdf(t)
    i = np.arange(1, b + 1)
    return float(max(np.max(i / b - cdf), np.max(cdf - (i - 1) / b)))


def qq_pairs(sample) -> np.ndarray:
    """Rows ``(normal quantile of (b - 0.5)/B, b-th order statistic)``."""
    t = np.sort(np.asarray(sample, dtype=float))
    b = t.size
    theo = norm_ppf((np.arange(1, b + 1) - 0.5) / b)
    return np.column_stack([theo, t])


def kde_curve(sample, points: int = 200, grid=None) -> np.ndarray:
    """Gaussian kernel density with bandwidth ``1.06 sd B^(-1/5)``."""
    t = np.asarray(sample, dtype=float)
    b = t.size
    bw = 1.06 * t.std(ddof=1) * b ** (-0.2)
    if grid is None:
        grid = np.linspace(t.min() - 3 * bw, t.max() + 3 * bw, points)
    grid = np.asarray(grid, dtype=float)
    u = (grid[:, None] - t[None, :]) / bw
    dens = np.exp(-0.5 * u * u).sum(axis=1) / (b * bw * math.sqrt(2 * math.pi))
    return np.column_stack([grid, dens])


@dataclass(frozen=True, eq=False)
class StudyConfig:
    dist: DiscreteDistribution
    sizes: Sequence[int] = (100, 200, 500, 750, 1000, 1500)
    replicates: int = 3000
    seed: int = 0
    level: float = 0.95
    workers: int = 1
    kde_points: int = 200

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if not sizes:
            raise ValidationError("at least one sample size is required")
        if any(s < 2 for s in sizes):
            raise ValidationError(f"sample sizes must be >= 2, got {list(sizes)}")
        if self.replicates < MIN_REPLICATES:
            raise ValidationError(f"replicates must be >= {MIN_REPLICATES}, got {self.replicates}")
        if not 0 < self.level < 1:
            raise ValidationError(f"level {self.level!r} outside (0, 1)")
        if not 0 <= self.seed < 2 ** 64:
            raise ValidationError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SizeSummary:
    size: int
    erm: float
    mse: float
    rmse: float
    sd_scaled: float
    sigma_analytic: float
    ks: float
    coverage: float


@dataclass(eq=False)
class StudyReport:
    """Per-size accuracy summaries plus normality diagnostics.

    ``qq`` and ``kde`` describe the standardized statistics of the largest
    sample size; ``standardized`` keeps them for every size.
    """

    target: float
    rows: list
    qq: np.ndarray
    kde: np.ndarray
    standardized: dict = field(default_factory=dict)

    def row(self, size: int) -> SizeSummary:
        for r in self.rows:
            if r.size == size:
                return r
        raise KeyError(size)


def run_study(config: StudyConfig) -> StudyReport:
    dist = config.dist
    target, _ = zenga_population(dist)
    sigma2 = asymptotic_variance(dist, "corrected") if dist.m > 1 else 0.0
    sigma = math.sqrt(sigma2)
    q = norm_ppf((1 + config.level) / 2)
    rows, stats = [], {}
    for si, n in enumerate(config.sizes):
        counts = draw_counts(dist, n, config.replicates, config.seed, si, config.workers)
        zhat = zenga_from_counts(counts, dist.values)
        err = zhat - target
        erm = float(np.mean(err))
        mse = float(np.mean(err * err))
        scaled = math.sqrt(n) * err
        sd_scaled = float(np.std(scaled, ddof=1))
        if sigma > 0:
            t = scaled / sigma
            ks = ks_distance(t)
            se = np.sqrt(corrected_variance_batch(dist.values, counts / n) / n)
            lo = np.maximum(zhat - q * se, 0.0)
            hi = np.minimum(zhat + q * se, 1.0)
            coverage = float(np.mean((lo <= target) & (target <= hi)))
        else:
            t = np.zeros_like(scaled)
            ks, coverage = float("nan"), 1.0
        stats[n] = t
        rows.append(SizeSummary(n, erm, mse, math.sqrt(mse), sd_scaled, sigma, ks, coverage))
    largest = stats[config.sizes[-1]]
    if sigma > 0:
        qq, kde = qq_pairs(largest), kde_curve(largest, config.kde_points)
    else:
        qq, kde = np.empty((0, 2)), np.empty((0, 2))
    return StudyReport(target, rows, qq, kde, stats)
