"""Discrete Zenga index, its per-cut decomposition, and the Gini index."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distribution import (CountVector, DiscreteDistribution, ValidationError,
                           empirical_distribution, tail_sums)


@dataclass(frozen=True, eq=False)
class ZengaDecomposition:
    """Per-cut summands of the discrete Zenga index.

    Attributes
    ----------
    j : ndarray of int
        Cut indices ``1 .. m-1``.
    weight : ndarray
        Mass ``p_j`` attached to each cut.
    lower_mean, upper_mean : ndarray
        Mean income at or below ``x_j`` and strictly above it.
    ratio : ndarray
        ``lower_mean / upper_mean``, in ``[0, 1]``.
    total : float
        ``1 - sum(weight * ratio)``.
    """

    j: np.ndarray
    weight: np.ndarray
    lower_mean: np.ndarray
    upper_mean: np.ndarray
    ratio: np.ndarray
    total: float

    @property
    def curve(self) -> np.ndarray:
        """Zenga curve points ``1 - ratio_j``."""
        return 1.0 - self.ratio

    def __len__(self):
        return self.j.size


def cut_ratios(values, masses):
    """Lower and upper conditional means at each cut of a mass vector.

    ``masses`` need not sum to one; the upper mass is taken as the tail sum,
    which is what lets the index be differentiated off the simplex. Works on
    the last axis, so a batch of mass vectors may be passed.
    """
    x = np.asarray(values, dtype=float)
    p = np.asarray(masses, dtype=float)
    px = p * x
    low_mass = np.cumsum(p, axis=-1)[..., :-1]
    low_sum = np.cumsum(px, axis=-1)[..., :-1]
    up_mass = tail_sums(p)[..., :-1]
    up_sum = tail_sums(px)[..., :-1]
    return low_sum / low_mass, up_sum / up_mass


def zenga_index(values, masses) -> float:
    """Zenga index of an arbitrary positive mass vector on ``values``.

    No ordering or normalization checks are made; this is the raw finite
    formula, used by the numerical oracles and for degenerate test inputs.
    """
    x = np.asarray(values, dtype=float)
    p = np.asarray(masses, dtype=float)
    if x.size < 2:
        return 1.0
    lower, upper = cut_ratios(x, p)
    return float(1.0 - np.sum(p[:-1] * (lower / upper)))


def zenga_population(dist: DiscreteDistribution):
    """Zenga index of a discrete law together with its decomposition."""
    m = dist.m
    if m == 1:
        empty = np.empty(0)
        return 1.0, ZengaDecomposition(np.empty(0, dtype=int), empty, empty, empty, empty, 1.0)
    lower, upper = cut_ratios(dist.values, dist.probs)
    ratio = lower / upper
    weight = dist.probs[:-1].copy()
    total = float(1.0 - np.sum(weight * ratio))
    dec = ZengaDecomposition(np.arange(1, m), weight, lower, upper, ratio, total)
    return total, dec


def zenga_empirical(counts: CountVector, support: Sequence[float]):
    """Plug-in Zenga index of observed counts.

    Unobserved support points are dropped before evaluation, which is the
    same as skipping cuts with zero frequency or an empty upper group.
    """
    return zenga_population(empirical_distribution(counts, support))


def zenga_from_counts(counts, support) -> np.ndarray:
    """Vectorized plug-in Zenga index for a ``(B, m)`` array of count rows.

    Each row is treated exactly as :func:`zenga_empirical` would treat it.
    """
    c = np.atleast_2d(np.asarray(counts, dtype=float))
    x = np.asarray(support, dtype=float)
    n = c.sum(axis=1, keepdims=True)
    f = c / n
    fx = f * x
    low_mass = np.cumsum(f, axis=1)
    low_sum = np.cumsum(fx, axis=1)
    up_mass = tail_sums(f)
    up_sum = tail_sums(fx)
    active = (f > 0) & (up_mass > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = f * (low_sum / low_mass) / (up_sum / up_mass)
    terms = np.where(active, terms, 0.0)
    return 1.0 - terms.sum(axis=1)


def gini_population(dist: DiscreteDistribution) -> float:
    """Gini index from the pairwise mean absolute difference.

    ``G = sum_j sum_k p_j p_k |x_j - x_k| / (2 mean)``; no small-sample
    correction is applied.
    """
    mu = dist.mean
    if mu <= 0:
        raise ValidationError("Gini index undefined for zero mean")
    x, p = dist.values, dist.probs
    diff = np.abs(x[:, None] - x[None, :])
    return float(p @ diff @ p / (2 * mu))


def gini_empirical(counts: CountVector, support: Sequence[float]) -> float:
    return gini_population(empirical_distribution(counts, support))
