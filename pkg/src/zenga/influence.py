"""Influence function of the discrete Zenga index.

The analytic form is evaluated at support points only. For a contamination
at ``x_k`` and cut ``s = x_j`` (``j = 1 .. m-1``), with ``F = F(x_j)``,
``R1``/``R2`` the lower/upper conditional means::

    IF(x_k) = sum_j p_j [ R1 x_k 1(k>j) / (R2^2 (1-F)) - x_k 1(k<=j) / (R2 F) ]
            + sum_j p_j [ R1 1(k<=j) / (R2 F) - R1 1(k>j) / (R2 (1-F)) ]
            - R1(x_k) / R2(x_k) 1(k<=m-1)
            + sum_j p_j R1 / R2
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distribution import DiscreteDistribution, ValidationError
from .indices import cut_ratios, zenga_index, zenga_population


@dataclass(frozen=True, eq=False)
class InfluenceProfile:
    values: np.ndarray
    probs: np.ndarray
    if_values: np.ndarray
    if_variance: float

    def __len__(self):
        return self.values.size


def _influence_all(dist: DiscreteDistribution) -> np.ndarray:
    m = dist.m
    if m == 1:
        return np.zeros(1)
    x, p = dist.values, dist.probs
    r1, r2 = cut_ratios(x, p)
    F = np.cumsum(p)[:-1]
    G = p[::-1].cumsum()[::-1][1:]  # 1 - F without cancellation
    w = p[:-1]
    ratio = r1 / r2

    k = np.arange(1, m + 1)[:, None]
    j = np.arange(1, m)[None, :]
    low = k <= j
    high = ~low
    xk = x[:, None]

    first = np.where(high, r1 / (r2 ** 2 * G) * xk, 0.0) - np.where(low, xk / (r2 * F), 0.0)
    second = np.where(low, r1 / (r2 * F), 0.0) - np.where(high, r1 / (r2 * G), 0.0)
    dirac = np.zeros(m)
    dirac[:-1] = ratio
    return (first + second) @ w - dirac + np.dot(w, ratio)


def influence_function(dist: DiscreteDistribution, k: int) -> float:
    """Analytic influence of a contamination at support point ``k`` (1-based)."""
    if not 1 <= k <= dist.m:
        raise ValidationError(f"support index k={k} outside 1..{dist.m}")
    return float(_influence_all(dist)[k - 1])


def contaminate(dist: DiscreteDistribution, x: float, eps: float) -> DiscreteDistribution:
    """Mixture ``(1 - eps) P + eps delta_x``; ``x`` may lie off the support."""
    values, probs = dist.values, (1 - eps) * dist.probs
    hit = np.flatnonzero(values == x)
    if hit.size:
        probs = probs.copy()
        probs[hit[0]] += eps
    else:
        pos = np.searchsorted(values, x)
        values = np.insert(values, pos, x)
        probs = np.insert(probs, pos, eps)
    return DiscreteDistribution(values, probs / probs.sum())


def numeric_influence(dist: DiscreteDistribution, k: int, eps: float = 1e-6) -> float:
    """Forward difference quotient of the index along a contamination at ``x_k``."""
    if not 0 < eps <= 1e-3:
        raise ValidationError(f"eps {eps!r} outside (0, 1e-3]")
    if not 1 <= k <= dist.m:
        raise ValidationError(f"support index k={k} outside 1..{dist.m}")
    z0, _ = zenga_population(dist)
    p = (1 - eps) * dist.probs
    p[k - 1] += eps
    return (zenga_index(dist.values, p) - z0) / eps


def influence_profile(dist: DiscreteDistribution) -> InfluenceProfile:
    """Influence at every support point and the implied variance ``sum p IF^2``."""
    ifv = _influence_all(dist)
    return InfluenceProfile(dist.values, dist.probs, ifv, float(np.dot(dist.probs, ifv ** 2)))
