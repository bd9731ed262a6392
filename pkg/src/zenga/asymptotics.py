"""Multinomial asymptotics of the plug-in Zenga index.

``sqrt(n) (Z_hat - Z)`` is asymptotically ``H' N`` where ``N`` is the vector
of normalized cell counts ``(n_h - n p_h) / sqrt(n p_h)``, whose covariance
is ``Sigma = I - sqrt(p) sqrt(p)'``. The variance is ``H' Sigma H``.

Two versions of ``H`` are built. The *literal* one weights each ``E_j`` by
``(p_j*)^-2``. The *corrected* one weights it by
``zeta_j = p_j mu_(j) / ((p_j*)^2 mu^(j))``, which is what linearizing the
``(1/p_j* - 1)`` factor of each summand actually gives. Only the corrected
variance agrees with the delta method and with the influence function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .distribution import (CountVector, DiscreteDistribution, ValidationError,
                           empirical_distribution, tail_sums)
from .indices import zenga_index, zenga_population
from .normal import norm_ppf

MODES = ("literal", "corrected")


def sigma_matrix(dist: DiscreteDistribution) -> np.ndarray:
    """Covariance of the normalized multinomial counts.

    ``sigma_hh = 1 - p_h`` and ``sigma_hk = -sqrt(p_h p_k)``.
    """
    r = np.sqrt(dist.probs)
    sigma = -np.outer(r, r)
    np.fill_diagonal(sigma, 1.0 - dist.probs)
    return sigma


@dataclass(frozen=True, eq=False)
class ScoreSet:
    """Vectors and coefficients of the linear representation.

    Row ``j-1`` of ``D1``, ``D2`` and ``E`` holds ``D_{j,1}``, ``D_{j,2}``
    and ``E_j``; ``gamma1``, ``gamma2`` and ``zeta`` are indexed the same way.
    """

    C: np.ndarray
    D1: np.ndarray
    D2: np.ndarray
    E: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    zeta: np.ndarray
    H_literal: np.ndarray
    H_corrected: np.ndarray

    def H(self, mode: str = "corrected") -> np.ndarray:
        if mode == "literal":
            return self.H_literal
        if mode == "corrected":
            return self.H_corrected
        raise ValueError(f"unknown mode {mode!r}")


def score_set(dist: DiscreteDistribution) -> ScoreSet:
    m = dist.m
    if m < 2:
        raise ValidationError("asymptotic scores need at least two support points")
    x, p = dist.values, dist.probs
    sp = np.sqrt(p)
    pstar = np.cumsum(p)[:-1]
    qstar = tail_sums(p)[:-1]  # 1 - p_j*
    px = p * x
    mu_low = np.cumsum(px)[:-1]
    mu_up = tail_sums(px)[:-1]
    ratio = (mu_low / pstar) / (mu_up / qstar)

    C = np.zeros(m)
    C[:-1] = sp[:-1] * ratio

    h = np.arange(1, m + 1)
    j = np.arange(1, m)
    below = h[None, :] <= j[:, None]
    D1 = np.where(below, x * sp, 0.0)
    D2 = np.where(below, 0.0, -x * sp)
    E = np.where(below, -sp, 0.0)

    odds = qstar / pstar
    gamma1 = p[:-1] * odds / mu_up
    gamma2 = p[:-1] * odds * mu_low / mu_up ** 2
    zeta = p[:-1] * mu_low / (pstar ** 2 * mu_up)

    common = C + gamma1 @ D1 + gamma2 @ D2
    H_literal = -(common + (pstar ** -2.0) @ E)
    H_corrected = -(common + zeta @ E)
    return ScoreSet(C, D1, D2, E, gamma1, gamma2, zeta, H_literal, H_corrected)


def asymptotic_variance(dist: DiscreteDistribution, mode: str = "corrected") -> float:
    """``H' Sigma H`` for the requested version of ``H``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if dist.m == 1:
        return 0.0
    H = score_set(dist).H(mode)
    v = float(H @ sigma_matrix(dist) @ H)
    return max(v, 0.0)


def zenga_gradient(dist: DiscreteDistribution, step: float = 1e-6) -> np.ndarray:
    """Central finite-difference gradient of the index in the mass vector.

    Coordinate ``h`` is perturbed by ``step * max(p_h, 1e-3)``. Masses are
    treated as free variables (upper masses are tail sums), so the result is
    defined up to a multiple of the all-ones vector.
    """
    if not 0 < step <= 1e-3:
        raise ValidationError(f"step {step!r} outside (0, 1e-3]")
    x, p = dist.values, dist.probs
    grad = np.empty(dist.m)
    for h in range(dist.m):
        dh = step * max(p[h], 1e-3)
        if p[h] - dh <= 0:
            raise ValidationError(f"step too large: mass {p[h]!r} at point {h + 1} would vanish")
        up = p.copy()
        dn = p.copy()
        up[h] += dh
        dn[h] -= dh
        grad[h] = (zenga_index(x, up) - zenga_index(x, dn)) / (2 * dh)
    return grad


def delta_variance(dist: DiscreteDistribution, step: float = 1e-6) -> float:
    """Delta-method variance ``g' (diag(p) - p p') g`` with a numeric gradient."""
    if dist.m == 1:
        return 0.0
    g = zenga_gradient(dist, step)
    p = dist.probs
    gc = g - np.dot(p, g)
    return float(np.dot(p, gc * gc))


def corrected_variance_batch(support, freqs) -> np.ndarray:
    """Corrected ``H' Sigma H`` for each row of a ``(B, m)`` frequency array.

    Zero-frequency cells are handled as if they were removed from the
    support, matching :func:`zenga_empirical`. Works through the per-unit-mass
    score ``H_h / sqrt(p_h)``, which stays finite when ``p_h = 0``.
    """
    f = np.atleast_2d(np.asarray(freqs, dtype=float))
    x = np.asarray(support, dtype=float)
    m = x.size
    fx = f * x
    low_mass = np.cumsum(f, axis=1)
    low_sum = np.cumsum(fx, axis=1)
    up_mass = tail_sums(f)
    up_sum = tail_sums(fx)
    active = (f > 0) & (up_mass > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(active, (low_sum / low_mass) / (up_sum / up_mass), 0.0)
        odds = up_mass / low_mass
        g1 = np.where(active, f * odds / up_sum, 0.0)
        g2 = np.where(active, f * odds * low_sum / up_sum ** 2, 0.0)
        z = np.where(active, f * low_sum / (low_mass ** 2 * up_sum), 0.0)
    # sum over cuts j >= h and j < h respectively
    g1_after = np.cumsum(g1[:, ::-1], axis=1)[:, ::-1]
    z_after = np.cumsum(z[:, ::-1], axis=1)[:, ::-1]
    g2_before = np.cumsum(g2, axis=1) - g2
    score = -(ratio + x * g1_after - z_after - x * g2_before)
    mean = np.sum(f * score, axis=1)
    var = np.sum(f * score * score, axis=1) - mean ** 2
    return np.maximum(var, 0.0) if m > 1 else np.zeros(f.shape[0])


@dataclass(frozen=True)
class AsymptoticReport:
    """Plug-in estimate, its variance along every available path, and a CI.

    Variances refer to ``sqrt(n) (Z_hat - Z)``; ``std_error`` is
    ``sqrt(sigma2_corrected / n)``.
    """

    estimate: float
    n: int
    level: float
    sigma2_literal: float
    sigma2_corrected: float
    sigma2_delta: float
    sigma2_if: float
    std_error: float
    ci_low: float
    ci_high: float


def variances(dist: DiscreteDistribution, step: float = 1e-6) -> dict:
    """All four variance estimates for ``dist``."""
    from .influence import influence_profile

    if dist.m == 1:
        return dict(literal=0.0, corrected=0.0, delta=0.0, influence=0.0)
    return dict(
        literal=asymptotic_variance(dist, "literal"),
        corrected=asymptotic_variance(dist, "corrected"),
        delta=delta_variance(dist, step),
        influence=influence_profile(dist).if_variance,
    )


def confidence_interval(counts: CountVector, support: Sequence[float],
                        level: float = 0.95) -> AsymptoticReport:
    """Normal-approximation interval for the Zenga index from observed counts.

    The interval is clamped to ``[0, 1]``. With fewer than two observed
    support points the variance is zero and the interval is the point itself.
    """
    if not 0 < level < 1:
        raise ValidationError(f"level {level!r} outside (0, 1)")
    dist = empirical_distribution(counts, support)
    z, _ = zenga_population(dist)
    v = variances(dist)
    n = counts.n
    se = float(np.sqrt(v["corrected"] / n))
    q = norm_ppf((1 + level) / 2)
    lo = max(0.0, z - q * se)
    hi = min(1.0, z + q * se)
    return AsymptoticReport(z, n, level, v["literal"], v["corrected"], v["delta"],
                            v["influence"], se, lo, hi)


def population_report(dist: DiscreteDistribution, n: Optional[int] = None,
                      level: float = 0.95) -> AsymptoticReport:
    """Report for a known law, optionally with an interval for sample size ``n``."""
    z, _ = zenga_population(dist)
    v = variances(dist)
    if n is None:
        return AsymptoticReport(z, 0, level, v["literal"], v["corrected"], v["delta"],
                                v["influence"], float("nan"), float("nan"), float("nan"))
    se = float(np.sqrt(v["corrected"] / n))
    q = norm_ppf((1 + level) / 2)
    return AsymptoticReport(z, n, level, v["literal"], v["corrected"], v["delta"],
                            v["influence"], se, max(0.0, z - q * se), min(1.0, z + q * se))
