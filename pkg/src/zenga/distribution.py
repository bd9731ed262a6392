"""Finite discrete income laws, sample counts and grouped frequency tables.

Indices ``j`` and ``k`` used by the public functions are 1-based, so that
``j`` runs over the cut points ``1 .. m-1`` of an ``m``-point support.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

PROB_SUM_TOL = 1e-12


class ValidationError(ValueError):
    """Raised when inputs violate the invariants of a distribution or table."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def tail_sums(a: np.ndarray) -> np.ndarray:
    """Return ``out[j] = sum(a[j+1:])`` along the last axis."""
    rev = np.cumsum(a[..., ::-1], axis=-1)[..., ::-1]
    out = np.zeros_like(rev)
    out[..., :-1] = rev[..., 1:]
    return out


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Law of an income variable with finitely many support points.

    Parameters
    ----------
    values : array-like
        Strictly increasing, non-negative support points ``x_1 < ... < x_m``.
        The largest one must be positive.
    probs : array-like
        Positive masses summing to one (absolute tolerance ``1e-12``). Masses
        within tolerance are renormalized; anything else is rejected.
    """

    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        x = np.array(self.values, dtype=float).ravel()
        p = np.array(self.probs, dtype=float).ravel()
        if x.size == 0:
            raise ValidationError("distribution needs at least one support point")
        if x.size != p.size:
            raise ValidationError(
                f"values and probs differ in length ({x.size} != {p.size})")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(p))):
            raise ValidationError("values and probs must be finite")
        if np.any(x < 0):
            raise ValidationError("values must be non-negative")
        if x[-1] <= 0:
            raise ValidationError("the largest value must be positive")
        if np.any(np.diff(x) <= 0):
            raise ValidationError("values must be strictly increasing")
        if np.any(p <= 0):
            raise ValidationError("probs must all be positive")
        total = p.sum()
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValidationError(f"probs sum to {total!r}, not 1")
        p = p / total
        object.__setattr__(self, "values", _readonly(x))
        object.__setattr__(self, "probs", _readonly(p))

    @property
    def m(self) -> int:
        return self.values.size

    @property
    def mean(self) -> float:
        return float(np.dot(self.probs, self.values))

    @property
    def cumprobs(self) -> np.ndarray:
        """Cumulative masses ``p_j* = p_1 + ... + p_j``."""
        return np.cumsum(self.probs)

    @property
    def upper_probs(self) -> np.ndarray:
        """Tail masses ``p_{j+1} + ... + p_m`` (computed without cancellation)."""
        return tail_sums(self.probs)

    def cdf(self, s) -> np.ndarray | float:
        """Right-continuous step cdf ``F(s) = P(X <= s)``."""
        idx = np.searchsorted(self.values, s, side="right")
        cum = np.concatenate([[0.0], self.cumprobs])
        out = cum[idx]
        return float(out) if np.ndim(out) == 0 else out

    def scaled(self, c: float) -> "DiscreteDistribution":
        return DiscreteDistribution(c * self.values, self.probs)

    def __repr__(self):
        return f"DiscreteDistribution(values={self.values.tolist()}, probs={self.probs.tolist()})"


@dataclass(frozen=True, eq=False)
class CountVector:
    """Per-support-point sample counts ``n_1, ..., n_m``."""

    counts: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.counts)
        if raw.ndim != 1 or raw.size == 0:
            raise ValidationError("counts must be a non-empty 1-d sequence")
        c = raw.astype(np.int64)
        if not np.array_equal(c, raw):
            raise ValidationError("counts must be integers")
        if np.any(c < 0):
            raise ValidationError("counts must be non-negative")
        if c.sum() < 1:
            raise ValidationError("all counts are zero")
        object.__setattr__(self, "counts", _readonly(c))

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def freqs(self) -> np.ndarray:
        return self.counts / self.n

    @property
    def cumcounts(self) -> np.ndarray:
        return np.cumsum(self.counts)

    @property
    def cumfreqs(self) -> np.ndarray:
        return self.cumcounts / self.n

    def ecdf(self, support: Sequence[float], s) -> np.ndarray | float:
        support = np.asarray(support, dtype=float)
        if support.size != self.counts.size:
            raise ValidationError("support and counts differ in length")
        idx = np.searchsorted(support, s, side="right")
        cum = np.concatenate([[0.0], self.cumfreqs])
        out = cum[idx]
        return float(out) if np.ndim(out) == 0 else out

    def __len__(self):
        return self.counts.size


@dataclass(frozen=True)
class FrequencyRow:
    class_lower: float
    class_upper: float
    count: int
    representative: Optional[float] = None


@dataclass(frozen=True)
class FrequencyTable:
    """Grouped data: class intervals ``(lower, upper]`` with counts."""

    rows: tuple = field(default_factory=tuple)

    def __post_init__(self):
        rows = tuple(r if isinstance(r, FrequencyRow) else FrequencyRow(*r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValidationError("frequency table has no rows")
        for i, r in enumerate(rows, start=1):
            if not r.class_lower < r.class_upper:
                raise ValidationError(
                    f"row {i}: class_lower {r.class_lower!r} is not below class_upper {r.class_upper!r}")
            if r.count < 0:
                raise ValidationError(f"row {i}: negative count {r.count}")
            if i > 1 and r.class_lower < rows[i - 2].class_upper:
                raise ValidationError(
                    f"row {i}: class ({r.class_lower}, {r.class_upper}] overlaps or precedes row {i - 1}")
        if all(r.count == 0 for r in rows):
            raise ValidationError("all counts are zero")

    @property
    def has_representatives(self) -> bool:
        return all(r.representative is not None for r in self.rows)

    def __len__(self):
        return len(self.rows)


def from_frequency_table(table: FrequencyTable, rule: str = "midpoint"):
    """Turn grouped data into ``(support, CountVector)``.

    Each class is represented by a single point: its midpoint, or the
    ``representative`` column when ``rule="custom"``. Classes with a zero
    count are dropped.
    """
    if rule not in ("midpoint", "custom"):
        raise ValidationError(f"unknown representative rule {rule!r}")
    support, counts = [], []
    for i, r in enumerate(table.rows, start=1):
        if rule == "custom":
            if r.representative is None:
                raise ValidationError(f"row {i}: custom rule needs a representative value")
            point = float(r.representative)
        else:
            point = (r.class_lower + r.class_upper) / 2
        if r.count == 0:
            continue
        support.append(point)
        counts.append(r.count)
    support = np.array(support)
    if np.any(np.diff(support) <= 0):
        raise ValidationError("representative points are not strictly increasing")
    return support, CountVector(counts)


def to_frequency_table(support: Sequence[float], counts: CountVector,
                       bounds: Optional[Iterable[float]] = None) -> FrequencyTable:
    """Emit ``(support, counts)`` as a table carrying a representative column.

    Without explicit ``bounds`` the class edges are placed halfway between
    consecutive support points (the outer edges mirror the first and last gap).
    """
    x = np.asarray(support, dtype=float)
    if bounds is None:
        if x.size == 1:
            gap = max(abs(x[0]), 1.0)
            edges = np.array([x[0] - gap / 2, x[0] + gap / 2])
        else:
            mids = (x[:-1] + x[1:]) / 2
            edges = np.concatenate([[x[0] - (mids[0] - x[0])], mids, [x[-1] + (x[-1] - mids[-1])]])
    else:
        edges = np.asarray(list(bounds), dtype=float)
    rows = [FrequencyRow(float(edges[i]), float(edges[i + 1]), int(c), float(x[i]))
            for i, c in enumerate(counts.counts)]
    return FrequencyTable(tuple(rows))


def empirical_distribution(counts: CountVector, support: Sequence[float]) -> DiscreteDistribution:
    """Distribution with masses ``n_j / n`` on the observed support points."""
    x = np.asarray(support, dtype=float)
    if x.size != counts.counts.size:
        raise ValidationError("support and counts differ in length")
    keep = counts.counts > 0
    return DiscreteDistribution(x[keep], counts.counts[keep] / counts.n)


def _check_cut(dist: DiscreteDistribution, j: int):
    if not 1 <= j <= dist.m - 1:
        raise ValidationError(f"cut index j={j} outside 1..{dist.m - 1}")


def partial_means(dist: DiscreteDistribution, j: int) -> tuple[float, float]:
    """Unnormalized partial means ``(sum_{h<=j} p_h x_h, sum_{h>j} p_h x_h)``."""
    _check_cut(dist, j)
    px = dist.probs * dist.values
    return float(px[:j].sum()), float(px[j:].sum())


def truncated_means(dist: DiscreteDistribution, s: float) -> tuple[float, float]:
    """Conditional means ``E[X | X <= s]`` and ``E[X | X > s]``.

    Requires ``x_1 <= s < x_m`` so that neither side is empty.
    """
    x, p = dist.values, dist.probs
    if s < x[0]:
        raise ValidationError(f"threshold {s!r} is below the smallest support point")
    if s >= x[-1]:
        raise ValidationError(f"threshold {s!r} leaves no mass above it")
    below = x <= s
    r1 = np.dot(p[below], x[below]) / p[below].sum()
    r2 = np.dot(p[~below], x[~below]) / p[~below].sum()
    return float(r1), float(r2)
