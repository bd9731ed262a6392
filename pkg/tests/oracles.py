"""Slow, independent reference implementations used only by the tests."""

from fractions import Fraction


def zenga_naive(values, probs):
    """Direct double loop over cuts; works with Fractions for exact results."""
    m = len(values)
    total = 0
    for j in range(m - 1):
        low_mass = sum(probs[: j + 1])
        up_mass = sum(probs[j + 1:])
        low = sum(p * x for p, x in zip(probs[: j + 1], values[: j + 1])) / low_mass
        up = sum(p * x for p, x in zip(probs[j + 1:], values[j + 1:])) / up_mass
        total += probs[j] * low / up
    return 1 - total


def gini_from_sample(sample):
    """Gini of an explicit list of incomes, by mean absolute difference over all pairs."""
    n = len(sample)
    mean = Fraction(sum(sample), n) if all(isinstance(s, int) for s in sample) else sum(sample) / n
    mad = sum(abs(a - b) for a in sample for b in sample)
    return mad / (n * n) / (2 * mean)


def expand(counts, support):
    out = []
    for c, x in zip(counts, support):
        out.extend([x] * c)
    return out
