"""Bundled example laws."""

import numpy as np

from .distribution import DiscreteDistribution


def ten_point_income() -> DiscreteDistribution:
    """Ten-point yearly income law in XOF, equally spaced by 8,970,000."""
    values = 4_515_000 + 8_970_000 * np.arange(10)
    probs = [0.05, 0.05, 0.05, 0.05, 0.1, 0.1, 0.2, 0.2, 0.1, 0.1]
    return DiscreteDistribution(values, probs)
