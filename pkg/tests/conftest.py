import numpy as np
import pytest

from zenga import DiscreteDistribution, ten_point_income


@pytest.fixture
def twopoint():
    return DiscreteDistribution([1, 3], [0.5, 0.5])


@pytest.fixture
def threepoint():
    return DiscreteDistribution([1, 2, 3], [1 / 3, 1 / 3, 1 / 3])


@pytest.fixture
def tenpoint():
    return ten_point_income()


def random_distributions(count, seed=20240611, m_range=(2, 12)):
    """Random laws: m uniform in m_range, sorted positive values, flat-Dirichlet masses."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        values = np.sort(rng.uniform(0.5, 100.0, m))
        while np.any(np.diff(values) <= 0):
            values = np.sort(rng.uniform(0.5, 100.0, m))
        probs = rng.dirichlet(np.ones(m))
        probs = probs / probs.sum()
        out.append(DiscreteDistribution(values, probs))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.VERDICTS:
            terminalreporter.write_line(line)
