"""Discrete Zenga inequality index: estimation, asymptotics and influence."""

from .asymptotics import (AsymptoticReport, ScoreSet, asymptotic_variance,
                          confidence_interval, delta_variance, score_set, sigma_matrix)
from .datasets import ten_point_income
from .distribution import (CountVector, DiscreteDistribution, FrequencyRow, FrequencyTable,
                           ValidationError, empirical_distribution, from_frequency_table,
                           partial_means, truncated_means)
from .indices import (ZengaDecomposition, gini_empirical, gini_population, zenga_empirical,
                      zenga_population)
from .influence import InfluenceProfile, influence_function, influence_profile, numeric_influence
from .montecarlo import StudyConfig, StudyReport, run_study, sample_counts, standardize

__version__ = "0.1.0"
