"""
Zenga index on a two-point income law
=====================================

Half the population earns 1, the other half earns 3. Everything here can be
checked by hand: the index is 5/6, Gini is 1/4 and the asymptotic variance of
``sqrt(n) * (Z_hat - Z)`` is 1/36.
"""
import numpy as np

import zenga

d = zenga.DiscreteDistribution([1, 3], [0.5, 0.5])
z, dec = zenga.zenga_population(d)
print("Zenga:", z)
print("Gini: ", zenga.gini_population(d))

# One cut point. Lower mean 1, upper mean 3, so the point ratio is 1/3.
print("ratio at j=1:", dec.ratio[0], "curve:", dec.curve[0])

prof = zenga.influence_profile(d)
print("influence:", prof.if_values)
print("variance from IF:", prof.if_variance, "expected", 1 / 36)

# A sample of 12 units drawn as 6 ones and 6 threes gives the same plug-in value.
z_hat, _ = zenga.zenga_empirical(zenga.CountVector([6, 6]), d.values)
print("plug-in on (6, 6):", z_hat)

# Scaling incomes does not move any of these numbers.
assert np.isclose(zenga.zenga_population(d.scaled(1e6))[0], z)
