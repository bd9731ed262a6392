"""
Influence of each support point
===============================

Put a small mass ``eps`` on one support point and renormalise. The change in
the index divided by ``eps`` approaches the influence function, with error
roughly proportional to ``eps``.
"""
import numpy as np

import zenga

d = zenga.ten_point_income()
prof = zenga.influence_profile(d)

print("  k        x        IF(x)   eps=1e-4 err  eps=1e-6 err")
for k in range(1, d.m + 1):
    exact = prof.if_values[k - 1]
    e4 = abs(zenga.numeric_influence(d, k, 1e-4) - exact)
    e6 = abs(zenga.numeric_influence(d, k, 1e-6) - exact)
    print(f"{k:3d} {d.values[k - 1]:10.0f} {exact:+.6f}   {e4:.2e}     {e6:.2e}")

print("sum p * IF =", float(np.dot(d.probs, prof.if_values)))
print("E[IF^2]    =", prof.if_variance)
print("H'Sigma H  =", zenga.asymptotic_variance(d))
