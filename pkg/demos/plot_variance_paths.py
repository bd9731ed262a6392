"""
Four ways to get the asymptotic variance
========================================

The variance of ``sqrt(n) * (Z_hat - Z)`` can be read off the score vector
``H`` (two versions), a numerical delta method, or the variance of the
influence function. Three of them agree. The ``literal`` score scales the
lower-mean term by the squared cumulative probability and overshoots badly.
"""
import zenga
from zenga.asymptotics import variances

d = zenga.ten_point_income()
z, _ = zenga.zenga_population(d)
print(f"Z = {z:.6f} on {d.m} support points")

v = variances(d)
for name, value in v.items():
    print(f"{name:>10}: {value:.10g}")

print("corrected / delta - 1:", v["corrected"] / v["delta"] - 1)
print("literal / corrected:  ", v["literal"] / v["corrected"])

# Finite-difference step size barely matters for the delta method.
for step in (1e-4, 1e-6, 1e-8):
    print(f"step {step:g}: {zenga.delta_variance(d, step):.12f}")

# A 95% interval for a sample of 1000 drawn at exactly the population shares.
counts = zenga.CountVector((1000 * d.probs).round().astype(int))
ci = zenga.confidence_interval(counts, d.values)
print(f"estimate {ci.estimate:.4f}, se {ci.std_error:.4f}, CI [{ci.ci_low:.4f}, {ci.ci_high:.4f}]")
