"""
Ranking grouped income data
===========================

Region B spreads the same mean income more evenly across four classes than
region A, which bunches it in the middle. Both indices rank B as more unequal,
but the Zenga index separates the two more sharply than Gini does.
"""
from pathlib import Path

import zenga
from zenga.io import parse_frequency_csv

data = Path(__file__).parent / "data"
for name in ("region_a", "region_b", "ten_point_classes"):
    with open(data / f"{name}.csv") as fh:
        table = parse_frequency_csv(fh)
    support, counts = zenga.from_frequency_table(table)
    z, _ = zenga.zenga_empirical(counts, support)
    g = zenga.gini_empirical(counts, support)
    ci = zenga.confidence_interval(counts, support)
    print(f"{name:18s} n={counts.n:5d}  Zenga {z:.4f} [{ci.ci_low:.4f}, {ci.ci_high:.4f}]  Gini {g:.4f}")
