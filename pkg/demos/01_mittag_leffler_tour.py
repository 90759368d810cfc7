"""Mittag-Leffler laws: three samplers, one density.

Draw from the three sampling routes and compare each against the
analytic distribution function.  Then show how the density tail
approaches its power law as x grows, which happens slowly when delta
is close to 1.
"""

import math

import numpy as np

from linnikmix import mittag_leffler as ml, stattest
from linnikmix.elementary import RngState, stream_for

n = 50_000
for delta in (0.3, 0.6, 0.9):
    print(f"delta = {delta}")
    for method in ml.ML_METHODS:
        x = ml.sample_ml(delta, n, RngState(3, stream_for(f"demo-{delta}-{method}")), method)
        d, p = stattest.ks_one_sample(x, lambda t: ml.ml_cdf(delta, t))
        print(f"  {method:15s} KS {d:.4f}  p {p:.3f}  median {np.median(x):.3f}")

print("\ntail density divided by its leading power law")
print("x        " + "  ".join(f"delta={d:<4}" for d in (0.5, 0.7, 0.9)))
for x in (10.0, 50.0, 500.0, 5000.0):
    row = [ml.ml_pdf(d, x) * math.pi * x ** (d + 1) / (math.sin(d * math.pi) * math.gamma(d + 1))
           for d in (0.5, 0.7, 0.9)]
    print(f"{x:<8g} " + "  ".join(f"{r:10.4f}" for r in row))
