"""
Distance metrics
================

Four metrics are available. Each one is a small frozen value that can be
parsed from the same text the command line accepts.
"""

import numpy as np

from knnselect import DistanceMetric, distance, pairwise

a = np.array([0.0, 0.0, 1.0])
b = np.array([3.0, 4.0, 1.0])

for text in ["euclidean", "manhattan", "minkowski:1.5", "minkowski:3"]:
    metric = DistanceMetric.parse(text)
    print(f"{str(metric):>14}  d(a, b) = {distance(metric, a, b):.4f}")

###############################################################################
# Minkowski with order 1 or 2 is the same as Manhattan or Euclidean.

print(distance(DistanceMetric.minkowski(2), a, b), distance(DistanceMetric.euclidean(), a, b))

###############################################################################
# The Jaccard/Tanimoto distance only accepts 0/1 vectors. Two all-zero
# vectors are at distance 0.

jac = DistanceMetric.jaccard()
print(distance(jac, [1, 1, 0], [0, 1, 1]))  # 1 - 1/3
print(distance(jac, [0, 0, 0], [0, 0, 0]))

###############################################################################
# ``pairwise`` builds the full query-by-reference matrix in one call.

rng = np.random.default_rng(0)
queries, reference = rng.normal(size=(3, 2)), rng.normal(size=(4, 2))
print(pairwise(DistanceMetric.manhattan(), queries, reference).round(3))
