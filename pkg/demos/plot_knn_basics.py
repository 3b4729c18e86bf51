"""
Nearest-neighbor prediction
===========================

Build a small labelled dataset, then classify and regress on query points.
Class codes follow the order in which labels first appear, and a tied vote
goes to the class seen first.
"""

import numpy as np

from knnselect import KnnConfig, Labels, Targets, class_probabilities, classify, find_neighbors
from knnselect import predict_batch, predict_regression, validate_dataset

x = np.array([[0.0, 0.0], [0.2, 0.1], [1.0, 1.0], [1.1, 0.9], [0.9, 1.2]])
names = ["height", "width"]
train = validate_dataset(x, names, Labels.of(["small", "small", "big", "big", "big"]))

query = [0.3, 0.2]
print(find_neighbors(train, query, 3))
print(class_probabilities(train, query, KnnConfig(3)))
print(classify(train, query, KnnConfig(3)))

###############################################################################
# With k = 2 and one neighbor of each class the vote is tied, so the
# first-seen class wins.

tie = validate_dataset(np.array([[0.0], [2.0]]), ["x"], Labels.of(["left", "right"]))
print(classify(tie, [1.0], KnnConfig(2)))

###############################################################################
# Regression averages the responses of the k nearest rows.

reg = validate_dataset(x, names, Targets.of([1.0, 2.0, 10.0, 11.0, 12.0]))
cfg = KnnConfig(2, task="reg")
print(predict_regression(reg, query, cfg))
print(predict_batch(reg, [[0.0, 0.1], [1.0, 1.1]], cfg))
