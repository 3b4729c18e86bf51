"""
Greedy forward selection
========================

At every level the selector tries each unused variable alongside the ones
already chosen, keeps the best, and finally returns the level with the best
score. With p variables this costs p(p+1)/2 model fits instead of 2^p - 1.
"""

import json

import numpy as np

from knnselect import InternalSplit, KnnConfig, Labels, SelectionConfig
from knnselect import evaluation_count, forward_select, split, validate_dataset

rng = np.random.default_rng(1)
n = 150
signal = rng.normal(size=(n, 2))
noise = rng.normal(size=(n, 4)) * 3
x = np.hstack([noise[:, :2], signal, noise[:, 2:]])
labels = np.where(signal.sum(axis=1) > 0, "pos", "neg")
data = validate_dataset(x, [f"v{j}" for j in range(6)], Labels.of(labels.tolist()))

plan = split(data.n, 0.7, seed=3)
train, test = data.take_rows(plan.train_indices), data.take_rows(plan.test_indices)

result = forward_select(train, test, None, SelectionConfig(KnnConfig(5)))
for level in result.trace.levels:
    chosen = train.column_names[level.chosen_variable]
    print(f"level {level.level}: add {chosen:>3}  accuracy {level.chosen_loss:.3f}")
print("selected:", result.selected_names, "at level", result.best_level)
print("fits:", result.evaluations, "=", evaluation_count(6))

###############################################################################
# When the test labels are not known, score the levels on a split of the
# training rows instead. The final model is refit on all training rows.

internal = SelectionConfig(KnnConfig(5), InternalSplit(0.7), rng_seed=3)
blind = forward_select(train, test.features, None, internal)
print("selected:", blind.selected_names, "holdout accuracy", round(blind.best_loss, 3))

###############################################################################
# The full record serializes to JSON.

print(sorted(json.loads(result.to_json(k=5))))
