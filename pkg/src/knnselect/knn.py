"""k-nearest-neighbor prediction by exhaustive scan.

Neighbors are the k training rows closest to the query; rows at equal
distance are ordered by training row index, so the k-th place always goes to
the lower index.  Classification takes the class with the largest vote
fraction (lowest class code on ties); regression averages the neighbors'
targets without weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .core import Dataset, KnnConfig, Labels, Targets, Task
from .distance import DistanceMetric, pairwise
from .errors import KTooLarge, LengthMismatch, TaskMismatch


@dataclass(frozen=True)
class NeighborSet:
    indices: Tuple[int, ...]
    distances: Tuple[float, ...]

    def __len__(self):
        return len(self.indices)


def neighbor_indices(train_x: np.ndarray, queries: np.ndarray, k: int, metric: DistanceMetric):
    """Indices (m, k) and distances (m, k) of each query's k nearest rows."""
    n = train_x.shape[0]
    if k > n:
        raise KTooLarge(f"k={k} exceeds the {n} available training rows")
    dist = pairwise(metric, queries, train_x)
    order = np.argsort(dist, axis=1, kind="stable")[:, :k]
    return order, np.take_along_axis(dist, order, axis=1)


def vote_counts(codes: np.ndarray, n_classes: int) -> np.ndarray:
    """Per-class neighbor counts, shape (m, n_classes), from (m, k) codes."""
    return (codes[:, :, None] == np.arange(n_classes)).sum(axis=1)


def predict_arrays(train_x, train_response, queries, k: int, metric: DistanceMetric, task: Task):
    """Vectorised predictions on raw arrays.

    Classification returns integer class codes; regression returns means.
    """
    order, _ = neighbor_indices(train_x, queries, k, metric)
    if task is Task.CLASSIFICATION:
        counts = vote_counts(train_response.codes[order], train_response.n_classes)
        return np.argmax(counts, axis=1)
    return np.mean(train_response.values[order], axis=1)


def _check_query(train: Dataset, query) -> np.ndarray:
    q = np.asarray(query, dtype=float)
    if q.ndim != 1 or q.shape[0] != train.p:
        raise LengthMismatch(f"query must be a vector of length {train.p}, got shape {q.shape}")
    return q


def _check_task(train: Dataset, cfg: KnnConfig, task: Task):
    if cfg.task is not task:
        raise TaskMismatch(f"config task is {cfg.task.value!r} but a {task.value!r} prediction was requested")
    expected = Labels if task is Task.CLASSIFICATION else Targets
    if not isinstance(train.response, expected):
        raise TaskMismatch(f"{task.value!r} prediction needs a {expected.__name__} response")


def find_neighbors(train: Dataset, query, k: int, metric: DistanceMetric = None) -> NeighborSet:
    metric = metric or DistanceMetric.euclidean()
    q = _check_query(train, query)
    order, dist = neighbor_indices(train.features, q[None, :], k, metric)
    return NeighborSet(tuple(int(i) for i in order[0]), tuple(float(d) for d in dist[0]))


def class_probabilities(train: Dataset, query, cfg: KnnConfig) -> np.ndarray:
    """Vote fraction of each class among the k neighbors, indexed by class code."""
    _check_task(train, cfg, Task.CLASSIFICATION)
    q = _check_query(train, query)
    order, _ = neighbor_indices(train.features, q[None, :], cfg.k, cfg.metric)
    counts = vote_counts(train.response.codes[order], train.response.n_classes)[0]
    return counts / cfg.k


def classify(train: Dataset, query, cfg: KnnConfig) -> str:
    probs = class_probabilities(train, query, cfg)
    return train.response.classes[int(np.argmax(probs))]


def predict_regression(train: Dataset, query, cfg: KnnConfig) -> float:
    _check_task(train, cfg, Task.REGRESSION)
    q = _check_query(train, query)
    order, _ = neighbor_indices(train.features, q[None, :], cfg.k, cfg.metric)
    return float(np.mean(train.response.values[order[0]]))


def predict_batch(train: Dataset, queries, cfg: KnnConfig) -> List:
    """Predict every row of ``queries``; labels for classification, floats for regression."""
    _check_task(train, cfg, cfg.task)
    q = np.asarray(queries, dtype=float)
    if q.size == 0:
        return []
    if q.ndim != 2 or q.shape[1] != train.p:
        raise LengthMismatch(f"queries must have {train.p} columns, got shape {q.shape}")
    out = predict_arrays(train.features, train.response, q, cfg.k, cfg.metric, cfg.task)
    if cfg.task is Task.CLASSIFICATION:
        return [train.response.classes[c] for c in out]
    return [float(v) for v in out]
