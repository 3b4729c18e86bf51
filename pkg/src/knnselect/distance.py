"""Pairwise distances between feature vectors.

Four metrics are supported: Euclidean (l2), Manhattan (l1), Minkowski (lp,
p >= 1) and Jaccard/Tanimoto for binary vectors.  :func:`distance` works on a
single pair; :func:`pairwise` computes a full query-by-reference matrix with the
same formulas and is what the neighbor search uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidOrder, LengthMismatch, NonBinaryInput

EUCLIDEAN = "euclidean"
MANHATTAN = "manhattan"
MINKOWSKI = "minkowski"
JACCARD = "jaccard"

_KINDS = (EUCLIDEAN, MANHATTAN, MINKOWSKI, JACCARD)

# Upper bound on the number of float64 elements in one broadcast block.
_BLOCK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class DistanceMetric:
    """Which distance formula to use.

    ``order`` is only meaningful for Minkowski and must be a finite real >= 1.
    """

    kind: str = EUCLIDEAN
    order: Optional[float] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown metric {self.kind!r}; expected one of {_KINDS}")
        if self.kind == MINKOWSKI:
            if self.order is None:
                raise InvalidOrder("Minkowski metric needs an order p")
            order = float(self.order)
            if not math.isfinite(order) or order < 1.0:
                raise InvalidOrder(f"Minkowski order must be finite and >= 1, got {self.order}")
            object.__setattr__(self, "order", order)
        elif self.order is not None:
            raise InvalidOrder(f"metric {self.kind!r} takes no order")

    @classmethod
    def euclidean(cls) -> "DistanceMetric":
        return cls(EUCLIDEAN)

    @classmethod
    def manhattan(cls) -> "DistanceMetric":
        return cls(MANHATTAN)

    @classmethod
    def minkowski(cls, p: float) -> "DistanceMetric":
        return cls(MINKOWSKI, p)

    @classmethod
    def jaccard(cls) -> "DistanceMetric":
        return cls(JACCARD)

    @classmethod
    def parse(cls, text: str) -> "DistanceMetric":
        """Parse ``euclidean``, ``manhattan``, ``jaccard`` or ``minkowski:<p>``."""
        text = text.strip().lower()
        if text.startswith(MINKOWSKI):
            _, sep, order = text.partition(":")
            if not sep or not order:
                raise InvalidOrder("Minkowski metric must be written as minkowski:<p>")
            try:
                value = float(order)
            except ValueError:
                raise InvalidOrder(f"cannot parse Minkowski order {order!r}") from None
            return cls(MINKOWSKI, value)
        if text not in (EUCLIDEAN, MANHATTAN, JACCARD):
            raise ValueError(f"unknown metric {text!r}")
        return cls(text)

    def __str__(self):
        if self.kind == MINKOWSKI:
            return f"{MINKOWSKI}:{self.order:g}"
        return self.kind


def _check_binary(x, name):
    if not np.all((x == 0) | (x == 1)):
        raise NonBinaryInput(f"Jaccard distance needs binary vectors; {name} has non-0/1 entries")


def distance(metric: DistanceMetric, a, b) -> float:
    """Distance between two vectors of equal length.

    >>> distance(DistanceMetric.euclidean(), [0, 0], [3, 4])
    5.0
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or b.ndim != 1 or a.shape != b.shape or a.size == 0:
        raise LengthMismatch(f"vectors must be 1-d with equal nonzero length, got {a.shape} and {b.shape}")
    return float(pairwise(metric, a[None, :], b[None, :])[0, 0])


def pairwise(metric: DistanceMetric, queries, reference) -> np.ndarray:
    """Distance matrix of shape (n_queries, n_reference)."""
    queries = np.asarray(queries, dtype=float)
    reference = np.asarray(reference, dtype=float)
    if queries.ndim != 2 or reference.ndim != 2 or queries.shape[1] != reference.shape[1]:
        raise LengthMismatch(
            f"queries and reference need the same number of columns, got {queries.shape} and {reference.shape}"
        )
    if metric.kind == JACCARD:
        _check_binary(queries, "query")
        _check_binary(reference, "reference")
        return _jaccard(queries, reference)

    m, q = queries.shape
    n = reference.shape[0]
    out = np.empty((m, n))
    if m == 0 or n == 0:
        return out
    step = max(1, _BLOCK_ELEMENTS // max(1, n * q))
    for start in range(0, m, step):
        stop = min(m, start + step)
        diff = np.abs(queries[start:stop, None, :] - reference[None, :, :])
        out[start:stop] = _reduce(metric, diff)
    return out


def _reduce(metric, diff):
    # diff holds |a_l - b_l| along the last axis
    if metric.kind == EUCLIDEAN:
        return np.sqrt(np.sum(diff * diff, axis=-1))
    if metric.kind == MANHATTAN:
        return np.sum(diff, axis=-1)
    p = metric.order
    # factor out the largest coordinate gap so diff**p cannot overflow
    scale = np.max(diff, axis=-1, keepdims=True)
    safe = np.where(scale > 0, scale, 1.0)
    total = np.sum((diff / safe) ** p, axis=-1)
    return scale[..., 0] * total ** (1.0 / p)


def _jaccard(queries, reference):
    dot = queries @ reference.T
    sq_q = np.sum(queries * queries, axis=1)[:, None]
    sq_r = np.sum(reference * reference, axis=1)[None, :]
    union = sq_q + sq_r - dot
    with np.errstate(invalid="ignore", divide="ignore"):
        dist = 1.0 - dot / union
    # two all-zero vectors are identical
    return np.where(union > 0, dist, 0.0)
