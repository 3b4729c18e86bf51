"""Losses, seeded train/test splits and replicate summaries.

Row shuffles use SplitMix64 with an unbiased bounded draw and a descending
Fisher-Yates pass, so a (n, seed) pair gives the same permutation on any
platform and is easy to port:

    state  <- seed mod 2**64
    next() : state += 0x9E3779B97F4A7C15
             z = state
             z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
             z = (z ^ (z >> 27)) * 0x94D049BB133111EB
             return z ^ (z >> 31)                      (all mod 2**64)
    below(m): draw r = next() until r < 2**64 - (2**64 mod m); return r mod m
    shuffle : for i = n-1 down to 1: swap(a[i], a[below(i + 1)])
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import DegenerateSplit, EmptyInput, LengthMismatch

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        """Uniform integer in [0, m)."""
        if m <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % m


def permutation(n: int, seed: int) -> List[int]:
    rng = SplitMix64(seed)
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class SplitPlan:
    train_indices: Tuple[int, ...]
    test_indices: Tuple[int, ...]
    seed: int
    train_fraction: float


def split(n: int, train_fraction: float, seed: int) -> SplitPlan:
    """Shuffle 0..n-1 and cut after round(train_fraction * n) entries.

    Both halves are returned in ascending row order so downstream distance
    ties still resolve by original row index.
    """
    if n < 2:
        raise DegenerateSplit(f"need at least 2 rows to split, got {n}")
    if not 0.0 < train_fraction < 1.0:
        raise DegenerateSplit(f"train_fraction must be in (0, 1), got {train_fraction}")
    n_train = round_half_up(train_fraction * n)
    if n_train == 0 or n_train == n:
        raise DegenerateSplit(f"train_fraction={train_fraction} on n={n} leaves an empty partition")
    perm = permutation(n, seed)
    return SplitPlan(tuple(sorted(perm[:n_train])), tuple(sorted(perm[n_train:])), int(seed), float(train_fraction))


def kfold(n: int, folds: int, seed: int) -> List[Tuple[int, ...]]:
    """Seeded shuffle, then contiguous blocks (sizes differ by at most one)."""
    perm = permutation(n, seed)
    return [tuple(sorted(int(i) for i in block)) for block in np.array_split(np.array(perm, dtype=np.int64), folds)]


def _check_pair(predicted, actual):
    if len(predicted) != len(actual):
        raise LengthMismatch(f"predicted has {len(predicted)} entries, actual has {len(actual)}")
    if len(predicted) == 0:
        raise EmptyInput("loss of an empty prediction list is undefined")


def accuracy(predicted: Sequence, actual: Sequence) -> float:
    _check_pair(predicted, actual)
    hits = sum(1 for a, b in zip(predicted, actual) if a == b)
    return hits / len(actual)


def mse(predicted: Sequence[float], actual: Sequence[float]) -> float:
    _check_pair(predicted, actual)
    diff = np.asarray(predicted, dtype=float) - np.asarray(actual, dtype=float)
    return float(np.mean(diff * diff))


def replicate_stats(losses: Sequence[float]) -> Dict[str, float]:
    """Mean, sample sd (ddof=1; 0 for a single value), min, quartiles, max."""
    x = np.asarray(losses, dtype=float)
    if x.size == 0:
        raise EmptyInput("no losses to summarise")
    q1, med, q3 = np.percentile(x, [25, 50, 75])
    return {
        "n": int(x.size),
        "mean": float(np.mean(x)),
        "sd": 0.0 if np.all(x == x[0]) else float(np.std(x, ddof=1)),
        "min": float(np.min(x)),
        "q1": float(q1),
        "median": float(med),
        "q3": float(q3),
        "max": float(np.max(x)),
    }
