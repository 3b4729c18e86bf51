"""Synthetic benchmark data.

Two designs with known signal columns:

* classification -- equicorrelated Gaussian predictors, the first ``signal``
  of which drive a Bernoulli response with logistic success probability;
* regression -- nine Gaussian predictors and
  ``y = 0.13*x1 - 0.5*x3 - 0.17*x7*x9 + noise``.

Columns are named ``x1 .. xp`` after the variable they hold, so names survive
column shuffling.  Generator metadata records 0-based signal positions.
All draws come from one ``numpy.random.Generator`` (PCG64) seeded by the config.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional, Tuple

import numpy as np

from .core import Dataset, Labels, Targets, validate_dataset
from .errors import InvalidConfig, InvalidCorrelation

# signal columns of the regression design, 0-based (x1, x3, x7, x9)
REGRESSION_SIGNAL = (0, 2, 6, 8)


def _check_rho(rho: float):
    if not 0.0 <= rho < 1.0:
        raise InvalidCorrelation(f"correlation must lie in [0, 1), got {rho}")


def _mvn(rng: np.random.Generator, n: int, p: int, rho: float) -> np.ndarray:
    cov = np.full((p, p), rho)
    np.fill_diagonal(cov, 1.0)
    chol = np.linalg.cholesky(cov)
    return rng.standard_normal((n, p)) @ chol.T


def sample_mvn_equicorrelated(n: int, p: int, rho: float, seed: int) -> np.ndarray:
    """n draws from N(0, S) with unit variances and every correlation equal to rho."""
    if n < 1 or p < 1:
        raise InvalidConfig(f"n and p must be positive, got n={n}, p={p}")
    _check_rho(rho)
    return _mvn(np.random.default_rng(seed), n, p, rho)


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


@dataclass(frozen=True)
class ClassifSimConfig:
    """Logistic-Bernoulli design.

    ``beta`` defaults to all ones over the signal columns; that default is a
    convenience, not a calibrated value.
    """

    n: int = 200
    p: int = 10
    signal: int = 5
    beta: Optional[Tuple[float, ...]] = None
    correlation: float = 0.0
    shuffle_columns: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.p < 1:
            raise InvalidConfig(f"n and p must be positive, got n={self.n}, p={self.p}")
        if not 0 <= self.signal <= self.p:
            raise InvalidConfig(f"signal must be in [0, p], got {self.signal}")
        beta = (1.0,) * self.signal if self.beta is None else tuple(float(b) for b in self.beta)
        if len(beta) != self.signal:
            raise InvalidConfig(f"beta has {len(beta)} entries for {self.signal} signal columns")
        object.__setattr__(self, "beta", beta)
        _check_rho(self.correlation)


@dataclass(frozen=True)
class RegressSimConfig:
    """Interaction regression design.

    Columns beyond the ninth (``p > 9``) are extra pure-noise predictors; they
    only exist to scale the design for timing runs.
    """

    n: int = 100
    p: int = 9
    noise_sd: float = 1.0
    correlation: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise InvalidConfig(f"n must be >= 2, got {self.n}")
        if self.p < 9:
            raise InvalidConfig(f"the regression design needs p >= 9, got {self.p}")
        if not self.noise_sd > 0:
            raise InvalidConfig(f"noise_sd must be positive, got {self.noise_sd}")
        _check_rho(self.correlation)


def _names(p):
    return [f"x{i + 1}" for i in range(p)]


def gen_classification(cfg: ClassifSimConfig) -> Dataset:
    rng = np.random.default_rng(cfg.seed)
    x = _mvn(rng, cfg.n, cfg.p, cfg.correlation)
    prob = sigmoid(x[:, : cfg.signal] @ np.asarray(cfg.beta, dtype=float))
    y = (rng.random(cfg.n) < prob).astype(int)
    # drawn last so the unshuffled output does not depend on the flag
    perm = rng.permutation(cfg.p)
    if not cfg.shuffle_columns:
        perm = np.arange(cfg.p)
    names = _names(cfg.p)
    position = np.argsort(perm)
    meta = {
        "generator": "classification",
        "seed": cfg.seed,
        "signal_names": names[: cfg.signal],
        "signal_indices": sorted(int(position[i]) for i in range(cfg.signal)),
        "permutation": [int(v) for v in perm],
        "config": asdict(cfg),
    }
    return validate_dataset(
        x[:, perm],
        [names[i] for i in perm],
        Labels.of([str(v) for v in y]),
        metadata=meta,
    )


def regression_mean(x) -> np.ndarray:
    """Noise-free regression response for rows of ``x`` (at least 9 columns)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    return 0.13 * x[:, 0] - 0.5 * x[:, 2] - 0.17 * x[:, 6] * x[:, 8]


def gen_regression(cfg: RegressSimConfig) -> Dataset:
    rng = np.random.default_rng(cfg.seed)
    x = _mvn(rng, cfg.n, cfg.p, cfg.correlation)
    y = regression_mean(x) + cfg.noise_sd * rng.standard_normal(cfg.n)
    names = _names(cfg.p)
    meta = {
        "generator": "regression",
        "seed": cfg.seed,
        "signal_names": [names[i] for i in REGRESSION_SIGNAL],
        "signal_indices": list(REGRESSION_SIGNAL),
        "permutation": list(range(cfg.p)),
        "config": asdict(cfg),
    }
    return validate_dataset(x, names, Targets.of(y), metadata=meta)
