"""Replication experiments and running-time benchmarks.

``run_experiment`` repeats split -> (optional k tuning) -> forward selection
for seeds ``base_seed + 1 .. base_seed + R`` and records, per replicate, the
test loss of the selected subset, the test loss of plain kNN on every
variable, and which variables were selected.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core import Dataset, KnnConfig, Task
from .distance import DistanceMetric
from .errors import InvalidConfig
from .evaluation import replicate_stats, split
from .selection import (
    ExternalTest,
    InternalSplit,
    SelectionConfig,
    cross_validate_k,
    evaluation_count,
    fit_and_score,
    forward_select,
)
from .simgen import ClassifSimConfig, RegressSimConfig, gen_classification, gen_regression


@dataclass(frozen=True)
class ExperimentConfig:
    """One replication study.

    Exactly one data source is used: ``data`` (a fixed Dataset, re-split each
    replicate) or ``generator`` ("class" or "reg", regenerated each replicate
    from the replicate seed with ``gen_options`` as extra config fields).

    ``mode="internal"`` selects variables on a holdout inside the training
    part, so the reported test loss is untouched by selection.
    ``mode="external"`` scores candidates directly on the test part.
    """

    replications: int = 50
    generator: Optional[str] = None
    gen_options: Dict[str, Any] = field(default_factory=dict)
    data: Optional[Dataset] = None
    train_fraction: float = 0.7
    k: int = 5
    cv_k: Tuple[int, ...] = ()
    folds: int = 5
    metric: DistanceMetric = field(default_factory=DistanceMetric.euclidean)
    task: Task = Task.CLASSIFICATION
    base_seed: int = 0
    mode: str = "internal"
    internal_fraction: float = 0.7

    def __post_init__(self):
        if self.replications < 1:
            raise InvalidConfig(f"replications must be >= 1, got {self.replications}")
        if (self.generator is None) == (self.data is None):
            raise InvalidConfig("give exactly one of a generator or a dataset")
        if self.generator is not None and self.generator not in ("class", "reg"):
            raise InvalidConfig(f"unknown generator {self.generator!r}")
        if self.mode not in ("internal", "external"):
            raise InvalidConfig(f"mode must be 'internal' or 'external', got {self.mode!r}")
        object.__setattr__(self, "task", Task.parse(self.task))
        object.__setattr__(self, "cv_k", tuple(int(k) for k in self.cv_k))


@dataclass
class ExperimentResult:
    variables: List[str]
    signal: List[str]
    rows: List[Dict[str, Any]]
    failure: Optional[str] = None

    @property
    def header(self) -> List[str]:
        return [
            "replicate", "seed", "status", "k", "loss", "full_loss", "selection_loss",
            "best_level", "selected",
        ] + [f"sel_{v}" for v in self.variables]

    def table(self) -> List[List[Any]]:
        out = [[row.get(h, "") for h in self.header] for row in self.rows]
        if self.failure is not None:
            out.append([len(self.rows) + 1, "", f"failed: {self.failure}"] + [""] * (len(self.header) - 3))
        return out

    def frequencies(self) -> Dict[str, float]:
        if not self.rows:
            return {v: 0.0 for v in self.variables}
        return {v: float(np.mean([row[f"sel_{v}"] for row in self.rows])) for v in self.variables}

    def loss_stats(self, column: str = "loss") -> Dict[str, float]:
        return replicate_stats([row[column] for row in self.rows])

    def summary_table(self) -> Tuple[List[str], List[List[Any]]]:
        header = ["variable", "signal", "frequency"]
        freq = self.frequencies()
        rows = [[v, int(v in self.signal), freq[v]] for v in self.variables]
        return header, rows


def _replicate_data(cfg: ExperimentConfig, seed: int) -> Dataset:
    if cfg.data is not None:
        return cfg.data
    if cfg.generator == "class":
        return gen_classification(ClassifSimConfig(seed=seed, **cfg.gen_options))
    return gen_regression(RegressSimConfig(seed=seed, **cfg.gen_options))


def _canonical(cfg: ExperimentConfig) -> Tuple[List[str], List[str]]:
    d = _replicate_data(cfg, cfg.base_seed)
    if cfg.data is not None:
        return list(d.column_names), []
    return [f"x{i + 1}" for i in range(d.p)], list(d.metadata["signal_names"])


def run_replicate(cfg: ExperimentConfig, replicate: int) -> Dict[str, Any]:
    seed = cfg.base_seed + replicate
    d = _replicate_data(cfg, seed)
    plan = split(d.n, cfg.train_fraction, seed)
    train, test = d.take_rows(plan.train_indices), d.take_rows(plan.test_indices)
    base = KnnConfig(cfg.k, cfg.metric, cfg.task)
    k = cross_validate_k(train, cfg.cv_k, cfg.folds, base, seed) if cfg.cv_k else cfg.k
    knn = KnnConfig(k, cfg.metric, cfg.task)
    mode = InternalSplit(cfg.internal_fraction) if cfg.mode == "internal" else ExternalTest()
    result = forward_select(train, test, None, SelectionConfig(knn, mode, seed))
    chosen = set(result.selected_names)
    row = {
        "replicate": replicate,
        "seed": seed,
        "status": "ok",
        "k": k,
        "loss": result.eval_loss,
        "full_loss": fit_and_score(train, test.features, test.response, knn),
        "selection_loss": result.best_loss,
        "best_level": result.best_level,
        "selected": ";".join(result.selected_names),
    }
    for name in d.column_names:
        row[f"sel_{name}"] = int(name in chosen)
    return row


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run every replicate in order; stops at the first failing replicate."""
    variables, signal = _canonical(cfg)
    out = ExperimentResult(variables, signal, [])
    for r in range(1, cfg.replications + 1):
        try:
            out.rows.append(run_replicate(cfg, r))
        except Exception as exc:  # recorded as a failure row by the caller
            out.failure = f"{type(exc).__name__}: {exc}"
            break
    return out


def run_benchmark(
    n: int,
    p_list: Sequence[int],
    task="class",
    k: int = 5,
    seed: int = 0,
    metric: Optional[DistanceMetric] = None,
    repeats: int = 1,
    train_fraction: float = 0.7,
) -> List[Dict[str, Any]]:
    """Time one forward selection per p; reports the fastest of ``repeats`` runs."""
    task = Task.parse(task)
    metric = metric or DistanceMetric.euclidean()
    knn = KnnConfig(k, metric, task)
    rows = []
    for p in p_list:
        if task is Task.CLASSIFICATION:
            d = gen_classification(ClassifSimConfig(n=n, p=p, signal=min(5, p), seed=seed))
        else:
            d = gen_regression(RegressSimConfig(n=n, p=p, seed=seed))
        plan = split(d.n, train_fraction, seed)
        train, test = d.take_rows(plan.train_indices), d.take_rows(plan.test_indices)
        best = float("inf")
        evaluations = 0
        for _ in range(max(1, repeats)):
            start = time.perf_counter()
            result = forward_select(train, test, None, SelectionConfig(knn, ExternalTest(), seed))
            best = min(best, time.perf_counter() - start)
            evaluations = result.evaluations
        assert evaluations == evaluation_count(p)
        rows.append({"n": n, "p": p, "evaluations": evaluations, "seconds": best})
    return rows
