"""Greedy forward variable selection for kNN.

Starting from the empty subset, each level tries adding every not-yet-chosen
variable, refits kNN on the enlarged subset and scores it on held-out rows.
The best addition is kept and the next level starts from it, so p variables
cost p + (p-1) + ... + 1 model fits instead of 2**p - 1.  After all p levels
the level with the best held-out loss wins.

Losses are accuracy (maximised) for classification and mean squared error
(minimised) for regression.  All ties go to the smallest index: variable,
level, class code and k alike.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from .core import (
    Dataset,
    KnnConfig,
    Labels,
    LevelRecord,
    SelectionResult,
    SelectionTrace,
    Targets,
    Task,
)
from .errors import (
    EmptyInput,
    InvalidConfig,
    KTooLarge,
    LengthMismatch,
    ResponseMissing,
    SchemaMismatch,
    TaskMismatch,
    TooFewClasses,
    TooFewRows,
)
from .evaluation import accuracy, kfold, mse, split
from .knn import predict_arrays


@dataclass(frozen=True)
class ExternalTest:
    """Score candidates on caller-supplied labelled evaluation rows."""


@dataclass(frozen=True)
class InternalSplit:
    """Score candidates on a seeded holdout carved out of the training rows."""

    train_fraction: float = 0.7

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise InvalidConfig(f"train_fraction must be in (0, 1), got {self.train_fraction}")


@dataclass(frozen=True)
class SelectionConfig:
    knn: KnnConfig
    mode: Union[ExternalTest, InternalSplit] = field(default_factory=ExternalTest)
    rng_seed: int = 0


def evaluation_count(p: int) -> int:
    """Number of kNN fits forward selection performs over p variables."""
    if p < 1:
        raise InvalidConfig(f"p must be >= 1, got {p}")
    return p * (p + 1) // 2


def _rank_key(task: Task, loss: float, index: int):
    # sorts best loss first, then smallest index
    return (-loss if task is Task.CLASSIFICATION else loss, index)


def best_of(task: Task, scored):
    """``(index, loss)`` pair with the optimal loss, smallest index on ties."""
    return min(scored, key=lambda item: _rank_key(task, item[1], item[0]))


def _check_task(train: Dataset, task: Task):
    expected = Labels if task is Task.CLASSIFICATION else Targets
    if not isinstance(train.response, expected):
        raise TaskMismatch(f"task {task.value!r} needs a {expected.__name__} response")
    if task is Task.CLASSIFICATION and train.response.n_present < 2:
        raise TooFewClasses("classification needs at least two distinct labels in the training data")


class _Scorer:
    """Loss of a kNN fit on ``fit`` rows, scored against ``score`` rows."""

    def __init__(self, fit_x, fit_response, score_x, score_response, cfg: KnnConfig):
        self.fit_x = fit_x
        self.fit_response = fit_response
        self.score_x = score_x
        self.cfg = cfg
        if cfg.task is Task.CLASSIFICATION:
            lookup = {c: i for i, c in enumerate(fit_response.classes)}
            # labels unseen in training can never be predicted
            self.target = np.array([lookup.get(v, -1) for v in score_response.values], dtype=np.int64)
        else:
            self.target = np.asarray(score_response.values, dtype=float)
        self.calls = 0

    def __call__(self, columns: Sequence[int]) -> float:
        self.calls += 1
        cols = list(columns)
        pred = predict_arrays(
            self.fit_x[:, cols], self.fit_response, self.score_x[:, cols], self.cfg.k, self.cfg.metric, self.cfg.task
        )
        if self.cfg.task is Task.CLASSIFICATION:
            return float(np.mean(pred == self.target))
        diff = pred - self.target
        return float(np.mean(diff * diff))


def _eval_matrix(train: Dataset, eval_features, eval_response):
    if isinstance(eval_features, Dataset):
        if eval_features.column_names != train.column_names:
            raise SchemaMismatch(
                f"evaluation columns {list(eval_features.column_names)} differ from training columns "
                f"{list(train.column_names)}"
            )
        if eval_response is None:
            eval_response = eval_features.response
        eval_features = eval_features.features
    x = np.asarray(eval_features, dtype=float)
    if x.ndim != 2 or x.shape[1] != train.p:
        raise SchemaMismatch(f"evaluation features must have {train.p} columns, got shape {x.shape}")
    if eval_response is not None and len(eval_response) != x.shape[0]:
        raise LengthMismatch(f"evaluation response has {len(eval_response)} entries for {x.shape[0]} rows")
    return x, eval_response


def forward_select(
    train: Dataset,
    eval_features,
    eval_response=None,
    cfg: Optional[SelectionConfig] = None,
    *,
    reverse_candidates: bool = False,
) -> SelectionResult:
    """Run forward selection and predict the evaluation rows with the winning subset.

    ``eval_features`` is a matrix with the training column order, or a
    :class:`Dataset` (whose column names must match and whose response is used
    when ``eval_response`` is omitted).

    With :class:`ExternalTest` the candidates are fitted on all of ``train``
    and scored on the evaluation rows.  With :class:`InternalSplit` they are
    fitted and scored on a seeded split of ``train``; ``best_loss`` is then the
    internal holdout loss and the final predictions come from a refit on all of
    ``train`` restricted to the winning subset.

    ``reverse_candidates`` only changes the order in which candidates are
    evaluated inside a level; the result must not depend on it.
    """
    if cfg is None:
        raise InvalidConfig("a SelectionConfig is required")
    task = cfg.knn.task
    _check_task(train, task)
    x_eval, y_eval = _eval_matrix(train, eval_features, eval_response)

    if isinstance(cfg.mode, InternalSplit):
        plan = split(train.n, cfg.mode.train_fraction, cfg.rng_seed)
        fit, score = train.take_rows(plan.train_indices), train.take_rows(plan.test_indices)
        score_x, score_y = score.features, score.response
    elif isinstance(cfg.mode, ExternalTest):
        if y_eval is None:
            raise ResponseMissing("external-test mode needs the evaluation response")
        if x_eval.shape[0] == 0:
            raise EmptyInput("external-test mode needs at least one evaluation row")
        if task is Task.CLASSIFICATION and not isinstance(y_eval, Labels):
            y_eval = Labels.of(y_eval)
        elif task is Task.REGRESSION and not isinstance(y_eval, Targets):
            y_eval = Targets.of(y_eval)
        fit = train
        score_x, score_y = x_eval, y_eval
    else:
        raise InvalidConfig(f"unknown selection mode {cfg.mode!r}")

    if cfg.knn.k > fit.n:
        raise KTooLarge(f"k={cfg.knn.k} exceeds the {fit.n} rows used to fit candidates")

    scorer = _Scorer(fit.features, fit.response, score_x, score_y, cfg.knn)
    levels: List[LevelRecord] = []
    chosen: List[int] = []
    bag = list(range(train.p))
    for level in range(1, train.p + 1):
        order = reversed(bag) if reverse_candidates else bag
        losses = {j: scorer(chosen + [j]) for j in order}
        candidates = tuple(sorted(losses.items()))
        j_star, loss_star = best_of(task, candidates)
        chosen.append(j_star)
        bag.remove(j_star)
        levels.append(LevelRecord(level, candidates, j_star, loss_star, tuple(chosen)))

    trace = SelectionTrace(tuple(levels), scorer.calls, task.loss_name)
    best_level, best_loss = best_of(task, [(lv.level, lv.chosen_loss) for lv in levels])
    selected = levels[best_level - 1].cumulative_set

    cols = list(selected)
    if x_eval.shape[0]:
        pred = predict_arrays(
            train.features[:, cols], train.response, x_eval[:, cols], cfg.knn.k, cfg.knn.metric, task
        )
    else:
        pred = np.empty(0)
    if task is Task.CLASSIFICATION:
        predictions = tuple(train.response.classes[c] for c in pred)
    else:
        predictions = tuple(float(v) for v in pred)

    eval_loss = None
    if y_eval is not None and len(predictions):
        eval_loss = loss_of(task, predictions, y_eval)

    return SelectionResult(
        selected_variables=selected,
        best_level=best_level,
        best_loss=best_loss,
        predictions=predictions,
        trace=trace,
        column_names=train.column_names,
        eval_loss=eval_loss,
    )


def loss_of(task: Task, predictions, actual) -> float:
    values = actual.values if isinstance(actual, (Labels, Targets)) else actual
    if task is Task.CLASSIFICATION:
        return accuracy(list(predictions), [str(v) for v in values])
    return mse(predictions, values)


def fit_and_score(train: Dataset, eval_x, eval_response, knn: KnnConfig, columns=None) -> float:
    """Loss of plain kNN on the given columns (all of them by default)."""
    cols = list(range(train.p)) if columns is None else list(columns)
    scorer = _Scorer(train.features, train.response, np.asarray(eval_x, dtype=float), eval_response, knn)
    return scorer(cols)


def k_fold_losses(
    train: Dataset, k_candidates: Sequence[int], folds: int, cfg: KnnConfig, rng_seed: int
) -> Dict[int, float]:
    """Mean fold loss for each candidate k, all variables included."""
    if folds < 2:
        raise InvalidConfig(f"folds must be >= 2, got {folds}")
    if not k_candidates:
        raise InvalidConfig("no candidate k values")
    if train.n < folds:
        raise TooFewRows(f"{train.n} rows cannot be split into {folds} folds")
    _check_task(train, cfg.task)
    blocks = kfold(train.n, folds, rng_seed)
    smallest_fit = train.n - max(len(b) for b in blocks)
    for k in k_candidates:
        if k < 1:
            raise InvalidConfig(f"k must be positive, got {k}")
        if k > smallest_fit:
            raise KTooLarge(f"k={k} exceeds the smallest training fold ({smallest_fit} rows)")

    everything = np.arange(train.n)
    parts = []
    for block in blocks:
        held = train.take_rows(block)
        rest = train.take_rows(np.setdiff1d(everything, block))
        parts.append((rest, held))

    out: Dict[int, float] = {}
    for k in dict.fromkeys(int(k) for k in k_candidates):
        knn = KnnConfig(k, cfg.metric, cfg.task)
        fold_losses = [fit_and_score(rest, held.features, held.response, knn) for rest, held in parts]
        out[k] = float(np.mean(fold_losses))
    return out


def cross_validate_k(
    train: Dataset, k_candidates: Sequence[int], folds: int, cfg: KnnConfig, rng_seed: int
) -> int:
    """Candidate k with the best mean fold loss; smallest k on ties."""
    losses = k_fold_losses(train, k_candidates, folds, cfg, rng_seed)
    return best_of(cfg.task, list(losses.items()))[0]
