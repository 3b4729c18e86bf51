"""Domain types shared by the rest of the package.

A :class:`Dataset` is an immutable dense feature matrix with named columns and
a response that is either class labels (:class:`Labels`) or real targets
(:class:`Targets`).  The selection result types and their JSON form live here
too, as does CSV ingestion.
"""

from __future__ import annotations

import csv
import enum
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .distance import DistanceMetric
from .errors import (
    CsvParseError,
    DimensionMismatch,
    DuplicateColumnName,
    DuplicateIndex,
    EmptyData,
    IndexOutOfRange,
    InvalidConfig,
    NonFiniteValue,
)


class Task(str, enum.Enum):
    CLASSIFICATION = "class"
    REGRESSION = "reg"

    @classmethod
    def parse(cls, value: Union[str, "Task"]) -> "Task":
        if isinstance(value, Task):
            return value
        aliases = {
            "class": cls.CLASSIFICATION,
            "classification": cls.CLASSIFICATION,
            "reg": cls.REGRESSION,
            "regression": cls.REGRESSION,
        }
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise InvalidConfig(f"unknown task {value!r}; use 'class' or 'reg'") from None

    @property
    def loss_name(self) -> str:
        return "accuracy" if self is Task.CLASSIFICATION else "mse"


def _frozen_array(values, dtype=float):
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Labels:
    """Class labels stored as strings.

    ``classes`` lists the distinct labels in first-appearance order (or in the
    order inherited from a parent dataset) and ``codes[i]`` is the position of
    ``values[i]`` in ``classes``.
    """

    values: Tuple[str, ...]
    classes: Tuple[str, ...]
    codes: np.ndarray

    @classmethod
    def of(cls, values: Sequence[Any], classes: Optional[Sequence[str]] = None) -> "Labels":
        values = tuple(str(v) for v in values)
        order: Dict[str, int] = {}
        for c in classes or ():
            order.setdefault(str(c), len(order))
        for v in values:
            order.setdefault(v, len(order))
        codes = _frozen_array([order[v] for v in values], dtype=np.int64)
        return cls(values, tuple(order), codes)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return isinstance(other, Labels) and self.values == other.values and self.classes == other.classes

    def __hash__(self):
        return hash((self.values, self.classes))

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def n_present(self) -> int:
        return len(set(self.values))

    def take(self, indices) -> "Labels":
        idx = np.asarray(indices, dtype=np.int64)
        return Labels(tuple(self.values[i] for i in idx), self.classes, _frozen_array(self.codes[idx], np.int64))


@dataclass(frozen=True, eq=False)
class Targets:
    """Real-valued regression targets."""

    values: np.ndarray

    @classmethod
    def of(cls, values: Sequence[float]) -> "Targets":
        return cls(_frozen_array(values, float).reshape(-1))

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return isinstance(other, Targets) and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    def take(self, indices) -> "Targets":
        return Targets(_frozen_array(self.values[np.asarray(indices, dtype=np.int64)]))


Response = Union[Labels, Targets]


@dataclass(frozen=True, eq=False)
class Dataset:
    """Validated n-by-p feature matrix with column names and a response.

    Build instances with :func:`validate_dataset`; the constructor does not
    check invariants.  ``metadata`` carries free-form provenance (generator
    seeds, signal columns) and is ignored by equality.
    """

    features: np.ndarray
    column_names: Tuple[str, ...]
    response: Response
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def p(self) -> int:
        return self.features.shape[1]

    @property
    def task(self) -> Task:
        return Task.CLASSIFICATION if isinstance(self.response, Labels) else Task.REGRESSION

    def __eq__(self, other):
        return (
            isinstance(other, Dataset)
            and self.column_names == other.column_names
            and np.array_equal(self.features, other.features)
            and self.response == other.response
        )

    def __hash__(self):
        return hash((self.column_names, self.features.tobytes(), self.response))

    def take_rows(self, indices) -> "Dataset":
        """Row subset; labels keep the parent's class coding."""
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(_frozen_array(self.features[idx]), self.column_names, self.response.take(idx), self.metadata)


def validate_dataset(features, column_names: Sequence[str], response: Response, metadata=None) -> Dataset:
    """Check every Dataset invariant and return a frozen Dataset."""
    x = np.asarray(features, dtype=float)
    if x.ndim != 2:
        raise DimensionMismatch(f"features must be a 2-d matrix, got shape {x.shape}")
    n, p = x.shape
    if n == 0 or p == 0:
        raise EmptyData(f"features must have at least one row and one column, got {x.shape}")
    names = tuple(str(c) for c in column_names)
    if len(names) != p:
        raise DimensionMismatch(f"{len(names)} column names for {p} columns")
    if len(set(names)) != p:
        dupes = sorted({c for c in names if names.count(c) > 1})
        raise DuplicateColumnName(f"duplicate column names: {dupes}")
    if not isinstance(response, (Labels, Targets)):
        raise TypeError("response must be Labels or Targets")
    if len(response) != n:
        raise DimensionMismatch(f"response has length {len(response)} but features have {n} rows")
    bad = np.argwhere(~np.isfinite(x))
    if bad.size:
        raise NonFiniteValue(int(bad[0, 0]), int(bad[0, 1]))
    if isinstance(response, Targets):
        bad_t = np.flatnonzero(~np.isfinite(response.values))
        if bad_t.size:
            raise NonFiniteValue(int(bad_t[0]))
    return Dataset(_frozen_array(x), names, response, dict(metadata or {}))


def select_columns(d: Dataset, indices: Sequence[int]) -> Dataset:
    """Restrict ``d`` to ``indices``, in that order."""
    idx = [int(i) for i in indices]
    if not idx:
        raise EmptyData("at least one column index is required")
    for i in idx:
        if not 0 <= i < d.p:
            raise IndexOutOfRange(f"column index {i} out of range for p={d.p}")
    if len(set(idx)) != len(idx):
        raise DuplicateIndex(f"duplicate column indices in {idx}")
    return Dataset(
        _frozen_array(d.features[:, idx]),
        tuple(d.column_names[i] for i in idx),
        d.response,
        d.metadata,
    )


@dataclass(frozen=True)
class KnnConfig:
    k: int
    metric: DistanceMetric = field(default_factory=DistanceMetric.euclidean)
    task: Task = Task.CLASSIFICATION
    # distance ties -> lower training row; vote ties -> lower class code
    tie_break: str = "smallest-index"

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 1:
            raise InvalidConfig(f"k must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "task", Task.parse(self.task))
        if self.tie_break != "smallest-index":
            raise InvalidConfig(f"unsupported tie-break policy {self.tie_break!r}")


# ---------------------------------------------------------------------------
# selection records


@dataclass(frozen=True)
class LevelRecord:
    level: int
    candidates: Tuple[Tuple[int, float], ...]
    chosen_variable: int
    chosen_loss: float
    cumulative_set: Tuple[int, ...]

    def to_dict(self, column_names=None) -> Dict[str, Any]:
        out = {
            "level": self.level,
            "candidates": [{"variable": j, "loss": loss} for j, loss in self.candidates],
            "chosen_variable": self.chosen_variable,
            "chosen_loss": self.chosen_loss,
            "cumulative_set": list(self.cumulative_set),
        }
        if column_names is not None:
            for cand in out["candidates"]:
                cand["name"] = column_names[cand["variable"]]
            out["chosen_name"] = column_names[self.chosen_variable]
        return out


@dataclass(frozen=True)
class SelectionTrace:
    levels: Tuple[LevelRecord, ...]
    evaluations: int
    loss: str

    def to_dict(self, column_names=None) -> Dict[str, Any]:
        return {
            "loss": self.loss,
            "evaluations": self.evaluations,
            "levels": [lv.to_dict(column_names) for lv in self.levels],
        }


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of a forward selection run.

    ``best_level`` is 1-based, so ``trace.levels[best_level - 1]`` holds the
    winning subset.  ``eval_loss`` is the loss on the evaluation rows when
    their response is known, else None.
    """

    selected_variables: Tuple[int, ...]
    best_level: int
    best_loss: float
    predictions: Tuple[Any, ...]
    trace: SelectionTrace
    column_names: Tuple[str, ...] = ()
    eval_loss: Optional[float] = None

    @property
    def selected_names(self) -> List[str]:
        return [self.column_names[i] for i in self.selected_variables]

    @property
    def evaluations(self) -> int:
        return self.trace.evaluations

    def to_dict(self) -> Dict[str, Any]:
        names = self.column_names or None
        return {
            "selected_variables": list(self.selected_variables),
            "selected_names": self.selected_names if names else None,
            "best_level": self.best_level,
            "best_loss": self.best_loss,
            "loss": self.trace.loss,
            "eval_loss": self.eval_loss,
            "evaluations": self.trace.evaluations,
            "predictions": list(self.predictions),
            "trace": self.trace.to_dict(names),
        }

    def to_json(self, **extra) -> str:
        payload = dict(extra)
        payload.update(self.to_dict())
        return json.dumps(payload, indent=2, sort_keys=False)


# ---------------------------------------------------------------------------
# CSV ingestion


def read_csv(path, response: Optional[str], task: Union[str, Task], require_response: bool = True):
    """Read a header-first CSV into ``(features, column_names, response)``.

    Every column except ``response`` must parse as a decimal real.  When
    ``require_response`` is false and the response column is absent, the
    third element is None.
    """
    task = Task.parse(task)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise CsvParseError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    body = [r for r in rows[1:] if any(cell.strip() for cell in r)]
    if not body:
        raise EmptyData(f"{path}: no data rows")
    if response is not None and response in header:
        resp_col = header.index(response)
    elif response is not None and require_response:
        raise CsvParseError(f"{path}: response column {response!r} not found in header")
    else:
        resp_col = None

    feat_cols = [i for i in range(len(header)) if i != resp_col]
    x = np.empty((len(body), len(feat_cols)))
    raw_resp = []
    for r, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise CsvParseError(f"{path}: row {r} has {len(row)} fields, header has {len(header)}", row=r)
        for out_c, c in enumerate(feat_cols):
            try:
                x[r - 2, out_c] = float(row[c])
            except ValueError:
                raise CsvParseError(
                    f"{path}: row {r}, column {header[c]!r}: cannot parse {row[c]!r} as a number",
                    row=r,
                    column=header[c],
                ) from None
        if resp_col is not None:
            raw_resp.append(row[resp_col].strip())

    names = [header[c] for c in feat_cols]
    if resp_col is None:
        return x, names, None
    if task is Task.CLASSIFICATION:
        return x, names, Labels.of(raw_resp)
    targets = []
    for r, cell in enumerate(raw_resp, start=2):
        try:
            targets.append(float(cell))
        except ValueError:
            raise CsvParseError(
                f"{path}: row {r}, column {response!r}: cannot parse {cell!r} as a number",
                row=r,
                column=response,
            ) from None
    return x, names, Targets.of(targets)


def load_dataset(path, response: str, task: Union[str, Task]) -> Dataset:
    x, names, resp = read_csv(path, response, task, require_response=True)
    return validate_dataset(x, names, resp, metadata={"source": str(path)})


def format_value(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_csv(path, header: Sequence[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])


def dataset_rows(d: Dataset, response_name: str = "y"):
    """Header and rows for writing ``d`` back out as CSV."""
    header = list(d.column_names) + [response_name]
    values = d.response.values
    rows = [list(d.features[i]) + [values[i]] for i in range(d.n)]
    return header, rows


def standardize(train_features, *others):
    """Z-score columns using the mean and sd of ``train_features``.

    Zero-variance columns are centred but not scaled.  Returns the
    transformed training matrix followed by each of ``others``.
    """
    train = np.asarray(train_features, dtype=float)
    mean = train.mean(axis=0)
    sd = train.std(axis=0)
    sd = np.where(sd > 0, sd, 1.0)
    out = [(train - mean) / sd]
    out.extend((np.asarray(o, dtype=float) - mean) / sd for o in others)
    return out if others else out[0]

