"""k-nearest-neighbor prediction with greedy forward variable selection."""

from .core import (
    Dataset,
    KnnConfig,
    Labels,
    LevelRecord,
    SelectionResult,
    SelectionTrace,
    Targets,
    Task,
    load_dataset,
    select_columns,
    validate_dataset,
)
from .distance import DistanceMetric, distance, pairwise
from .evaluation import SplitPlan, accuracy, mse, replicate_stats, split
from .knn import NeighborSet, class_probabilities, classify, find_neighbors, predict_batch, predict_regression
from .selection import (
    ExternalTest,
    InternalSplit,
    SelectionConfig,
    cross_validate_k,
    evaluation_count,
    forward_select,
)
from .simgen import (
    ClassifSimConfig,
    RegressSimConfig,
    gen_classification,
    gen_regression,
    sample_mvn_equicorrelated,
)

__version__ = "0.1.0"
