import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from knnselect import Labels, Targets, validate_dataset  # noqa: E402


def make_class_data(n, p, n_classes, seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, p))
    labels = [f"c{v}" for v in rng.integers(0, n_classes, size=n)]
    # guarantee at least two classes are present
    labels[0], labels[1] = "c0", "c1"
    return validate_dataset(x, [f"v{j}" for j in range(p)], Labels.of(labels))


def make_reg_data(n, p, seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, p))
    return validate_dataset(x, [f"v{j}" for j in range(p)], Targets.of(rng.normal(size=n)))


@pytest.fixture
def toy_separable():
    """x0 equals the class code, x1 is independent noise."""
    rng = np.random.default_rng(7)
    codes = np.array([0, 1] * 20)
    x = np.column_stack([codes.astype(float), rng.normal(size=codes.size) * 5])
    train = validate_dataset(x[:30], ["x0", "x1"], Labels.of([str(c) for c in codes[:30]]))
    test = validate_dataset(x[30:], ["x0", "x1"], Labels.of([str(c) for c in codes[30:]]))
    return train, test
