import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from knnselect import accuracy, mse, replicate_stats, split
from knnselect.errors import DegenerateSplit, EmptyInput, LengthMismatch
from knnselect.evaluation import SplitMix64, kfold, permutation


def test_accuracy_values():
    assert accuracy(list("aba"), list("abb")) == pytest.approx(2 / 3)
    assert accuracy(list("abc"), list("abc")) == 1.0
    assert accuracy(list("ab"), list("ba")) == 0.0


def test_mse_values():
    assert mse([1, 2], [1, 2]) == 0.0
    assert mse([0, 0], [3, 4]) == 12.5


def test_mse_against_two_pass_sum():
    rng = np.random.default_rng(4)
    a, b = rng.normal(size=100), rng.normal(size=100)
    expected = math.fsum((x - y) ** 2 for x, y in zip(a.tolist(), b.tolist())) / 100
    assert mse(a, b) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("fn", [accuracy, mse])
def test_loss_errors(fn):
    with pytest.raises(LengthMismatch):
        fn([1, 2], [1])
    with pytest.raises(EmptyInput):
        fn([], [])


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1), st.randoms())
def test_losses_are_permutation_invariant(pairs, rnd):
    shuffled = list(pairs)
    rnd.shuffle(shuffled)
    p, a = zip(*pairs)
    ps, as_ = zip(*shuffled)
    assert accuracy(p, a) == accuracy(ps, as_)
    assert mse(p, a) == pytest.approx(mse(ps, as_), rel=1e-12)
    assert accuracy(p, p) == 1.0 and mse(p, p) == 0.0


def test_splitmix_reference_stream():
    # first outputs for seed 0 of the published SplitMix64 reference
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


def test_permutation_is_a_permutation():
    assert sorted(permutation(50, 123)) == list(range(50))


def test_split_sizes_and_cover():
    plan = split(10, 0.7, 42)
    assert len(plan.train_indices) == 7 and len(plan.test_indices) == 3
    assert sorted(plan.train_indices + plan.test_indices) == list(range(10))
    assert split(10, 0.7, 42) == plan


def test_split_rounds_half_up():
    assert len(split(5, 0.5, 0).train_indices) == 3
    assert len(split(7, 0.7, 0).train_indices) == 5


def test_split_errors():
    with pytest.raises(DegenerateSplit):
        split(1, 0.5, 0)
    with pytest.raises(DegenerateSplit):
        split(10, 0.99, 0)
    with pytest.raises(DegenerateSplit):
        split(10, 1.0, 0)


def test_split_seeds_differ():
    plans = {split(30, 0.7, s).test_indices for s in range(10)}
    assert len(plans) == 10


def test_split_uniformity():
    counts = np.zeros(10)
    for seed in range(1000):
        for i in split(10, 0.7, seed).test_indices:
            counts[i] += 1
    sigma = math.sqrt(1000 * 0.3 * 0.7)
    assert np.all(np.abs(counts - 300) <= 4 * sigma)


def test_kfold_blocks():
    blocks = kfold(11, 3, 5)
    assert sorted(i for b in blocks for i in b) == list(range(11))
    assert sorted(len(b) for b in blocks) == [3, 4, 4]


def test_replicate_stats_small():
    s = replicate_stats([1, 2, 3])
    assert (s["mean"], s["median"], s["min"], s["max"]) == (2, 2, 1, 3)
    assert replicate_stats([0.1] * 7)["sd"] == 0.0
    with pytest.raises(EmptyInput):
        replicate_stats([])


def test_replicate_stats_against_sort_oracle():
    x = np.random.default_rng(8).uniform(size=50).tolist()
    s = replicate_stats(x)
    ordered = sorted(x)
    for key, q in (("q1", 25), ("median", 50), ("q3", 75)):
        assert s[key] == pytest.approx(oracles.percentile(ordered, q), rel=1e-12)
    mean = math.fsum(x) / 50
    assert s["mean"] == pytest.approx(mean, rel=1e-12)
    assert s["sd"] == pytest.approx(math.sqrt(math.fsum((v - mean) ** 2 for v in x) / 49), rel=1e-12)
