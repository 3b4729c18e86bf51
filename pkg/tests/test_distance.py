import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from knnselect import DistanceMetric, distance, pairwise
from knnselect.errors import InvalidOrder, LengthMismatch, NonBinaryInput

E = DistanceMetric.euclidean()
M = DistanceMetric.manhattan()
J = DistanceMetric.jaccard()


@pytest.mark.parametrize(
    "metric, a, b, expected",
    [
        (E, (0, 0), (3, 4), 5.0),
        (M, (1, 2), (4, 6), 7.0),
        (DistanceMetric.minkowski(2), (0, 0), (3, 4), 5.0),
        (J, (1, 0, 1), (1, 0, 1), 0.0),
        (J, (1, 0), (0, 1), 1.0),
        (J, (0, 0, 0), (0, 0, 0), 0.0),
        # |a|^2 = 2, |b|^2 = 2, a.b = 1 -> 1 - 1/3
        (J, (1, 1, 0), (0, 1, 1), 2.0 / 3.0),
    ],
)
def test_known_values(metric, a, b, expected):
    assert distance(metric, a, b) == pytest.approx(expected, rel=1e-15)


def test_errors():
    with pytest.raises(LengthMismatch):
        distance(E, [1, 2], [1, 2, 3])
    with pytest.raises(NonBinaryInput):
        distance(J, [1, 0.5], [1, 0])
    with pytest.raises(InvalidOrder):
        DistanceMetric.minkowski(0.5)
    with pytest.raises(InvalidOrder):
        DistanceMetric.minkowski(float("inf"))


@pytest.mark.parametrize(
    "text, metric",
    [
        ("euclidean", E),
        ("Manhattan", M),
        ("minkowski:3", DistanceMetric.minkowski(3)),
        ("jaccard", J),
    ],
)
def test_parse(text, metric):
    assert DistanceMetric.parse(text) == metric


def test_parse_rejects_bare_minkowski():
    with pytest.raises(InvalidOrder):
        DistanceMetric.parse("minkowski")


def test_minkowski_large_order_does_not_overflow():
    a = np.array([1e200, 0.0])
    b = np.array([-1e200, 0.0])
    assert distance(DistanceMetric.minkowski(8), a, b) == pytest.approx(2e200, rel=1e-12)


# magnitudes below 1e-100 would underflow the plain Euclidean sum of squares
coords = st.floats(-1e3, 1e3).filter(lambda v: v == 0 or abs(v) > 1e-100)
vectors = st.integers(1, 8).flatmap(lambda q: st.tuples(*[arrays(float, q, elements=coords) for _ in range(3)]))
METRICS = [E, M] + [DistanceMetric.minkowski(p) for p in (1, 1.5, 2, 3)]


@settings(max_examples=200, deadline=None)
@given(vectors, st.sampled_from(METRICS))
def test_metric_axioms(abc, metric):
    a, b, c = abc
    assert distance(metric, a, a) == 0.0
    assert distance(metric, a, b) == distance(metric, b, a)
    ab, bc, ac = distance(metric, a, b), distance(metric, b, c), distance(metric, a, c)
    assert ac <= (ab + bc) * (1 + 1e-9) + 1e-12


@settings(max_examples=100, deadline=None)
@given(vectors)
def test_minkowski_reduces_to_l1_l2(abc):
    a, b, _ = abc
    assert distance(DistanceMetric.minkowski(1), a, b) == pytest.approx(distance(M, a, b), rel=1e-12, abs=1e-300)
    assert distance(DistanceMetric.minkowski(2), a, b) == pytest.approx(distance(E, a, b), rel=1e-12, abs=1e-300)


@settings(max_examples=100, deadline=None)
@given(vectors, st.floats(-1e3, 1e3), st.sampled_from(METRICS))
def test_shared_coordinate_changes_nothing(abc, v, metric):
    a, b, _ = abc
    before = distance(metric, a, b)
    after = distance(metric, np.append(a, v), np.append(b, v))
    assert after == pytest.approx(before, rel=1e-12, abs=1e-300)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10).flatmap(lambda q: st.tuples(*[arrays(np.int8, q, elements=st.integers(0, 1))] * 2)))
def test_jaccard_identity_and_symmetry(ab):
    a, b = ab
    assert distance(J, a, a) == 0.0
    assert distance(J, a, b) == distance(J, b, a)
    assert 0.0 <= distance(J, a, b) <= 1.0


def test_pairwise_matches_scalar():
    rng = np.random.default_rng(3)
    q, r = rng.normal(size=(7, 4)), rng.normal(size=(11, 4))
    for metric in METRICS:
        mat = pairwise(metric, q, r)
        for i in range(7):
            for j in range(11):
                assert mat[i, j] == distance(metric, q[i], r[j])
