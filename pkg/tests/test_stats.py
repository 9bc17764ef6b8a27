import math
import random

import pytest
from scipy import stats as scipy_stats

from itermol.errors import LengthMismatchError
from itermol.stats import average_ranks, spearman


def test_perfectly_monotone():
    rho, p = spearman([1, 2, 3, 4, 5], [10, 20, 30, 40, 50])
    assert rho == 1.0
    assert p == 0.0


def test_anti_monotone():
    rho, p = spearman([1, 2, 3, 4], [4, 3, 2, 1])
    assert rho == -1.0
    assert p == 0.0


def test_hand_example():
    # d^2 = 1 for each pair; rho = 1 - 6*4 / (4*15) = 0.6
    rho, _ = spearman([1, 2, 3, 4], [2, 1, 4, 3])
    assert rho == pytest.approx(0.6, abs=1e-12)


def test_average_ranks_with_ties():
    assert average_ranks([10, 20, 20, 30]) == [1.0, 2.5, 2.5, 4.0]


def test_length_mismatch():
    with pytest.raises(LengthMismatchError):
        spearman([1, 2, 3], [1, 2])


def test_too_short():
    with pytest.raises(ValueError):
        spearman([1, 2], [2, 1])


def test_constant_series_yields_nan():
    rho, p = spearman([1, 1, 1], [1, 2, 3])
    assert math.isnan(rho) and math.isnan(p)


def test_matches_scipy_without_ties():
    rng = random.Random(17)
    for _ in range(50):
        n = rng.randint(5, 40)
        xs = rng.sample(range(1000), n)
        ys = rng.sample(range(1000), n)
        rho, p = spearman(xs, ys)
        expected = scipy_stats.spearmanr(xs, ys)
        assert rho == pytest.approx(expected.statistic, abs=1e-12)
        assert p == pytest.approx(expected.pvalue, abs=1e-9)


def test_matches_scipy_with_ties():
    rng = random.Random(23)
    for _ in range(50):
        n = rng.randint(5, 30)
        xs = [rng.randint(0, 8) for _ in range(n)]
        ys = [rng.randint(0, 8) for _ in range(n)]
        if len(set(xs)) < 2 or len(set(ys)) < 2:
            continue
        rho, p = spearman(xs, ys)
        expected = scipy_stats.spearmanr(xs, ys)
        assert rho == pytest.approx(expected.statistic, abs=1e-12)
        if abs(rho) < 1.0:
            assert p == pytest.approx(expected.pvalue, abs=1e-9)
