import math

import pytest

from bbext.complexity import (
    dissemination_slope,
    dolev_strong_bits,
    eps_share_bits,
    extension_overhead_bound,
    fit_linear,
    package_bits,
    share_bits,
    sync_half_ba_bits,
)
from bbext.data_structures import SessionParams, ThresholdRegime


def test_fit_linear():
    slope, intercept, r2 = fit_linear([1, 2, 3, 4], [5, 7, 9, 11])
    assert slope == pytest.approx(2.0)
    assert intercept == pytest.approx(3.0)
    assert r2 == pytest.approx(1.0)
    with pytest.raises(ValueError):
        fit_linear([1], [1])


def test_share_and_package_bits():
    params = SessionParams(n=10, t=4, l=6 * 16 * 100 - 64, k=256, regime=ThresholdRegime.HALF)
    assert share_bits(params) == 1600
    assert package_bits(params) == 1600 + 256 * 4 + 16


def test_sync_half_ba_model_is_linear_in_l():
    def params(l):
        return SessionParams(n=10, t=4, l=l, k=256, regime=ThresholdRegime.HALF)

    small, large = params(1 << 14), params(1 << 18)
    slope = (sync_half_ba_bits(large) - sync_half_ba_bits(small)) / (large.l - small.l)
    assert slope == pytest.approx(dissemination_slope(small), rel=0.01)
    assert sync_half_ba_bits(small) - slope * small.l <= extension_overhead_bound(small)


def test_dolev_strong_model():
    params = SessionParams(n=4, t=3, l=64, k=128, regime=ThresholdRegime.ONE_MINUS_EPS, epsilon=0.25)
    assert dolev_strong_bits(params, 64) == (64 + 128) * 16 + 64


@pytest.mark.parametrize("epsilon", [1 / 2, 1 / 4, 1 / 6])
def test_eps_share_bits(epsilon):
    assert eps_share_bits(1 << 18, 12, epsilon) == math.ceil((1 << 18) / (epsilon * 12))
