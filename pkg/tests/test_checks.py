import pytest

from bbext.checks import SUITES, PropertyResult, run_suite, scaled
from bbext.errors import ConfigurationError


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suite_passes_at_small_scale(suite):
    results = run_suite(suite, scale=0.01, seed=1)
    assert results
    for result in results:
        assert result.trials > 0, result.name
        assert result.ok, (result.name, result.details)


def test_unknown_suite():
    with pytest.raises(ConfigurationError):
        run_suite("no-such-suite")


def test_property_result_keeps_the_first_details():
    result = PropertyResult("always fails")
    for i in range(10):
        result.record(False, f"trial {i}")
    result.record(True)
    assert (result.trials, result.failures) == (11, 10)
    assert result.details == [f"trial {i}" for i in range(5)]
    assert result.to_dict()["ok"] is False


def test_scaled():
    assert scaled(100, 0.01) == 1
    assert scaled(100, 0.001) == 1
    assert scaled(100, 0.5) == 50
    assert scaled(3, 0.0, minimum=2) == 2
