from typing import Dict, List

from bbext.checks import accumulator, coding, complexity, oracles, protocols, star
from bbext.checks.base import PropertyResult, Suite, scaled
from bbext.errors import ConfigurationError

SUITES: Dict[str, Suite] = {
    "coding": coding.run_suite,
    "accumulator": accumulator.run_suite,
    "star": star.run_suite,
    "oracles": oracles.run_suite,
    "protocols-sync": protocols.run_sync_suite,
    "protocols-async": protocols.run_async_suite,
    "complexity": complexity.run_suite,
}


def run_suite(name: str, scale: float = 1.0, seed: int = 0) -> List[PropertyResult]:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ConfigurationError(f"unknown suite {name!r}, expected one of {sorted(SUITES)}") from None
    return suite(scale, seed)
