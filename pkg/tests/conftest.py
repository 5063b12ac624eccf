import gc
from contextlib import suppress

import psutil
import pytest

from bbext.data_structures import SessionParams, ThresholdRegime
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


@pytest.fixture
def half_params():
    return SessionParams(n=7, t=3, l=512, k=128, regime=ThresholdRegime.HALF)


@pytest.fixture
def third_params():
    return SessionParams(n=7, t=2, l=512, k=128, regime=ThresholdRegime.THIRD_ASYNC)


@pytest.fixture(autouse=True, scope="session")
def cleanup_children():
    yield

    gc.collect()  # Call .__del__() for removed objects

    # sweeps with --workers leave ProcessPoolExecutor children behind if a test fails mid-run
    children = psutil.Process().children(recursive=True)
    if children:
        logger.info(f"Cleaning up {len(children)} leftover child processes")
        for child in children:
            with suppress(psutil.NoSuchProcess):
                child.terminate()
        psutil.wait_procs(children, timeout=1)
        for child in children:
            with suppress(psutil.NoSuchProcess):
                child.kill()
