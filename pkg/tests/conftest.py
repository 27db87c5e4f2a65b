import numpy as np
import pytest
from loguru import logger

from socshield.soc import build_soc


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def random_bytes(rng):
    def _draw(n: int) -> bytes:
        return rng.integers(0, 256, size=n, dtype=np.uint8).tobytes()

    return _draw


@pytest.fixture
def sim():
    return build_soc(seed=7)


@pytest.fixture(autouse=True)
def _quiet_logging():
    yield
    # CLI tests install stderr sinks bound to pytest's capture streams.
    logger.remove()
    logger.disable("socshield")
