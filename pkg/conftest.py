import random

import pytest


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption('--seed', type=int, default=0, help='seed for the randomized property tests')


@pytest.fixture
def seed(request: pytest.FixtureRequest) -> int:
    return request.config.getoption('--seed')


@pytest.fixture
def rng(seed: int) -> random.Random:
    return random.Random(seed)


# I guess makes sense by default: tests shouldn't read or write the user's ball cache
@pytest.fixture(autouse=True)
def default_config():
    from mzv.core.core_config import _reset_config

    with _reset_config() as cc:
        yield cc


# results must not depend on what an earlier test evaluated
@pytest.fixture(autouse=True)
def fresh_caches():
    from mzv.numeval.series import clear_caches

    clear_caches()
    yield
    clear_caches()
