import random

import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20230817,
                     help="seed for the randomized property suites")


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))
