import random

import pytest
from hypothesis import HealthCheck, settings

from taylorlam.laws import random_lambda, random_resource, random_rigid

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

OMEGA = r"(\x. x x) (\x. x x)"


@pytest.fixture
def rng():
    return random.Random(1234)


def lambda_terms(n, size=8, seed=0):
    rng = random.Random(seed)
    return [random_lambda(rng, rng.randint(1, size)) for _ in range(n)]


def rigid_terms(n, size=14, seed=0):
    rng = random.Random(seed)
    return [random_rigid(rng, size) for _ in range(n)]


def resource_terms(n, size=14, seed=0):
    rng = random.Random(seed)
    return [random_resource(rng, size) for _ in range(n)]


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
