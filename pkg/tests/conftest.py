import os

import pytest

from hopfpartial.scenarios import run_scenario


def _jobs():
    env = os.environ.get("HOPF_PARTIAL_JOBS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


@pytest.fixture(scope="session")
def jobs():
    return _jobs()


@pytest.fixture(scope="session")
def smoke(jobs):
    return run_scenario("smoke-z2", jobs=jobs)


@pytest.fixture(scope="session")
def induced(jobs):
    return run_scenario("induced-functions", jobs=jobs)


@pytest.fixture(scope="session")
def groupdict(jobs):
    return run_scenario("group-dictionary", jobs=jobs)
