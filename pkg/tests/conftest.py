import random
import sys

import pytest

from supercong import _kernels
from supercong.modp2 import primes_between


@pytest.fixture(params=_kernels.available())
def backend(request):
    return _kernels.load(request.param)


@pytest.fixture(scope="session")
def small_primes():
    return [p for p in primes_between(5, 500)]


@pytest.fixture(scope="session")
def random_primes():
    rng = random.Random(20240611)
    return sorted(rng.sample(primes_between(5, 500), 10))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[n])
