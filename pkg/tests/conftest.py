import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from triadic import generators


@pytest.fixture(scope="session")
def k4():
    return generators.complete(4)


@pytest.fixture(scope="session")
def petersen():
    return generators.petersen()


@pytest.fixture(scope="session")
def gnp_1000():
    return generators.gnp(1000, 0.02, seed=20240601)


@pytest.fixture(scope="session")
def gnp_300():
    return generators.gnp(300, 0.05, seed=7)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
