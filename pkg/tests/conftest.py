import numpy as np
import pytest

from jacobi_scatter import models


@pytest.fixture(scope="session")
def ensemble():
    return models.random_ensemble(2024, 200)  # same seed as the acceptance suite


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
