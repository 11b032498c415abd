import random

import pytest

from arithcycle.enumeration import iter_cycle_catalogs

SEED = 20260821


@pytest.fixture(scope="session")
def catalogs():
    """Complete cycle catalogs for n = 3..8, built once per run."""
    return dict(iter_cycle_catalogs(3, 8))


@pytest.fixture
def rng():
    return random.Random(SEED)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay the acceptance verdict lines after capture is torn down."""
    try:
        from test_acceptance import VERDICT_LINES
    except ImportError:
        return
    if VERDICT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in VERDICT_LINES:
            terminalreporter.write_line(line)
