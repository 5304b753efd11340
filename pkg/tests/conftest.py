import os
import random

import pytest
from hypothesis import HealthCheck, settings

# fixed seeds everywhere; override with HURWITZ_SEED for exploratory runs
SEED = int(os.environ.get("HURWITZ_SEED", "20240601"))

settings.register_profile("default", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(SEED)


# --- acceptance summary lines ----------------------------------------------------

ACCEPTANCE_LINES: list = []


@pytest.fixture
def acceptance():
    def record(number: int, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
