import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from olmar.market import ToyMarketSpec, generate_toy  # noqa: E402

_criteria: list[tuple[str, str]] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20120626)


@pytest.fixture
def toy():
    def make(kind, n, k=None):
        return generate_toy(ToyMarketSpec(kind, n, k))

    return make


def random_market(rng, n, m, low=0.8, high=1.25):
    return rng.uniform(low, high, size=(n, m))


def pytest_runtest_logreport(report):
    labels = [v for k, v in report.user_properties if k == "criterion"]
    if not labels:
        return
    marker = labels[0]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _criteria.append((outcome, marker))


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None and m.args:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for outcome, label in _criteria:
        terminalreporter.write_line(f"{outcome}  {label}")
