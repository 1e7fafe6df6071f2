import os

import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running checks")


@pytest.fixture(autouse=True)
def _cache_dir(tmp_path_factory, monkeypatch):
    # keep the recurrence cache out of the user's home during tests
    monkeypatch.setenv("NETINDUCE_CACHE_DIR", str(tmp_path_factory.getbasetemp() / "cache"))
    yield


ACCEPTANCE_LINES = {}


def pytest_runtest_logreport(report):
    marker = "test_acceptance.py::test_criterion_"
    if report.when == "call" and marker in report.nodeid:
        num = int(report.nodeid.split(marker)[1].split("_")[0])
        title = report.nodeid.split(marker)[1].split("_", 1)[1].replace("_", " ")
        ACCEPTANCE_LINES[num] = f"criterion {num:2d} {'PASS' if report.passed else 'FAIL'}  {title}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[num])
