"""Shared pytest hooks: per-criterion verdict lines for the acceptance suite."""
import pytest

_RESULTS = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    key = report.nodeid
    if "test_acceptance" in key:
        _RESULTS[key] = report.passed


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria verdicts:")
    for nodeid in sorted(_RESULTS):
        name = nodeid.split("::")[-1].replace("test_criterion_", "")
        num, _, label = name.partition("_")
        status = "PASS" if _RESULTS[nodeid] else "FAIL"
        terminalreporter.write_line(
            f"ACCEPTANCE {num} {label.replace('_', ' ')}: {status}"
        )
