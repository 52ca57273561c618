import pytest

ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion, printed in the summary."""
    name = request.node.get_closest_marker("criterion").args[0]
    record = {"detail": ""}
    yield record
    ACCEPTANCE_LINES[name] = record["detail"]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        item.config._acceptance = getattr(item.config, "_acceptance", {})
        item.config._acceptance[marker.args[0]] = "PASS" if report.passed else "FAIL"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results, key=lambda s: int(s.split()[0])):
        detail = ACCEPTANCE_LINES.get(name, "")
        terminalreporter.write_line(f"{results[name]}  {name}" + (f"  [{detail}]" if detail else ""))
