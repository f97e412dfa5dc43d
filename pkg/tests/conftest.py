from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

_criteria: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[number] = (title, "PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, verdict, seconds = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {title}  ({seconds:.3f} s)")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def eight_angle_experiment() -> dict:
    return {
        "type": "certification-fourier",
        "qubits": [{"target": 0, "ancilla": 1}],
        "angles": {"start": "0", "stop": "2 * pi", "num_steps": 8},
        "delta": 0.05,
        "gateset": "ibmq",
        "method": "direct_sum",
        "num_shots": 10000,
    }
