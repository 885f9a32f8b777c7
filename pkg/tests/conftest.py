from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Criterion results collected from the acceptance marker; printed in the
# terminal summary so the PASS/FAIL lines survive output capture.
_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None and report.when == "call":
        _ACCEPTANCE[marker.kwargs["n"]] = (marker.kwargs["desc"], report.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        desc, passed = _ACCEPTANCE[n]
        terminalreporter.write_line(f"ACCEPTANCE {n} ({desc}): {'PASS' if passed else 'FAIL'}")


@pytest.fixture
def lecture_truth_path() -> Path:
    return DATA_DIR / "lecture_a.truth.json"


@pytest.fixture
def howto_truth_path() -> Path:
    return DATA_DIR / "howto_b.truth.json"
