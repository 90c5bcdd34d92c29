from pathlib import Path

import pytest

from cqdict.dictionary import load_seed, seed_path

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def seed():
    return load_seed()


@pytest.fixture(scope="session")
def seed_file():
    return Path(seed_path())


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call" and outcome != "error":
                continue
            props = dict(getattr(report, "user_properties", ()))
            if "criterion" in props:
                rows.append((props["criterion"], outcome, props.get("title", "")))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, outcome, title in sorted(rows):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")
