from __future__ import annotations

import os

import pytest

from errorsearch.pipeline import SearchPipeline, bundled_fixtures, load_dataset

# Acceptance criteria record their outcome here; printed at the end of the run.
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, line in ACCEPTANCE.items():
        terminalreporter.write_line(f"{name:<26} {line}")


@pytest.fixture(autouse=True)
def _no_config_env(monkeypatch):
    monkeypatch.delenv("ERRORSEARCH_CONFIG", raising=False)


@pytest.fixture(scope="session")
def fixture_dir():
    return bundled_fixtures()


@pytest.fixture(scope="session")
def pipeline(fixture_dir):
    old = os.environ.pop("ERRORSEARCH_CONFIG", None)
    try:
        return SearchPipeline.from_fixtures(fixture_dir)
    finally:
        if old is not None:
            os.environ["ERRORSEARCH_CONFIG"] = old


@pytest.fixture(scope="session")
def cases(fixture_dir):
    return load_dataset(fixture_dir / "dataset.json")
