from __future__ import annotations

from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def bandpass_asc_text() -> str:
    return (FIXTURES / "bandpass.asc").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def bandpass_net_text() -> str:
    return (FIXTURES / "bandpass.net").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def roundtrip_netlists() -> list[Path]:
    paths = sorted((FIXTURES / "roundtrip").glob("*.net"))
    assert len(paths) >= 30
    return paths
