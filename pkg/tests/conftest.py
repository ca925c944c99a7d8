from pathlib import Path

import pytest

from omegasynth.formats import load

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def b1():
    return load(FIXTURES / "b1.hoa")


@pytest.fixture(scope="session")
def b1_text() -> str:
    return (FIXTURES / "b1.hoa").read_text()
