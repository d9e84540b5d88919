from pathlib import Path

import pytest

from lexscan import make_document

GOLDEN = Path(__file__).parent / "golden"


def golden_text(n: int) -> str:
    return (GOLDEN / f"example{n}.txt").read_text(encoding="utf-8")


@pytest.fixture
def example1():
    return make_document("example1", golden_text(1))


@pytest.fixture
def example2():
    return make_document("example2", golden_text(2))


@pytest.fixture
def example3():
    return make_document("example3", golden_text(3))
