import json
import random
from pathlib import Path

import pytest

from dlgen.datagen import generate_dataset
from dlgen.taxonomy import load_dataset

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_fixture(name: str):
    return load_dataset(fixture_path(name).read_text())


def raw_fixture(name: str) -> dict:
    return json.loads(fixture_path(name).read_text())


@pytest.fixture
def ds_a():
    return load_fixture("fixture-a.json")


@pytest.fixture
def raw_a():
    return raw_fixture("fixture-a.json")


def dataset_from_seed(seed: int, *, small: bool = False) -> dict:
    return generate_dataset(random.Random(seed), small=small)
