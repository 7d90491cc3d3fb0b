import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gsw.backends import BackendConfig, FixtureStore
from gsw.core import actor_id

from helpers import CJ0_TEXT, FIRE_TEXT, S1_TEXT, S2_TEXT  # noqa: F401


@pytest.fixture(scope="session")
def store() -> FixtureStore:
    return FixtureStore.bundled()


@pytest.fixture(scope="session")
def s1_instance(store):
    return store.lookup(S1_TEXT)


@pytest.fixture(scope="session")
def s2_instance(store):
    return store.lookup(S2_TEXT)


@pytest.fixture(scope="session")
def fire_instance(store):
    return store.lookup(FIRE_TEXT)


@pytest.fixture(scope="session")
def miller_id():
    return actor_id("crime_and_justice", "johnathan miller")


@pytest.fixture(scope="session")
def golden():
    import json
    from importlib import resources

    from gsw.core import instance_from_dict

    text = (
        resources.files("gsw")
        .joinpath("fixtures", "golden_consensus.json")
        .read_text(encoding="utf-8")
    )
    return instance_from_dict(json.loads(text))


@pytest.fixture
def mock_cfg():
    return BackendConfig(kind="mock", situation="crime_and_justice")
