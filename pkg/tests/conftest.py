import json
from pathlib import Path

import pytest

from lithoid.characterize import SourceDescriptor
from lithoid.engine import Engine
from lithoid.expressions import parse
from lithoid.hyperindex import Lithoid

FIXTURES = Path(__file__).parent / "fixtures"

PROCLAMATION = "proclamation of (resurrection of Jesus) by disciples"


@pytest.fixture
def proclamation():
    return parse(PROCLAMATION)


@pytest.fixture
def proclamation_lithoid(proclamation):
    lithoid = Lithoid()
    lithoid.add_source("gospel")
    lithoid.insert_characterization("gospel", proclamation)
    return lithoid


@pytest.fixture
def three_source_engine():
    engine = Engine()
    report = engine.ingest_corpus(FIXTURES / "three_sources.jsonl")
    assert report.failed == 0, report.errors
    return engine


@pytest.fixture
def wave_engine():
    engine = Engine()
    engine.register_source(
        SourceDescriptor("wavesurf", "https://example.org/wave", "Wave surfing guide"),
        phrases=["surfing of wave"],
    )
    engine.register_source(
        SourceDescriptor("netsurf", "https://example.org/net", "Internet surfing guide"),
        phrases=["surfing of internet"],
    )
    return engine


def load_fixture(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))
