import json
from pathlib import Path

import pytest

from gkm3.graph import parse_graph

CORPUS_DIR = Path(__file__).resolve().parents[1] / "src" / "gkm3" / "corpus"
CORPUS_NAMES = ["cube", "flag", "nonorientable", "theta"]


def corpus_text(name: str) -> str:
    return (CORPUS_DIR / f"{name}.json").read_text()


def corpus_graph(name: str):
    return parse_graph(corpus_text(name))


def corpus_json(name: str) -> dict:
    return json.loads(corpus_text(name))


@pytest.fixture(params=CORPUS_NAMES)
def any_corpus_graph(request):
    return corpus_graph(request.param)


@pytest.fixture
def cube():
    return corpus_graph("cube")


@pytest.fixture
def flag():
    return corpus_graph("flag")


@pytest.fixture
def nonorientable():
    return corpus_graph("nonorientable")


@pytest.fixture
def theta():
    return corpus_graph("theta")
