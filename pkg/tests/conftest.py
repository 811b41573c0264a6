import importlib.util
import pathlib
import sys

SRC = pathlib.Path(__file__).resolve().parents[1] / "src"
if importlib.util.find_spec("nzflow") is None and str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

import pytest
from hypothesis import settings

settings.register_profile("suite", max_examples=30, deadline=None)
settings.load_profile("suite")

import nzflow
from nzflow.graphs import named_graph


@pytest.fixture(scope="session")
def petersen():
    return named_graph("petersen")


@pytest.fixture(scope="session")
def k4():
    return named_graph("k4")


@pytest.fixture(scope="session")
def blanusa1():
    return named_graph("blanusa1")


@pytest.fixture(scope="session")
def blanusa2():
    return named_graph("blanusa2")


@pytest.fixture(scope="session")
def corpus():
    return nzflow.load_corpus()


@pytest.fixture(scope="session")
def corpus_small(corpus):
    """The corpus members with at most 10 vertices."""
    return [g for g in corpus if g.vertex_count <= 10]
