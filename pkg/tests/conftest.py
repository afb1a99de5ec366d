"""Shared fixtures: worked example graphs, models and the running diagram."""
from pathlib import Path

import pytest

from pasting_engine.format.loader import load_diagram, load_document, select_block
from pasting_engine.format.parser import parse_assignments
from pasting_engine.graphs import catalog
from pasting_engine.graphs.presentation import find_presentation
from pasting_engine.models.matrices import StrictMatrixModel
from pasting_engine.models.spans import SpanModel

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def sample_path(name: str) -> str:
    return str(SAMPLES / name)


def sample_text(name: str) -> str:
    return (SAMPLES / name).read_text(encoding="utf-8")


@pytest.fixture
def running():
    return catalog.running_example()


@pytest.fixture
def running_presentation(running):
    return find_presentation(running.anchored)


@pytest.fixture
def span_model():
    return SpanModel()


@pytest.fixture
def matrix_model():
    return StrictMatrixModel()


@pytest.fixture
def running_document():
    return load_document(sample_text("running.paste"))


@pytest.fixture
def running_span(running_document):
    block = select_block(running_document.document, "span", sample_text("running_span.paste"))
    return load_diagram(running_document.graph, block)


@pytest.fixture
def running_matrix(running_document):
    (block,) = parse_assignments(sample_text("running_matrix.paste"))
    return load_diagram(running_document.graph, block)
