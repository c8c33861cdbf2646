from pathlib import Path

import pytest

from esopq.graphs import read_graph6_file

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


def corpus_path(n: int) -> Path:
    return DATA_DIR / f"connected_n{n}.g6"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def corpus():
    """Exhaustive connected nonisomorphic graphs keyed by vertex count."""
    return {n: read_graph6_file(corpus_path(n)) for n in (3, 4, 5, 6)}


@pytest.fixture(scope="session")
def corpus_n7():
    return read_graph6_file(corpus_path(7))
