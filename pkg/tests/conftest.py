import numpy as np
import pytest

from leantext.corpus import load_corpus
from leantext.embedding import EmbeddingTable, load_table

import synthdata


@pytest.fixture(scope="session")
def sample200(tmp_path_factory):
    paths = synthdata.write_sample200(tmp_path_factory.mktemp("sample200"))
    return paths


@pytest.fixture(scope="session")
def sample200_corpus(sample200):
    return load_corpus(sample200.corpus, format="jsonl")


@pytest.fixture(scope="session")
def sample200_table(sample200):
    return load_table(sample200.embeddings)


@pytest.fixture(scope="session")
def planted1000(tmp_path_factory):
    return synthdata.write_planted1000(tmp_path_factory.mktemp("planted1000"))


@pytest.fixture(scope="session")
def planted1000_corpus(planted1000):
    return load_corpus(planted1000.corpus, format="jsonl")


@pytest.fixture(scope="session")
def planted1000_table(planted1000):
    return load_table(planted1000.embeddings)


def make_table(vectors: dict[str, list[float]], name: str = "toy") -> EmbeddingTable:
    dims = {len(v) for v in vectors.values()}
    assert len(dims) == 1
    return EmbeddingTable(
        dim=dims.pop(),
        entries={w: np.asarray(v, dtype=np.float64) for w, v in vectors.items()},
        name=name,
    )


@pytest.fixture
def toy_table():
    return make_table({"cat": [1.0, 0.0], "dog": [0.0, 1.0]})
