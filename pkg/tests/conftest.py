import pytest

from hibilab.reports import CorpusSpec, generate_corpus


@pytest.fixture(scope="session")
def corpus():
    """Deterministic shared corpus; big enough for the sweep-style checks."""
    return generate_corpus(CorpusSpec(seed=7, count=40, max_m=5, max_n=4))


@pytest.fixture(scope="session")
def small_corpus():
    return generate_corpus(CorpusSpec(seed=3, count=18, max_m=4, max_n=4))
