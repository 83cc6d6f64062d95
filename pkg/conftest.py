import pytest

from src.algebra.quiver import a_n_quiver, kronecker_quiver
from src.config.settings import reset_settings
from src.representations.representation import universal_extension
from src.stability.corpus import build_corpus
from src.stability.hn_engine import StabilityCondition

CORPUS_SEED = 7


@pytest.fixture(autouse=True)
def fresh_settings():
    # Settings are read from the environment once per process; tests that patch env need a fresh read
    reset_settings()
    yield
    reset_settings()


@pytest.fixture(scope="session")
def a2():
    return a_n_quiver(2)


@pytest.fixture(scope="session")
def a3():
    return a_n_quiver(3)


@pytest.fixture(scope="session")
def k3():
    return kronecker_quiver(3)


@pytest.fixture(scope="session")
def sigma_example():
    """z = (i, -1 + i) on A_2"""
    return StabilityCondition.from_pairs([(0, 1), (-1, 1)], name="example")


@pytest.fixture(scope="session")
def sigma0_a2():
    return StabilityCondition.standard(2)


@pytest.fixture(scope="session")
def extension_a2(a2):
    """The non-split extension 0 -> S_2 -> M -> S_1 -> 0 over F_2"""
    return universal_extension(a2, 0, 1, 2)


@pytest.fixture(scope="session")
def small_corpus():
    return build_corpus(CORPUS_SEED, size=30)
