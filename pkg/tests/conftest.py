import numpy as np
import pytest

from app.core.models import EventSeqModel, RationalModel, TimedTraceModel
from app.core.reactive import reactive_alphabet
from app.core.relations import Alphabet, BoolDomain, EnumDomain, TraceDomain


@pytest.fixture(scope="session")
def seq_model():
    return EventSeqModel(events=("a", "b"), max_length=3)


@pytest.fixture(scope="session")
def rat_model():
    return RationalModel()


@pytest.fixture(scope="session")
def timed_model():
    return TimedTraceModel(variables=("x",))


@pytest.fixture(scope="session")
def desk():
    """Events {a, b}, traces up to length 2, one boolean program variable: 784 bindings."""
    traces = TraceDomain.bounded_sequences(EventSeqModel(events=("a", "b")), 2)
    return reactive_alphabet(traces, {"v": BoolDomain()})


@pytest.fixture(scope="session")
def small():
    """Events {a, b}, traces up to length 2, no program variables."""
    traces = TraceDomain.bounded_sequences(EventSeqModel(events=("a", "b")), 2)
    return reactive_alphabet(traces)


@pytest.fixture(scope="session")
def micro():
    """Events {a}, traces up to length 1, no program variables: 16 bindings."""
    traces = TraceDomain.bounded_sequences(EventSeqModel(events=("a",)), 1)
    return reactive_alphabet(traces)


@pytest.fixture(scope="session")
def counter():
    """A single program variable x over {0, 1, 2}."""
    return Alphabet({"x": EnumDomain([0, 1, 2])})


@pytest.fixture
def rng():
    return np.random.default_rng(7)
