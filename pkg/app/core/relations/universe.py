import threading
from collections import OrderedDict
from typing import Any, Dict, Iterable, Mapping

import numpy as np
import pandas as pd

from app.config.settings import settings
from app.core.relations.alphabet import Alphabet
from app.core.relations.exceptions import UniverseTooLarge
from app.utils.logger import logger

log = logger("app.core.relations.universe")


class Universe:
    """All bindings of an alphabet, enumerated in mixed radix over domain codes."""

    def __init__(self, alphabet: Alphabet):
        if alphabet.size > settings.MAX_BINDINGS:
            raise UniverseTooLarge(alphabet.size, settings.MAX_BINDINGS)
        self.alphabet = alphabet
        self.shape = alphabet.shape
        self.size = alphabet.size
        strides = []
        stride = 1
        for dim in reversed(self.shape):
            strides.append(stride)
            stride *= dim
        self.strides = tuple(reversed(strides))
        self._codes: Dict[str, np.ndarray] = {}
        self._lock = threading.Lock()

    def codes(self, name: str) -> np.ndarray:
        """Domain code of variable `name` in every binding."""
        cached = self._codes.get(name)
        if cached is not None:
            return cached
        position = self.alphabet.position(name)
        rows = np.arange(self.size, dtype=np.int64)
        column = (rows // self.strides[position]) % self.shape[position]
        column.setflags(write=False)
        with self._lock:
            self._codes.setdefault(name, column)
        return self._codes[name]

    def flat_index(self, overrides: Mapping[str, np.ndarray]) -> np.ndarray:
        """Row numbers of the bindings obtained by replacing the given variables' codes."""
        index = np.zeros(self.size, dtype=np.int64)
        for position, variable in enumerate(self.alphabet.variables):
            column = overrides.get(variable.name)
            if column is None:
                column = self.codes(variable.name)
            index += column * self.strides[position]
        return index

    def decode(self, row: int) -> Dict[str, Any]:
        binding = {}
        for position, variable in enumerate(self.alphabet.variables):
            code = (row // self.strides[position]) % self.shape[position]
            binding[variable.name] = variable.domain.values[code]
        return binding

    def rows(self, mask: np.ndarray) -> Iterable[Dict[str, Any]]:
        for row in np.flatnonzero(mask):
            yield self.decode(int(row))

    def to_frame(self, mask: np.ndarray) -> pd.DataFrame:
        """The selected bindings as a table, one column per variable."""
        selected = np.flatnonzero(mask)
        data = {}
        for variable in self.alphabet.variables:
            values = np.empty(len(variable.domain.values), dtype=object)
            values[:] = [str(v) if not isinstance(v, (bool, int)) else v for v in variable.domain.values]
            data[variable.name] = values[self.codes(variable.name)[selected]]
        return pd.DataFrame(data, index=pd.Index(selected, name="row"))


class UniverseFactory:
    """
    Registry of universes keyed by alphabet, so the per-variable code columns
    are built once per alphabet rather than once per predicate. The least
    recently used universe is dropped once UNIVERSE_CACHE_SIZE are held.
    """
    _instances: "OrderedDict[Alphabet, Universe]" = OrderedDict()
    _lock = threading.Lock()

    @classmethod
    def get_universe(cls, alphabet: Alphabet) -> Universe:
        with cls._lock:
            universe = cls._instances.get(alphabet)
            if universe is not None:
                cls._instances.move_to_end(alphabet)
                return universe
            log.debug("building universe of {} bindings for {}", alphabet.size, alphabet)
            universe = cls._instances[alphabet] = Universe(alphabet)
            while len(cls._instances) > max(1, settings.UNIVERSE_CACHE_SIZE):
                evicted, _ = cls._instances.popitem(last=False)
                log.debug("evicting universe for {}", evicted)
            return universe

    @classmethod
    def cached(cls) -> int:
        return len(cls._instances)

    @classmethod
    def clear_instances(cls) -> None:
        """Clear all stored universes."""
        with cls._lock:
            cls._instances.clear()
