import itertools
from dataclasses import dataclass
from typing import Any, Iterator, Sequence, Tuple

import numpy as np

from app.core.algebra.base import TraceModel
from app.core.algebra.exceptions import InvalidTrace


@dataclass(frozen=True, order=True)
class EventSeq:
    items: Tuple[str, ...] = ()

    @classmethod
    def of(cls, *events: str) -> "EventSeq":
        return cls(tuple(events))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[str]:
        return iter(self.items)

    def __str__(self) -> str:
        return "<" + ",".join(self.items) + ">"


class EventSeqModel(TraceModel[EventSeq]):
    """Finite event sequences under concatenation, with the empty sequence as unit."""

    name = "seq"

    def __init__(self, events: Sequence[str] = ("a", "b"), max_length: int = 4):
        if not events:
            raise InvalidTrace(self.name, "the event set must be nonempty")
        self.events: Tuple[str, ...] = tuple(dict.fromkeys(events))
        self.max_length = max_length

    def concat(self, x: EventSeq, y: EventSeq) -> EventSeq:
        return EventSeq(x.items + y.items)

    def empty(self) -> EventSeq:
        return EventSeq()

    def prefix(self, x: EventSeq, y: EventSeq) -> bool:
        return y.items[: len(x.items)] == x.items

    def subtract(self, y: EventSeq, x: EventSeq) -> EventSeq:
        if not self.prefix(x, y):
            return EventSeq()
        return EventSeq(y.items[len(x.items):])

    def generate(self, rng: np.random.Generator) -> EventSeq:
        length = int(rng.integers(0, self.max_length + 1))
        picks = rng.integers(0, len(self.events), size=length)
        return EventSeq(tuple(self.events[i] for i in picks))

    def shrink(self, x: EventSeq) -> Iterator[EventSeq]:
        items = x.items
        if not items:
            return
        yield EventSeq()
        for i in range(len(items)):
            yield EventSeq(items[:i] + items[i + 1:])
        first = self.events[0]
        for i, event in enumerate(items):
            if event != first:
                yield EventSeq(items[:i] + (first,) + items[i + 1:])

    def enumerate(self, bound: int) -> Iterator[EventSeq]:
        for length in range(bound + 1):
            for items in itertools.product(self.events, repeat=length):
                yield EventSeq(items)

    def size(self, x: EventSeq) -> Any:
        return len(x.items)

    def is_trace(self, value: Any) -> bool:
        return isinstance(value, EventSeq)

    def validate(self, x: EventSeq) -> bool:
        return isinstance(x, EventSeq) and all(e in self.events for e in x.items)

    def to_json(self, x: EventSeq) -> Any:
        return list(x.items)

    def from_json(self, data: Any) -> EventSeq:
        if not isinstance(data, list) or not all(isinstance(e, str) for e in data):
            raise InvalidTrace(self.name, f"expected a JSON array of event names, got {data!r}")
        unknown = [e for e in data if e not in self.events]
        if unknown:
            raise InvalidTrace(self.name, f"events {unknown} are not in {list(self.events)}")
        return EventSeq(tuple(data))
