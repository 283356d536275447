"""Alphabet schedules: the sequence of alphabet sizes, one per tree level.

Levels are numbered from 1.  A schedule is a finite prefix of explicit
sizes followed by an infinite tail, which is either constant, periodic,
or a ramp growing by one per level.  Letters of the level-i alphabet are
0 .. size_at(i) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .errors import InvalidWordError


@dataclass(frozen=True)
class Constant:
    value: int

    def __post_init__(self):
        if self.value < 1:
            raise ValueError("alphabet sizes must be at least 1")


@dataclass(frozen=True)
class Periodic:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValueError("periodic tail needs at least one size")
        if any(v < 1 for v in self.values):
            raise ValueError("alphabet sizes must be at least 1")


@dataclass(frozen=True)
class Ramp:
    """Tail whose size at absolute level i is i + offset."""

    offset: int = 0

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError("ramp offset must be nonnegative")


Tail = Union[Constant, Periodic, Ramp]


@dataclass(frozen=True)
class AlphabetSchedule:
    prefix: tuple[int, ...]
    tail: Tail

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if any(v < 1 for v in self.prefix):
            raise ValueError("alphabet sizes must be at least 1")

    @staticmethod
    def constant(value: int, prefix: Sequence[int] = ()) -> "AlphabetSchedule":
        return AlphabetSchedule(tuple(prefix), Constant(value))

    @staticmethod
    def periodic(values: Sequence[int], prefix: Sequence[int] = ()) -> "AlphabetSchedule":
        return AlphabetSchedule(tuple(prefix), Periodic(tuple(values)))

    @staticmethod
    def ramp(offset: int = 0, prefix: Sequence[int] = ()) -> "AlphabetSchedule":
        return AlphabetSchedule(tuple(prefix), Ramp(offset))

    def size_at(self, level: int) -> int:
        """Alphabet size at a 1-based level."""
        if level < 1:
            raise ValueError(f"levels start at 1, got {level}")
        if level <= len(self.prefix):
            return self.prefix[level - 1]
        tail = self.tail
        if isinstance(tail, Constant):
            return tail.value
        if isinstance(tail, Periodic):
            return tail.values[(level - len(self.prefix) - 1) % len(tail.values)]
        return level + tail.offset

    def sizes(self, count: int) -> tuple[int, ...]:
        return tuple(self.size_at(i) for i in range(1, count + 1))

    def bound(self) -> int | None:
        """Supremum of all sizes, or None when the schedule is unbounded."""
        if isinstance(self.tail, Ramp):
            return None
        tail_max = (
            self.tail.value if isinstance(self.tail, Constant) else max(self.tail.values)
        )
        return max((*self.prefix, tail_max))

    @property
    def is_bounded(self) -> bool:
        return self.bound() is not None

    def periodic_structure(self) -> tuple[int, tuple[int, ...]] | None:
        """(prefix length, repeating size block), or None for a ramp tail."""
        if isinstance(self.tail, Constant):
            return len(self.prefix), (self.tail.value,)
        if isinstance(self.tail, Periodic):
            return len(self.prefix), self.tail.values
        return None

    def shifted(self, count: int) -> "AlphabetSchedule":
        """The schedule with the first `count` levels dropped."""
        if count < 0:
            raise ValueError("shift count must be nonnegative")
        if count == 0:
            return self
        tail = self.tail
        if isinstance(tail, Ramp):
            return AlphabetSchedule(self.prefix[count:], Ramp(tail.offset + count))
        if count <= len(self.prefix):
            return AlphabetSchedule(self.prefix[count:], tail)
        if isinstance(tail, Constant):
            return AlphabetSchedule((), tail)
        turns = (count - len(self.prefix)) % len(tail.values)
        return AlphabetSchedule((), Periodic(tail.values[turns:] + tail.values[:turns]))

    def validates(self, word: Sequence[int]) -> bool:
        return all(0 <= x < self.size_at(i + 1) for i, x in enumerate(word))

    def check_word(self, word: Sequence[int]) -> tuple[int, ...]:
        """Return `word` as a tuple, raising InvalidWordError on a bad letter."""
        for i, x in enumerate(word):
            if not (0 <= x < self.size_at(i + 1)):
                raise InvalidWordError(
                    f"letter {x} at position {i} is outside alphabet of size "
                    f"{self.size_at(i + 1)}"
                )
        return tuple(word)

    def words_at_level(self, level: int) -> Iterator[tuple[int, ...]]:
        """All words of the given length in lexicographic order."""
        if level == 0:
            yield ()
            return
        for head in self.words_at_level(level - 1):
            for x in range(self.size_at(level)):
                yield head + (x,)

    def leaf_count(self, level: int) -> int:
        out = 1
        for i in range(1, level + 1):
            out *= self.size_at(i)
        return out

    def to_config(self) -> dict:
        tail = self.tail
        if isinstance(tail, Constant):
            doc = {"kind": "constant", "value": tail.value}
        elif isinstance(tail, Periodic):
            doc = {"kind": "periodic", "value": list(tail.values)}
        else:
            doc = {"kind": "ramp", "value": {"offset": tail.offset}}
        return {"prefix": list(self.prefix), "tail": doc}

    @staticmethod
    def from_config(doc: object) -> "AlphabetSchedule":
        if not isinstance(doc, dict) or set(doc) != {"prefix", "tail"}:
            raise ValueError("schedule config needs exactly the keys 'prefix' and 'tail'")
        prefix = doc["prefix"]
        if not isinstance(prefix, list) or not all(isinstance(v, int) for v in prefix):
            raise ValueError("schedule prefix must be a list of integers")
        tail_doc = doc["tail"]
        if not isinstance(tail_doc, dict) or set(tail_doc) != {"kind", "value"}:
            raise ValueError("schedule tail needs exactly the keys 'kind' and 'value'")
        kind, value = tail_doc["kind"], tail_doc["value"]
        if kind == "constant":
            if not isinstance(value, int):
                raise ValueError("constant tail value must be an integer")
            tail: Tail = Constant(value)
        elif kind == "periodic":
            if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
                raise ValueError("periodic tail value must be a list of integers")
            tail = Periodic(tuple(value))
        elif kind == "ramp":
            if (
                not isinstance(value, dict)
                or set(value) != {"offset"}
                or not isinstance(value["offset"], int)
            ):
                raise ValueError("ramp tail value must be an object {'offset': int}")
            tail = Ramp(value["offset"])
        else:
            raise ValueError(f"unknown tail kind {kind!r}")
        return AlphabetSchedule(tuple(prefix), tail)
