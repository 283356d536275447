"""Transducers over changing alphabets.

A transducer here is a finite state set together with one transition and
output table per tree level.  Level tables may differ from level to
level; the alphabet at level i is the one given by the schedule.  States
act on words letter by letter: at level i in state q, input letter x is
rewritten to output[q][x] and the state moves to transition[q][x].

Representation comes in two flavors: explicit eventually periodic table
lists, and rule-backed tables produced by a level function.  Explicit
periodic automata support exact decisions downstream; rule-backed ones
are checked up to a depth unless the construction carries a guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import perms
from .errors import (
    NotInvertibleError,
    NotMealyError,
    ScheduleMismatchError,
)
from .schedule import AlphabetSchedule

NOT_INVERTIBLE = "not_invertible"
NOT_REVERSIBLE = "not_reversible"
INVERSE_NOT_REVERSIBLE = "inverse_not_reversible"

_DEFAULT_CHECK_DEPTH = 20
_SANITY_DEPTH = 8


@dataclass(frozen=True)
class LevelTable:
    """Transition and output tables for one level, indexed [state][letter]."""

    transition: tuple[tuple[int, ...], ...]
    output: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "transition", tuple(tuple(row) for row in self.transition)
        )
        object.__setattr__(self, "output", tuple(tuple(row) for row in self.output))
        n, d = self.n_states, self.alphabet_size
        if n == 0 or d == 0:
            raise ValueError("level table needs at least one state and one letter")
        if len(self.output) != n:
            raise ValueError("transition and output tables disagree on state count")
        for row in self.transition:
            if len(row) != d or any(not 0 <= q < n for q in row):
                raise ValueError("transition entries must be states")
        for row in self.output:
            if len(row) != d or any(not 0 <= x < d for x in row):
                raise ValueError("output entries must be letters")

    @property
    def n_states(self) -> int:
        return len(self.transition)

    @property
    def alphabet_size(self) -> int:
        return len(self.transition[0]) if self.transition else 0

    @staticmethod
    def identity(n_states: int, size: int) -> "LevelTable":
        row = tuple(range(size))
        return LevelTable(
            tuple(tuple(q for _ in range(size)) for q in range(n_states)),
            tuple(row for _ in range(n_states)),
        )

    def labeling(self, state: int) -> tuple[int, ...]:
        """The output row of one state, as a function of the input letter."""
        return self.output[state]

    def first_noninvertible_state(self) -> Optional[int]:
        for q, row in enumerate(self.output):
            if not perms.is_permutation(row):
                return q
        return None

    def is_invertible(self) -> bool:
        return self.first_noninvertible_state() is None

    def is_reversible(self) -> bool:
        """Every letter column is a permutation of the states."""
        n = self.n_states
        for x in range(self.alphabet_size):
            if not perms.is_permutation([self.transition[q][x] for q in range(n)]):
                return False
        return True

    def is_diagonal(self) -> bool:
        return all(
            self.transition[q][x] == q
            for q in range(self.n_states)
            for x in range(self.alphabet_size)
        )

    def is_identity(self) -> bool:
        return self.is_diagonal() and all(
            perms.is_identity(row) for row in self.output
        )

    def inverted(self) -> "LevelTable":
        """Table of the inverse transducer at this level.

        The inverse undoes the labeling first, then follows the original
        transition on the undone letter.
        """
        q = self.first_noninvertible_state()
        if q is not None:
            raise ValueError(f"state {q} has a noninvertible labeling")
        inv_out = tuple(perms.invert(row) for row in self.output)
        trans = tuple(
            tuple(self.transition[q][inv_out[q][x]] for x in range(self.alphabet_size))
            for q in range(self.n_states)
        )
        return LevelTable(trans, inv_out)

    def to_config(self) -> dict:
        return {
            "transition": [list(row) for row in self.transition],
            "output": [list(row) for row in self.output],
        }

    @staticmethod
    def from_config(doc: object) -> "LevelTable":
        if not isinstance(doc, dict) or set(doc) != {"transition", "output"}:
            raise ValueError(
                "level table config needs exactly the keys 'transition' and 'output'"
            )

        def rows(obj, what):
            if not isinstance(obj, list) or not all(
                isinstance(r, list) and all(isinstance(v, int) for v in r) for r in obj
            ):
                raise ValueError(f"{what} must be a list of integer rows")
            return tuple(tuple(r) for r in obj)

        return LevelTable(rows(doc["transition"], "transition"), rows(doc["output"], "output"))


@dataclass(frozen=True)
class BiReversibilityVerdict:
    """Outcome of a bi-reversibility check.

    `holds` with `exact` means the property holds at every level.  With
    `exact` False it only means no failure up to `checked_up_to`.  A
    failure reports the first bad level and one of the reason strings.
    """

    holds: bool
    level: Optional[int] = None
    reason: Optional[str] = None
    exact: bool = True
    checked_up_to: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds


def _level_failure(table: LevelTable) -> Optional[str]:
    if not table.is_invertible():
        return NOT_INVERTIBLE
    if not table.is_reversible():
        return NOT_REVERSIBLE
    if not table.inverted().is_reversible():
        return INVERSE_NOT_REVERSIBLE
    return None


def _default_names(n: int) -> tuple[str, ...]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    if n <= len(letters):
        return tuple(letters[:n])
    return tuple(f"q{i}" for i in range(n))


class Automaton:
    """A transducer bound to an alphabet schedule.

    Construct through `from_periodic_tables` or `from_rule`.  Levels are
    1-based and tables are cached on first use.
    """

    def __init__(
        self,
        schedule: AlphabetSchedule,
        n_states: int,
        table_fn: Callable[[int], LevelTable],
        *,
        state_names: Optional[Sequence[str]] = None,
        periodic: Optional[tuple[tuple[LevelTable, ...], tuple[LevelTable, ...]]] = None,
        exact_bireversible: bool = False,
        identity_from: Optional[int] = None,
        family: Optional[tuple[str, dict]] = None,
    ):
        if n_states < 1:
            raise ValueError("need at least one state")
        self.schedule = schedule
        self.n_states = n_states
        self.state_names = (
            tuple(state_names) if state_names is not None else _default_names(n_states)
        )
        if len(self.state_names) != n_states or len(set(self.state_names)) != n_states:
            raise ValueError("state names must be distinct, one per state")
        self._table_fn = table_fn
        self.periodic_tables = periodic
        self.exact_bireversible = exact_bireversible
        self.identity_from = identity_from
        self.family = family
        self._cache: dict[int, LevelTable] = {}
        if periodic is not None:
            prefix, period = periodic
            if not period:
                raise ValueError("periodic table block must be nonempty")
            # Verify the claimed fold over the prefix plus two period blocks.
            for i in range(1, len(prefix) + 2 * len(period) + 1):
                expected = (
                    prefix[i - 1]
                    if i <= len(prefix)
                    else period[(i - len(prefix) - 1) % len(period)]
                )
                if self.table_at(i) != expected:
                    raise ValueError(
                        f"periodic table metadata disagrees with level {i}"
                    )

    @staticmethod
    def from_periodic_tables(
        schedule: AlphabetSchedule,
        prefix: Sequence[LevelTable],
        period: Sequence[LevelTable],
        *,
        state_names: Optional[Sequence[str]] = None,
        family: Optional[tuple[str, dict]] = None,
    ) -> "Automaton":
        """Build from an explicit table prefix and repeating table block.

        The table block is aligned with the schedule by unrolling both to
        a common prefix length and to the least common multiple of the
        two period lengths.  Ramp schedules are rejected since no finite
        table block can match ever-growing alphabets.
        """
        structure = schedule.periodic_structure()
        if structure is None:
            raise ScheduleMismatchError(
                "explicit periodic tables need a constant or periodic schedule tail"
            )
        prefix = tuple(prefix)
        period = tuple(period)
        if not period:
            raise ValueError("periodic table block must be nonempty")
        n = period[0].n_states
        if any(t.n_states != n for t in prefix + period):
            raise ValueError("all level tables must share one state count")
        sched_prefix_len, sched_period = structure

        def raw(level: int) -> LevelTable:
            if level <= len(prefix):
                return prefix[level - 1]
            return period[(level - len(prefix) - 1) % len(period)]

        p = max(len(prefix), sched_prefix_len)
        m = math.lcm(len(period), len(sched_period))
        norm_prefix = tuple(raw(i) for i in range(1, p + 1))
        norm_period = tuple(raw(i) for i in range(p + 1, p + m + 1))
        return Automaton(
            schedule,
            n,
            raw,
            state_names=state_names,
            periodic=(norm_prefix, norm_period),
            family=family,
        )

    @staticmethod
    def from_rule(
        schedule: AlphabetSchedule,
        n_states: int,
        table_fn: Callable[[int], LevelTable],
        *,
        state_names: Optional[Sequence[str]] = None,
        exact_bireversible: bool = False,
        identity_from: Optional[int] = None,
        family: Optional[tuple[str, dict]] = None,
    ) -> "Automaton":
        return Automaton(
            schedule,
            n_states,
            table_fn,
            state_names=state_names,
            exact_bireversible=exact_bireversible,
            identity_from=identity_from,
            family=family,
        )

    def __repr__(self) -> str:
        kind = "periodic" if self.periodic_tables else "rule"
        return f"Automaton({self.n_states} states, {kind}, sizes {self.schedule.sizes(4)}...)"

    def state_index(self, state) -> int:
        if isinstance(state, int):
            if not 0 <= state < self.n_states:
                raise ValueError(f"state index {state} out of range")
            return state
        try:
            return self.state_names.index(state)
        except ValueError:
            raise ValueError(
                f"unknown state {state!r}; states are {', '.join(self.state_names)}"
            ) from None

    def table_at(self, level: int) -> LevelTable:
        if level < 1:
            raise ValueError(f"levels start at 1, got {level}")
        table = self._cache.get(level)
        if table is None:
            if self.identity_from is not None and level >= self.identity_from:
                table = LevelTable.identity(self.n_states, self.schedule.size_at(level))
            else:
                table = self._table_fn(level)
            if table.n_states != self.n_states:
                raise ScheduleMismatchError(
                    f"table at level {level} has {table.n_states} states, expected {self.n_states}"
                )
            if table.alphabet_size != self.schedule.size_at(level):
                raise ScheduleMismatchError(
                    f"table at level {level} has alphabet size {table.alphabet_size}, "
                    f"schedule says {self.schedule.size_at(level)}"
                )
            self._cache[level] = table
        return table

    def labeling_at(self, level: int, state) -> tuple[int, ...]:
        return self.table_at(level).labeling(self.state_index(state))

    # -- phases ---------------------------------------------------------

    def phase_key(self, level: int):
        """Canonical key identifying the table situation at a level.

        Levels sharing a phase share tables and alphabet sizes, so any
        search keyed on phases instead of levels stays finite whenever
        the representation is eventually periodic or eventually trivial.
        """
        if self.identity_from is not None and level >= self.identity_from:
            return ("id",)
        if self.periodic_tables is not None:
            p = len(self.periodic_tables[0])
            m = len(self.periodic_tables[1])
            if level <= p:
                return ("p", level)
            return ("c", (level - p - 1) % m)
        return ("d", level)

    def phase_level(self, phase) -> Optional[int]:
        """A representative level for a phase; None for the trivial phase."""
        if phase[0] == "id":
            return None
        if phase[0] == "p" or phase[0] == "d":
            return phase[1]
        p = len(self.periodic_tables[0])
        return p + 1 + phase[1]

    def phase_after(self, phase):
        if phase[0] == "id":
            return phase
        return self.phase_key(self.phase_level(phase) + 1)

    @property
    def has_finite_phases(self) -> bool:
        return self.periodic_tables is not None or self.identity_from is not None

    # -- actions --------------------------------------------------------

    def run(self, state, word: Sequence[int], *, inverse: bool = False):
        """Feed a word through one state; return (output word, end state).

        With `inverse` set, act by the inverse transducer of this one
        without materializing it.
        """
        q = self.state_index(state)
        word = self.schedule.check_word(word)
        out = []
        for i, x in enumerate(word, start=1):
            t = self.table_at(i)
            if inverse:
                row = t.output[q]
                if not perms.is_permutation(row):
                    raise NotInvertibleError(i, q)
                y = perms.invert(row)[x]
                out.append(y)
                q = t.transition[q][y]
            else:
                out.append(t.output[q][x])
                q = t.transition[q][x]
        return tuple(out), q

    def evaluate(self, state, word: Sequence[int]) -> tuple[int, ...]:
        return self.run(state, word)[0]

    # -- level predicates ----------------------------------------------

    def is_invertible_at(self, level: int) -> bool:
        return self.table_at(level).is_invertible()

    def is_reversible_at(self, level: int) -> bool:
        return self.table_at(level).is_reversible()

    def is_diagonal_at(self, level: int) -> bool:
        return self.table_at(level).is_diagonal()

    def bireversibility(self, up_to: Optional[int] = None) -> BiReversibilityVerdict:
        """Check invertibility, reversibility, and inverse reversibility.

        Explicit periodic representations are checked exactly over one
        table cycle.  Rule representations are checked up to a depth,
        unless the construction guarantees the property, in which case a
        short sanity window is still verified.
        """
        if self.periodic_tables is not None:
            span = len(self.periodic_tables[0]) + len(self.periodic_tables[1])
            for i in range(1, span + 1):
                reason = _level_failure(self.table_at(i))
                if reason is not None:
                    return BiReversibilityVerdict(False, i, reason, exact=True)
            return BiReversibilityVerdict(True, exact=True)
        depth = up_to if up_to is not None else _DEFAULT_CHECK_DEPTH
        if self.exact_bireversible:
            for i in range(1, min(depth, _SANITY_DEPTH) + 1):
                reason = _level_failure(self.table_at(i))
                if reason is not None:
                    return BiReversibilityVerdict(False, i, reason, exact=True)
            return BiReversibilityVerdict(True, exact=True)
        if self.identity_from is not None:
            for i in range(1, self.identity_from):
                reason = _level_failure(self.table_at(i))
                if reason is not None:
                    return BiReversibilityVerdict(False, i, reason, exact=True)
            return BiReversibilityVerdict(True, exact=True)
        for i in range(1, depth + 1):
            reason = _level_failure(self.table_at(i))
            if reason is not None:
                return BiReversibilityVerdict(False, i, reason, exact=True)
        return BiReversibilityVerdict(True, exact=False, checked_up_to=depth)

    def is_bireversible(self, up_to: Optional[int] = None) -> bool:
        return self.bireversibility(up_to).holds

    # -- derived transducers -------------------------------------------

    def inverse(self) -> "Automaton":
        """The inverse transducer; each state undoes its namesake."""
        if self.periodic_tables is not None:
            prefix, period = self.periodic_tables
            return Automaton(
                self.schedule,
                self.n_states,
                lambda i: self._inverted_table(i),
                state_names=self.state_names,
                periodic=(
                    tuple(self._inverted_table(i) for i in range(1, len(prefix) + 1)),
                    tuple(
                        self._inverted_table(i)
                        for i in range(len(prefix) + 1, len(prefix) + len(period) + 1)
                    ),
                ),
                exact_bireversible=self.exact_bireversible,
            )
        return Automaton(
            self.schedule,
            self.n_states,
            lambda i: self._inverted_table(i),
            state_names=self.state_names,
            exact_bireversible=self.exact_bireversible,
            identity_from=self.identity_from,
        )

    def _inverted_table(self, level: int) -> LevelTable:
        t = self.table_at(level)
        q = t.first_noninvertible_state()
        if q is not None:
            raise NotInvertibleError(level, q)
        return t.inverted()

    def shifted(self, count: int) -> "Automaton":
        """Drop the first `count` levels; level i becomes old level i + count."""
        if count < 0:
            raise ValueError("shift count must be nonnegative")
        if count == 0:
            return self
        periodic = None
        if self.periodic_tables is not None:
            prefix, period = self.periodic_tables
            if count <= len(prefix):
                periodic = (prefix[count:], period)
            else:
                turns = (count - len(prefix)) % len(period)
                periodic = ((), period[turns:] + period[:turns])
        identity_from = None
        if self.identity_from is not None:
            identity_from = max(1, self.identity_from - count)
        return Automaton(
            self.schedule.shifted(count),
            self.n_states,
            lambda i: self.table_at(i + count),
            state_names=self.state_names,
            periodic=periodic,
            exact_bireversible=self.exact_bireversible,
            identity_from=identity_from,
        )

    def restricted(self, depth: int) -> "Automaton":
        """Keep the first `depth` levels, act trivially beyond them."""
        if depth < 0:
            raise ValueError("restriction depth must be nonnegative")

        def fn(i: int) -> LevelTable:
            if i <= depth:
                return self.table_at(i)
            return LevelTable.identity(self.n_states, self.schedule.size_at(i))

        periodic = None
        structure = self.schedule.periodic_structure()
        if structure is not None:
            sp, speriod = structure
            p = max(depth, sp)
            periodic = (
                tuple(fn(i) for i in range(1, p + 1)),
                tuple(fn(i) for i in range(p + 1, p + len(speriod) + 1)),
            )
        ident = depth + 1
        if self.identity_from is not None:
            ident = min(ident, self.identity_from)
        exact = self.exact_bireversible or (
            self.periodic_tables is not None and self.bireversibility().holds
        )
        return Automaton(
            self.schedule,
            self.n_states,
            fn,
            state_names=self.state_names,
            periodic=periodic,
            exact_bireversible=exact,
            identity_from=ident,
        )

    def mealy_table(self) -> LevelTable:
        """The single level table of a level-independent transducer."""
        if self.periodic_tables is None:
            raise NotMealyError(
                "level independence is only decidable for explicit periodic tables"
            )
        prefix, period = self.periodic_tables
        tables = set(prefix) | set(period)
        if len(tables) != 1:
            raise NotMealyError("level tables differ across levels")
        return next(iter(tables))

    @property
    def is_mealy(self) -> bool:
        try:
            self.mealy_table()
            return True
        except NotMealyError:
            return False

    def dual(self) -> "Automaton":
        """Swap the roles of states and letters of a level-independent transducer.

        The dual's states are the letters and vice versa; its transition
        reads off the original outputs and its output reads off the
        original transitions.
        """
        t = self.mealy_table()
        n, d = t.n_states, t.alphabet_size
        trans = tuple(tuple(t.output[q][x] for q in range(n)) for x in range(d))
        out = tuple(tuple(t.transition[q][x] for q in range(n)) for x in range(d))
        return Automaton.from_periodic_tables(
            AlphabetSchedule.constant(n),
            (),
            (LevelTable(trans, out),),
            state_names=tuple(f"d{x}" for x in range(d)),
        )


def embed_on_subsequence(
    inner: Automaton,
    host: AlphabetSchedule,
    start: int = 1,
    step: int = 1,
    *,
    family: Optional[tuple[str, dict]] = None,
    check_depth: int = 64,
) -> Automaton:
    """Spread a transducer over the host levels start, start+step, ....

    Level start + (j-1)*step of the result carries level j of `inner`;
    all other levels act trivially.  The inner schedule must match the
    host schedule along those positions.  The match is verified eagerly
    for the first `check_depth` inner levels and lazily afterwards.
    """
    if start < 1 or step < 1:
        raise ValueError("start and step must be at least 1")
    for j in range(1, check_depth + 1):
        if inner.schedule.size_at(j) != host.size_at(start + (j - 1) * step):
            raise ScheduleMismatchError(
                f"inner level {j} has size {inner.schedule.size_at(j)} but host "
                f"level {start + (j - 1) * step} has size "
                f"{host.size_at(start + (j - 1) * step)}"
            )

    def fn(i: int) -> LevelTable:
        if i >= start and (i - start) % step == 0:
            j = (i - start) // step + 1
            t = inner.table_at(j)
            if t.alphabet_size != host.size_at(i):
                raise ScheduleMismatchError(
                    f"inner level {j} does not match host level {i}"
                )
            return t
        return LevelTable.identity(inner.n_states, host.size_at(i))

    periodic = None
    host_structure = host.periodic_structure()
    if inner.periodic_tables is not None and host_structure is not None:
        sp, speriod = host_structure
        pi = len(inner.periodic_tables[0])
        mi = len(inner.periodic_tables[1])
        p = max(sp, start - 1 + step * pi)
        m = math.lcm(step * mi, len(speriod))
        periodic = (
            tuple(fn(i) for i in range(1, p + 1)),
            tuple(fn(i) for i in range(p + 1, p + m + 1)),
        )
    exact = inner.exact_bireversible or (
        inner.periodic_tables is not None and inner.bireversibility().holds
    )
    return Automaton(
        host,
        inner.n_states,
        fn,
        state_names=inner.state_names,
        periodic=periodic,
        exact_bireversible=exact,
        family=family,
    )


def tables_equal(a: Automaton, b: Automaton, up_to: int) -> bool:
    """Same state count and identical tables on levels 1 .. up_to."""
    if a.n_states != b.n_states:
        return False
    return all(a.table_at(i) == b.table_at(i) for i in range(1, up_to + 1))
