"""Constructive transitivity: reaching chosen words from the base word."""

import random

import pytest

from tvautomata import (
    AlphabetSchedule,
    GroupWord,
    NonCoprimeModuliError,
    SteeringError,
    apply_word,
    cycle_transposition_automaton,
    steer_to_word,
)

A = GroupWord.generator(0)
B = GroupWord.generator(1)


def machine(*sizes):
    return cycle_transposition_automaton(AlphabetSchedule.periodic(sizes))


def test_worked_two_level_case():
    res = steer_to_word(machine(3, 4), (2, 3))
    assert res.n0 == 1
    assert res.n1 == 4
    assert res.base_word == (1, 1)
    assert res.target == (2, 3)
    c = A * B.inverse()
    assert res.word == c**4 * B.inverse() * c * B
    assert res.word.length == 10
    assert apply_word(machine(3, 4), res.word, (1, 1)) == (2, 3)


def test_steering_to_the_base_word_itself():
    res = steer_to_word(machine(3, 4), (1, 1))
    # Nothing to move: the first congruence pass degenerates to a full
    # turn of every cycle and the second is empty.
    assert res.n0 == 6
    assert res.n1 == 0
    assert apply_word(machine(3, 4), res.word, (1, 1)) == (1, 1)


def test_display_uses_state_names():
    res = steer_to_word(machine(3, 4), (2, 3))
    shown = res.display(("a", "b"))
    assert shown.startswith("a b^-1")
    assert "^" in shown


def test_noncoprime_cycle_lengths_are_rejected():
    with pytest.raises(NonCoprimeModuliError):
        steer_to_word(machine(3, 3), (2, 2))


def test_small_alphabets_are_rejected():
    with pytest.raises(SteeringError):
        steer_to_word(machine(2, 2), (1, 1))
    with pytest.raises(SteeringError):
        steer_to_word(machine(3, 4), ())


def test_every_target_is_reached_at_small_depths():
    sizes = (3, 4, 6, 8)
    a = machine(*sizes)
    rng = random.Random(0)
    for depth in range(1, 5):
        base = (1,) * depth
        for _ in range(10):
            target = tuple(rng.randrange(sizes[i]) for i in range(depth))
            res = steer_to_word(a, target)
            assert apply_word(a, res.word, base) == target


def test_steering_respects_nondefault_letters():
    a = cycle_transposition_automaton(
        AlphabetSchedule.periodic((4, 5)), x0=1, x1=2
    )
    res = steer_to_word(a, (3, 0))
    assert res.base_word == (2, 2)
    assert apply_word(a, res.word, (2, 2)) == (3, 0)
