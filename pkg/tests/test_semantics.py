"""Timed execution: delays, timeout chains, runs, tick encoding."""

from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from tfsm import (
    TICK,
    Guard,
    TimedMachine,
    TimedState,
    TimedWord,
    Timeout,
    Transition,
    advance,
    mealy_run,
    run,
    step,
    tick_encode_delay,
    tick_encode_word,
)
from tfsm.core import MealyMachine


def at(state, clock):
    return TimedState(state, Fraction(clock))


class TestAdvance:
    def test_short_delay_stays_put(self, guarded_pair):
        assert advance(guarded_pair, at("s0", 0), Fraction(1, 2)) == at("s0", Fraction(1, 2))
        assert advance(guarded_pair, at("s0", 0), 0) == at("s0", 0)

    def test_timeout_fires_exactly_at_the_bound(self, guarded_pair):
        assert advance(guarded_pair, at("s0", 0), 1) == at("s1", 0)
        assert advance(guarded_pair, at("s0", Fraction(1, 2)), Fraction(1, 2)) == at("s1", 0)

    def test_remaining_time_flows_past_the_timeout(self, guarded_pair):
        assert advance(guarded_pair, at("s0", 0), Fraction(7, 2)) == at("s1", Fraction(5, 2))

    def test_infinite_timeout_never_fires(self, guarded_pair):
        assert advance(guarded_pair, at("s1", 0), 1000) == at("s1", 1000)

    def test_chained_timeouts(self, handover):
        # A times out to C at 2, C times out back to A at 1, period 3.
        assert advance(handover, at("A", 0), 2) == at("C", 0)
        assert advance(handover, at("A", 0), 3) == at("A", 0)
        assert advance(handover, at("A", 0), Fraction(13, 2)) == at("A", Fraction(1, 2))

    def test_negative_delay_rejected(self, guarded_pair):
        with pytest.raises(ValueError):
            advance(guarded_pair, at("s0", 0), -1)


class TestStep:
    def test_picks_the_guard_containing_the_clock(self, guarded_pair):
        out, nxt = step(guarded_pair, at("s1", Fraction(1, 2)), "i")
        assert (out, nxt) == ("o2", at("s1", 0))
        out, nxt = step(guarded_pair, at("s1", Fraction(3, 2)), "i")
        assert (out, nxt) == ("o1", at("s0", 0))

    def test_clock_resets_on_input(self, guarded_pair):
        _, nxt = step(guarded_pair, at("s0", Fraction(1, 2)), "i")
        assert nxt.clock == 0

    def test_undefined_when_no_guard_admits(self, guarded_pair):
        assert step(guarded_pair, at("s0", Fraction(1, 2)), "missing") is None


class TestRun:
    def test_accepting_run_collects_outputs(self, guarded_pair):
        # Stay in s0 early, time out into s1 at 1, answer o2 there.
        word = TimedWord.of(("i", "1/2"), ("i", "3/2"), ("i", "3/2"))
        result = run(guarded_pair, word)
        assert result.accepted
        assert result.outputs == ("o1", "o2", "o2")
        assert result.final == at("s1", 0)
        assert result.rejection_point is None

    def test_timeout_chain_inside_a_run(self, handover):
        # A times out to C at 2; at that instant C answers o2 on [0,0].
        first = run(handover, TimedWord.of(("i", 2)))
        assert first.accepted and first.outputs == ("o2",)

    def test_rejection_reports_index_and_configuration(self):
        gap = TimedMachine(
            states=("w",),
            inputs=("i",),
            outputs=("o",),
            initial="w",
            transitions=(Transition("w", "i", Guard(1, 2, True, True), "o", "w"),),
            timeouts={"w": Timeout(None)},
        )
        result = run(gap, TimedWord.of(("i", 1), ("i", 4)))
        assert not result.accepted
        assert result.rejection_point == 1
        assert result.outputs == ("o",)
        assert result.final == at("w", 3)

        early = run(gap, TimedWord.of(("i", "1/2")))
        assert not early.accepted and early.rejection_point == 0
        assert early.final == at("w", Fraction(1, 2))

    def test_empty_word_accepted(self, guarded_pair):
        result = run(guarded_pair, TimedWord())
        assert result.accepted and result.outputs == ()


class TestMealyRun:
    def _machine(self):
        return MealyMachine(
            states=("a", "b"),
            inputs=("i", TICK),
            outputs=("o", TICK),
            initial="a",
            transitions={
                ("a", "i"): ("o", "b"),
                ("a", TICK): (TICK, "a"),
                ("b", TICK): (TICK, "a"),
            },
        )

    def test_accepting_run(self):
        result = mealy_run(self._machine(), ("i", TICK, TICK, "i"))
        assert result.accepted
        assert result.outputs == ("o", TICK, TICK, "o")
        assert result.final == "b"

    def test_rejection_point(self):
        result = mealy_run(self._machine(), ("i", "i"))
        assert not result.accepted
        assert result.rejection_point == 1
        assert result.outputs == ("o",)


class TestTickEncoding:
    def test_integral_delays_use_two_ticks_per_unit(self):
        assert tick_encode_delay(0) == 0
        assert tick_encode_delay(1) == 2
        assert tick_encode_delay(3) == 6

    def test_fractional_delays_use_an_odd_count(self):
        assert tick_encode_delay(Fraction(1, 2)) == 1
        assert tick_encode_delay(Fraction(3, 2)) == 3
        assert tick_encode_delay(Fraction(7, 3)) == 5
        assert tick_encode_delay(Fraction(1, 10)) == 1

    @given(st.fractions(min_value=0, max_value=50, max_denominator=12))
    def test_parity_marks_integrality(self, t):
        n = tick_encode_delay(t)
        assert (n % 2 == 0) == (t.denominator == 1)
        assert n // 2 == int(t)  # floor survives the encoding

    def test_word_encoding_interleaves_blocks_and_symbols(self):
        w = TimedWord.of(("a", 1), ("b", 1), ("c", "5/2"))
        assert tick_encode_word(w) == (TICK, TICK, "a", "b", TICK, TICK, TICK, "c")

    def test_negative_delay_rejected(self):
        with pytest.raises(ValueError):
            tick_encode_delay(-1)
