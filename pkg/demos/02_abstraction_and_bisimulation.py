"""
From timed machine to tick Mealy machine
========================================
"""

from fractions import Fraction
from pathlib import Path

from tfsm import (
    BisimRelation, abstract, canonical_bisimulation, check_bisimulation,
    interval_set, max_constant, mealy_run, parse_document, run, serialize,
    tick_encode_word, TimedWord,
)

MACHINES = Path(__file__).resolve().parent.parent / "machines"
machine = parse_document((MACHINES / "guarded_pair.tfsm").read_text()).body

# Guards and timeouts only mention integers up to max_constant, so clock
# values need only be known up to this partition:
n = max_constant(machine)
print("largest constant:", n)
print("clock intervals: ", " ".join(str(i) for i in interval_set(n)))

# The abstraction has one state per reachable (state, interval) pair.  The
# reserved symbol @t advances the clock half a unit; the other transitions
# are the guarded moves that are enabled on the whole interval.
fsm = abstract(machine)
print(serialize(fsm, "guarded_pair_abstract"))

# Timed words translate to tick words: a delay d costs 2*d ticks when d is
# an integer, and 2*floor(d)+1 ticks otherwise.
word = TimedWord.of(("i", 0), ("i", Fraction(3, 2)))
ticks = tick_encode_word(word)
print("timed word:", word)
print("tick word: ", " ".join(ticks))

# Running the tick word on the abstraction produces the tick encoding of
# the timed outputs -- the two semantics agree step for step.
timed = run(machine, word)
untimed = mealy_run(fsm, ticks)
print("timed outputs:  ", timed.outputs)
print("untimed outputs:", " ".join(untimed.outputs))

# The correspondence is a bisimulation between configurations and states;
# the canonical relation pairs whatever the two machines reach together.
relation = canonical_bisimulation(machine, fsm)
verdict = check_bisimulation(machine, fsm, relation)
print("relation size:", len(relation), "- bisimulation:", verdict.ok)

# check_bisimulation tells you exactly what breaks in a wrong relation.
bad = BisimRelation(frozenset(sorted(relation)[:2]))
broken = check_bisimulation(machine, fsm, bad)
print("broken condition:", broken.condition, "-", broken.detail)
