"""
Running timed words on a timed machine
======================================
"""

from fractions import Fraction
from pathlib import Path

from tfsm import (
    Guard, TimedMachine, TimedState, TimedWord, Timeout, Transition,
    advance, parse_document, run, step,
)

MACHINES = Path(__file__).resolve().parent.parent / "machines"

# A two-state machine: s0 answers o1 while the clock is under 1, then times
# out into s1; s1 answers o2 up to 1 and o1 afterwards, and never times out.
doc = parse_document((MACHINES / "guarded_pair.tfsm").read_text())
machine = doc.body
print("loaded", doc.name, "with states", machine.states)

# A timed word is a sequence of (symbol, timestamp) pairs, timestamps
# non-decreasing.  Fractions keep every comparison exact.
word = TimedWord.of(("i", 0), ("i", Fraction(3, 2)), ("i", Fraction(3, 2)))
result = run(machine, word)
print("word:     ", word)
print("accepted: ", result.accepted)
print("outputs:  ", result.outputs)     # ('o1', 'o2', 'o2')
print("final:    ", result.final)       # back in s1 with the clock reset

# Time alone moves the machine: delaying 1 in s0 fires the timeout into s1.
print(advance(machine, TimedState("s0", Fraction(0)), 1))

# step() fires a single guarded transition at the current clock value.
output, succ = step(machine, TimedState("s1", Fraction(1, 2)), "i")
print(output, succ)                                           # o2: inside [0,1]
output, succ = step(machine, TimedState("s1", Fraction(3, 2)), "i")
print(output, succ)                                           # o1: inside (1,inf)

# Where no guard covers the clock, the word is rejected; the result says
# at which index and in which configuration the machine got stuck.
gapped = TimedMachine(
    states=("w",), inputs=("i",), outputs=("o",), initial="w",
    transitions=(Transition("w", "i", Guard(1, 2, True, True), "o", "w"),),
    timeouts={"w": Timeout(None)},
)
stuck = run(gapped, TimedWord.of(("i", 1), ("i", 4)))
print("rejected at", stuck.rejection_point, "in", stuck.final)
