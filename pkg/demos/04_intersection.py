"""
Equivalence and intersection of timed machines
==============================================
"""

from fractions import Fraction
from pathlib import Path

from tfsm import (
    TimedWord, abstract, minimize, parse_document, product, run, serialize,
    tfsm_equivalent, tfsm_intersect,
)

MACHINES = Path(__file__).resolve().parent.parent / "machines"
handover = parse_document((MACHINES / "handover.tfsm").read_text()).body
blinker = parse_document((MACHINES / "blinker.tfsm").read_text()).body

# Equality of timed behaviors is decided on the tick abstractions; the
# counterexample, if any, comes back as a timed word checked against both.
verdict = tfsm_equivalent(handover, blinker)
print("equivalent:", verdict.equivalent)
print("separated by:", verdict.counterexample, "-", verdict.detail)

# The common behavior of two machines: abstract both, take the product of
# the tick machines, refine the result back into a timed machine.
inner = product(abstract(handover), abstract(blinker))
print("product states:", len(inner.states), "- minimized:", len(minimize(inner).states))

meet = tfsm_intersect(handover, blinker)
print(serialize(meet, "meet"))

# Wherever the two machines agree, the meet behaves like both; at the first
# disagreement it is undefined.
for word in (
    TimedWord.of(("i", 0)),                      # both answer o1
    TimedWord.of(("i", Fraction(1, 2))),          # o1 vs o2: no common behavior
    TimedWord.of(("i", 3), ("i", Fraction(7, 2))),
):
    a, b, m = run(handover, word), run(blinker, word), run(meet, word)
    print(f"{str(word):24} handover={a.outputs} blinker={b.outputs} meet={m.outputs}"
          f"{'' if m.accepted else ' (rejected)'}")

# The meet is below both factors, not equal to either.
print("meet == handover:", tfsm_equivalent(meet, handover).equivalent)
print("meet == blinker: ", tfsm_equivalent(meet, blinker).equivalent)
