"""
Machine files, DOT drawings, timed-automaton text
=================================================
"""

from pathlib import Path

from tfsm import (
    ParseError, export_dot, export_timed_automaton, parse_document, serialize,
)

MACHINES = Path(__file__).resolve().parent.parent / "machines"

# Machine files are whitespace-tokenized text.  A timed machine:
text = """
tfsm doorbell                 # '#' starts a comment
inputs press
outputs ring silence
states idle rung
initial idle
timeout idle inf
timeout rung 2 -> idle        # clock reaches 2: back to idle
trans idle press [0,inf) / ring -> rung
trans rung press [0,1) / ring -> rung
trans rung press [1,2) / silence -> rung
"""
doc = parse_document(text)
print("parsed", doc.kind, doc.name, "with", len(doc.body.transitions), "transitions")

# serialize() writes the canonical form: header lines, timeouts in state
# order, transitions sorted.  Parsing it back gives the same machine.
canonical = serialize(doc.body, doc.name)
print(canonical)
assert parse_document(canonical).body == doc.body

# Syntax errors carry exact positions.
try:
    parse_document("tfsm t\ninputs i\noutputs o\nstates A\ninitial A\ntrans A i 1..2 / o -> A\n")
except ParseError as exc:
    print("parse error at line", exc.line, "column", exc.column)
    print(" ", exc)

# Graphviz: pipe this into `dot -Tsvg` to draw the machine.  Guarded moves
# are labelled guard:input/output, timeouts are dashed t=bound edges.
print(export_dot(doc.body, doc.name))

# The same machine in single-clock timed-automaton vocabulary: timeouts
# become location invariants plus silent eps edges, every move resets x.
print(export_timed_automaton(doc.body, doc.name))
