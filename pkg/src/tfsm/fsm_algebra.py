"""Algebra of partial Mealy machines: product, equivalence, minimization.

Machines here are *partial*: a (state, input) pair without a transition is
undefined, and definedness is observable.  Two machines are equivalent iff
from their initial states every input sequence is defined in one exactly
when it is defined in the other, with identical outputs along the way.  The
product (intersection) keeps a move exactly when both machines make it with
the same output, so its behavior is the largest common behavior of the two.

Everything below is plain breadth-first search over state pairs, which
keeps counterexamples shortest and state numbering stable.
"""

from dataclasses import dataclass

from .core import MealyMachine

OUTPUT_MISMATCH = "OUTPUT_MISMATCH"
DEFINEDNESS_MISMATCH = "DEFINEDNESS_MISMATCH"


@dataclass(frozen=True)
class Counterexample:
    """A shortest input word on which two machines disagree.

    ``kind`` is :data:`OUTPUT_MISMATCH` when both machines consume the word
    but the last outputs differ, :data:`DEFINEDNESS_MISMATCH` when exactly
    one of them rejects its last symbol.
    """

    word: tuple[str, ...]
    kind: str
    detail: str


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    counterexample: Counterexample | None = None


def _input_order(a: MealyMachine, b: MealyMachine) -> tuple[str, ...]:
    extras = tuple(i for i in b.inputs if i not in a.inputs)
    return a.inputs + extras


def equivalent(a: MealyMachine, b: MealyMachine) -> EquivalenceVerdict:
    """Decide behavioral equivalence; on failure carry a shortest counterexample.

    Inputs outside a machine's alphabet count as undefined everywhere, so
    machines over different alphabets can still be compared.
    """
    inputs = _input_order(a, b)
    start = (a.initial, b.initial)
    prefixes = {start: ()}
    queue = [start]
    while queue:
        pair = queue.pop(0)
        sa, sb = pair
        prefix = prefixes[pair]
        for i in inputs:
            ea = a.transitions.get((sa, i))
            eb = b.transitions.get((sb, i))
            if ea is None and eb is None:
                continue
            word = prefix + (i,)
            if ea is None or eb is None:
                where = "the first machine" if eb is None else "the second machine"
                return EquivalenceVerdict(False, Counterexample(
                    word, DEFINEDNESS_MISMATCH,
                    f"input {i} after {' '.join(prefix) or 'the empty word'} "
                    f"is defined only in {where}",
                ))
            if ea[0] != eb[0]:
                return EquivalenceVerdict(False, Counterexample(
                    word, OUTPUT_MISMATCH,
                    f"input {i} after {' '.join(prefix) or 'the empty word'} "
                    f"outputs {ea[0]} in the first machine but {eb[0]} in the second",
                ))
            succ = (ea[1], eb[1])
            if succ not in prefixes:
                prefixes[succ] = word
                queue.append(succ)
    return EquivalenceVerdict(True)


def product(a: MealyMachine, b: MealyMachine, renumber: bool = True) -> MealyMachine:
    """The intersection machine: moves both machines make with equal output.

    Only reachable pairs become states.  With ``renumber`` (the default)
    states are named 0, 1, 2, ... in discovery order; otherwise they keep
    the pair shape ``(left|right)``.
    """
    if set(a.inputs) != set(b.inputs):
        only_a = sorted(set(a.inputs) - set(b.inputs))
        only_b = sorted(set(b.inputs) - set(a.inputs))
        raise ValueError(
            f"input alphabets differ: {only_a or '-'} only in the first machine, "
            f"{only_b or '-'} only in the second"
        )
    start = (a.initial, b.initial)
    order = [start]
    seen = {start}
    edges = {}
    queue = [start]
    while queue:
        pair = queue.pop(0)
        sa, sb = pair
        for i in a.inputs:
            ea = a.transitions.get((sa, i))
            eb = b.transitions.get((sb, i))
            if ea is None or eb is None or ea[0] != eb[0]:
                continue
            succ = (ea[1], eb[1])
            edges[(pair, i)] = (ea[0], succ)
            if succ not in seen:
                seen.add(succ)
                order.append(succ)
                queue.append(succ)
    if renumber:
        names = {pair: str(k) for k, pair in enumerate(order)}
    else:
        names = {pair: f"({pair[0]}|{pair[1]})" for pair in order}
    outputs = a.outputs + tuple(o for o in b.outputs if o not in a.outputs)
    return MealyMachine(
        states=tuple(names[pair] for pair in order),
        inputs=a.inputs,
        outputs=outputs,
        initial=names[start],
        transitions={(names[pair], i): (o, names[succ]) for (pair, i), (o, succ) in edges.items()},
    )


def reachable(fsm: MealyMachine) -> MealyMachine:
    """Restrict to the states reachable from the initial state."""
    seen = {fsm.initial}
    queue = [fsm.initial]
    while queue:
        s = queue.pop(0)
        for i in fsm.inputs:
            edge = fsm.transitions.get((s, i))
            if edge is not None and edge[1] not in seen:
                seen.add(edge[1])
                queue.append(edge[1])
    states = tuple(s for s in fsm.states if s in seen)
    return MealyMachine(
        states=states,
        inputs=fsm.inputs,
        outputs=fsm.outputs,
        initial=fsm.initial,
        transitions={(s, i): e for (s, i), e in fsm.transitions.items() if s in seen},
    )


def minimize(fsm: MealyMachine) -> MealyMachine:
    """The smallest machine equivalent to ``fsm``.

    Unreachable states are dropped, then equivalent states are merged by
    partition refinement.  Undefinedness separates states just like a
    differing output does.  Each class is named after its first member in
    declaration order.
    """
    fsm = reachable(fsm)
    block = {s: 0 for s in fsm.states}
    while True:
        signatures = {}
        for s in fsm.states:
            sig = [block[s]]
            for i in fsm.inputs:
                edge = fsm.transitions.get((s, i))
                sig.append(None if edge is None else (edge[0], block[edge[1]]))
            signatures[s] = tuple(sig)
        relabel = {}
        new_block = {}
        for s in fsm.states:
            sig = signatures[s]
            if sig not in relabel:
                relabel[sig] = len(relabel)
            new_block[s] = relabel[sig]
        if new_block == block:
            break
        block = new_block

    representative = {}
    for s in fsm.states:
        representative.setdefault(block[s], s)
    states = tuple(representative[b] for b in sorted(representative, key=lambda b: fsm.states.index(representative[b])))
    transitions = {}
    for s in states:
        for i in fsm.inputs:
            edge = fsm.transitions.get((s, i))
            if edge is not None:
                transitions[(s, i)] = (edge[0], representative[block[edge[1]]])
    return MealyMachine(
        states=states,
        inputs=fsm.inputs,
        outputs=fsm.outputs,
        initial=representative[block[fsm.initial]],
        transitions=transitions,
    )


def canonical_fsm(fsm: MealyMachine) -> MealyMachine:
    """A canonical renaming for isomorphism checks.

    States become 0, 1, 2, ... in breadth-first order with inputs explored
    in sorted order; alphabets are sorted.  Two machines have equal
    canonical forms exactly when their reachable parts are isomorphic.
    """
    inputs = tuple(sorted(fsm.inputs))
    names = {fsm.initial: "0"}
    order = [fsm.initial]
    queue = [fsm.initial]
    while queue:
        s = queue.pop(0)
        for i in inputs:
            edge = fsm.transitions.get((s, i))
            if edge is not None and edge[1] not in names:
                names[edge[1]] = str(len(names))
                order.append(edge[1])
                queue.append(edge[1])
    return MealyMachine(
        states=tuple(names[s] for s in order),
        inputs=inputs,
        outputs=tuple(sorted(fsm.outputs)),
        initial="0",
        transitions={
            (names[s], i): (o, names[t])
            for (s, i), (o, t) in fsm.transitions.items()
            if s in names
        },
    )
