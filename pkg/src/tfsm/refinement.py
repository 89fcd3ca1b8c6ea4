"""Refinement: rebuilding a timed machine from a tick Mealy machine.

Refinement inverts abstraction up to behavioral equivalence.  Each state of
the Mealy machine becomes a state of the timed machine, and its guarded
transitions and timeout are read off a *delay walk*: follow tick transitions
while sliding a cursor through the clock intervals [0,0], (0,1), [1,1],
(1,2), ...  At each stop, the user inputs defined there become transitions
guarded by the cursor interval.  The walk ends as soon as its next stop is a
state already visited (including the starting state itself): re-entering a
visited state means the remaining behavior is that state's own behavior with
the clock restarted, which is exactly what a timeout expresses.  An exit on
an integer boundary [n,n] yields timeout bound ``n``; an exit inside an open
interval (n,n+1) first replays the visited state's inputs under that guard
-- the timed machine can still accept inputs there before the clock hits
``n+1`` -- and then times out to that state's own tick successor at bound
``n + 1``.

Only *time-progressive* machines are refinable: every state must let time
pass, i.e. carry a tick transition that outputs the tick.  States violating
that are reported by :func:`is_time_progressive`.
"""

from dataclasses import dataclass

from .core import Guard, MealyMachine, TimedMachine, Timeout, Transition, TICK


@dataclass(frozen=True)
class TimeProgressReport:
    """Whether time can pass in every state; ``offenders`` lists those where it cannot."""

    ok: bool
    offenders: tuple[str, ...]


def is_time_progressive(fsm: MealyMachine) -> TimeProgressReport:
    """Check that every state has a tick transition whose output is the tick."""
    offenders = []
    for s in fsm.states:
        edge = fsm.transitions.get((s, TICK))
        if edge is None or edge[0] != TICK:
            offenders.append(s)
    return TimeProgressReport(not offenders, tuple(offenders))


def _cursor_guard(position: int) -> Guard:
    """The clock interval at stop ``position`` of a delay walk."""
    n, parity = divmod(position, 2)
    if parity == 0:
        return Guard.point(n)
    return Guard(n, n + 1, False, False)


def _user_moves(fsm: MealyMachine, state: str):
    for i in fsm.user_inputs:
        edge = fsm.transitions.get((state, i))
        if edge is not None:
            yield i, edge[0], edge[1]


def _refine_state(fsm: MealyMachine, start: str):
    """Delay-walk one state into its guarded transitions and timeout."""
    transitions = []
    marked = {start}
    state = start
    position = 0
    while True:
        guard = _cursor_guard(position)
        for i, o, target in _user_moves(fsm, state):
            transitions.append(Transition(start, i, guard, o, target))
        nxt = fsm.transitions[(state, TICK)][1]
        position += 1
        if nxt in marked:
            n, parity = divmod(position, 2)
            if parity == 0:
                return transitions, Timeout(n, nxt)
            # Exit inside (n,n+1): inputs of the revisited state are still
            # acceptable until the clock reaches n+1, then time out to its
            # own tick successor.
            guard = _cursor_guard(position)
            for i, o, target in _user_moves(fsm, nxt):
                transitions.append(Transition(start, i, guard, o, target))
            return transitions, Timeout(n + 1, fsm.transitions[(nxt, TICK)][1])
        marked.add(nxt)
        state = nxt


def refine(fsm: MealyMachine, merge: bool = True) -> TimedMachine:
    """The timed machine whose tick behavior is that of ``fsm``.

    States unreachable in the result are dropped (reachability counts both
    transition targets and timeout targets).  Unless ``merge`` is false,
    guards of same-labelled transitions that touch are merged afterwards.
    """
    progress = is_time_progressive(fsm)
    if not progress.ok:
        names = ", ".join(progress.offenders)
        raise ValueError(f"machine is not time-progressive: time cannot pass in {names}")
    for (s, i), (o, _) in sorted(fsm.transitions.items()):
        if i != TICK and o == TICK:
            raise ValueError(f"input {i} at state {s} outputs the tick symbol; cannot be a guarded move")

    refined = {s: _refine_state(fsm, s) for s in fsm.states}

    reachable = {fsm.initial}
    queue = [fsm.initial]
    while queue:
        s = queue.pop(0)
        transitions, timeout = refined[s]
        targets = [t.target for t in transitions] + [timeout.target]
        for target in targets:
            if target is not None and target not in reachable:
                reachable.add(target)
                queue.append(target)

    states = tuple(s for s in fsm.states if s in reachable)
    machine = TimedMachine(
        states=states,
        inputs=fsm.user_inputs,
        outputs=fsm.user_outputs,
        initial=fsm.initial,
        transitions=tuple(t for s in states for t in refined[s][0]),
        timeouts={s: refined[s][1] for s in states},
    )
    return merge_guards(machine) if merge else machine


def _touching(g1: Guard, g2: Guard) -> bool:
    """True iff g1 and g2 (g1 sorted first) union to a single interval."""
    if g1.upper is None:
        return True
    if g2.lower < g1.upper:
        return True
    return g2.lower == g1.upper and (g1.upper_closed or g2.lower_closed)


def _union(g1: Guard, g2: Guard) -> Guard:
    if g1.upper is None or (g2.upper is not None and g2.upper < g1.upper):
        upper, upper_closed = g1.upper, g1.upper_closed
    elif g2.upper is None or g2.upper > g1.upper:
        upper, upper_closed = g2.upper, g2.upper_closed
    else:
        upper, upper_closed = g1.upper, g1.upper_closed or g2.upper_closed
    return Guard(g1.lower, upper, g1.lower_closed, upper_closed)


def merge_guards(machine: TimedMachine) -> TimedMachine:
    """Merge guards of transitions sharing source, input, output and target.

    Guards whose union is again a single interval are replaced by that
    union, repeatedly, until no two remain mergeable.  The behavior of the
    machine is unchanged: no clock value is added or lost.
    """
    groups: dict[tuple[str, str, str, str], list[Guard]] = {}
    for t in machine.transitions:
        groups.setdefault((t.source, t.input, t.output, t.target), []).append(t.guard)

    merged_transitions = []
    for (source, i, o, target), guards in groups.items():
        guards.sort(key=lambda g: (g.lower, not g.lower_closed))
        merged = [guards[0]]
        for g in guards[1:]:
            if _touching(merged[-1], g):
                merged[-1] = _union(merged[-1], g)
            else:
                merged.append(g)
        merged_transitions.extend(Transition(source, i, g, o, target) for g in merged)

    return TimedMachine(
        states=machine.states,
        inputs=machine.inputs,
        outputs=machine.outputs,
        initial=machine.initial,
        transitions=tuple(merged_transitions),
        timeouts=machine.timeouts,
    )
