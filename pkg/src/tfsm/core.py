"""Domain types for timed and untimed machines.

A timed finite state machine (TFSM) is a Mealy-style transducer with a single
clock.  Transitions carry *guards* -- integer-bounded intervals restricting
the clock values at which an input may be consumed -- and every state has a
*timeout*: when the clock reaches the timeout bound with no input, the
machine jumps to the timeout target and the clock resets to zero.

All time values (clock readings, timestamps, delays) are exact rationals;
no floating point is involved in any time comparison.  ``fractions.Fraction``
provides exactly the arithmetic needed, so it is used directly as the time
type under the alias :data:`Rational`.

Construction-time ``ValueError`` is reserved for values that make no sense at
all (an empty guard, a timeout bound of zero, a decreasing timed word).
Machine-level consistency -- determinism, alphabet disjointness, guards
fitting below timeouts -- is checked by :func:`validate_tfsm`, which returns
violations as data so that broken machines can be inspected and reported.
"""

from dataclasses import dataclass, field
from fractions import Fraction

#: Exact time values.  Fractions are always in lowest terms with positive
#: denominator, and comparison, arithmetic, floor and ceiling are exact.
Rational = Fraction

#: The reserved tick symbol of untimed machines, standing for the passage of
#: half a time unit.  It is spelled the same way in machine files, and it is
#: rejected as an ordinary user symbol everywhere.
TICK = "@t"


@dataclass(frozen=True)
class Guard:
    """A clock interval attached to a transition.

    ``upper is None`` means the interval is unbounded above (written
    ``inf`` in files).  Endpoint closedness is stored separately, so all
    shapes ``[a,b] [a,b) (a,b] (a,b) [a,inf) (a,inf)`` are representable.
    A guard is never empty: ``lower <= upper``, and a point interval
    (``lower == upper``) must be closed on both ends.
    """

    lower: int
    upper: int | None
    lower_closed: bool
    upper_closed: bool

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError(f"guard lower bound must be non-negative, got {self.lower}")
        if self.upper is None:
            if self.upper_closed:
                raise ValueError("a guard unbounded above cannot be closed above")
        elif self.lower > self.upper:
            raise ValueError(f"empty guard: lower bound {self.lower} exceeds upper bound {self.upper}")
        elif self.lower == self.upper and not (self.lower_closed and self.upper_closed):
            raise ValueError(f"empty guard: point interval at {self.lower} must be closed on both ends")

    @classmethod
    def point(cls, n: int) -> "Guard":
        """The point interval [n,n]."""
        return cls(n, n, True, True)

    def contains(self, x) -> bool:
        """Exact membership test for a rational clock value."""
        x = Fraction(x)
        if x < self.lower or (x == self.lower and not self.lower_closed):
            return False
        if self.upper is None:
            return True
        return x < self.upper or (x == self.upper and self.upper_closed)

    def __str__(self):
        left = "[" if self.lower_closed else "("
        if self.upper is None:
            return f"{left}{self.lower},inf)"
        right = "]" if self.upper_closed else ")"
        return f"{left}{self.lower},{self.upper}{right}"


def guard_contains(guard: Guard, x) -> bool:
    """True iff the rational ``x`` lies inside ``guard``."""
    return guard.contains(x)


def guards_disjoint(g1: Guard, g2: Guard) -> bool:
    """True iff no rational value belongs to both intervals."""
    if g1.lower > g2.lower:
        lo, lo_closed = g1.lower, g1.lower_closed
    elif g2.lower > g1.lower:
        lo, lo_closed = g2.lower, g2.lower_closed
    else:
        lo, lo_closed = g1.lower, g1.lower_closed and g2.lower_closed
    if g1.upper is None and g2.upper is None:
        return False
    if g1.upper is None:
        hi, hi_closed = g2.upper, g2.upper_closed
    elif g2.upper is None:
        hi, hi_closed = g1.upper, g1.upper_closed
    elif g1.upper < g2.upper:
        hi, hi_closed = g1.upper, g1.upper_closed
    elif g2.upper < g1.upper:
        hi, hi_closed = g2.upper, g2.upper_closed
    else:
        hi, hi_closed = g1.upper, g1.upper_closed and g2.upper_closed
    if lo < hi:
        return False  # rationals are dense: any open gap is inhabited
    if lo > hi:
        return True
    return not (lo_closed and hi_closed)


def _guard_sort_key(g: Guard):
    return (
        g.lower,
        not g.lower_closed,
        g.upper is None,
        g.upper if g.upper is not None else 0,
        not g.upper_closed,
    )


@dataclass(frozen=True)
class Timeout:
    """Per-state timeout.

    ``bound is None`` means the state may wait forever and carries no
    target.  A finite bound is a positive integer together with the state
    entered when the clock reaches it.
    """

    bound: int | None
    target: str | None = None

    def __post_init__(self):
        if self.bound is None:
            if self.target is not None:
                raise ValueError("an infinite timeout carries no target state")
        else:
            if self.bound < 1:
                raise ValueError(f"finite timeout bound must be at least 1, got {self.bound}")
            if self.target is None:
                raise ValueError("a finite timeout needs a target state")


@dataclass(frozen=True)
class Transition:
    """One guarded input/output transition of a timed machine."""

    source: str
    input: str
    guard: Guard
    output: str
    target: str

    def __str__(self):
        return f"{self.source} {self.input} {self.guard} / {self.output} -> {self.target}"


@dataclass(frozen=True)
class TimedMachine:
    """A deterministic single-clock timed finite state machine.

    ``states`` keeps declaration order (it is the canonical order used by
    the serializer).  ``transitions`` is stored sorted by (source position,
    input, guard, output, target position), so two machines with the same
    transition set compare equal regardless of construction order.
    ``timeouts`` must map every state -- totality is one of the things
    :func:`validate_tfsm` checks.
    """

    states: tuple[str, ...]
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    initial: str
    transitions: tuple[Transition, ...]
    timeouts: dict[str, Timeout]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "timeouts", dict(self.timeouts))
        position = {s: k for k, s in enumerate(self.states)}
        fallback = len(position)

        def key(t: Transition):
            return (
                position.get(t.source, fallback),
                t.source,
                t.input,
                _guard_sort_key(t.guard),
                t.output,
                position.get(t.target, fallback),
                t.target,
            )

        object.__setattr__(self, "transitions", tuple(sorted(self.transitions, key=key)))

    def transitions_from(self, state: str) -> tuple[Transition, ...]:
        return tuple(t for t in self.transitions if t.source == state)


@dataclass(frozen=True)
class MealyMachine:
    """A partial deterministic untimed Mealy machine.

    Both alphabets include the reserved tick symbol :data:`TICK`.
    ``transitions`` maps (state, input) to (output, next state); pairs
    without an entry are undefined, making the machine's behavior a
    partial function.  Determinism is guaranteed by the map shape.
    """

    states: tuple[str, ...]
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    initial: str
    transitions: dict[tuple[str, str], tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "transitions", dict(self.transitions))

    @property
    def user_inputs(self) -> tuple[str, ...]:
        return tuple(i for i in self.inputs if i != TICK)

    @property
    def user_outputs(self) -> tuple[str, ...]:
        return tuple(o for o in self.outputs if o != TICK)


@dataclass(frozen=True)
class TimedWord:
    """A finite sequence of (symbol, timestamp) pairs.

    Timestamps are exact rationals, non-negative and non-decreasing.
    Equal consecutive timestamps are allowed (a delay of zero between
    symbols).  The delay sequence is measured from time zero.
    """

    entries: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        fixed = tuple((sym, Fraction(t)) for sym, t in self.entries)
        object.__setattr__(self, "entries", fixed)
        previous = Fraction(0)
        for sym, t in fixed:
            if t < 0:
                raise ValueError(f"negative timestamp {t} on symbol {sym!r}")
            if t < previous:
                raise ValueError(f"timestamps must be non-decreasing, got {previous} then {t}")
            previous = t

    @classmethod
    def of(cls, *pairs) -> "TimedWord":
        """Build a word from (symbol, time) pairs; times may be strings like '3/2'."""
        return cls(tuple((sym, Fraction(t)) for sym, t in pairs))

    def delays(self) -> tuple[Fraction, ...]:
        """Consecutive timestamp differences, the first measured from 0."""
        out = []
        previous = Fraction(0)
        for _, t in self.entries:
            out.append(t - previous)
            previous = t
        return tuple(out)

    def symbols(self) -> tuple[str, ...]:
        return tuple(sym for sym, _ in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __str__(self):
        return " ".join(f"({sym}, {t})" for sym, t in self.entries)


@dataclass(frozen=True)
class TimedState:
    """A machine state together with the current clock value.

    For a valid configuration the clock is strictly below the state's
    timeout bound; that is a machine-relative condition maintained by the
    semantics operations rather than checked here.
    """

    state: str
    clock: Fraction

    def __post_init__(self):
        clock = Fraction(self.clock)
        if clock < 0:
            raise ValueError(f"negative clock value {clock}")
        object.__setattr__(self, "clock", clock)

    def __str__(self):
        return f"({self.state}, {self.clock})"


def validate_tfsm(machine: TimedMachine) -> list[str]:
    """Check every structural invariant of a timed machine.

    Returns a list of human-readable violations; an empty list means the
    machine is valid.  Nothing is raised: violations are data.
    """
    problems = []
    states = machine.states
    seen = set()
    for s in states:
        if s in seen:
            problems.append(f"state {s!r} declared more than once")
        seen.add(s)
    for label, alphabet in (("input", machine.inputs), ("output", machine.outputs)):
        dup = {a for a in alphabet if alphabet.count(a) > 1}
        for a in sorted(dup):
            problems.append(f"{label} symbol {a!r} declared more than once")
    if not states:
        problems.append("machine has no states")
    if not machine.inputs:
        problems.append("machine has an empty input alphabet")
    if not machine.outputs:
        problems.append("machine has an empty output alphabet")
    state_set, input_set, output_set = set(states), set(machine.inputs), set(machine.outputs)
    for x in sorted(state_set & input_set):
        problems.append(f"{x!r} is both a state and an input symbol")
    for x in sorted(state_set & output_set):
        problems.append(f"{x!r} is both a state and an output symbol")
    for x in sorted(input_set & output_set):
        problems.append(f"{x!r} is both an input and an output symbol")
    if machine.initial not in state_set:
        problems.append(f"initial state {machine.initial!r} is not a declared state")

    for s in states:
        if s not in machine.timeouts:
            problems.append(f"state {s} has no timeout entry")
    for s, timeout in machine.timeouts.items():
        if s not in state_set:
            problems.append(f"timeout declared for unknown state {s!r}")
        elif timeout.bound is not None and timeout.target not in state_set:
            problems.append(f"timeout of state {s} targets unknown state {timeout.target!r}")

    for t in machine.transitions:
        if t.source not in state_set:
            problems.append(f"transition ({t}) leaves unknown state {t.source!r}")
        if t.target not in state_set:
            problems.append(f"transition ({t}) enters unknown state {t.target!r}")
        if t.input not in input_set:
            problems.append(f"transition ({t}) uses undeclared input {t.input!r}")
        if t.output not in output_set:
            problems.append(f"transition ({t}) uses undeclared output {t.output!r}")

    # Determinism: guards of a (state, input) group must be pairwise disjoint.
    groups: dict[tuple[str, str], list[Transition]] = {}
    for t in machine.transitions:
        groups.setdefault((t.source, t.input), []).append(t)
    for (s, i), group in groups.items():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                if not guards_disjoint(group[a].guard, group[b].guard):
                    problems.append(
                        f"nondeterministic: guards {group[a].guard} and {group[b].guard} "
                        f"overlap on input {i} at state {s}"
                    )

    # Every guard must lie strictly below its source state's timeout bound.
    for t in machine.transitions:
        timeout = machine.timeouts.get(t.source)
        if timeout is None or timeout.bound is None:
            continue
        bound = timeout.bound
        fits = t.guard.upper is not None and (
            t.guard.upper < bound or (t.guard.upper == bound and not t.guard.upper_closed)
        )
        if not fits:
            problems.append(
                f"guard {t.guard} on transition ({t}) admits clock values not below "
                f"the timeout bound {bound} of state {t.source}"
            )

    return problems


def validate_fsm(machine: MealyMachine) -> list[str]:
    """Check the structural invariants of a partial Mealy machine.

    Same contract as :func:`validate_tfsm`: violations come back as a list
    of messages, empty when the machine is consistent.
    """
    problems = []
    states = machine.states
    seen = set()
    for s in states:
        if s in seen:
            problems.append(f"state {s!r} declared more than once")
        seen.add(s)
    for label, alphabet in (("input", machine.inputs), ("output", machine.outputs)):
        dup = {a for a in alphabet if alphabet.count(a) > 1}
        for a in sorted(dup):
            problems.append(f"{label} symbol {a!r} declared more than once")
    if not states:
        problems.append("machine has no states")
    if not machine.inputs:
        problems.append("machine has an empty input alphabet")
    if not machine.outputs:
        problems.append("machine has an empty output alphabet")
    state_set, input_set, output_set = set(states), set(machine.inputs), set(machine.outputs)
    for x in sorted(state_set & input_set):
        problems.append(f"{x!r} is both a state and an input symbol")
    for x in sorted(state_set & output_set):
        problems.append(f"{x!r} is both a state and an output symbol")
    if machine.initial not in state_set:
        problems.append(f"initial state {machine.initial!r} is not a declared state")
    for (s, i), (o, target) in sorted(machine.transitions.items()):
        if s not in state_set:
            problems.append(f"transition from unknown state {s!r}")
        if target not in state_set:
            problems.append(f"transition ({s}, {i}) enters unknown state {target!r}")
        if i not in input_set:
            problems.append(f"transition at {s} uses undeclared input {i!r}")
        if o not in output_set:
            problems.append(f"transition ({s}, {i}) uses undeclared output {o!r}")
    return problems
