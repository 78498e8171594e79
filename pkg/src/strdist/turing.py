"""Single-tape Turing machines with explicit resource bounds.

The simulators here are the ground truth that compiled distance instances
are checked against, so they follow the same conventions as the
reductions:

* acceptance happens on entry: a machine accepts as soon as any visited
  configuration is in an accepting state;
* a configuration without an applicable transition halts (and rejects if
  not accepting);
* the head starts on the first input symbol.

For deterministic machines the head may visit ``p(n)`` cells to the left
of the input and ``p(n) + 1`` cells to its right, which are exactly the
cells the padded 3-Hamming encoding can host; leaving that window is
reported as ``SPACE_EXCEEDED``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .core import Str, Violation
from .errors import NondeterministicMachine
from .symbols import Symbol


class Verdict(Enum):
    ACCEPT = "Accept"
    REJECT = "Reject"
    SPACE_EXCEEDED = "SpaceExceeded"
    TIME_EXCEEDED = "TimeExceeded"


def poly(coeffs: Sequence[int], n: int) -> int:
    return sum(c * n**i for i, c in enumerate(coeffs))


@dataclass(frozen=True)
class ResourceBounds:
    """``c``, ``p`` and ``q`` with polynomials given low-order coefficient first.

    A deterministic machine runs for at most ``c**q(n)`` steps in space
    ``p(n)``; a nondeterministic one halts within ``2**p(n)`` steps.
    """

    c: int = 2
    p: tuple[int, ...] = (1,)
    q: tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))
        object.__setattr__(self, "q", tuple(self.q))
        if self.c < 2:
            raise ValueError("c must be at least 2")
        if any(x < 0 for x in self.p + self.q):
            raise ValueError("polynomial coefficients must be non-negative")

    def space(self, n: int) -> int:
        return poly(self.p, n)

    def time_exponent(self, n: int) -> int:
        return poly(self.q, n)

    def dtm_steps(self, n: int) -> int:
        return self.c ** self.time_exponent(n)

    def ntm_steps(self, n: int) -> int:
        return 2 ** self.space(n)


@dataclass(frozen=True, order=True)
class Transition:
    state: Symbol
    read: Symbol
    target: Symbol
    write: Symbol
    move: str

    def __post_init__(self):
        if self.move not in ("L", "R"):
            raise ValueError(f"move must be 'L' or 'R', got {self.move!r}")


@dataclass(frozen=True)
class TuringMachine:
    states: tuple[Symbol, ...]
    tape_alphabet: tuple[Symbol, ...]
    blank: Symbol
    input_alphabet: tuple[Symbol, ...]
    delta: tuple[Transition, ...]
    start: Symbol
    accept: frozenset
    bounds: Optional[ResourceBounds] = None
    deterministic: bool = True
    name: str = ""
    _table: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(sorted(set(self.states))))
        object.__setattr__(self, "tape_alphabet", tuple(sorted(set(self.tape_alphabet))))
        object.__setattr__(self, "input_alphabet", tuple(sorted(set(self.input_alphabet))))
        object.__setattr__(self, "delta", tuple(sorted(set(self.delta))))
        object.__setattr__(self, "accept", frozenset(self.accept))
        table = defaultdict(list)
        for t in self.delta:
            table[(t.state, t.read)].append(t)
        object.__setattr__(self, "_table", dict(table))

    def moves(self, state: Symbol, read: Symbol) -> list[Transition]:
        return self._table.get((state, read), [])

    def is_deterministic(self) -> bool:
        return all(len(ts) <= 1 for ts in self._table.values())


@dataclass(frozen=True)
class Configuration:
    """An instantaneous description: tape window, head cell, state.

    ``tape[i]`` holds cell ``left + i``; cell 0 is the first input cell.
    """

    state: Symbol
    head: int
    tape: Str
    left: int = 0
    steps: int = 0

    def read(self, blank: Symbol) -> Symbol:
        i = self.head - self.left
        return self.tape[i] if 0 <= i < len(self.tape) else blank

    def key(self):
        return (self.state, self.head, self.left, self.tape)

    def step(self, t: Transition, blank: Symbol) -> Configuration:
        tape = list(self.tape)
        left = self.left
        i = self.head - left
        if i < 0:
            tape[:0] = [blank] * (-i)
            left += i
            i = 0
        elif i >= len(tape):
            tape.extend([blank] * (i - len(tape) + 1))
        tape[i] = t.write
        head = self.head + (1 if t.move == "R" else -1)
        return Configuration(t.target, head, tuple(tape), left, self.steps + 1)


def initial_configuration(m: TuringMachine, x: Sequence[Symbol]) -> Configuration:
    return Configuration(m.start, 0, tuple(x) if x else (m.blank,), 0, 0)


def _bounds(m: TuringMachine, b: Optional[ResourceBounds]) -> ResourceBounds:
    b = b or m.bounds
    if b is None:
        raise ValueError(f"machine {m.name or '?'} has no resource bounds")
    return b


def run_dtm_bounded(m: TuringMachine, x: Sequence[Symbol], b: Optional[ResourceBounds] = None) -> Verdict:
    """Run a deterministic machine for at most ``c**q(n)`` steps."""
    if not m.is_deterministic():
        raise NondeterministicMachine(f"machine {m.name or '?'} has more than one move for some (state, symbol)")
    b = _bounds(m, b)
    n = len(x)
    limit = b.dtm_steps(n)
    lo, hi = -b.space(n), n + b.space(n)
    cfg = initial_configuration(m, x)
    while True:
        if cfg.state in m.accept:
            return Verdict.ACCEPT
        if cfg.steps >= limit:
            return Verdict.TIME_EXCEEDED
        ts = m.moves(cfg.state, cfg.read(m.blank))
        if not ts:
            return Verdict.REJECT
        cfg = cfg.step(ts[0], m.blank)
        if not lo <= cfg.head <= hi:
            return Verdict.SPACE_EXCEEDED


def run_ntm_bounded(m: TuringMachine, x: Sequence[Symbol], b: Optional[ResourceBounds] = None) -> Verdict:
    """Breadth-first search over configurations for at most ``2**p(n)`` steps.

    Configurations are deduplicated, so a machine whose every branch
    cycles is rejected.  Returns ``TIME_EXCEEDED`` when no branch accepted
    but some branch was still running at the step limit.
    """
    b = _bounds(m, b)
    limit = b.ntm_steps(len(x))
    frontier = [initial_configuration(m, x)]
    seen = {frontier[0].key()}
    for depth in range(limit + 1):
        nxt = []
        for cfg in frontier:
            if cfg.state in m.accept:
                return Verdict.ACCEPT
            if depth == limit:
                continue
            for t in m.moves(cfg.state, cfg.read(m.blank)):
                succ = cfg.step(t, m.blank)
                k = succ.key()
                if k not in seen:
                    seen.add(k)
                    nxt.append(succ)
        if depth == limit:
            running = any(m.moves(c.state, c.read(m.blank)) for c in frontier)
            return Verdict.TIME_EXCEEDED if running else Verdict.REJECT
        if not nxt:
            return Verdict.REJECT
        frontier = nxt
    return Verdict.REJECT


def accepts_ntm_bounded(m: TuringMachine, x: Sequence[Symbol], b: Optional[ResourceBounds] = None) -> bool:
    return run_ntm_bounded(m, x, b) is Verdict.ACCEPT


def validate_machine(m: TuringMachine) -> list[Violation]:
    out = []
    states = set(m.states)
    gamma = set(m.tape_alphabet)
    if m.start not in states:
        out.append(Violation("StateSetViolation", "start", f"{m.start} is not a declared state"))
    if not m.accept <= states:
        extra = ", ".join(str(s) for s in sorted(m.accept - states))
        out.append(Violation("StateSetViolation", "accept", f"accepting states {extra} are not declared states"))
    if m.blank not in gamma:
        out.append(Violation("AlphabetViolation", "blank", f"blank {m.blank} is not in the tape alphabet"))
    if m.blank in m.input_alphabet:
        out.append(Violation("AlphabetViolation", "input_alphabet", "the blank may not be an input symbol"))
    for a in m.input_alphabet:
        if a not in gamma:
            out.append(Violation("AlphabetViolation", "input_alphabet", f"input symbol {a} is not in the tape alphabet"))
    clash = states & gamma
    if clash:
        out.append(Violation("SymbolSetViolation", "states", f"symbols both state and tape symbol: {', '.join(map(str, sorted(clash)))}"))
    for t in m.delta:
        for s in (t.state, t.target):
            if s not in states:
                out.append(Violation("StateSetViolation", "delta", f"{t}: {s} is not a declared state"))
        for a in (t.read, t.write):
            if a not in gamma:
                out.append(Violation("AlphabetViolation", "delta", f"{t}: {a} is not in the tape alphabet"))
    if m.deterministic and not m.is_deterministic():
        out.append(Violation("DeterminismViolation", "deterministic", "declared deterministic but has several moves for some (state, symbol)"))
    return out
