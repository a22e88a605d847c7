"""Self-delimiting machine model: finite control, binary work tape, on-demand input.

A machine never sees its whole program up front.  It issues read requests
one bit at a time, and the program consumed by a run is exactly the
sequence of requested bits.  If the machine halts after consuming x, no
run ever consumes a proper extension of x, so the halting domain is
prefix-free by construction rather than by verification.

Actions, one per (state, tape symbol) pair:

* ``write s, move L/R, goto state`` -- tape transition; s is any tape
  symbol including the blank, which is how a head crosses untouched tape
* ``read s0 s1``                    -- request one input bit, branch on it
* ``emit b, goto state``            -- append output bit b
* ``halt``                          -- stop; consumed bits form the program
* ``spin``                          -- explicit, provable divergence

Step accounting: every executed action costs one step, including the
consuming of a requested bit, each emit, and the final halt.  ``spin`` is
a proof that the run never halts; under a finite budget it is reported as
out-of-budget by :func:`run`, while the domain enumerator uses it to prune.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .bits import check_bits

BLANK = "_"
SYMBOLS = ("_", "0", "1")


@dataclass(frozen=True)
class Write:
    bit: str
    move: str  # 'L' or 'R'
    state: str


@dataclass(frozen=True)
class Read:
    on0: str
    on1: str


@dataclass(frozen=True)
class Emit:
    bit: str
    state: str


@dataclass(frozen=True)
class Halt:
    pass


@dataclass(frozen=True)
class Spin:
    pass


Action = Write | Read | Emit | Halt | Spin

HALT = Halt()
SPIN = Spin()


class MachineError(Exception):
    """Invalid machine construction (nondeterminism, dangling states, ...)."""


class Signal(Enum):
    NEEDS_INPUT = "needs_input"
    HALTED = "halted"
    SPINNING = "spinning"
    BUDGET = "budget"


class TableMachine:
    """Immutable transition-table machine over the action set above.

    ``table`` maps (state, symbol) to an Action for every state and every
    symbol in ``SYMBOLS``; partially specified states are completed with
    explicit Spin entries by the constructor, so divergence is always a
    visible table entry.  Successor states must own at least one authored
    rule (no dangling targets).
    """

    def __init__(self, name: str, start: str, rules: dict[tuple[str, str], Action]):
        if not rules:
            raise MachineError("machine has no rules")
        owners = {state for state, _ in rules}
        if start not in owners:
            raise MachineError(f"start state {start!r} has no rules")
        for (state, sym), action in rules.items():
            if sym not in SYMBOLS:
                raise MachineError(f"bad tape symbol {sym!r} in state {state!r}")
            for target in _targets(action):
                if target not in owners:
                    raise MachineError(
                        f"dangling state {target!r} (referenced from {state!r})"
                    )
        table = dict(rules)
        for state in owners:
            for sym in SYMBOLS:
                table.setdefault((state, sym), SPIN)
        self.name = name
        self.start = start
        self.table = table
        self._states = frozenset(owners)

    @property
    def states(self) -> frozenset[str]:
        return self._states

    def start_process(self) -> "TableProcess":
        return TableProcess(self)

    def cache_key(self) -> str:
        # Behavioural identity: canonical bit serialization, not the name.
        from .universal import machine_hash

        return machine_hash(self)

    def __repr__(self) -> str:
        return f"<TableMachine {self.name}: {len(self._states)} states>"


def _targets(action: Action) -> tuple[str, ...]:
    if isinstance(action, Write):
        return (action.state,)
    if isinstance(action, Read):
        return (action.on0, action.on1)
    if isinstance(action, Emit):
        return (action.state,)
    return ()


class TableProcess:
    """One run's mutable state; cloneable so enumeration can branch at reads."""

    __slots__ = ("machine", "state", "tape", "head", "out", "steps", "_pending")

    def __init__(self, machine: TableMachine):
        self.machine = machine
        self.state = machine.start
        self.tape: dict[int, str] = {}
        self.head = 0
        self.out: list[str] = []
        self.steps = 0
        self._pending: Optional[Read] = None

    def clone(self) -> "TableProcess":
        c = TableProcess.__new__(TableProcess)
        c.machine = self.machine
        c.state = self.state
        c.tape = dict(self.tape)
        c.head = self.head
        c.out = list(self.out)
        c.steps = self.steps
        c._pending = self._pending
        return c

    def output(self) -> str:
        return "".join(self.out)

    def advance(self, budget: int) -> Signal:
        """Run until a read request, halt, spin, or the step budget."""
        table = self.machine.table
        tape = self.tape
        while True:
            if self._pending is not None:
                return Signal.NEEDS_INPUT
            if self.steps >= budget:
                return Signal.BUDGET
            action = table[(self.state, tape.get(self.head, BLANK))]
            if isinstance(action, Write):
                self.steps += 1
                tape[self.head] = action.bit
                self.head += 1 if action.move == "R" else -1
                self.state = action.state
            elif isinstance(action, Read):
                self._pending = action
                return Signal.NEEDS_INPUT
            elif isinstance(action, Emit):
                self.steps += 1
                self.out.append(action.bit)
                self.state = action.state
            elif isinstance(action, Halt):
                self.steps += 1
                return Signal.HALTED
            else:  # Spin
                return Signal.SPINNING

    def feed(self, bit: str) -> None:
        if self._pending is None:
            raise RuntimeError("no input request pending")
        self.steps += 1
        self.state = self._pending.on0 if bit == "0" else self._pending.on1
        self._pending = None


@dataclass(frozen=True)
class RunOutcome:
    """Result of running a machine on a finite program under a step budget.

    kind is one of 'halted', 'halted_early', 'needs_more_input',
    'out_of_budget'.  'halted' is reported only when the run consumed the
    entire supplied program; a halt after a proper prefix is
    'halted_early' with the consumed prefix recorded.
    """

    kind: str
    output: Optional[str] = None
    consumed: Optional[str] = None
    steps: int = 0

    @property
    def is_halted(self) -> bool:
        return self.kind == "halted"


def run(machine, program: str, budget: int) -> RunOutcome:
    """Deterministic bounded execution of any machine honouring the process protocol.

    Increasing the budget can only turn an out-of-budget outcome into
    another one; a halted result never changes.
    """
    check_bits(program)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    proc = machine.start_process()
    pos = 0
    while True:
        sig = proc.advance(budget)
        if sig is Signal.HALTED:
            consumed = program[:pos]
            if pos == len(program):
                return RunOutcome("halted", proc.output(), consumed, proc.steps)
            return RunOutcome("halted_early", proc.output(), consumed, proc.steps)
        if sig is Signal.SPINNING or sig is Signal.BUDGET:
            return RunOutcome("out_of_budget", None, program[:pos], budget)
        # needs input
        if pos == len(program):
            return RunOutcome("needs_more_input", None, program, proc.steps)
        proc.feed(program[pos])
        pos += 1
