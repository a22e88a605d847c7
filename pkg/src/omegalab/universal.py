"""Universal interpreter, machine serialization, simulator prefixes, padding.

A machine table serializes to a canonical bitstring (states renumbered by
first reachable appearance, so the encoding ignores state names and
unreachable states).  The universal machine U reads a self-delimiting
header -- each payload bit doubled (0 -> 00, 1 -> 11), terminated by
"01" -- decodes the payload into a table, then simulates that machine,
forwarding its input requests bit for bit.  Every bit U consumes arrives
through the same on-demand request discipline as any other machine, so
dom(U) is prefix-free for exactly the same structural reason.

``simulator_prefix(C)`` is the header for C: U(header(C) ++ x) behaves as
C(x), and 2**len(header) is the constructive constant of the invariance
theorem.  A malformed header (a "10" pair, or a payload that is not a
strict encoding of a table) sends U into a spin, keeping dom(U) clean.

Step accounting for U: one step per input bit consumed (header and
program alike) plus one step per simulated non-read action of the inner
machine; decoding is free.
"""

from __future__ import annotations

import hashlib
from typing import Optional

from .machine import (
    Emit,
    HALT,
    Halt,
    Read,
    SPIN,
    Signal,
    Spin,
    SYMBOLS,
    TableMachine,
    TableProcess,
    Write,
)

HEADER_END = "01"


def elias_gamma(n: int) -> str:
    if n < 1:
        raise ValueError("elias_gamma requires n >= 1")
    b = bin(n)[2:]
    return "0" * (len(b) - 1) + b


class _BitReader:
    def __init__(self, bits: str):
        self.bits = bits
        self.pos = 0

    def take(self, k: int) -> Optional[str]:
        if self.pos + k > len(self.bits):
            return None
        chunk = self.bits[self.pos : self.pos + k]
        self.pos += k
        return chunk

    def gamma(self) -> Optional[int]:
        zeros = 0
        while True:
            bit = self.take(1)
            if bit is None:
                return None
            if bit == "1":
                break
            zeros += 1
        rest = self.take(zeros)
        if rest is None:
            return None
        return int("1" + rest, 2)

    def exhausted(self) -> bool:
        return self.pos == len(self.bits)


def canonical_state_order(machine: TableMachine) -> list[str]:
    """Reachable states, start first, in rule-scan discovery order."""
    order = [machine.start]
    seen = {machine.start}
    i = 0
    while i < len(order):
        state = order[i]
        i += 1
        for sym in SYMBOLS:
            action = machine.table[(state, sym)]
            if isinstance(action, Write):
                targets = (action.state,)
            elif isinstance(action, Read):
                targets = (action.on0, action.on1)
            elif isinstance(action, Emit):
                targets = (action.state,)
            else:
                targets = ()
            for t in targets:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
    return order


_TAG_WRITE = "000"
_TAG_READ = "001"
_TAG_EMIT = "010"
_TAG_HALT = "011"
_TAG_SPIN = "100"
_TAG_WRITE_BLANK = "101"


def table_bits(machine: TableMachine) -> str:
    """Canonical payload encoding of a machine's reachable table."""
    order = canonical_state_order(machine)
    idx = {name: i for i, name in enumerate(order)}
    width = (len(order) - 1).bit_length()

    def ref(name: str) -> str:
        return format(idx[name], f"0{width}b") if width else ""

    parts = [elias_gamma(len(order))]
    for state in order:
        for sym in SYMBOLS:
            action = machine.table[(state, sym)]
            if isinstance(action, Write):
                move = "1" if action.move == "R" else "0"
                if action.bit == "_":
                    parts.append(_TAG_WRITE_BLANK + move + ref(action.state))
                else:
                    parts.append(_TAG_WRITE + action.bit + move + ref(action.state))
            elif isinstance(action, Read):
                parts.append(_TAG_READ + ref(action.on0) + ref(action.on1))
            elif isinstance(action, Emit):
                parts.append(_TAG_EMIT + action.bit + ref(action.state))
            elif isinstance(action, Halt):
                parts.append(_TAG_HALT)
            else:
                parts.append(_TAG_SPIN)
    return "".join(parts)


def decode_table_bits(payload: str, name: str = "decoded") -> Optional[TableMachine]:
    """Strict inverse of table_bits; None unless the payload decodes exactly."""
    r = _BitReader(payload)
    n = r.gamma()
    if n is None or n < 1:
        return None
    width = (n - 1).bit_length()
    states = [f"s{i}" for i in range(n)]

    def ref() -> Optional[str]:
        if width == 0:
            return states[0]
        chunk = r.take(width)
        if chunk is None:
            return None
        i = int(chunk, 2)
        return states[i] if i < n else None

    rules = {}
    for state in states:
        for sym in SYMBOLS:
            tag = r.take(3)
            if tag is None:
                return None
            if tag == _TAG_WRITE:
                bit = r.take(1)
                move = r.take(1)
                target = ref()
                if bit is None or move is None or target is None:
                    return None
                action = Write(bit, "R" if move == "1" else "L", target)
            elif tag == _TAG_WRITE_BLANK:
                move = r.take(1)
                target = ref()
                if move is None or target is None:
                    return None
                action = Write("_", "R" if move == "1" else "L", target)
            elif tag == _TAG_READ:
                a, b = ref(), ref()
                if a is None or b is None:
                    return None
                action = Read(a, b)
            elif tag == _TAG_EMIT:
                bit = r.take(1)
                target = ref()
                if bit is None or target is None:
                    return None
                action = Emit(bit, target)
            elif tag == _TAG_HALT:
                action = HALT
            elif tag == _TAG_SPIN:
                action = SPIN
            else:
                return None
            rules[(state, sym)] = action
    if not r.exhausted():
        return None
    return TableMachine(name, states[0], rules)


def machine_hash(machine: TableMachine) -> str:
    """Behavioural identity: sha256 of the canonical table encoding."""
    return hashlib.sha256(table_bits(machine).encode("ascii")).hexdigest()


def simulator_prefix(machine: TableMachine) -> str:
    """Header p with U(p ++ x) = machine(x); cost 2n + 2 over n payload bits."""
    payload = table_bits(machine)
    return "".join("00" if b == "0" else "11" for b in payload) + HEADER_END


class UniversalMachine:
    """Interpreter over the table-machine class, driven by the same protocol.

    Not itself a finite table: the decoded description plays the role of
    tape contents, held in host memory.  Determinism, on-demand input and
    unit-step budgets are identical to table machines, which is all the
    enumerator and runner rely on.
    """

    name = "U"

    def start_process(self) -> "UniversalProcess":
        return UniversalProcess()

    def cache_key(self) -> str:
        conventions = "universal:v1:double-bit-header:01-end:" + ",".join(
            (_TAG_WRITE, _TAG_READ, _TAG_EMIT, _TAG_HALT, _TAG_SPIN, _TAG_WRITE_BLANK)
        )
        return hashlib.sha256(conventions.encode("ascii")).hexdigest()

    def __repr__(self) -> str:
        return "<UniversalMachine>"


class UniversalProcess:
    __slots__ = ("mode", "half", "payload", "inner", "header_bits", "out_len")

    def __init__(self):
        self.mode = "header"  # header | run | spin
        self.half: Optional[str] = None  # first bit of an incomplete pair
        self.payload: list[str] = []
        self.inner: Optional[TableProcess] = None
        self.header_bits = 0

    def clone(self) -> "UniversalProcess":
        c = UniversalProcess.__new__(UniversalProcess)
        c.mode = self.mode
        c.half = self.half
        c.payload = list(self.payload)
        c.inner = self.inner.clone() if self.inner is not None else None
        c.header_bits = self.header_bits
        return c

    @property
    def steps(self) -> int:
        return self.header_bits + (self.inner.steps if self.inner else 0)

    def output(self) -> str:
        return self.inner.output() if self.inner else ""

    def advance(self, budget: int) -> Signal:
        if self.mode == "spin":
            return Signal.SPINNING
        if self.mode == "header":
            return Signal.BUDGET if self.steps >= budget else Signal.NEEDS_INPUT
        return self.inner.advance(budget - self.header_bits)

    def feed(self, bit: str) -> None:
        if self.mode == "run":
            self.inner.feed(bit)
            return
        if self.mode != "header":
            raise RuntimeError("no input request pending")
        self.header_bits += 1
        if self.half is None:
            self.half = bit
            return
        pair = self.half + bit
        self.half = None
        if pair == "00":
            self.payload.append("0")
        elif pair == "11":
            self.payload.append("1")
        elif pair == HEADER_END:
            machine = decode_table_bits("".join(self.payload))
            if machine is None:
                self.mode = "spin"
            else:
                self.mode = "run"
                self.inner = machine.start_process()
        else:  # "10": malformed header
            self.mode = "spin"


def universal_machine() -> UniversalMachine:
    return UniversalMachine()


def pad_machine(machine: TableMachine, k: int):
    """Machine accepting 0^k x exactly where the original accepts x.

    Any input not starting with k zeros diverges (spin).  Table machines
    get genuine table surgery so the result serializes and enumerates like
    any other machine; other protocol machines get a wrapping process.
    """
    if k < 0:
        raise ValueError("pad count must be >= 0")
    if k == 0:
        return machine
    if not isinstance(machine, TableMachine):
        return _PaddedMachine(machine, k)
    rules: dict[tuple[str, str], object] = {}
    for key, action in machine.table.items():
        rules[key] = action
    taken = machine.states
    gate = [_fresh(f"pad{i}", taken) for i in range(k)]
    trap = _fresh("padspin", taken)
    for i in range(k):
        nxt = gate[i + 1] if i + 1 < k else machine.start
        rules[(gate[i], "_")] = Read(nxt, trap)
    rules[(trap, "_")] = SPIN
    return TableMachine(machine.name + f"_pad{k}", gate[0], rules)  # type: ignore[arg-type]


def _fresh(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "x"
    return name


class _PaddedMachine:
    def __init__(self, inner, k: int):
        self.inner = inner
        self.k = k
        self.name = getattr(inner, "name", "machine") + f"_pad{k}"

    def start_process(self):
        return _PaddedProcess(self.inner.start_process(), self.k)

    def cache_key(self) -> str:
        return hashlib.sha256(
            f"padded:{self.k}:{self.inner.cache_key()}".encode("ascii")
        ).hexdigest()


class _PaddedProcess:
    __slots__ = ("inner", "remaining", "spin", "gate_steps")

    def __init__(self, inner, k: int):
        self.inner = inner
        self.remaining = k
        self.spin = False
        self.gate_steps = 0

    def clone(self):
        c = _PaddedProcess.__new__(_PaddedProcess)
        c.inner = self.inner.clone()
        c.remaining = self.remaining
        c.spin = self.spin
        c.gate_steps = self.gate_steps
        return c

    @property
    def steps(self) -> int:
        return self.gate_steps + self.inner.steps

    def output(self) -> str:
        return self.inner.output()

    def advance(self, budget: int) -> Signal:
        if self.spin:
            return Signal.SPINNING
        if self.remaining > 0:
            return Signal.BUDGET if self.steps >= budget else Signal.NEEDS_INPUT
        return self.inner.advance(budget - self.gate_steps)

    def feed(self, bit: str) -> None:
        if self.remaining > 0:
            self.gate_steps += 1
            self.remaining -= 1
            if bit == "1":
                self.spin = True
            return
        self.inner.feed(bit)
