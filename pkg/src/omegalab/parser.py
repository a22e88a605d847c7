"""Line-oriented machine-description language.

Grammar (one directive or rule per line, '#' starts a comment):

    machine <name>
    start <state>
    <state> <sym> => write <sym> <L|R> <state>
    <state> <sym> => read <state-on-0> <state-on-1>
    <state> <sym> => emit <b> <state>
    <state> <sym> => halt
    <state> <sym> => spin

where <sym> is a tape symbol '0', '1' or '_' (blank) -- writing the blank
is how a machine moves across untouched tape -- and <b> is an output bit.
Two rules for the same (state, symbol) pair are rejected as
nondeterminism; successor states without any rule of their own are
rejected as dangling.  Unspecified (state, symbol) pairs become explicit
spin entries in the constructed table.
"""

from __future__ import annotations

import re

from .machine import (
    Action,
    Emit,
    HALT,
    Halt,
    MachineError,
    Read,
    SPIN,
    SYMBOLS,
    TableMachine,
    Write,
)

_NAME = re.compile(r"[A-Za-z0-9_.\-]+$")


class ParseError(Exception):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _name(token: str, line_no: int, what: str) -> str:
    if not _NAME.match(token):
        raise ParseError(line_no, f"bad {what} name {token!r}")
    return token


def _bit(token: str, line_no: int) -> str:
    if token not in ("0", "1"):
        raise ParseError(line_no, f"expected bit 0 or 1, got {token!r}")
    return token


def _tape_symbol(token: str, line_no: int) -> str:
    if token not in SYMBOLS:
        raise ParseError(line_no, f"expected tape symbol 0, 1 or _, got {token!r}")
    return token


def parse_machine(text: str) -> TableMachine:
    """Parse a machine description; raises ParseError / MachineError."""
    name = None
    start = None
    rules: dict[tuple[str, str], Action] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "machine":
            if len(tokens) != 2:
                raise ParseError(line_no, "expected: machine <name>")
            name = _name(tokens[1], line_no, "machine")
            continue
        if tokens[0] == "start":
            if len(tokens) != 2:
                raise ParseError(line_no, "expected: start <state>")
            start = _name(tokens[1], line_no, "state")
            continue
        if len(tokens) < 4 or tokens[2] != "=>":
            raise ParseError(line_no, f"unrecognized rule: {line!r}")
        state = _name(tokens[0], line_no, "state")
        sym = tokens[1]
        if sym not in SYMBOLS:
            raise ParseError(line_no, f"bad tape symbol {sym!r} (want 0, 1 or _)")
        op, args = tokens[3], tokens[4:]
        if op == "write":
            if len(args) != 3 or args[1] not in ("L", "R"):
                raise ParseError(line_no, "expected: write <sym> <L|R> <state>")
            action: Action = Write(_tape_symbol(args[0], line_no), args[1], _name(args[2], line_no, "state"))
        elif op == "read":
            if len(args) != 2:
                raise ParseError(line_no, "expected: read <state-on-0> <state-on-1>")
            action = Read(_name(args[0], line_no, "state"), _name(args[1], line_no, "state"))
        elif op == "emit":
            if len(args) != 2:
                raise ParseError(line_no, "expected: emit <b> <state>")
            action = Emit(_bit(args[0], line_no), _name(args[1], line_no, "state"))
        elif op == "halt":
            if args:
                raise ParseError(line_no, "halt takes no arguments")
            action = HALT
        elif op == "spin":
            if args:
                raise ParseError(line_no, "spin takes no arguments")
            action = SPIN
        else:
            raise ParseError(line_no, f"unknown action {op!r}")
        key = (state, sym)
        if key in rules:
            raise MachineError(f"nondeterministic: two rules for state {state!r} on {sym!r}")
        rules[key] = action
    if start is None:
        raise ParseError(0, "no start state declared")
    if name is None:
        name = "anonymous"
    return TableMachine(name, start, rules)


def _render(action: Action) -> str:
    if isinstance(action, Write):
        return f"write {action.bit} {action.move} {action.state}"
    if isinstance(action, Read):
        return f"read {action.on0} {action.on1}"
    if isinstance(action, Emit):
        return f"emit {action.bit} {action.state}"
    return "halt" if isinstance(action, Halt) else "spin"


def machine_to_text(machine: TableMachine) -> str:
    """Canonical description of a machine; parses back to an equal table.

    Rules are listed with the start state first, remaining states sorted by
    name, symbols in (_, 0, 1) order.  Spin entries are written out
    explicitly, so the text is a total description of the table.
    """
    lines = [f"machine {machine.name}", f"start {machine.start}"]
    ordered = [machine.start] + sorted(machine.states - {machine.start})
    for state in ordered:
        for sym in SYMBOLS:
            action = machine.table[(state, sym)]
            lines.append(f"{state} {sym} => {_render(action)}")
    return "\n".join(lines) + "\n"
