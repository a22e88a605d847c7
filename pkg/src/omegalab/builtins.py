"""Catalog of built-in machines, plus runtime registration.

M1          dom {0, 10} -> {empty, "1"}; halting probability 3/4 (0.11 in
            binary), the smallest self-referential uncertainty demo.
OMEGA_DEMO  dom {0, 100, 101, 110} -> {"1", "11", "110", empty};
            halting probability 7/8, three exact binary digits.
GEOM        dom {1^n 0 : n >= 0}, outputs the bitstring coded by n; an
            infinite-domain machine whose halting probability is 1, so
            every enumeration of it stays honestly inexact.

Machines compiled at runtime (the scattered-bits constructions) register
themselves here under their own names.
"""

from __future__ import annotations

from .machine import TableMachine
from .parser import parse_machine

M1_TEXT = """\
machine M1
start s0
s0 _ => read acc0 more
acc0 _ => halt
more _ => read out1 dead
out1 _ => emit 1 fin
fin _ => halt
dead _ => spin
"""

OMEGA_DEMO_TEXT = """\
machine OMEGA_DEMO
start r0
r0 _ => read e1 r1
e1 _ => emit 1 h
h _ => halt
r1 _ => read r10 r11
r10 _ => read p100 p101
r11 _ => read p110 dead
p100 _ => emit 1 q100
q100 _ => emit 1 h
p101 _ => emit 1 q101
q101 _ => emit 1 q101b
q101b _ => emit 0 h
p110 _ => halt
dead _ => spin
"""

# Unary-to-binary counter: the tape holds n+1 with the low bit at cell 0.
# Each input 1 increments the counter; the terminating 0 walks to the top
# bit and emits everything below it, high bit first.
GEOM_TEXT = """\
machine GEOM
start init
init _ => write 1 L rewind
rewind 0 => write 0 L rewind
rewind 1 => write 1 L rewind
rewind _ => read flush inc
inc _ => write _ R incwalk
incwalk 1 => write 0 R incwalk
incwalk 0 => write 1 L rewind
incwalk _ => write 1 L rewind
flush _ => write _ R scanr
scanr 0 => write 0 R scanr
scanr 1 => write 1 R scanr
scanr _ => write _ L atmsb
atmsb 1 => write 1 L emitl
emitl 0 => emit 0 stepl
emitl 1 => emit 1 stepl
emitl _ => halt
stepl 0 => write 0 L emitl
stepl 1 => write 1 L emitl
"""

_CATALOG_TEXT = {
    "M1": M1_TEXT,
    "OMEGA_DEMO": OMEGA_DEMO_TEXT,
    "GEOM": GEOM_TEXT,
}

_runtime: dict[str, TableMachine] = {}


class UnknownBuiltinError(KeyError):
    pass


def builtin(name: str) -> TableMachine:
    """Return the cataloged machine; raises UnknownBuiltinError otherwise."""
    if name in _runtime:
        return _runtime[name]
    text = _CATALOG_TEXT.get(name)
    if text is None:
        raise UnknownBuiltinError(name)
    return parse_machine(text)


def register_builtin(machine: TableMachine) -> None:
    _runtime[machine.name] = machine


def builtin_names() -> list[str]:
    return sorted(set(_CATALOG_TEXT) | set(_runtime))
