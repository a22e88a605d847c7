"""Compiling scattered-bit specifications into prefix machines.

A specification fixes a strictly increasing position map F over levels
k = 1..k_max and one known bit at each position F(k).  Level k of the
construction covers every string of length F(k) carrying the fixed bits:
its free bits form a string w of length F(k) - k, and the level has
exactly 2**(F(k)-k) members.

Two machines are compiled from a specification:

* ``build_machine`` -- the aggregate machine.  Its program for the level-k
  member with free bits w is the Kraft-Chaitin codeword for the length
  schedule (F(k), repeated 2**(F(k)-k) times per level), which under
  leftmost allocation is 1^(k-1) 0 w.  Level k carries mass 2**-k, so the
  machine's halting probability is exactly 1 - 2**-k_max.

* ``level_machine(spec, k)`` -- the level-k machine alone.  Here the
  codewords are length-preserving: the program IS w, the Kraft sum of the
  level is exactly 1, and the rank of the program for any consistent
  prefix x_1..x_F(k) is at most 2**(F(k)-k+1) - 2.  This is the machine
  the compression bound refers to: no single machine can be
  length-preserving across levels, because the level masses would sum to
  the number of levels rather than to 1.

``verify_bound`` checks the compression bound against the level machines
(and reports the aggregate ranks alongside); ``contradiction_report``
plays the bound against an assumed uncertainty line to locate the level
where the two become incompatible -- the desk-scale incompleteness
witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from .bits import Dyadic, check_bits, decode_n
from .builtins import register_builtin
from .enumerator import EnumerationCache, complexity, enumerate_domain
from .kraft import CodeAllocator
from .machine import Action, Emit, HALT, Read, SPIN, TableMachine

CATALOG: dict[str, Callable[[int], int]] = {
    "identity": lambda k: k,
    "double": lambda k: 2 * k,
    "square": lambda k: k * k,
}

DEFAULT_CEILING = 24


class LengthCeilingError(ValueError):
    """A level's free-bit count exceeds the enumeration ceiling."""


class InconsistentSequenceError(ValueError):
    """The supplied sequence contradicts the specification's fixed bits."""


@dataclass(frozen=True)
class ScatterSpec:
    """Positions and values of the known scattered bits.

    ``f_values[k-1]`` is F(k); ``bits[k-1]`` is the fixed bit at position
    F(k).  F is strictly increasing and positive, with F(0) taken as 0.
    """

    name: str
    f_values: tuple[int, ...]
    bits: tuple[str, ...]
    catalog: Optional[str] = None  # set when F extends beyond k_max by formula
    ceiling: int = DEFAULT_CEILING

    def __post_init__(self):
        if not self.f_values:
            raise ValueError("spec needs at least one level")
        if len(self.bits) != len(self.f_values):
            raise ValueError("need exactly one fixed bit per level")
        prev = 0
        for k, f in enumerate(self.f_values, start=1):
            if f <= prev:
                raise ValueError(f"F must be strictly increasing and positive (level {k})")
            prev = f
        for b in self.bits:
            if b not in ("0", "1"):
                raise ValueError("fixed bits must be '0' or '1'")
        for k in range(1, self.k_max + 1):
            if self.free_len(k) > self.ceiling:
                raise LengthCeilingError(
                    f"F({k}) - {k} = {self.free_len(k)} exceeds ceiling {self.ceiling}"
                )

    @property
    def k_max(self) -> int:
        return len(self.f_values)

    def f(self, k: int) -> int:
        """F(k); extends past k_max only for catalog-backed specs."""
        if 1 <= k <= self.k_max:
            return self.f_values[k - 1]
        if self.catalog is not None:
            return CATALOG[self.catalog](k)
        raise IndexError(f"F({k}) is outside the spec's horizon")

    def free_len(self, k: int) -> int:
        return self.f(k) - k

    def fixed_positions(self, k: int) -> set[int]:
        return {self.f(i) for i in range(1, k + 1)}

    @classmethod
    def from_catalog(cls, form: str, bits, k_max: int, ceiling: int = DEFAULT_CEILING) -> "ScatterSpec":
        if form not in CATALOG:
            raise ValueError(f"unknown catalog form {form!r} (have {sorted(CATALOG)})")
        f = CATALOG[form]
        return cls(
            name=f"SCATTER_{form}_{k_max}",
            f_values=tuple(f(k) for k in range(1, k_max + 1)),
            bits=tuple(str(b) for b in bits),
            catalog=form,
            ceiling=ceiling,
        )

    @classmethod
    def from_table(cls, f_values, bits, name: str = "SCATTER_table", ceiling: int = DEFAULT_CEILING) -> "ScatterSpec":
        return cls(
            name=name,
            f_values=tuple(int(v) for v in f_values),
            bits=tuple(str(b) for b in bits),
            catalog=None,
            ceiling=ceiling,
        )

    @classmethod
    def from_json(cls, text: str) -> "ScatterSpec":
        doc = json.loads(text)
        bits = ["1" if b in (1, "1", True) else "0" for b in doc["bits"]]
        if isinstance(doc["f"], str):
            return cls.from_catalog(doc["f"], bits, int(doc["k_max"]), int(doc.get("ceiling", DEFAULT_CEILING)))
        return cls.from_table(doc["f"], bits, doc.get("name", "SCATTER_table"), int(doc.get("ceiling", DEFAULT_CEILING)))

    @classmethod
    def from_file(cls, path) -> "ScatterSpec":
        return cls.from_json(Path(path).read_text())


def iter_length_schedule(spec: ScatterSpec):
    """The Kraft-Chaitin length schedule: 2**(F(k)-k) copies of F(k) per level."""
    for k in range(1, spec.k_max + 1):
        length = spec.f(k)
        for _ in range(1 << spec.free_len(k)):
            yield length


def length_schedule(spec: ScatterSpec) -> list[int]:
    return list(iter_length_schedule(spec))


def interleave(spec: ScatterSpec, k: int, w: str) -> str:
    """Level-k member with free bits w: fixed bits at positions F(1)..F(k)."""
    if len(w) != spec.free_len(k):
        raise ValueError(f"level {k} takes {spec.free_len(k)} free bits, got {len(w)}")
    check_bits(w)
    fixed = {spec.f(i): spec.bits[i - 1] for i in range(1, k + 1)}
    out = []
    it = iter(w)
    for pos in range(1, spec.f(k) + 1):
        out.append(fixed[pos] if pos in fixed else next(it))
    return "".join(out)


def free_bits(spec: ScatterSpec, k: int, y: str) -> str:
    """Inverse of interleave: extract w from a level-k member."""
    if len(y) != spec.f(k):
        raise ValueError(f"level {k} members have length {spec.f(k)}")
    fixed = spec.fixed_positions(k)
    return "".join(bit for pos, bit in enumerate(y, start=1) if pos not in fixed)


def aggregate_codewords(spec: ScatterSpec, k: int) -> list[tuple[str, str]]:
    """(codeword, free bits) pairs for level k of the aggregate machine.

    Leftmost Kraft-Chaitin allocation of the schedule puts level k in the
    interval of strings starting 1^(k-1) 0, with w appended in rank order.
    """
    head = "1" * (k - 1) + "0"
    m = spec.free_len(k)
    return [(head + format(i, f"0{m}b") if m else head, format(i, f"0{m}b") if m else "")
            for i in range(1 << m)]


def _emit_chain(rules: dict, spec: ScatterSpec, k: int, tag: str, done: str) -> str:
    """Compile the output phase of level k; returns its entry state.

    Walks positions 1..F(k): a fixed position emits its bit, a free
    position reads one input bit and echoes it.
    """
    fixed = {spec.f(i): spec.bits[i - 1] for i in range(1, k + 1)}
    f_k = spec.f(k)
    entry = f"{tag}p1" if f_k >= 1 else done
    for pos in range(1, f_k + 1):
        state = f"{tag}p{pos}"
        nxt = f"{tag}p{pos + 1}" if pos < f_k else done
        if pos in fixed:
            rules[(state, "_")] = Emit(fixed[pos], nxt)
        else:
            rules[(state, "_")] = Read(f"{state}z", f"{state}o")
            rules[(f"{state}z", "_")] = Emit("0", nxt)
            rules[(f"{state}o", "_")] = Emit("1", nxt)
    return entry


def build_machine(spec: ScatterSpec) -> TableMachine:
    """The aggregate machine over all levels, with prefix-free programs
    1^(k-1) 0 w; registered nowhere, serializable like any table machine."""
    rules: dict[tuple[str, str], Action] = {("done", "_"): HALT, ("dead", "_"): SPIN}
    entries = {
        k: _emit_chain(rules, spec, k, f"k{k}", "done")
        for k in range(1, spec.k_max + 1)
    }
    for k in range(1, spec.k_max + 1):
        gate = f"c{k}"
        deeper = f"c{k + 1}" if k < spec.k_max else "dead"
        rules[(gate, "_")] = Read(entries[k], deeper)
    return TableMachine(spec.name, "c1", rules)


def level_machine(spec: ScatterSpec, k: int) -> TableMachine:
    """The length-preserving machine for level k alone: its program is w
    itself, and its domain is every string of length F(k) - k."""
    if not 1 <= k <= spec.k_max:
        raise ValueError(f"level {k} outside 1..{spec.k_max}")
    rules: dict[tuple[str, str], Action] = {("done", "_"): HALT}
    entry = _emit_chain(rules, spec, k, f"k{k}", "done")
    return TableMachine(f"{spec.name}_L{k}", entry, rules)


def register(spec: ScatterSpec) -> TableMachine:
    """Compile the aggregate machine and add it to the built-in catalog."""
    machine = build_machine(spec)
    register_builtin(machine)
    return machine


def sufficient_budget(spec: ScatterSpec) -> int:
    # Reads + emits + halt per program is at most 2 F(k_max) + 1.
    return 2 * spec.f(spec.k_max) + 8


@dataclass(frozen=True)
class BoundRow:
    """Per-level compression-bound check."""

    k: int
    f_k: int
    prefix: str
    h: int  # level-machine complexity of the prefix: F(k) - k
    delta: int  # 2**h
    nabla: int  # level-machine rank of the prefix's program
    bound: int  # 2**(F(k)-k+1) - 1
    passed: bool
    product: Dyadic  # delta_s(F(k)) * delta: the shrinking uncertainty product
    aggregate_nabla: Optional[int]  # rank under the aggregate machine, for contrast


def verify_bound(machine: TableMachine, spec: ScatterSpec, x: str) -> list[BoundRow]:
    """Check nabla(x_1..x_F(k)) <= 2**(F(k)-k+1) - 1 at every level.

    ``x`` is a full sequence of length F(k_max) consistent with the
    specification's fixed bits; its free bits are arbitrary.  The bound is
    evaluated against the exact cache of each level machine (the
    length-preserving construction the inequality belongs to); the rank
    under the supplied aggregate machine is reported alongside.
    """
    check_bits(x)
    if len(x) != spec.f(spec.k_max):
        raise InconsistentSequenceError(
            f"need the full sequence of length F(k_max) = {spec.f(spec.k_max)}"
        )
    for i in range(1, spec.k_max + 1):
        pos = spec.f(i)
        if x[pos - 1] != spec.bits[i - 1]:
            raise InconsistentSequenceError(
                f"bit at position {pos} is {x[pos - 1]}, spec fixes {spec.bits[i - 1]}"
            )
    agg_cache = enumerate_domain(machine, sufficient_budget(spec))
    rows = []
    for k in range(1, spec.k_max + 1):
        prefix = x[: spec.f(k)]
        slice_cache = enumerate_domain(level_machine(spec, k), sufficient_budget(spec))
        rec = complexity(slice_cache, prefix)
        if rec.nabla is None or not slice_cache.exact:
            raise AssertionError(f"level {k} enumeration incomplete")  # unreachable
        bound = (1 << (spec.free_len(k) + 1)) - 1
        agg = complexity(agg_cache, prefix)
        rows.append(
            BoundRow(
                k=k,
                f_k=spec.f(k),
                prefix=prefix,
                h=rec.h,
                delta=rec.delta,
                nabla=rec.nabla,
                bound=bound,
                passed=rec.nabla <= bound,
                product=Dyadic.pow2(rec.h - spec.f(k)),
                aggregate_nabla=agg.nabla,
            )
        )
    return rows


@dataclass(frozen=True)
class ContradictionRow:
    k: int
    f_k: int
    lower: Dyadic  # assumed randomness line: epsilon_1 * 2**F(k)
    upper: int  # lifted compression bound: lift * (2**(F(k)-k+1) - 1)
    crossed: bool


@dataclass(frozen=True)
class ContradictionReport:
    """Where an assumed uncertainty line collides with the compression bound.

    For each level the randomness assumption forces the complexity width of
    x_1..x_F(k) to at least epsilon_1 / delta_s(F(k)); the construction
    caps it by the lifted bound.  The first level where the floor exceeds
    the cap is the witness that a sequence with computably scattered bits
    cannot satisfy the uncertainty relation.
    """

    spec_name: str
    epsilon_1: Dyadic
    lift: int
    rows: tuple[ContradictionRow, ...]  # evaluated within the spec horizon
    crossing_k: Optional[int]
    predicted_crossing_k: Optional[int]  # closed form, identity map only
    vacuous: bool

    @property
    def crossed_within_horizon(self) -> bool:
        return self.crossing_k is not None and self.crossing_k <= len(self.rows)


def contradiction_report(
    spec: ScatterSpec,
    epsilon_1,
    lift: int,
    search_cap: Optional[int] = None,
) -> ContradictionReport:
    """Evaluate both sides of the incompatible pair of inequalities.

    ``epsilon_1`` is the assumed uncertainty line (typically an empirical
    minimum product); ``lift`` is the multiplicative invariance constant
    2**len(simulator prefix) that carries the construction's bound up to
    the reference machine.  epsilon_1 <= 0 proves nothing and is flagged
    vacuous.
    """
    if isinstance(epsilon_1, int):
        epsilon_1 = Dyadic(epsilon_1)
    if lift < 1:
        raise ValueError("lift constant must be >= 1")
    vacuous = epsilon_1 <= Dyadic.zero()

    def sides(k: int) -> tuple[Dyadic, int]:
        lower = epsilon_1 * (1 << spec.f(k))
        upper = lift * ((1 << (spec.f(k) - k + 1)) - 1)
        return lower, upper

    rows = []
    crossing = None
    if not vacuous:
        if search_cap is None:
            # The lower/upper ratio grows at least like 2**(k-1), so any
            # crossing happens within this many levels.
            search_cap = max(spec.k_max, lift.bit_length() + epsilon_1.exp + 4)
        horizon = spec.k_max if spec.catalog is None else search_cap
        for k in range(1, horizon + 1):
            lower, upper = sides(k)
            if lower > upper:
                crossing = k
                break
    for k in range(1, spec.k_max + 1):
        if vacuous:
            rows.append(ContradictionRow(k, spec.f(k), Dyadic.zero(), sides(k)[1], False))
            continue
        lower, upper = sides(k)
        rows.append(ContradictionRow(k, spec.f(k), lower, upper, lower > upper))
    predicted = None
    if not vacuous and spec.catalog == "identity":
        # Constant cap, rising floor: the first k with epsilon_1 * 2**k > lift
        # is floor(log2(lift / epsilon_1)) + 1 (clamped to level 1).
        predicted = max(1, _floor_log2_ratio(lift << epsilon_1.exp, epsilon_1.num) + 1)
    return ContradictionReport(
        spec_name=spec.name,
        epsilon_1=epsilon_1,
        lift=lift,
        rows=tuple(rows),
        crossing_k=crossing,
        predicted_crossing_k=predicted,
        vacuous=vacuous,
    )


def _floor_log2_ratio(a: int, b: int) -> int:
    """floor(log2(a / b)) for positive integers, by exact comparison."""
    if a < 1 or b < 1:
        raise ValueError("ratio must be positive")
    e = a.bit_length() - b.bit_length()
    if e >= 0 and (b << e) > a:
        e -= 1
    elif e < 0 and b > (a << -e):
        e -= 1
    return e


def level_rank_of(spec: ScatterSpec, k: int, x: str) -> int:
    """Closed-form rank of the level-k program for x's prefix: N(free bits)."""
    return decode_n(free_bits(spec, k, x[: spec.f(k)]))


def default_sequence(spec: ScatterSpec) -> str:
    """Fixed bits in place, free bits zero; the canonical consistent witness."""
    fixed = {spec.f(i): spec.bits[i - 1] for i in range(1, spec.k_max + 1)}
    return "".join(fixed.get(pos, "0") for pos in range(1, spec.f(spec.k_max) + 1))
