"""Exhaustive exploration of a machine's input-request tree.

Rather than running the machine on every candidate string, the enumerator
walks the binary tree of read requests, cloning the process state at each
branch.  A node is a program prefix; a leaf is a halt (a domain element),
a spin (provably dead subtree), or an unresolved node that ran out of
step budget or hit the depth cap.  A program p is in the resulting halted
set at budget b exactly when ``run(machine, p, b)`` halts, so caches are
pure functions of (machine, budget, depth cap) and independent of
exploration order.

``exact`` is True only when no unresolved node remains: every pending
branch died in a visible spin, which proves no further halts exist at any
budget.  Infinite-domain machines never produce exact caches; their
numbers are lower bounds and are labeled as such downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .bits import Dyadic, check_bits, decode_n, dyadic_sum
from .machine import Signal

CACHE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class EnumerationCache:
    """The enumerated halting set of one machine at one budget."""

    machine_name: str
    machine_hash: str
    budget: int
    max_len: Optional[int]
    halted: tuple[tuple[str, str], ...]  # (program, output), sorted by program rank
    unresolved: int
    spun: int
    exact: bool

    def outputs(self) -> set[str]:
        return {out for _, out in self.halted}

    def programs(self) -> list[str]:
        return [p for p, _ in self.halted]


def enumerate_domain(machine, budget: int, max_len: Optional[int] = None) -> EnumerationCache:
    """Explore the request tree of ``machine`` within a total step budget.

    ``max_len`` caps the explored program length; reads past the cap count
    as unresolved frontier (the cache can then never claim exactness for
    what lies deeper).
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    halted: list[tuple[str, str]] = []
    unresolved = 0
    spun = 0
    stack = [(machine.start_process(), "")]
    while stack:
        proc, prefix = stack.pop()
        sig = proc.advance(budget)
        if sig is Signal.HALTED:
            halted.append((prefix, proc.output()))
        elif sig is Signal.SPINNING:
            spun += 1
        elif sig is Signal.BUDGET:
            unresolved += 1
        else:  # needs input
            if max_len is not None and len(prefix) >= max_len:
                unresolved += 1
                continue
            zero = proc.clone()
            zero.feed("0")
            stack.append((zero, prefix + "0"))
            proc.feed("1")
            stack.append((proc, prefix + "1"))
    halted.sort(key=lambda item: decode_n(item[0]))
    return EnumerationCache(
        machine_name=getattr(machine, "name", "machine"),
        machine_hash=machine.cache_key(),
        budget=budget,
        max_len=max_len,
        halted=tuple(halted),
        unresolved=unresolved,
        spun=spun,
        exact=unresolved == 0,
    )


def omega_lower_bound(cache: EnumerationCache) -> Dyadic:
    """Sum of 2**-|p| over halted programs; the machine's halting
    probability itself when the cache is exact."""
    return dyadic_sum(Dyadic.pow2(-len(p)) for p, _ in cache.halted)


def prob_string(cache: EnumerationCache, x: str) -> Dyadic:
    """Mass of programs producing x; exact when the cache is, else a lower bound."""
    check_bits(x)
    return dyadic_sum(
        Dyadic.pow2(-len(p)) for p, out in cache.halted if out == x
    )


def omega_s(cache: EnumerationCache, s: int) -> Dyadic:
    """Total mass of programs whose output has length s."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return dyadic_sum(
        Dyadic.pow2(-len(p)) for p, out in cache.halted if len(out) == s
    )


@dataclass(frozen=True)
class ComplexityRecord:
    """Program-size complexity of one string against one cache.

    ``h`` is the minimum program length producing x (None when x is not in
    the enumerated range, i.e. infinite), ``nabla`` the minimum integer
    rank of such a program, ``delta`` the uncertainty width 2**h.  The
    sandwich 2**h - 1 <= nabla < 2**(h+1) - 1 holds whenever finite.
    """

    x: str
    h: Optional[int]
    nabla: Optional[int]
    exact: bool

    @property
    def delta(self) -> Optional[int]:
        return None if self.h is None else 1 << self.h

    @property
    def finite(self) -> bool:
        return self.h is not None


def complexity(cache: EnumerationCache, x: str) -> ComplexityRecord:
    check_bits(x)
    witnesses = [p for p, out in cache.halted if out == x]
    if not witnesses:
        return ComplexityRecord(x, None, None, cache.exact)
    return ComplexityRecord(
        x,
        min(len(p) for p in witnesses),
        min(decode_n(p) for p in witnesses),
        cache.exact,
    )


# -- persistence ------------------------------------------------------------


def cache_path(directory: Path, machine_hash: str, budget: int, max_len: Optional[int]) -> Path:
    suffix = "all" if max_len is None else str(max_len)
    return Path(directory) / f"{machine_hash[:16]}_b{budget}_l{suffix}.json"


def save_cache(cache: EnumerationCache, directory: Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = cache_path(directory, cache.machine_hash, cache.budget, cache.max_len)
    doc = {
        "version": CACHE_FORMAT_VERSION,
        "machine_name": cache.machine_name,
        "machine_hash": cache.machine_hash,
        "budget": cache.budget,
        "max_len": cache.max_len,
        "halted": [[p, out] for p, out in cache.halted],
        "frontier": {"unresolved": cache.unresolved, "spin": cache.spun},
        "exact": cache.exact,
    }
    path.write_text(json.dumps(doc, indent=0, sort_keys=True) + "\n")
    return path


def load_cache(path: Path) -> EnumerationCache:
    doc = json.loads(Path(path).read_text())
    if doc.get("version") != CACHE_FORMAT_VERSION:
        raise ValueError(f"unsupported cache version in {path}")
    return EnumerationCache(
        machine_name=doc["machine_name"],
        machine_hash=doc["machine_hash"],
        budget=doc["budget"],
        max_len=doc["max_len"],
        halted=tuple((p, out) for p, out in doc["halted"]),
        unresolved=doc["frontier"]["unresolved"],
        spun=doc["frontier"]["spin"],
        exact=doc["exact"],
    )


def load_or_enumerate(
    machine, budget: int, max_len: Optional[int] = None, cache_dir: Optional[Path] = None
) -> EnumerationCache:
    """Reuse a stored cache when one exists for (machine hash, budget, cap)."""
    if cache_dir is None:
        return enumerate_domain(machine, budget, max_len)
    path = cache_path(Path(cache_dir), machine.cache_key(), budget, max_len)
    if path.exists():
        return load_cache(path)
    cache = enumerate_domain(machine, budget, max_len)
    save_cache(cache, Path(cache_dir))
    return cache


def all_prefix_pairs(strings: Iterable[str]) -> list[tuple[str, str]]:
    """Quadratic oracle: every (x, y) with x a proper prefix of y."""
    items = list(strings)
    return [
        (x, y)
        for i, x in enumerate(items)
        for j, y in enumerate(items)
        if i != j and len(x) < len(y) and y.startswith(x)
    ]
