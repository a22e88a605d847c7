"""Uncertainty products, observable variances, and energy expectations.

The two conjugate quantities: the accuracy 2**-s of an s-digit
approximation to a machine's halting probability, and the uncertainty
width 2**h of the rank of the shortest program generating those s digits.
Their product is computed exactly; a prefix outside the machine's
enumerated range has infinite width, reported as None and rendered "inf".

Everything here works in squared deviations.  The weights attached to the
two indicator observables contain square roots, but every identity of
interest squares them away, so all report numbers stay exact rationals:

    alpha**2 = 2**-2s / (p (1-p))        sigma_X**2 = 2**-2s
    beta**2  = (2**h)**2 / (p (1-p))     sigma_Y**2 = 2**2h

with p the probability of the prefix under Prob(v) = P(v) / Omega^s.
Degenerate distributions (p = 0 or 1, or no length-s output at all) are
rejected rather than patched: the weights are undefined there.

Every report row carries a provenance flag: "exact" when the prefix
digits come from an exactly enumerated halting probability,
"budget-stable" when they come from a partial enumeration and might flip
with more budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .bits import Dyadic, check_bits, rational_div
from .enumerator import EnumerationCache, complexity, omega_lower_bound, omega_s, prob_string


class DegenerateDistributionError(ValueError):
    """The prefix probability is 0 or 1; the observable weights are undefined."""


def delta_s(s: int) -> Dyadic:
    """Accuracy of an s-digit binary approximation: exactly 2**-s."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return Dyadic.pow2(-s)


def omega_prefix(omega: Dyadic, s: int) -> str:
    """First s binary digits of omega in [0, 1].

    Dyadic values get their terminating expansion; the value 1 is read as
    the non-terminating 0.111..., so its prefix is all ones.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if omega < Dyadic.zero() or omega > Dyadic.one():
        raise ValueError("omega must lie in [0, 1]")
    if omega == Dyadic.one():
        return "1" * s
    scaled = (omega.num << s) >> omega.exp
    return format(scaled, f"0{s}b")


def prefix_source(cache: EnumerationCache, s: int) -> tuple[str, str]:
    """Self-referential digit source: (first s digits of the cache's
    halting-probability bound, provenance flag)."""
    bound = omega_lower_bound(cache)
    return omega_prefix(bound, s), "exact" if cache.exact else "budget-stable"


@dataclass(frozen=True)
class UncertaintyReport:
    """One row of the uncertainty-product table."""

    machine: str
    s: int
    omega_prefix: str
    provenance: str
    delta_s: Dyadic
    h: Optional[int]
    delta_c: Optional[int]
    product: Optional[Dyadic]  # None means infinite

    @property
    def finite(self) -> bool:
        return self.product is not None


def uncertainty_product(
    cache: EnumerationCache,
    omega_bits: str,
    s: int,
    provenance: Optional[str] = None,
) -> UncertaintyReport:
    """Exact product 2**-s * 2**h for the first s of the given digits.

    The cache may come from the machine whose halting probability the
    digits approximate (self-referential mode) or from any other machine
    (cross mode); the digits are taken as given either way.
    """
    check_bits(omega_bits)
    if s < 1 or s > len(omega_bits):
        raise ValueError("need 1 <= s <= len(omega_bits)")
    if provenance is None:
        provenance = "exact" if cache.exact else "budget-stable"
    prefix = omega_bits[:s]
    rec = complexity(cache, prefix)
    product = None if rec.h is None else Dyadic.pow2(rec.h - s)
    return UncertaintyReport(
        machine=cache.machine_name,
        s=s,
        omega_prefix=prefix,
        provenance=provenance,
        delta_s=delta_s(s),
        h=rec.h,
        delta_c=rec.delta,
        product=product,
    )


def uncertainty_table(
    cache: EnumerationCache,
    omega_bits: str,
    s_max: int,
    provenance: Optional[str] = None,
) -> list[UncertaintyReport]:
    return [
        uncertainty_product(cache, omega_bits, s, provenance)
        for s in range(1, s_max + 1)
    ]


def epsilon_estimate(cache: EnumerationCache, omega_bits: str, s_max: int) -> Optional[Dyadic]:
    """Minimum finite product over s = 1..s_max; None when every product
    is infinite (no prefix lies in the machine's enumerated range)."""
    if s_max > len(omega_bits):
        raise ValueError("s_max exceeds the available digits")
    finite = [
        r.product for r in uncertainty_table(cache, omega_bits, s_max) if r.product is not None
    ]
    return min(finite) if finite else None


@dataclass(frozen=True)
class GrowthRow:
    s: int
    product: Optional[Dyadic]
    clears: bool  # product >= N; an infinite product clears any bound


def growth_check(
    cache: EnumerationCache,
    omega_bits: str,
    n: int,
    s_range: Iterable[int],
) -> list[GrowthRow]:
    """Empirical check of product >= N over a range of s.

    Purely within-budget bookkeeping: no asymptotic claim is made or
    implied, the rows simply record where the explored products stand.
    """
    rows = []
    for s in s_range:
        r = uncertainty_product(cache, omega_bits, s)
        clears = True if r.product is None else r.product >= n
        rows.append(GrowthRow(s=s, product=r.product, clears=clears))
    return rows


@dataclass(frozen=True)
class ObservablePair:
    """Exact variance bookkeeping for the two indicator observables."""

    s: int
    p: Fraction
    alpha_sq: Fraction
    beta_sq: Fraction
    sigma_x_sq: Fraction
    sigma_y_sq: Fraction
    exact: bool


def _prefix_probability(cache: EnumerationCache, prefix: str) -> Fraction:
    s = len(prefix)
    total = omega_s(cache, s)
    if total.num == 0:
        raise DegenerateDistributionError(
            f"no length-{s} string is output by {cache.machine_name}"
        )
    return rational_div(prob_string(cache, prefix), total)


def observable_pair(cache: EnumerationCache, prefix: str) -> ObservablePair:
    """Weights and variances of the two observables for one digit prefix.

    Requires 0 < p < 1 for the prefix under the machine's length-s output
    distribution, and a finite complexity for the prefix.
    """
    check_bits(prefix)
    if not prefix:
        raise ValueError("prefix must be non-empty")
    s = len(prefix)
    p = _prefix_probability(cache, prefix)
    if p == 0 or p == 1:
        raise DegenerateDistributionError(f"Prob({prefix}) = {p}; weights undefined")
    rec = complexity(cache, prefix)
    if rec.h is None:
        # Unreachable: p > 0 forces a witness program in the same cache.
        raise DegenerateDistributionError(f"{prefix} not in enumerated range")
    pq = p * (1 - p)
    alpha_sq = Fraction(1, 1 << (2 * s)) / pq
    beta_sq = Fraction(rec.delta * rec.delta) / pq
    sigma_x_sq = alpha_sq * p - alpha_sq * p * p
    sigma_y_sq = beta_sq * p - beta_sq * p * p
    return ObservablePair(
        s=s,
        p=p,
        alpha_sq=alpha_sq,
        beta_sq=beta_sq,
        sigma_x_sq=sigma_x_sq,
        sigma_y_sq=sigma_y_sq,
        exact=cache.exact,
    )


@dataclass(frozen=True)
class EnergyExpectation:
    """Squared-energy bookkeeping for the one-level measurement analogy.

    A measurement returns the level weight with probability p and zero
    otherwise; keeping squares avoids the irrational weight itself.  The
    unit convention is one Joule per unit of complexity width.
    """

    p: Fraction
    mean_sq: Fraction  # <H>**2  = beta**2 p**2
    second_moment: Fraction  # <H**2> = beta**2 p
    exact: bool

    @property
    def variance(self) -> Fraction:
        return self.second_moment - self.mean_sq


def energy_expectation(cache: EnumerationCache, prefix: str) -> EnergyExpectation:
    pair = observable_pair(cache, prefix)
    return EnergyExpectation(
        p=pair.p,
        mean_sq=pair.beta_sq * pair.p * pair.p,
        second_moment=pair.beta_sq * pair.p,
        exact=pair.exact,
    )
