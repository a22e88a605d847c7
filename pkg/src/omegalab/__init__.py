"""omegalab: desk-scale halting probabilities, complexity, and prefix codes."""

from .bits import Dyadic, Rational, decode_n, dyadic_sum, encode_b, rational_div
from .builtins import builtin, builtin_names, register_builtin
from .enumerator import (
    ComplexityRecord,
    EnumerationCache,
    complexity,
    enumerate_domain,
    load_or_enumerate,
    omega_lower_bound,
    omega_s,
    prob_string,
)
from .kraft import CodeAllocator, KraftExceeded, assign_all
from .machine import RunOutcome, TableMachine, run
from .parser import ParseError, machine_to_text, parse_machine
from .scattered import (
    ScatterSpec,
    build_machine,
    contradiction_report,
    length_schedule,
    level_machine,
    verify_bound,
)
from .uncertainty import (
    DegenerateDistributionError,
    ObservablePair,
    UncertaintyReport,
    delta_s,
    energy_expectation,
    epsilon_estimate,
    growth_check,
    observable_pair,
    omega_prefix,
    uncertainty_product,
    uncertainty_table,
)
from .universal import pad_machine, simulator_prefix, universal_machine

__version__ = "0.1.0"

__all__ = [
    "CodeAllocator",
    "ComplexityRecord",
    "DegenerateDistributionError",
    "Dyadic",
    "EnumerationCache",
    "KraftExceeded",
    "ObservablePair",
    "ParseError",
    "Rational",
    "RunOutcome",
    "ScatterSpec",
    "TableMachine",
    "UncertaintyReport",
    "assign_all",
    "build_machine",
    "builtin",
    "builtin_names",
    "complexity",
    "contradiction_report",
    "decode_n",
    "delta_s",
    "dyadic_sum",
    "encode_b",
    "energy_expectation",
    "enumerate_domain",
    "epsilon_estimate",
    "growth_check",
    "length_schedule",
    "level_machine",
    "load_or_enumerate",
    "machine_to_text",
    "observable_pair",
    "omega_lower_bound",
    "omega_prefix",
    "omega_s",
    "pad_machine",
    "parse_machine",
    "prob_string",
    "rational_div",
    "register_builtin",
    "run",
    "simulator_prefix",
    "uncertainty_product",
    "uncertainty_table",
    "universal_machine",
    "verify_bound",
]
