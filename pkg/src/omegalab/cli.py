"""Command-line surface tying the modules into reproducible experiments.

Each construction gets its own subcommand so it can be demonstrated in
isolation; the ``report`` subcommand runs a whole experiment from a JSON
config.  All numeric output is exact (num/den fractions or integers) and
every row carries its provenance flag, so identical inputs produce
byte-identical outputs.  The cache directory defaults to the
OMEGALAB_CACHE_DIR environment variable when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bits import Dyadic, format_exact
from .builtins import UnknownBuiltinError, builtin, builtin_names
from .enumerator import complexity, load_or_enumerate, omega_lower_bound
from .kraft import CodeAllocator, KraftExceeded
from .machine import MachineError
from .parser import ParseError, machine_to_text, parse_machine
from .reports import (
    DEGENERATE,
    FORMATS,
    emit_report,
    optional_int,
    provenance_flag,
    render_value,
)
from .scattered import (
    ScatterSpec,
    build_machine,
    contradiction_report,
    default_sequence,
    verify_bound,
)
from .uncertainty import (
    DegenerateDistributionError,
    observable_pair,
    prefix_source,
    uncertainty_table,
)
from .universal import simulator_prefix, universal_machine

ENV_CACHE_DIR = "OMEGALAB_CACHE_DIR"


class CliError(Exception):
    pass


def _resolve_machine(args):
    if getattr(args, "machine_file", None):
        try:
            return parse_machine(Path(args.machine_file).read_text())
        except (ParseError, MachineError) as exc:
            raise CliError(f"bad machine file: {exc}") from exc
    name = getattr(args, "machine", None)
    if not name:
        raise CliError("need --machine or --machine-file")
    if name == "U":
        return universal_machine()
    try:
        return builtin(name)
    except UnknownBuiltinError:
        raise CliError(
            f"unknown machine {name!r}; built-ins: {', '.join(builtin_names())} and U"
        ) from None


def _cache_dir(args):
    if getattr(args, "cache_dir", None):
        return Path(args.cache_dir)
    env = os.environ.get(ENV_CACHE_DIR)
    return Path(env) if env else None


def _cache(args):
    machine = _resolve_machine(args)
    return load_or_enumerate(machine, args.budget, args.max_len, _cache_dir(args))


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(args) -> int:
    cache = _cache(args)
    rows = [
        {"program": p, "output": out, "provenance": provenance_flag(cache.exact)}
        for p, out in cache.halted
    ]
    _write(args, emit_report(rows, ["program", "output", "provenance"], args.format))
    return 0


def cmd_omega(args) -> int:
    cache = _cache(args)
    bound = omega_lower_bound(cache)
    flag = provenance_flag(cache.exact)
    if args.format == "text":
        _write(args, f"{bound} ({flag})\n")
    else:
        rows = [{"omega_lower_bound": str(bound), "provenance": flag}]
        _write(args, emit_report(rows, ["omega_lower_bound", "provenance"], args.format))
    return 0


def cmd_complexity(args) -> int:
    cache = _cache(args)
    targets = args.strings.split(",") if args.strings else sorted(
        cache.outputs(), key=lambda x: (len(x), x)
    )
    rows = []
    for x in targets:
        rec = complexity(cache, x)
        rows.append(
            {
                "x": x,
                "h": optional_int(rec.h),
                "nabla": optional_int(rec.nabla),
                "delta": optional_int(rec.delta),
                "provenance": provenance_flag(rec.exact),
            }
        )
    _write(args, emit_report(rows, ["x", "h", "nabla", "delta", "provenance"], args.format))
    return 0


def cmd_kraft(args) -> int:
    try:
        lengths = [int(tok) for tok in args.lengths.split(",") if tok != ""]
    except ValueError:
        raise CliError(f"bad --lengths value {args.lengths!r}") from None
    allocator = CodeAllocator()
    try:
        words = allocator.assign_all(lengths)
    except KraftExceeded as exc:
        raise CliError(str(exc)) from None
    _write(args, "".join(f"{w}\n" for w in words))
    return 0


def _uncertainty_rows(cache, bits, s_max, provenance):
    rows = []
    for report in uncertainty_table(cache, bits, s_max, provenance):
        try:
            pair = observable_pair(cache, report.omega_prefix)
            sx, sy = render_value(pair.sigma_x_sq), render_value(pair.sigma_y_sq)
        except (DegenerateDistributionError, ZeroDivisionError):
            sx = sy = DEGENERATE
        rows.append(
            {
                "s": str(report.s),
                "omega_prefix": report.omega_prefix,
                "provenance": report.provenance,
                "delta_s": str(report.delta_s),
                "H": optional_int(report.h),
                "delta_C": optional_int(report.delta_c),
                "product": render_value(report.product),
                "sigma_x_sq": sx,
                "sigma_y_sq": sy,
            }
        )
    return rows


UNCERTAINTY_COLUMNS = [
    "s",
    "omega_prefix",
    "provenance",
    "delta_s",
    "H",
    "delta_C",
    "product",
    "sigma_x_sq",
    "sigma_y_sq",
]


def cmd_uncertainty(args) -> int:
    cache = _cache(args)
    if args.bits:
        bits, provenance = args.bits, "budget-stable"
    else:
        bits, provenance = prefix_source(cache, args.s_max)
    if len(bits) < args.s_max:
        raise CliError("--bits shorter than --s-max")
    rows = _uncertainty_rows(cache, bits, args.s_max, provenance)
    _write(args, emit_report(rows, UNCERTAINTY_COLUMNS, args.format))
    return 0


def cmd_observables(args) -> int:
    cache = _cache(args)
    if args.bits:
        prefix = args.bits
    else:
        prefix, _ = prefix_source(cache, args.s)
    try:
        pair = observable_pair(cache, prefix[: args.s])
    except (DegenerateDistributionError, ZeroDivisionError) as exc:
        raise CliError(f"degenerate distribution: {exc}") from None
    row = {
        "s": str(pair.s),
        "omega_prefix": prefix[: args.s],
        "provenance": provenance_flag(pair.exact),
        "p": render_value(pair.p),
        "alpha_sq": render_value(pair.alpha_sq),
        "beta_sq": render_value(pair.beta_sq),
        "sigma_x_sq": render_value(pair.sigma_x_sq),
        "sigma_y_sq": render_value(pair.sigma_y_sq),
    }
    columns = ["s", "omega_prefix", "provenance", "p", "alpha_sq", "beta_sq", "sigma_x_sq", "sigma_y_sq"]
    _write(args, emit_report([row], columns, args.format))
    return 0


SCATTER_COLUMNS = [
    "k",
    "f_k",
    "prefix",
    "H",
    "delta",
    "nabla",
    "bound",
    "passed",
    "product",
    "aggregate_nabla",
    "provenance",
]


def cmd_scattered(args) -> int:
    try:
        spec = ScatterSpec.from_file(args.spec)
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"bad scatter spec: {exc}") from exc
    machine = build_machine(spec)
    x = args.sequence if args.sequence else default_sequence(spec)
    rows = [
        {
            "k": str(r.k),
            "f_k": str(r.f_k),
            "prefix": r.prefix,
            "H": str(r.h),
            "delta": str(r.delta),
            "nabla": str(r.nabla),
            "bound": str(r.bound),
            "passed": render_value(r.passed),
            "product": str(r.product),
            "aggregate_nabla": optional_int(r.aggregate_nabla),
            "provenance": "exact",
        }
        for r in verify_bound(machine, spec, x)
    ]
    table = emit_report(rows, SCATTER_COLUMNS, args.format)
    description = machine_to_text(machine)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "machine.txt").write_text(description)
        suffix = "csv" if args.format == "csv" else args.format
        (out / f"verify.{suffix}").write_text(table)
    else:
        sys.stdout.write(description)
        sys.stdout.write(table)
    if args.epsilon_line is not None:
        lift = 1 << len(simulator_prefix(machine))
        report = contradiction_report(spec, _parse_dyadic(args.epsilon_line), lift)
        line = (
            "contradiction: vacuous (epsilon_line <= 0)\n"
            if report.vacuous
            else f"contradiction: crossing at k = {report.crossing_k}\n"
            if report.crossing_k is not None
            else "contradiction: no crossing within horizon\n"
        )
        if args.out:
            (Path(args.out) / "contradiction.txt").write_text(line)
        else:
            sys.stdout.write(line)
    return 0


def _parse_dyadic(text: str) -> Dyadic:
    if "/" in text:
        num, den = text.split("/", 1)
        d = int(den)
        if d < 1 or d & (d - 1):
            raise CliError(f"dyadic denominator must be a power of two: {text!r}")
        return Dyadic(int(num), d.bit_length() - 1)
    return Dyadic(int(text))


def cmd_report(args) -> int:
    try:
        config = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"bad config: {exc}") from exc
    ns = argparse.Namespace(
        machine=config.get("machine"),
        machine_file=config.get("machine_file"),
        budget=int(config["budget"]),
        max_len=config.get("max_len"),
        cache_dir=config.get("cache_dir") or getattr(args, "cache_dir", None),
    )
    cache = _cache(ns)
    s_max = int(config.get("s_max", 4))
    if config.get("prefix_bits"):
        bits, provenance = config["prefix_bits"], "budget-stable"
    else:
        bits, provenance = prefix_source(cache, s_max)
    out_dir = Path(args.out) if args.out else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    bound = omega_lower_bound(cache)
    summary = {
        "machine": cache.machine_name,
        "machine_hash": cache.machine_hash,
        "budget": cache.budget,
        "provenance": provenance_flag(cache.exact),
        "omega_lower_bound": str(bound),
        "domain_size": len(cache.halted),
        "prefix_bits": bits,
        "prefix_provenance": provenance,
    }
    (out_dir / "report.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    rows = _uncertainty_rows(cache, bits, s_max, provenance)
    (out_dir / "uncertainty.csv").write_text(emit_report(rows, UNCERTAINTY_COLUMNS, "csv"))
    comp_rows = []
    for x in sorted(cache.outputs(), key=lambda x: (len(x), x)):
        rec = complexity(cache, x)
        comp_rows.append(
            {
                "x": x,
                "h": optional_int(rec.h),
                "nabla": optional_int(rec.nabla),
                "delta": optional_int(rec.delta),
                "provenance": provenance_flag(rec.exact),
            }
        )
    (out_dir / "complexity.csv").write_text(
        emit_report(comp_rows, ["x", "h", "nabla", "delta", "provenance"], "csv")
    )
    return 0


def _add_machine_opts(sub, budget_required=True):
    sub.add_argument("--machine", help="built-in machine name, or U for the universal machine")
    sub.add_argument("--machine-file", help="path to a machine description")
    sub.add_argument("--budget", type=int, required=budget_required, help="total step budget")
    sub.add_argument("--max-len", type=int, default=None, help="program length cap for enumeration")
    sub.add_argument("--cache-dir", help=f"cache directory (default ${ENV_CACHE_DIR})")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omegalab",
        description="halting probabilities, program-size complexity, prefix codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate a machine's halting domain")
    _add_machine_opts(p)

    p = sub.add_parser("omega", help="exact lower bound for the halting probability")
    _add_machine_opts(p)

    p = sub.add_parser("complexity", help="program-size complexity of output strings")
    _add_machine_opts(p)
    p.add_argument("--strings", help="comma-separated targets (default: every enumerated output)")

    p = sub.add_parser("kraft", help="prefix-free codewords with prescribed lengths")
    p.add_argument("--lengths", required=True, help="comma-separated codeword lengths")

    p = sub.add_parser("uncertainty", help="uncertainty products for digit prefixes")
    _add_machine_opts(p)
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--bits", help="explicit digit source (default: the machine's own omega)")

    p = sub.add_parser("observables", help="observable pair for one digit prefix")
    _add_machine_opts(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--bits", help="explicit digit source")

    p = sub.add_parser("scattered", help="compile and verify a scattered-bits spec")
    p.add_argument("--spec", required=True, help="scatter spec JSON file")
    p.add_argument("--sequence", help="full sequence consistent with the fixed bits")
    p.add_argument("--epsilon-line", help="assumed uncertainty line for the contradiction report")

    p = sub.add_parser("report", help="run a full experiment from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--cache-dir")

    for name, cmd in sub.choices.items():
        if name not in ("report", "kraft"):
            cmd.add_argument("--format", choices=FORMATS, default="csv" if name != "omega" else "text")
        cmd.add_argument("--out", help="output path (directory for scattered/report)")
    return parser


_HANDLERS = {
    "enumerate": cmd_enumerate,
    "omega": cmd_omega,
    "complexity": cmd_complexity,
    "kraft": cmd_kraft,
    "uncertainty": cmd_uncertainty,
    "observables": cmd_observables,
    "scattered": cmd_scattered,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, MachineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
