import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegalab.builtins import M1_TEXT, UnknownBuiltinError, builtin, builtin_names
from omegalab.machine import MachineError, Spin, run
from omegalab.parser import ParseError, machine_to_text, parse_machine


def brute_force_domain(machine, max_len, budget=500):
    """Independent oracle: run the machine on every program up to max_len."""
    found = {}
    for length in range(max_len + 1):
        for i in range(1 << length):
            p = format(i, f"0{length}b") if length else ""
            outcome = run(machine, p, budget)
            if outcome.is_halted:
                found[p] = outcome.output
    return found


class TestParser:
    def test_m1_domain(self, m1):
        assert brute_force_domain(m1, 4) == {"0": "", "10": "1"}

    def test_duplicate_rule_is_nondeterminism(self):
        text = "machine X\nstart a\na _ => halt\na _ => spin\n"
        with pytest.raises(MachineError, match="[Nn]ondeterministic"):
            parse_machine(text)

    def test_empty_document(self):
        with pytest.raises(ParseError, match="no start state"):
            parse_machine("")

    def test_dangling_state(self):
        with pytest.raises(MachineError, match="dangling.*ghost"):
            parse_machine("machine X\nstart a\na _ => emit 1 ghost\n")

    def test_parse_error_carries_line_number(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_machine("machine X\nstart a\na _ => wobble\n")

    def test_bad_symbol(self):
        with pytest.raises(ParseError, match="tape symbol"):
            parse_machine("machine X\nstart a\na 2 => halt\n")

    def test_write_blank_allowed(self):
        m = parse_machine("machine X\nstart a\na _ => write _ R b\nb _ => halt\n")
        assert run(m, "", 10).is_halted

    def test_emit_blank_rejected(self):
        with pytest.raises(ParseError, match="bit"):
            parse_machine("machine X\nstart a\na _ => emit _ b\nb _ => halt\n")

    def test_comments_and_blank_lines(self):
        text = "# header\nmachine X\n\nstart a  # trailing\na _ => halt\n"
        m = parse_machine(text)
        assert run(m, "", 10).is_halted

    def test_unspecified_pairs_become_spin(self):
        m = parse_machine("machine X\nstart a\na _ => write 1 R a\n")
        assert isinstance(m.table[("a", "1")], Spin)

    def test_roundtrip(self, m1, omega_demo, geom):
        for machine in (m1, omega_demo, geom):
            again = parse_machine(machine_to_text(machine))
            assert again.table == machine.table
            assert again.start == machine.start


class TestRun:
    def test_m1_accepts_zero(self, m1):
        outcome = run(m1, "0", 100)
        assert outcome.kind == "halted"
        assert outcome.output == ""
        assert outcome.consumed == "0"

    def test_m1_halts_early_on_extension(self, m1):
        outcome = run(m1, "00", 100)
        assert outcome.kind == "halted_early"
        assert outcome.consumed == "0"

    def test_m1_second_program(self, m1):
        outcome = run(m1, "10", 100)
        assert outcome.kind == "halted"
        assert outcome.output == "1"

    def test_needs_more_input(self, m1):
        assert run(m1, "", 100).kind == "needs_more_input"
        assert run(m1, "1", 100).kind == "needs_more_input"

    def test_divergence_burns_budget(self, m1):
        for budget in (1, 10, 1000):
            assert run(m1, "11", budget).kind == "out_of_budget"

    def test_small_budget(self, m1):
        assert run(m1, "0", 1).kind == "out_of_budget"
        assert run(m1, "0", 2).kind == "halted"

    def test_budget_validation(self, m1):
        with pytest.raises(ValueError):
            run(m1, "0", 0)

    @given(st.integers(min_value=2, max_value=60), st.integers(min_value=0, max_value=60))
    def test_budget_monotonicity(self, budget, extra):
        machine = parse_machine(M1_TEXT)
        for program in ("0", "10", "11", "1"):
            first = run(machine, program, budget)
            if first.is_halted:
                second = run(machine, program, budget + extra)
                assert (second.kind, second.output, second.consumed) == (
                    first.kind,
                    first.output,
                    first.consumed,
                )

    def test_determinism(self, geom):
        a = run(geom, "1111110", 500)
        b = run(geom, "1111110", 500)
        assert a == b
        assert a.output == "110"  # B(6)


class TestBuiltins:
    def test_unknown_name(self):
        with pytest.raises(UnknownBuiltinError):
            builtin("nope")

    def test_catalog_names(self):
        assert {"M1", "OMEGA_DEMO", "GEOM"} <= set(builtin_names())

    def test_geom_outputs(self, geom):
        from omegalab.bits import encode_b

        for n in range(13):
            outcome = run(geom, "1" * n + "0", 2000)
            assert outcome.is_halted
            assert outcome.output == encode_b(n)
