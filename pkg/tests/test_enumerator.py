import pytest

from omegalab.bits import Dyadic, prefix_free
from omegalab.enumerator import (
    all_prefix_pairs,
    complexity,
    enumerate_domain,
    load_cache,
    load_or_enumerate,
    omega_lower_bound,
    omega_s,
    prob_string,
    save_cache,
)
from omegalab.parser import parse_machine

SPIN_ONLY = "machine VOID\nstart a\na _ => spin\n"


class TestEnumerate:
    def test_m1_exact(self, m1_cache):
        assert m1_cache.halted == (("0", ""), ("10", "1"))
        assert m1_cache.exact

    def test_omega_demo_exact(self, omega_demo_cache):
        assert dict(omega_demo_cache.halted) == {
            "0": "1",
            "100": "11",
            "101": "110",
            "110": "",
        }
        assert omega_demo_cache.exact

    def test_geom_never_exact(self, geom, geom_cache):
        assert not geom_cache.exact
        smaller = enumerate_domain(geom, 100)
        assert not smaller.exact
        assert set(smaller.halted) < set(geom_cache.halted)

    def test_halted_sets_prefix_free(self, m1_cache, omega_demo_cache, geom_cache):
        for cache in (m1_cache, omega_demo_cache, geom_cache):
            assert prefix_free(cache.programs())
            assert all_prefix_pairs(cache.programs()) == []

    def test_determinism(self, m1):
        assert enumerate_domain(m1, 100) == enumerate_domain(m1, 100)

    def test_max_len_caps_exploration(self, geom):
        capped = enumerate_domain(geom, 400, max_len=5)
        assert max(len(p) for p in capped.programs()) <= 5
        assert not capped.exact

    def test_budget_validation(self, m1):
        with pytest.raises(ValueError):
            enumerate_domain(m1, 0)


class TestOmega:
    def test_m1(self, m1_cache):
        assert omega_lower_bound(m1_cache) == Dyadic(3, 2)

    def test_omega_demo(self, omega_demo_cache):
        assert omega_lower_bound(omega_demo_cache) == Dyadic(7, 3)

    def test_empty_domain(self):
        cache = enumerate_domain(parse_machine(SPIN_ONLY), 100)
        assert cache.halted == ()
        assert cache.exact
        assert omega_lower_bound(cache) == Dyadic.zero()

    def test_monotone_and_bounded(self, geom):
        previous = Dyadic.zero()
        for budget in (20, 50, 100, 200, 400):
            bound = omega_lower_bound(enumerate_domain(geom, budget))
            assert previous <= bound <= Dyadic.one()
            previous = bound

    def test_exactness_soundness(self, m1, m1_cache):
        bigger = enumerate_domain(m1, 1000)
        assert bigger.halted == m1_cache.halted
        assert bigger.exact


class TestProbability:
    def test_prob_string_m1(self, m1_cache):
        assert prob_string(m1_cache, "") == Dyadic(1, 1)
        assert prob_string(m1_cache, "1") == Dyadic(1, 2)
        assert prob_string(m1_cache, "0") == Dyadic.zero()

    def test_omega_s(self, m1_cache, omega_demo_cache):
        assert omega_s(m1_cache, 1) == Dyadic(1, 2)
        # OMEGA_DEMO's only length-2 output is "11", via the single
        # program 100, so the level mass is exactly 2**-3.
        assert omega_s(omega_demo_cache, 2) == Dyadic(1, 3)
        assert omega_s(m1_cache, 3) == Dyadic.zero()

    def test_omega_s_validation(self, m1_cache):
        with pytest.raises(ValueError):
            omega_s(m1_cache, 0)


class TestComplexity:
    def test_m1_empty_output(self, m1_cache):
        rec = complexity(m1_cache, "")
        assert (rec.h, rec.nabla, rec.delta) == (1, 1, 2)
        assert rec.exact

    def test_m1_one(self, m1_cache):
        rec = complexity(m1_cache, "1")
        # The only witness is "10", whose shortlex rank is 5.
        assert (rec.h, rec.nabla, rec.delta) == (2, 5, 4)

    def test_not_in_range(self, m1_cache):
        rec = complexity(m1_cache, "0")
        assert rec.h is None and rec.nabla is None and rec.delta is None
        assert not rec.finite

    def test_sandwich(self, m1_cache, omega_demo_cache, geom_cache):
        for cache in (m1_cache, omega_demo_cache, geom_cache):
            for out in cache.outputs():
                rec = complexity(cache, out)
                assert 2**rec.h - 1 <= rec.nabla < 2 ** (rec.h + 1) - 1


class TestPersistence:
    def test_roundtrip(self, tmp_path, m1_cache):
        path = save_cache(m1_cache, tmp_path)
        assert load_cache(path) == m1_cache

    def test_load_or_enumerate_reuses(self, tmp_path, m1):
        first = load_or_enumerate(m1, 100, cache_dir=tmp_path)
        files = list(tmp_path.iterdir())
        assert len(files) == 1
        stamp = files[0].read_bytes()
        second = load_or_enumerate(m1, 100, cache_dir=tmp_path)
        assert second == first
        assert files[0].read_bytes() == stamp

    def test_version_check(self, tmp_path, m1_cache):
        path = save_cache(m1_cache, tmp_path)
        path.write_text(path.read_text().replace('"version": 1', '"version": 99'))
        with pytest.raises(ValueError, match="version"):
            load_cache(path)


def test_all_prefix_pairs_oracle():
    assert all_prefix_pairs(["0", "01", "1"]) == [("0", "01")]
    assert all_prefix_pairs(["00", "01"]) == []
