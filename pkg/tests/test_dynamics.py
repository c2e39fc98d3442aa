import random

import pytest

from conftest import brute_census, brute_cycle_multiset, brute_order, trial_primes_between
from expcycles import dynamics
from expcycles.modarith import multiplicative_order


class TestExpMap:
    def test_reduces_g(self):
        assert dynamics.ExpMap(7, 10).g == 3
        assert dynamics.ExpMap(7, 3).g == 3

    def test_rejects_composite_modulus(self):
        with pytest.raises(ValueError):
            dynamics.ExpMap(4, 2)

    def test_rejects_zero_base(self):
        with pytest.raises(ValueError):
            dynamics.ExpMap(7, 0)
        with pytest.raises(ValueError):
            dynamics.ExpMap(7, 14)


class TestApplyIterate:
    def test_fixed_point_example(self):
        assert dynamics.apply(dynamics.ExpMap(7, 3), 2) == 2  # 3**2 = 9 = 2 mod 7

    def test_constant_base(self):
        m = dynamics.ExpMap(13, 1)
        assert all(dynamics.apply(m, u) == 1 for u in range(1, 13))

    def test_known_value(self):
        assert dynamics.apply(dynamics.ExpMap(11, 2), 6) == 9  # 2**6 = 64 = 9 mod 11

    @pytest.mark.parametrize("u", [0, 11, 200])
    def test_domain_enforced(self, u):
        with pytest.raises(ValueError):
            dynamics.apply(dynamics.ExpMap(11, 2), u)

    def test_iterate_two_cycle(self):
        assert dynamics.iterate(dynamics.ExpMap(11, 2), 3, 2) == 3  # 3 -> 8 -> 3

    def test_iterate_zero_steps(self):
        assert dynamics.iterate(dynamics.ExpMap(11, 2), 5, 0) == 5

    def test_iterate_three_cycle(self):
        assert dynamics.iterate(dynamics.ExpMap(7, 3), 1, 3) == 1  # 1 -> 3 -> 6 -> 1

    def test_iterate_matches_repeated_apply(self):
        m = dynamics.ExpMap(101, 7)
        v = 55
        for k in range(12):
            assert dynamics.iterate(m, 55, k) == v
            v = dynamics.apply(m, v)


class TestOrbit:
    def test_fixed_point(self):
        rec = dynamics.orbit(dynamics.ExpMap(11, 2), 7)
        assert (rec.tail_length, rec.cycle_length, rec.entry_point) == (0, 1, 7)

    def test_tail_into_two_cycle(self):
        rec = dynamics.orbit(dynamics.ExpMap(7, 2), 5)  # 5 -> 4 -> 2 -> 4
        assert (rec.tail_length, rec.cycle_length, rec.entry_point) == (1, 2, 4)

    def test_five_cycle(self):
        rec = dynamics.orbit(dynamics.ExpMap(11, 2), 1)
        assert (rec.tail_length, rec.cycle_length, rec.entry_point) == (0, 5, 1)

    def test_consistency_random_maps(self):
        rng = random.Random(11)
        for _ in range(60):
            p = rng.choice(trial_primes_between(3, 600))
            m = dynamics.ExpMap(p, rng.randint(1, p - 1))
            u0 = rng.randint(1, p - 1)
            rec = dynamics.orbit(m, u0)
            entry = dynamics.iterate(m, u0, rec.tail_length)
            assert entry == rec.entry_point
            assert dynamics.iterate(m, entry, rec.cycle_length) == entry
            # the tail really is minimal: one step earlier is not yet cyclic
            if rec.tail_length > 0:
                before = dynamics.iterate(m, u0, rec.tail_length - 1)
                assert dynamics.iterate(m, before, rec.cycle_length) != before


class TestCensusNaive:
    def test_golden_11_2(self):
        c = dynamics.census_naive(dynamics.ExpMap(11, 2), 3)
        assert c.n_dividing[1:] == (1, 5, 1)
        assert c.n_least_period[1:] == (1, 4, 0)

    def test_golden_7_3(self):
        c = dynamics.census_naive(dynamics.ExpMap(7, 3), 3)
        assert c.n_dividing[1:] == (3, 3, 6)

    def test_constant_base(self):
        c = dynamics.census_naive(dynamics.ExpMap(13, 1), 4)
        assert c.n_dividing[1:] == (1, 1, 1, 1)

    def test_workers_do_not_change_counts(self):
        m = dynamics.ExpMap(211, 3)
        reference = dynamics.census_naive(m, 4)
        for workers in (2, 3):
            assert dynamics.census_naive(m, 4, workers=workers) == reference

    def test_dividing_is_sum_over_least_divisors(self):
        rng = random.Random(4)
        for _ in range(40):
            p = rng.choice(trial_primes_between(3, 500))
            c = dynamics.census_naive(dynamics.ExpMap(p, rng.randint(1, p - 1)), 6)
            for k in range(1, 7):
                assert c.n_dividing[k] == sum(
                    c.n_least_period[d] for d in range(1, k + 1) if k % d == 0
                )

    def test_divisor_monotonicity(self):
        rng = random.Random(5)
        for _ in range(40):
            p = rng.choice(trial_primes_between(3, 500))
            c = dynamics.census_naive(dynamics.ExpMap(p, rng.randint(1, p - 1)), 6)
            for k in range(1, 7):
                for d in range(1, k):
                    if k % d == 0:
                        assert c.n_dividing[d] <= c.n_dividing[k]


class TestExpTable:
    def test_matches_pow_small(self):
        for p, g in [(7, 3), (11, 2), (97, 5), (499, 7)]:
            table = dynamics.exp_table(dynamics.ExpMap(p, g))
            assert table[0] == 0
            for u in range(1, p):
                assert int(table[u]) == pow(g, u, p)

    def test_matches_pow_sampled_large(self):
        p, g = 99991, 3
        table = dynamics.exp_table(dynamics.ExpMap(p, g))
        rng = random.Random(6)
        for u in [1, 2, p - 1] + [rng.randint(1, p - 1) for _ in range(200)]:
            assert int(table[u]) == pow(g, u, p)


class TestCensusRoutes:
    def test_table_equals_naive_sampled(self):
        rng = random.Random(7)
        for _ in range(40):
            p = rng.choice(trial_primes_between(3, 400))
            g = rng.randint(1, p - 1)
            m = dynamics.ExpMap(p, g)
            assert dynamics.census_table(m, 6) == dynamics.census_naive(m, 6)

    def test_graph_equals_naive_exhaustive_small(self):
        for p in trial_primes_between(3, 59):
            for g in range(1, p):
                m = dynamics.ExpMap(p, g)
                naive = dynamics.census_naive(m, 4)
                _, derived = dynamics.census_graph(m, k_max=4)
                assert derived == naive, (p, g)

    def test_routes_agree_beyond_small_range(self):
        for p, g in [(10007, 5), (20011, 2)]:
            m = dynamics.ExpMap(p, g)
            naive = dynamics.census_naive(m, 4)
            assert dynamics.census_table(m, 4) == naive
            _, derived = dynamics.census_graph(m, k_max=4)
            assert derived == naive

    def test_list_table_fallback(self, monkeypatch):
        # force the pure-python table path and check the routes still agree
        monkeypatch.setattr(dynamics, "_NUMPY_MOD_LIMIT", 2)
        m = dynamics.ExpMap(101, 7)
        table = dynamics.exp_table(m)
        assert isinstance(table, list)
        assert all(table[u] == pow(7, u, 101) for u in range(1, 101))
        assert dynamics.census_table(m, 6) == dynamics.census_naive(m, 6)
        _, derived = dynamics.census_graph(m, k_max=6)
        assert derived == dynamics.census_naive(m, 6)
        assert dynamics.fixed_points(m) == {u for u in range(1, 101) if pow(7, u, 101) == u}

    def test_graph_census_against_oracle(self):
        rng = random.Random(8)
        for _ in range(25):
            p = rng.choice(trial_primes_between(3, 400))
            g = rng.randint(1, p - 1)
            _, census = dynamics.census_graph(dynamics.ExpMap(p, g), k_max=5)
            n_div, n_least = brute_census(p, g, 5)
            assert list(census.n_dividing) == n_div
            assert list(census.n_least_period) == n_least


class TestCensusGraph:
    def test_golden_11_2(self):
        summary, _ = dynamics.census_graph(dynamics.ExpMap(11, 2))
        assert summary.cycle_length_multiset == (1, 2, 2, 5)
        assert summary.component_count == 4
        assert summary.is_permutation

    def test_golden_7_2(self):
        summary, _ = dynamics.census_graph(dynamics.ExpMap(7, 2))
        assert summary.cycle_length_multiset == (2,)
        assert summary.cyclic_point_count == 2
        assert not summary.is_permutation

    def test_constant_base(self):
        summary, _ = dynamics.census_graph(dynamics.ExpMap(13, 1))
        assert summary.cycle_length_multiset == (1,)
        assert summary.component_count == 1
        assert summary.max_tail_length == 1

    def test_multiset_against_oracle(self):
        rng = random.Random(9)
        for _ in range(30):
            p = rng.choice(trial_primes_between(3, 400))
            g = rng.randint(1, p - 1)
            summary, _ = dynamics.census_graph(dynamics.ExpMap(p, g))
            assert list(summary.cycle_length_multiset) == brute_cycle_multiset(p, g)
            assert summary.cyclic_point_count == sum(summary.cycle_length_multiset)
            assert summary.is_permutation == (summary.max_tail_length == 0)
            assert summary.is_permutation == (summary.cyclic_point_count == p - 1)

    def test_memory_budget_enforced(self):
        with pytest.raises(dynamics.MemoryBudgetError):
            dynamics.census_graph(dynamics.ExpMap(10007, 5), mem_budget=1000)

    def test_cyclic_points_lie_in_subgroup(self):
        # every cyclic point is a power of g: x in <g> iff x**ord(g) == 1
        rng = random.Random(10)
        for _ in range(20):
            p = rng.choice(trial_primes_between(3, 300))
            g = rng.randint(1, p - 1)
            m = dynamics.ExpMap(p, g)
            t = multiplicative_order(g, p)
            for u in range(1, p):
                rec = dynamics.orbit(m, u)
                assert pow(rec.entry_point, t, p) == 1, (p, g, u)


class TestPermutationCriterion:
    def test_small_exhaustive(self):
        for p in trial_primes_between(3, 97):
            for g in range(1, p):
                summary, _ = dynamics.census_graph(dynamics.ExpMap(p, g))
                assert summary.is_permutation == (brute_order(g, p) == p - 1), (p, g)


class TestFixedPoints:
    def test_golden(self):
        assert dynamics.fixed_points(dynamics.ExpMap(7, 3)) == {2, 4, 5}
        assert dynamics.fixed_points(dynamics.ExpMap(11, 2)) == {7}
        assert dynamics.fixed_points(dynamics.ExpMap(7, 2)) == set()

    def test_count_matches_census(self):
        rng = random.Random(12)
        for _ in range(30):
            p = rng.choice(trial_primes_between(3, 500))
            g = rng.randint(1, p - 1)
            m = dynamics.ExpMap(p, g)
            assert len(dynamics.fixed_points(m)) == dynamics.census_naive(m, 1).n_dividing[1]

    def test_all_bases_counter(self):
        p = 31
        counts = dynamics.fixed_point_counts_all_bases(p)
        for g in range(1, p):
            assert counts[g] == len(dynamics.fixed_points(dynamics.ExpMap(p, g)))
