"""
A test module for the core_trajectory package.
"""

import math
import unittest

from hypothesis import given, settings, strategies as st

from core_trajectory import (
    DomainError, NonTerminationError, TrajectoryConfig,
    collatz_step, default_max_iterations, trajectory_stats, trajectory_terms)


class TestCollatzStep(unittest.TestCase):
    """
    Tests for the single map application.
    """

    def test_examples(self):
        self.assertEqual(collatz_step(2), 1)
        self.assertEqual(collatz_step(65), 196)
        self.assertEqual(collatz_step(196), 98)

    def test_branches(self):
        for k in range(1, 10_001):
            self.assertEqual(collatz_step(2 * k), k)
            self.assertEqual(collatz_step(2 * k + 1), 6 * k + 4)

    def test_rejects_terminal_and_zero(self):
        for n in (1, 0, -3):
            with self.assertRaises(DomainError):
                collatz_step(n)


class TestTrajectoryStats(unittest.TestCase):
    """
    Tests for stopping time, odd-term count and even-step count.
    """

    def test_one_is_terminal(self):
        stats = trajectory_stats(1)
        self.assertEqual((stats.s, stats.alpha, stats.even_steps), (0, 0, 0))
        self.assertEqual(stats.odd_terms, ())

    def test_sixty_five(self):
        stats = trajectory_stats(65)
        self.assertEqual(stats.s, 27)
        self.assertEqual(stats.alpha, 8)
        self.assertEqual(stats.odd_terms, (65, 49, 37, 7, 11, 17, 13, 5))

    def test_five(self):
        stats = trajectory_stats(5)
        self.assertEqual((stats.s, stats.alpha), (5, 1))
        self.assertEqual(stats.odd_terms, (5,))

    def test_twenty_seven(self):
        stats = trajectory_stats(27)
        self.assertEqual(stats.s, 111)
        self.assertEqual(stats.alpha, 41)

    def test_powers_of_two(self):
        for k in range(0, 200):
            stats = trajectory_stats(1 << k)
            self.assertEqual((stats.s, stats.alpha, stats.even_steps), (k, 0, k))

    def test_counts_add_up(self):
        for n in range(1, 100_001):
            stats = trajectory_stats(n, keep_terms=False)
            self.assertEqual(stats.s, stats.alpha + stats.even_steps)

    def test_doubling_adds_one_even_step(self):
        for n in range(1, 100_001):
            stats = trajectory_stats(n, keep_terms=False)
            doubled = trajectory_stats(2 * n, keep_terms=False)
            self.assertEqual(doubled.s, stats.s + 1)
            self.assertEqual(doubled.alpha, stats.alpha)

    def test_odd_terms_are_odd_and_ordered(self):
        for n in range(1, 2_001):
            stats = trajectory_stats(n)
            self.assertEqual(len(stats.odd_terms), stats.alpha)
            self.assertTrue(all(t & 1 and t >= 3 for t in stats.odd_terms))
            odd_in_path = [t for t in trajectory_terms(n)[:-1] if t & 1]
            self.assertEqual(list(stats.odd_terms), odd_in_path)

    def test_product_identity(self):
        # 2^e * prod(3 n_i) == 3^alpha * n * prod(3 n_i + 1)
        for n in range(1, 10_001):
            stats = trajectory_stats(n)
            left = (1 << stats.even_steps) * math.prod(3 * t for t in stats.odd_terms)
            right = 3 ** stats.alpha * n * math.prod(3 * t + 1 for t in stats.odd_terms)
            self.assertEqual(left, right, n)

    def test_statistics_only_mode(self):
        stats = trajectory_stats(65, keep_terms=False)
        self.assertEqual((stats.s, stats.alpha), (27, 8))
        self.assertEqual(stats.odd_terms, ())

    def test_rejects_zero(self):
        with self.assertRaises(DomainError):
            trajectory_stats(0)

    def test_iteration_cap(self):
        with self.assertRaises(NonTerminationError) as ctx:
            trajectory_stats(27, max_iterations=50)
        self.assertEqual(ctx.exception.start, 27)
        self.assertEqual(ctx.exception.iterations, 50)
        self.assertEqual(ctx.exception.last_value, trajectory_terms(27)[50])
        self.assertEqual(trajectory_stats(27, max_iterations=111).s, 111)

    def test_huge_value(self):
        n = (1 << 4096) + 1
        stats = trajectory_stats(n, keep_terms=False)
        self.assertEqual(stats.s, stats.alpha + stats.even_steps)
        self.assertGreater(stats.s, 4096)

    @settings(max_examples=200)
    @given(st.integers(min_value=1, max_value=1 << 256))
    def test_matches_step_by_step(self, n):
        terms = trajectory_terms(n)
        stats = trajectory_stats(n, keep_terms=False)
        self.assertEqual(stats.s, len(terms) - 1)
        self.assertEqual(stats.alpha, sum(1 for t in terms[:-1] if t & 1))

    def test_guard_stops_inside_a_halving_run(self):
        n = 1 << 100
        with self.assertRaises(NonTerminationError) as batched:
            trajectory_stats(n, max_iterations=50)
        with self.assertRaises(NonTerminationError) as stepwise:
            trajectory_terms(n, max_iterations=50)
        self.assertEqual(batched.exception.iterations, 50)
        self.assertEqual(batched.exception.last_value, 1 << 50)
        self.assertEqual(batched.exception.iterations, stepwise.exception.iterations)
        self.assertEqual(batched.exception.last_value, stepwise.exception.last_value)
        self.assertEqual(trajectory_stats(n, max_iterations=100).s, 100)

    @settings(max_examples=100)
    @given(st.integers(min_value=2, max_value=1 << 64), st.integers(min_value=1, max_value=200))
    def test_guard_matches_step_by_step(self, n, cap):
        try:
            expected = trajectory_terms(n, max_iterations=cap)
        except NonTerminationError as e:
            with self.assertRaises(NonTerminationError) as ctx:
                trajectory_stats(n, max_iterations=cap, keep_terms=False)
            self.assertEqual((ctx.exception.iterations, ctx.exception.last_value),
                             (e.iterations, e.last_value))
        else:
            self.assertEqual(trajectory_stats(n, max_iterations=cap).s, len(expected) - 1)


class TestTrajectoryTerms(unittest.TestCase):
    """
    Tests for the full term list.
    """

    def test_examples(self):
        self.assertEqual(trajectory_terms(8), [8, 4, 2, 1])
        self.assertEqual(trajectory_terms(5), [5, 16, 8, 4, 2, 1])
        self.assertEqual(trajectory_terms(3), [3, 10, 5, 16, 8, 4, 2, 1])
        self.assertEqual(trajectory_terms(1), [1])

    def test_iteration_cap(self):
        with self.assertRaises(NonTerminationError):
            trajectory_terms(8, max_iterations=2)
        self.assertEqual(trajectory_terms(8, max_iterations=3), [8, 4, 2, 1])

    def test_rejects_non_positive_cap(self):
        for function in (trajectory_stats, trajectory_terms):
            with self.assertRaises(DomainError):
                function(1, 0)
            with self.assertRaises(DomainError):
                function(27, -3)


class TestTrajectoryConfig(unittest.TestCase):
    """
    Tests for the divergence guard configuration.
    """

    def test_default_cap(self):
        self.assertEqual(default_max_iterations(1), 1_000_010)
        self.assertEqual(TrajectoryConfig().cap_for(1 << 99), 10 * 100 * 100 + 1_000_000)

    def test_explicit_cap(self):
        self.assertEqual(TrajectoryConfig(max_iterations=7).cap_for(12345), 7)
        with self.assertRaises(DomainError):
            TrajectoryConfig(max_iterations=0).cap_for(12345)


if __name__ == "__main__":
    unittest.main()
