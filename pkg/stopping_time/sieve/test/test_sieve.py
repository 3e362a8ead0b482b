"""
A test module for the sieve package.
"""

import unittest

from hypothesis import given, settings, strategies as st

from core_trajectory import DomainError, trajectory_stats
from formula import ceil_log2
from sieve import (
    DOUBLE, HALVE, INVERSE_ODD, TRIPLE_PLUS_ONE, PropagationEdge, allowed_stopping_times,
    neighbors, propagate_prohibited)


def _s(n):
    return trajectory_stats(n, keep_terms=False).s


class TestAllowedStoppingTimes(unittest.TestCase):
    """
    Allowed and prohibited sets from the formula alone.
    """

    def test_sixty_five(self):
        sets = allowed_stopping_times(65, 35)
        self.assertEqual(sets.allowed, (7, 9, 12, 14, 17, 19, 22, 25, 27, 30, 32, 35))
        for value in (15, 26, 34):
            self.assertIn(value, sets.prohibited)
        self.assertEqual(sets.window, (7, 35))

    def test_one(self):
        sets = allowed_stopping_times(1, 10)
        self.assertEqual(sets.allowed, (0, 3, 6, 8))
        self.assertEqual(sets.prohibited, (1, 2, 4, 5, 7, 9, 10))

    def test_powers_of_two(self):
        for k in range(0, 64):
            sets = allowed_stopping_times(1 << k, k)
            self.assertEqual(sets.allowed, (k,))
            self.assertEqual(sets.prohibited, ())

    def test_partition_and_gaps(self):
        for n in range(1, 3_001):
            sets = allowed_stopping_times(n, ceil_log2(n) + 60)
            lo, hi = sets.window
            self.assertEqual(sets.allowed[0], lo)
            self.assertEqual(sorted(sets.allowed + sets.prohibited), list(range(lo, hi + 1)))
            for a, b in zip(sets.allowed, sets.allowed[1:]):
                self.assertIn(b - a, (2, 3))

    def test_true_stopping_time_is_allowed(self):
        for n in range(1, 100_000):
            s = _s(n)
            self.assertIn(s, allowed_stopping_times(n, s).allowed, n)

    def test_rejects_bad_arguments(self):
        with self.assertRaises(DomainError):
            allowed_stopping_times(0, 5)
        with self.assertRaises(DomainError):
            allowed_stopping_times(65, 6)

    def test_to_dict(self):
        record = allowed_stopping_times(5, 8).to_dict()
        self.assertEqual(record, {'n': '5', 'window': [3, 8], 'allowed': [3, 5, 8],
                                  'prohibited': [4, 6, 7]})


class TestNeighbors(unittest.TestCase):
    """
    The four step relations.
    """

    def test_examples(self):
        self.assertEqual(neighbors(65), [
            PropagationEdge(65, 196, -1, TRIPLE_PLUS_ONE),
            PropagationEdge(65, 130, 1, DOUBLE)])
        self.assertEqual(neighbors(16), [
            PropagationEdge(16, 8, -1, HALVE),
            PropagationEdge(16, 32, 1, DOUBLE),
            PropagationEdge(16, 5, 1, INVERSE_ODD)])
        self.assertEqual(neighbors(1), [PropagationEdge(1, 2, 1, DOUBLE)])

    def test_one_is_not_an_inverse_target(self):
        self.assertEqual(neighbors(4), [
            PropagationEdge(4, 2, -1, HALVE),
            PropagationEdge(4, 8, 1, DOUBLE)])

    def test_relations_hold(self):
        for n in range(2, 10_001):
            s = _s(n)
            edges = neighbors(n)
            self.assertLessEqual(len({e.to_n for e in edges}), 3)
            for edge in edges:
                self.assertEqual(_s(edge.to_n), s + edge.s_shift, edge)

    @settings(max_examples=200)
    @given(st.integers(min_value=2, max_value=1 << 200))
    def test_relations_hold_for_big_values(self, n):
        s = _s(n)
        for edge in neighbors(n):
            self.assertEqual(_s(edge.to_n), s + edge.s_shift, edge)


class TestPropagateProhibited(unittest.TestCase):
    """
    Breadth-first propagation of prohibited values.
    """

    def test_depth_zero(self):
        result = propagate_prohibited([(65, 35), (5, 20)], 0)
        self.assertEqual(result, {
            5: frozenset(allowed_stopping_times(5, 20).prohibited),
            65: frozenset(allowed_stopping_times(65, 35).prohibited)})

    def test_depth_one(self):
        result = propagate_prohibited([(65, 35)], 1, include_direct=False)
        self.assertEqual(set(result), {65, 130, 196})
        shifted = {p + 1 for p in allowed_stopping_times(65, 35).prohibited}
        self.assertEqual(result[130], frozenset(p for p in shifted if 8 <= p <= 36))
        for value in (16, 27, 35):
            self.assertIn(value, result[130])
        self.assertNotIn(_s(196), result[196])

    def test_sieve_gains_information_on_odd_edges(self):
        result = propagate_prohibited([(7, 20)], 1, include_direct=False)
        self.assertIn(8, result[22])
        self.assertIn(8, allowed_stopping_times(22, 19).allowed)

    def test_soundness(self):
        result = propagate_prohibited([(65, 40), (27, 120), (97, 130)], 6)
        self.assertGreater(len(result), 50)
        for n, prohibited in result.items():
            if n < 10_000:
                self.assertNotIn(_s(n), prohibited, n)

    def test_even_edges_match_direct_sets(self):
        for n in range(1, 10_000):
            bound = ceil_log2(n) + 30
            result = propagate_prohibited([(n, bound)], 1, include_direct=False)
            for edge in neighbors(n):
                if edge.rule in (HALVE, DOUBLE):
                    direct = allowed_stopping_times(edge.to_n, bound + edge.s_shift).prohibited
                    self.assertTrue(result[edge.to_n] <= frozenset(direct), edge)

    def test_parallel_levels_agree(self):
        seeds = [(65, 40), (27, 120)]
        self.assertEqual(propagate_prohibited(seeds, 4),
                         propagate_prohibited(seeds, 4, workers=2))

    def test_rejects_negative_depth(self):
        with self.assertRaises(DomainError):
            propagate_prohibited([(65, 35)], -1)


if __name__ == "__main__":
    unittest.main()
