# pylint: disable-all

import unittest

from verifier import chunk_stream, draw_samples, random_natural


class TestSampling(unittest.TestCase):

    def test_one_bit_is_one(self):
        for seed in (0, 1, 42, -5, 2**64 - 1):
            self.assertEqual(draw_samples(seed, 1, 0, 3), [1, 1, 1])

    def test_bit_lengths_in_range(self):
        samples = draw_samples(7, 64, 0, 1000)
        self.assertTrue(all(1 <= s.bit_length() <= 64 for s in samples))
        # lengths are spread out, not concentrated at the maximum
        self.assertLess(sum(1 for s in samples if s.bit_length() == 64), 100)
        self.assertGreater(len({s.bit_length() for s in samples}), 50)

    def test_reproducible(self):
        self.assertEqual(draw_samples(42, 16384, 3, 5), draw_samples(42, 16384, 3, 5))

    def test_chunks_are_independent_streams(self):
        self.assertNotEqual(draw_samples(42, 4096, 0, 4), draw_samples(42, 4096, 1, 4))
        self.assertNotEqual(draw_samples(42, 4096, 0, 4), draw_samples(43, 4096, 0, 4))

    def test_prefix_stability(self):
        self.assertEqual(draw_samples(9, 512, 2, 3), draw_samples(9, 512, 2, 10)[:3])

    def test_rejects_zero_bits(self):
        with self.assertRaises(ValueError):
            random_natural(chunk_stream(1, 0), 0)


if __name__ == "__main__":
    unittest.main()
