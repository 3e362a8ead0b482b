"""
A test module for the ChunkPool class.
"""

import unittest

from utils.parallel import ChunkPool


def _power(base: int, exponent: int) -> int:
    return base ** exponent


class TestChunkPool(unittest.IsolatedAsyncioTestCase):
    """
    Wave evaluation in and out of process.
    """

    async def test_in_process(self):
        async with ChunkPool(1) as pool:
            self.assertEqual(await pool.run_wave(_power, [(2, 3), (3, 2), (5, 0)]), [8, 9, 1])

    async def test_worker_processes_keep_order(self):
        arguments = [(3, k) for k in range(40)]
        async with ChunkPool(3) as pool:
            self.assertEqual(pool.workers, 3)
            self.assertEqual(await pool.run_wave(_power, arguments), [3 ** k for k in range(40)])

    async def test_rejects_bad_worker_count(self):
        with self.assertRaises(ValueError):
            ChunkPool(0)


if __name__ == "__main__":
    unittest.main()
