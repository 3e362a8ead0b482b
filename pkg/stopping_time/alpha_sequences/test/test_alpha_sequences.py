"""
A test module for the alpha_sequences package.
"""

import unittest

from alpha_sequences import alpha_curve, classify_range
from core_trajectory import DomainError, trajectory_stats
from formula import check_formula, predicted_stopping_time


# the first members of the constant-alpha classes, alpha = 0 ... 19
TABLE = [
    [1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384, 32768, 65536],
    [5, 10, 20, 21, 40, 42, 80, 84, 85, 160, 168, 170, 320, 336, 340, 341, 640],
    [3, 6, 12, 13, 24, 26, 48, 52, 53, 96, 104, 106, 113, 192, 208, 212, 213],
    [17, 34, 35, 68, 69, 70, 75, 136, 138, 140, 141, 150, 151, 272, 276, 277, 280],
    [11, 22, 23, 44, 45, 46, 88, 90, 92, 93, 176, 180, 181, 184, 186, 201, 352],
    [7, 14, 15, 28, 29, 30, 56, 58, 60, 61, 112, 116, 117, 120, 122, 224, 232],
    [9, 18, 19, 36, 37, 38, 72, 74, 76, 77, 81, 144, 148, 149, 152, 154, 162],
    [25, 49, 50, 51, 98, 99, 100, 101, 102, 196, 197, 198, 200, 202, 204, 205, 217],
    [33, 65, 66, 67, 130, 131, 132, 133, 134, 260, 261, 262, 264, 266, 268, 269, 273],
    [43, 86, 87, 89, 172, 173, 174, 177, 178, 179, 344, 346, 348, 349, 354, 355, 356],
    [57, 59, 114, 115, 118, 119, 228, 229, 230, 236, 237, 238, 456, 458, 460, 461, 465],
    [39, 78, 79, 153, 156, 157, 158, 305, 306, 307, 312, 314, 315, 316, 317, 610, 611],
    [105, 203, 209, 210, 211, 406, 407, 409, 418, 419, 420, 421, 422, 431, 455, 812, 813],
    [135, 139, 270, 271, 278, 279, 281, 287, 303, 540, 541, 542, 545, 551, 556, 557, 558],
    [185, 187, 191, 361, 363, 367, 370, 371, 374, 375, 382, 383, 721, 722, 723, 726, 727],
    [123, 127, 246, 247, 249, 254, 255, 481, 489, 492, 493, 494, 498, 499, 508, 509, 510],
    [169, 329, 338, 339, 359, 641, 657, 658, 659, 665, 676, 677, 678, 718, 719, 1281, 1282],
    [219, 225, 239, 427, 438, 439, 443, 450, 451, 478, 479, 854, 855, 876, 877, 878, 886],
    [159, 295, 318, 319, 569, 585, 590, 591, 601, 636, 637, 638, 1138, 1139, 1147, 1151, 1159],
    [379, 393, 425, 758, 759, 767, 779, 786, 787, 801, 849, 850, 851, 1516, 1517, 1518, 1529],
]


class TestClassifyRange(unittest.IsolatedAsyncioTestCase):
    """
    Classification into constant-alpha classes.
    """

    async def test_table(self):
        classification = await classify_range(65536, 19, block=8192)
        for alpha, row in enumerate(TABLE):
            members = classification.by_alpha(alpha).members
            self.assertEqual(list(members[:len(row)]), row, f"alpha = {alpha}")

    async def test_table_rows_with_tight_limits(self):
        for alpha, row in enumerate(TABLE):
            classification = await classify_range(row[-1], alpha)
            self.assertEqual(list(classification.by_alpha(alpha).members), row)

    async def test_examples(self):
        self.assertEqual(
            (await classify_range(65536, 0)).by_alpha(0).members,
            tuple(1 << k for k in range(17)))
        self.assertEqual(
            (await classify_range(640, 1)).by_alpha(1).members[:9],
            (5, 10, 20, 21, 40, 42, 80, 84, 85))
        self.assertEqual(
            (await classify_range(851, 19)).by_alpha(19).members[:3], (379, 393, 425))

    async def test_partition(self):
        classification = await classify_range(5000, 10, block=333)
        sizes = sum(c.size for c in classification.classes)
        self.assertEqual(sizes + classification.tail, 5000)
        self.assertEqual(classification.nonterminating, ())
        every = sorted(n for c in classification.classes for n in c.members)
        self.assertEqual(len(every), len(set(every)))

    async def test_membership_coherence(self):
        classification = await classify_range(3000, 25)
        for alpha_class in classification.classes:
            curve = dict(alpha_curve(alpha_class.alpha, 3000))
            for m in alpha_class.members:
                stats = trajectory_stats(m)
                self.assertEqual(stats.alpha, alpha_class.alpha)
                self.assertTrue(check_formula(m, stats).holds)
                self.assertEqual(curve[m], stats.s)

    async def test_workers_agree(self):
        single = await classify_range(4000, 15, block=500)
        several = await classify_range(4000, 15, block=500, workers=3)
        self.assertEqual(single, several)

    async def test_nonterminating_is_reported(self):
        classification = await classify_range(30, 5, max_iterations=100)
        self.assertEqual(classification.nonterminating, (27,))
        sizes = sum(c.size for c in classification.classes)
        self.assertEqual(sizes + classification.tail + 1, 30)

    async def test_rejects_bad_arguments(self):
        with self.assertRaises(DomainError):
            await classify_range(0, 3)
        with self.assertRaises(DomainError):
            await classify_range(10, -1)


class TestAlphaCurve(unittest.TestCase):
    """
    Constant-alpha curves of the formula.
    """

    def test_alpha_zero(self):
        self.assertEqual(alpha_curve(0, 9),
                         [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (6, 3), (7, 3), (8, 3), (9, 4)])

    def test_point_on_alpha_one(self):
        self.assertIn((5, 5), alpha_curve(1, 10))

    def test_curves_never_meet(self):
        for alpha in range(30):
            lower = alpha_curve(alpha, 2000)
            upper = alpha_curve(alpha + 1, 2000)
            for (n, s), (_, t) in zip(lower, upper):
                self.assertGreater(t, s, (n, alpha))

    def test_window(self):
        curve = alpha_curve(3, 120, n_min=100)
        self.assertEqual([n for n, _ in curve], list(range(100, 121)))
        self.assertEqual(curve[0], (100, predicted_stopping_time(100, 3)))

    def test_rejects_bad_arguments(self):
        with self.assertRaises(DomainError):
            alpha_curve(1, 0)
        with self.assertRaises(DomainError):
            alpha_curve(-1, 10)


if __name__ == "__main__":
    unittest.main()
