"""
This module draws reproducible random naturals of up to max_bits bits.

Sampling law: the bit length L is uniform in [1, max_bits], then the value is
a uniform L-bit integer with its top bit forced to 1. Chunk c of a campaign
uses a PCG64 stream seeded by SeedSequence(seed mod 2^64, spawn_key=(c,)), so
the samples do not depend on how chunks are spread over workers.
"""

__all__ = [
    'chunk_stream',
    'draw_samples',
    'random_natural',
]
__version__ = '0.1.0'


from typing import List

import numpy as np


_SEED_MASK = (1 << 64) - 1


def chunk_stream(seed: int, chunk_index: int) -> np.random.Generator:
    """
    Returns the independent random stream of a campaign chunk.
    """
    sequence = np.random.SeedSequence(seed & _SEED_MASK, spawn_key=(chunk_index,))
    return np.random.Generator(np.random.PCG64(sequence))


def random_natural(rng: np.random.Generator, max_bits: int) -> int:
    """
    Draws one natural according to the sampling law.

    Parameters
    ----------
        rng : np.random.Generator
            The random stream to draw from.
        max_bits : int
            The maximum bit length, >= 1.

    Returns
    -------
        int
            A natural with a bit length in [1, max_bits].
    """
    if max_bits < 1:
        raise ValueError(f"max_bits must be positive, got {max_bits}")
    bits = int(rng.integers(1, max_bits, endpoint=True))
    raw = int.from_bytes(rng.bytes((bits + 7) // 8), 'big')
    return (raw & ((1 << bits) - 1)) | (1 << (bits - 1))


def draw_samples(seed: int, max_bits: int, chunk_index: int, count: int) -> List[int]:
    """
    Draws the samples of one campaign chunk.
    """
    rng = chunk_stream(seed, chunk_index)
    return [random_natural(rng, max_bits) for _ in range(count)]
