"""
This module groups naturals by the number of odd terms alpha in their trajectories
and evaluates the constant-alpha curves of the stopping-time formula.

Numbers with the same alpha lie on the curve n -> ceil(log2(6^alpha * n)) of the
S(n) plane; alpha = 0 are the powers of two, the lower frontier.
"""

__all__ = [
    'AlphaClass',
    'Classification',
    'alpha_curve',
    'classify_range',
]
__version__ = '0.1.0'


import logging
from typing import Dict, List, NamedTuple, Optional, Tuple

from opentelemetry import trace

from core_trajectory import DomainError, NonTerminationError, trajectory_stats
from formula import ceil_log2, power_of_three
from utils.parallel import ChunkPool


class AlphaClass(NamedTuple):
    """
    All naturals up to limit whose trajectories have exactly alpha odd terms.
    """

    alpha: int
    members: Tuple[int, ...]
    limit: int

    @property
    def size(self) -> int:
        """
        The number of members.
        """
        return len(self.members)


class Classification(NamedTuple):
    """
    The classes alpha = 0 ... alpha_max of [1, limit]. 'tail' counts the
    numbers with a larger alpha, 'nonterminating' those that hit the
    divergence guard.
    """

    limit: int
    classes: Tuple[AlphaClass, ...]
    tail: int
    nonterminating: Tuple[int, ...]

    def by_alpha(self, alpha: int) -> AlphaClass:
        """
        Returns the class of the given alpha.
        """
        return self.classes[alpha]


def _classify_block(first: int, last: int, alpha_max: int,
                    max_iterations: Optional[int]) -> Tuple[Dict[int, List[int]], int, List[int]]:
    members: Dict[int, List[int]] = {}
    tail = 0
    nonterminating = []
    for n in range(first, last + 1):
        try:
            alpha = trajectory_stats(n, max_iterations, keep_terms=False).alpha
        except NonTerminationError:
            nonterminating.append(n)
            continue
        if alpha <= alpha_max:
            members.setdefault(alpha, []).append(n)
        else:
            tail += 1
    return members, tail, nonterminating


async def classify_range(limit: int,
                         alpha_max: int,
                         workers: int = 1,
                         block: int = 65536,
                         max_iterations: Optional[int] = None) -> Classification:
    """
    Computes alpha for every n in [1, limit] and groups the naturals into
    constant-alpha classes. Blocks of consecutive numbers are classified
    independently and merged in ascending order, so members come out sorted.

    Parameters
    ----------
        limit : int
            The largest natural classified, >= 1.
        alpha_max : int
            The largest alpha whose members are listed.
        workers : int
            The number of worker processes.
        block : int
            The number of naturals per unit of work.
        max_iterations : Optional[int]
            The divergence guard, None for the per-value default.

    Returns
    -------
        Classification
            The classes with their members, the tail count and the values
            that did not terminate.
    """
    if limit < 1:
        raise DomainError(f"limit must be positive, got {limit}")
    if alpha_max < 0:
        raise DomainError(f"alpha_max must not be negative, got {alpha_max}")
    with trace.get_tracer(__name__).start_as_current_span(
            "alpha_sequences.classify_range") as otel_span:
        otel_span.set_attribute("collatz.alpha_sequences.limit", str(limit))
        otel_span.set_attribute("collatz.alpha_sequences.alpha_max", alpha_max)
        merged: List[List[int]] = [[] for _ in range(alpha_max + 1)]
        tail = 0
        nonterminating: List[int] = []
        blocks = [(first, min(first + block - 1, limit), alpha_max, max_iterations)
                  for first in range(1, limit + 1, block)]
        async with ChunkPool(workers) as pool:
            for start in range(0, len(blocks), pool.workers):
                results = await pool.run_wave(_classify_block, blocks[start:start + pool.workers])
                for members, block_tail, block_nonterminating in results:
                    for alpha, values in members.items():
                        merged[alpha].extend(values)
                    tail += block_tail
                    nonterminating.extend(block_nonterminating)
        for n in nonterminating:
            logging.warning("Trajectory of n=%d hit the divergence guard", n)
        classes = tuple(AlphaClass(alpha, tuple(values), limit)
                        for alpha, values in enumerate(merged))
        return Classification(limit, classes, tail, tuple(nonterminating))


def alpha_curve(alpha: int, n_max: int, n_min: int = 1) -> List[Tuple[int, int]]:
    """
    Evaluates the formula along the constant-alpha curve.

    Parameters
    ----------
        alpha : int
            The odd-term count of the curve.
        n_max : int
            The last natural of the curve.
        n_min : int
            The first natural of the curve.

    Returns
    -------
        List[Tuple[int, int]]
            The points (n, ceil(log2(6^alpha * n))) for n_min <= n <= n_max.
    """
    if n_max < 1 or n_min < 1:
        raise DomainError(f"Curves are defined for n >= 1, got [{n_min}, {n_max}]")
    if alpha < 0:
        raise DomainError(f"alpha must not be negative, got {alpha}")
    factor = power_of_three(alpha)
    return [(n, alpha + ceil_log2(factor * n)) for n in range(n_min, n_max + 1)]
