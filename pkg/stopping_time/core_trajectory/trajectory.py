"""
This module computes Collatz trajectories and their fundamental statistics for
arbitrary-precision naturals.

Classes
-------
    TrajectoryStats
        Stopping time, odd-term count, even-step count and (optionally) the odd
        terms of a single trajectory.
    TrajectoryConfig
        The configuration of the divergence guard.
    DomainError
        Raised for arguments outside the domain of the map.
    NonTerminationError
        Raised when the value 1 is not reached within the iteration cap.
"""

__all__ = [
    'DomainError',
    'NonTerminationError',
    'TrajectoryConfig',
    'TrajectoryStats',
    'collatz_step',
    'default_max_iterations',
    'trajectory_stats',
    'trajectory_terms',
]
__version__ = '0.1.0'


import sys
from typing import Annotated, List, NamedTuple, Optional


# every output format writes unbounded integers as decimal strings
sys.set_int_max_str_digits(0)


class DomainError(ValueError):
    """
    An exception of this type is raised if an argument lies outside the domain
    of the requested operation (e.g. a step on 1 or a trajectory of 0).
    """


class NonTerminationError(RuntimeError):
    """
    An exception of this type is raised if a trajectory does not reach 1 within
    the configured number of iterations. This either points to an insufficient
    bound or to a counterexample candidate, so the last value is kept.
    """

    def __init__(self, start: int, last_value: int, iterations: int) -> None:
        super().__init__(
            f"Trajectory of {start} did not reach 1 within {iterations} iterations "
            f"(last value has {last_value.bit_length()} bits)")
        self.start = start
        self.last_value = last_value
        self.iterations = iterations


class TrajectoryConfig(NamedTuple):
    """
    A simple configuration class for the divergence guard.
    """

    max_iterations: Annotated[
        Optional[int],
        "iteration cap; None selects 10 * bitlen(n)^2 + 10^6 per start value"] = None

    def cap_for(self, n: int) -> int:
        """
        Returns the iteration cap to apply to the trajectory of n.

        Raises
        ------
            DomainError
                If an explicit cap is not positive.
        """
        if self.max_iterations is None:
            return default_max_iterations(n)
        if self.max_iterations < 1:
            raise DomainError(f"max_iterations must be positive, got {self.max_iterations}")
        return self.max_iterations


class TrajectoryStats(NamedTuple):
    """
    The statistics of the trajectory of n. The stopping time s counts every
    map application until 1 is reached, alpha counts the odd terms excluding
    the terminal 1 (the start value included when odd). odd_terms is empty if
    the trajectory was computed in statistics-only mode.
    """

    n: Annotated[int, "start value"]
    s: Annotated[int, "stopping time (total number of map applications)"]
    alpha: Annotated[int, "number of odd terms, excluding the terminal 1"]
    even_steps: Annotated[int, "number of halving steps"]
    odd_terms: Annotated[tuple, "odd terms in trajectory order, if retained"] = ()


def default_max_iterations(n: int) -> int:
    """
    The default divergence guard for a start value n: 10 * bitlen(n)^2 + 10^6.
    """
    bits = n.bit_length()
    return 10 * bits * bits + 1_000_000


def collatz_step(n: int) -> int:
    """
    Applies the Collatz map once.

    Parameters
    ----------
        n : int
            The current value, n >= 2.

    Returns
    -------
        int
            n / 2 if n is even, 3n + 1 otherwise.

    Raises
    ------
        DomainError
            If n < 2. 1 is terminal and 0 lies outside the domain.
    """
    if n < 2:
        raise DomainError(f"The Collatz step is defined for n >= 2, got {n}")
    if n & 1:
        return 3 * n + 1
    return n >> 1


def trajectory_stats(n: int,
                     max_iterations: Optional[int] = None,
                     keep_terms: bool = True) -> TrajectoryStats:
    """
    Iterates the Collatz map from n until 1 is reached and counts the steps.
    Runs of trailing zero bits are stripped in one shift; the counts are the
    same as for step-by-step iteration.

    Parameters
    ----------
        n : int
            The start value, n >= 1.
        max_iterations : Optional[int]
            The divergence guard. Defaults to 10 * bitlen(n)^2 + 10^6.
        keep_terms : bool
            Whether to retain the odd terms. Switch off for huge start values.

    Returns
    -------
        TrajectoryStats
            The statistics of the trajectory.

    Raises
    ------
        DomainError
            If n < 1 or max_iterations < 1.
        NonTerminationError
            If 1 is not reached within max_iterations map applications.
    """
    if n < 1:
        raise DomainError(f"Trajectories are defined for n >= 1, got {n}")
    cap = TrajectoryConfig(max_iterations).cap_for(n)

    value = n
    alpha = 0
    even_steps = 0
    odd_terms: List[int] = []
    while value != 1:
        if alpha + even_steps >= cap:
            raise NonTerminationError(n, value, cap)
        if value & 1:
            if keep_terms:
                odd_terms.append(value)
            value = 3 * value + 1
            alpha += 1
        else:
            # a run never crosses the cap
            zeros = min((value & -value).bit_length() - 1, cap - alpha - even_steps)
            value >>= zeros
            even_steps += zeros
    return TrajectoryStats(n, alpha + even_steps, alpha, even_steps, tuple(odd_terms))


def trajectory_terms(n: int, max_iterations: Optional[int] = None) -> List[int]:
    """
    Returns the full trajectory n, step(n), ..., 1 (both ends inclusive).

    Raises
    ------
        DomainError
            If n < 1 or max_iterations < 1.
        NonTerminationError
            If 1 is not reached within max_iterations map applications.
    """
    if n < 1:
        raise DomainError(f"Trajectories are defined for n >= 1, got {n}")
    cap = TrajectoryConfig(max_iterations).cap_for(n)
    terms = [n]
    value = n
    while value != 1:
        if len(terms) > cap:
            raise NonTerminationError(n, value, len(terms) - 1)
        value = collatz_step(value)
        terms.append(value)
    return terms
